"""ARPAbet pronunciations: dictionary lookup, syllabification, OOV fallback.

Dictionary files use the standard text format, one ``WORD  PH1 PH2 ...`` per
line; ``WORD(2)`` variant entries are accepted and the first entry wins.
Syllabification splits a phone string at vowel nuclei and assigns intervocalic
consonants by longest-legal-onset; word-final consonants form the final coda.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path

VOWEL_PHONES = frozenset({
    "AA", "AE", "AH", "AO", "AW", "AY", "EH", "ER", "EY",
    "IH", "IY", "OW", "OY", "UH", "UW",
})

# two-consonant onsets licit in English; used to split intervocalic clusters
LEGAL_ONSETS_2 = frozenset({
    ("P", "R"), ("T", "R"), ("K", "R"), ("B", "R"), ("D", "R"), ("G", "R"),
    ("F", "R"), ("TH", "R"), ("SH", "R"),
    ("P", "L"), ("K", "L"), ("B", "L"), ("G", "L"), ("F", "L"), ("S", "L"),
    ("K", "W"), ("G", "W"), ("S", "W"), ("T", "W"), ("D", "W"), ("TH", "W"),
    ("S", "P"), ("S", "T"), ("S", "K"), ("S", "M"), ("S", "N"), ("S", "F"),
    ("P", "Y"), ("B", "Y"), ("T", "Y"), ("D", "Y"), ("K", "Y"), ("G", "Y"),
    ("M", "Y"), ("N", "Y"), ("F", "Y"), ("V", "Y"), ("HH", "Y"), ("L", "Y"),
    ("S", "Y"), ("Z", "Y"),
})
LEGAL_ONSETS_3 = frozenset({
    ("S", "P", "R"), ("S", "T", "R"), ("S", "K", "R"),
    ("S", "P", "L"), ("S", "K", "L"), ("S", "K", "W"),
    ("S", "P", "Y"), ("S", "T", "Y"), ("S", "K", "Y"),
})

_HAS_LETTER = re.compile(r"[a-z]")
_VARIANT = re.compile(r"\(\d+\)$")


def strip_stress(phone: str) -> str:
    return phone.rstrip("0123456789")


def is_vowel(phone: str) -> bool:
    return strip_stress(phone) in VOWEL_PHONES


@dataclass(frozen=True)
class Syllable:
    onset: tuple[str, ...]
    nucleus: str  # vowel phone, stress digit retained
    coda: tuple[str, ...]


@dataclass(frozen=True)
class Pronunciation:
    token: str
    syllables: tuple[Syllable, ...]
    oov: bool = False

    @property
    def pronounceable(self) -> bool:
        return len(self.syllables) > 0


def syllabify(phones: list[str]) -> tuple[Syllable, ...]:
    """Split an ARPAbet phone sequence into (onset, nucleus, coda) syllables."""
    nuclei = [i for i, p in enumerate(phones) if is_vowel(p)]
    if not nuclei:
        return ()
    syllables = []
    prev_end = 0  # first unassigned phone index
    for k, ni in enumerate(nuclei):
        onset = tuple(phones[prev_end:ni])
        if k + 1 < len(nuclei):
            cluster = phones[ni + 1:nuclei[k + 1]]
            split = len(cluster) - _onset_len(cluster)
            coda = tuple(cluster[:split])
            prev_end = ni + 1 + split
        else:
            coda = tuple(phones[ni + 1:])
            prev_end = len(phones)
        syllables.append(Syllable(onset=onset, nucleus=phones[ni], coda=coda))
    return tuple(syllables)


def _onset_len(cluster: list[str]) -> int:
    """Longest suffix of the cluster that is a licit onset (0..3 phones)."""
    stripped = [strip_stress(p) for p in cluster]
    if len(stripped) >= 3 and tuple(stripped[-3:]) in LEGAL_ONSETS_3:
        return 3
    if len(stripped) >= 2 and tuple(stripped[-2:]) in LEGAL_ONSETS_2:
        return 2
    if len(stripped) >= 1 and stripped[-1] != "NG":
        return 1
    return 0


class PronouncingDictionary:
    """ARPAbet dictionary with a deterministic grapheme fallback for OOV tokens."""

    def __init__(self, entries: dict[str, list[str]] | None = None):
        self._entries = entries or {}
        self._cache: dict[str, Pronunciation] = {}

    @classmethod
    def load(cls, path: str | Path) -> "PronouncingDictionary":
        entries: dict[str, list[str]] = {}
        for raw in Path(path).read_text(encoding="utf-8").splitlines():
            line = raw.strip()
            if not line or line.startswith(";;;") or line.startswith("##"):
                continue
            parts = line.split()
            word = _VARIANT.sub("", parts[0]).lower()
            if word and word not in entries:
                entries[word] = parts[1:]
        return cls(entries)

    def __len__(self) -> int:
        return len(self._entries)

    def __contains__(self, token: str) -> bool:
        return self._normalize(token) in self._entries

    @staticmethod
    def _normalize(token: str) -> str:
        return token.lower().replace("'", "")

    def pronounce(self, token: str) -> Pronunciation:
        key = token.lower()
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        norm = self._normalize(key)
        if not _HAS_LETTER.search(norm):
            pron = Pronunciation(token=key, syllables=())  # e.g. bare digits
        elif norm in self._entries:
            pron = Pronunciation(token=key, syllables=syllabify(self._entries[norm]))
        else:
            pron = Pronunciation(token=key, syllables=fallback_syllables(norm), oov=True)
        self._cache[key] = pron
        return pron


# --- grapheme fallback ------------------------------------------------------

_VOWEL_GROUP = re.compile(r"[aeiouy]+")

# orthographic vowel group -> approximate nucleus phone
_GROUP_PHONE = {
    "a": "AE", "e": "EH", "i": "IH", "o": "AA", "u": "AH", "y": "IY",
    "aa": "AA", "ae": "EY", "ai": "EY", "ay": "EY", "au": "AO", "aw": "AO",
    "ea": "IY", "ee": "IY", "ei": "EY", "ey": "EY", "eu": "UW", "ew": "UW",
    "ie": "IY", "ia": "IY", "io": "IY", "oa": "OW", "oe": "OW", "oi": "OY",
    "oy": "OY", "oo": "UW", "ou": "AW", "ow": "OW", "ue": "UW", "ui": "UW",
    "uy": "AY", "ya": "IY", "ye": "AY", "yo": "OW",
}

_LETTER_PHONE = {
    "b": ("B",), "c": ("K",), "d": ("D",), "f": ("F",), "g": ("G",),
    "h": ("HH",), "j": ("JH",), "k": ("K",), "l": ("L",), "m": ("M",),
    "n": ("N",), "p": ("P",), "q": ("K",), "r": ("R",), "s": ("S",),
    "t": ("T",), "v": ("V",), "w": ("W",), "x": ("K", "S"), "y": ("Y",),
    "z": ("Z",),
}
_DIGRAPH_PHONE = {
    "th": ("TH",), "sh": ("SH",), "ch": ("CH",), "ph": ("F",),
    "ng": ("NG",), "ck": ("K",), "wh": ("W",), "gh": (),
}


def _letters_to_phones(segment: str) -> tuple[str, ...]:
    phones: list[str] = []
    i = 0
    while i < len(segment):
        pair = segment[i:i + 2]
        if pair in _DIGRAPH_PHONE:
            phones.extend(_DIGRAPH_PHONE[pair])
            i += 2
            continue
        ph = _LETTER_PHONE.get(segment[i])
        if ph and (not phones or phones[-1] != ph[0]):  # collapse doubled letters
            phones.extend(ph)
        i += 1
    return tuple(phones)


def count_vowel_groups(word: str) -> int:
    """Orthographic syllable estimate used by the fallback."""
    word = word.lower()
    groups = _VOWEL_GROUP.findall(word)
    n = len(groups)
    if n > 1 and word.endswith("e") and not word.endswith("le") \
            and groups[-1] == "e":
        n -= 1  # silent final e
    return max(n, 1) if groups else 0


def fallback_syllables(word: str) -> tuple[Syllable, ...]:
    """Pseudo-pronunciation from spelling: one syllable per vowel group.

    The nucleus comes from a vowel-group table; consonant letters between
    groups become the onset of the following syllable; trailing letters map
    to the final coda.  Deterministic, so OOV tokens still rhyme consistently.
    """
    word = word.lower()
    if len(word) > 1 and word[0] == "y" and word[1] in "aeiou":
        inner = fallback_syllables(word[1:])
        if inner:
            first = inner[0]
            return (Syllable(("Y",) + first.onset, first.nucleus, first.coda),) + inner[1:]
    matches = list(_VOWEL_GROUP.finditer(word))
    if not matches:
        return ()
    # apply silent-e rule by dropping the final group
    if len(matches) > 1 and word.endswith("e") and not word.endswith("le") \
            and matches[-1].group() == "e":
        matches = matches[:-1]
    syllables = []
    for k, m in enumerate(matches):
        start = matches[k - 1].end() if k > 0 else 0
        onset = _letters_to_phones(word[start:m.start()])
        group = m.group()
        nucleus = _GROUP_PHONE.get(group) or _GROUP_PHONE.get(group[:2]) \
            or _GROUP_PHONE[group[0]]
        if k + 1 == len(matches):
            coda = _letters_to_phones(word[m.end():])
        else:
            coda = ()
        syllables.append(Syllable(onset=onset, nucleus=nucleus + "1", coda=coda))
    return tuple(syllables)


_DEFAULT: PronouncingDictionary | None = None


def default_dictionary() -> PronouncingDictionary:
    """The compact dictionary shipped as package data, loaded once."""
    global _DEFAULT
    if _DEFAULT is None:
        from importlib.resources import files

        path = files("verseval").joinpath("data/mini_arpabet.dict")
        _DEFAULT = PronouncingDictionary.load(Path(str(path)))
    return _DEFAULT
