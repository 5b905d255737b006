"""Rhyme density with entropy weighting.

Density is rhymed syllables over total syllables.  Repetitive text produces
false-positive rhymes (the same phonemes repeat), so the density is scaled by
normalized token entropy: a verse of one repeated token weighs 0, a verse of
all-distinct tokens weighs 1.
"""

from __future__ import annotations

import math
import os
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from ..corpus import Verse
from .pronounce import PronouncingDictionary, strip_stress

if os.environ.get("VERSEVAL_PURE") == "1":
    from . import _kernel_py as _kernel
    KERNEL = "pure"
else:
    try:
        from . import _kernel  # type: ignore[no-redef]
        KERNEL = "compiled"
    except ImportError:
        from . import _kernel_py as _kernel  # type: ignore[no-redef]
        KERNEL = "pure"


class EmptyVerseError(ValueError):
    pass


class NoPronounceableSyllablesError(ValueError):
    pass


# slant-rhyme coda classes: codas are compatible position by position
DEFAULT_CONSONANT_CLASSES: tuple[frozenset[str], ...] = (
    frozenset({"P", "B"}),
    frozenset({"T", "D"}),
    frozenset({"K", "G"}),
    frozenset({"F", "V"}),
    frozenset({"TH", "DH"}),
    frozenset({"S", "Z"}),
    frozenset({"SH", "ZH"}),
    frozenset({"CH", "JH"}),
    frozenset({"M", "N", "NG"}),
    frozenset({"L", "R"}),
)


@dataclass(frozen=True)
class RhymeParams:
    window_lines: int = 2  # max line distance between rhyming spans
    min_span: int = 1
    max_span: int = 4
    consonant_classes: tuple[frozenset[str], ...] = DEFAULT_CONSONANT_CLASSES
    literal_entropy: bool = False


@dataclass
class RhymeAnalysis:
    total_syllables: int
    rhymed_syllables: int
    rhyme_pairs: list[tuple[int, int, int]]  # (position a, position b, syllables)
    entropy_H: float
    entropy_weight: float
    density: float
    weighted_density: float
    syllable_map: list[tuple[int, str]] = field(default_factory=list)  # (line, token)


def _class_of(phone: str, classes) -> str:
    for k, cls in enumerate(classes):
        if phone in cls:
            return f"c{k}"
    return phone


def token_entropy(verse: Verse) -> float:
    """Shannon entropy (bits) of the verse's empirical token distribution."""
    toks = verse.tokens()
    if not toks:
        raise EmptyVerseError("verse has no tokens")
    total = len(toks)
    return -sum((c / total) * math.log2(c / total)
                for c in Counter(toks).values())


def entropy_weight(verse: Verse, literal: bool = False) -> float:
    """Normalized token entropy in [0, 1].

    Default normalization divides by log2(token count) so all-distinct verses
    weigh 1.  ``literal`` divides by the raw token count instead.
    """
    toks = verse.tokens()
    if not toks:
        raise EmptyVerseError("verse has no tokens")
    h = token_entropy(verse)
    total = len(toks)
    if literal:
        return h / total
    if len(set(toks)) == 1:
        return 0.0
    return h / math.log2(total)


def detect_rhymes(verse: Verse, pron_dict: PronouncingDictionary,
                  params: RhymeParams | None = None) -> RhymeAnalysis:
    """Find rhyming syllable spans and compute raw and weighted density.

    Spans of up to ``max_span`` syllables within one line rhyme when their
    nuclei match in order (stress ignored) and the codas of their final
    syllables fall in the same consonant class.  Longest spans win; a
    syllable counts once no matter how many pairs touch it.
    """
    params = params or RhymeParams()
    if verse.token_count == 0:
        raise EmptyVerseError(f"verse {verse.verse_id!r} has no tokens")

    line_idx: list[int] = []
    nuclei: list[str] = []
    codas: list[tuple[str, ...]] = []
    syl_map: list[tuple[int, str]] = []
    for li, line in enumerate(verse.lines):
        for tok in line:
            for syl in pron_dict.pronounce(tok).syllables:
                line_idx.append(li)
                nuclei.append(strip_stress(syl.nucleus))
                codas.append(syl.coda)
                syl_map.append((li, tok))
    total = len(line_idx)
    if total == 0:
        raise NoPronounceableSyllablesError(
            f"verse {verse.verse_id!r} has no pronounceable syllables")

    nuc_codes = {n: k for k, n in enumerate(sorted(set(nuclei)))}
    coda_codes: dict[tuple[str, ...], int] = {}
    for c in codas:
        coda_codes.setdefault(c, len(coda_codes))
    # codas are compatible iff their class signatures agree
    sigs = {}
    for c, code in coda_codes.items():
        sigs[code] = tuple(_class_of(p, params.consonant_classes) for p in c)
    k = len(coda_codes)
    compat = np.zeros((k, k), dtype=np.uint8)
    for a in range(k):
        for b in range(k):
            compat[a, b] = sigs[a] == sigs[b]

    marked, pairs = _kernel.mark_rhymes(
        np.asarray(line_idx, dtype=np.intc),
        np.asarray([nuc_codes[x] for x in nuclei], dtype=np.intc),
        np.asarray([coda_codes[c] for c in codas], dtype=np.intc),
        compat,
        params.window_lines, params.min_span, params.max_span,
    )

    rhymed = int(sum(marked))
    density = rhymed / total
    h = token_entropy(verse)
    weight = entropy_weight(verse, literal=params.literal_entropy)
    return RhymeAnalysis(
        total_syllables=total,
        rhymed_syllables=rhymed,
        rhyme_pairs=[tuple(p) for p in pairs],
        entropy_H=h,
        entropy_weight=weight,
        density=density,
        weighted_density=density * weight,
        syllable_map=syl_map,
    )


def weighted_rhyme_density(verse: Verse, pron_dict: PronouncingDictionary,
                           params: RhymeParams | None = None) -> float:
    return detect_rhymes(verse, pron_dict, params).weighted_density
