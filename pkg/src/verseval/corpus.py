"""Lyric ingestion: cleaning, verse segmentation, tokenization and corpus statistics.

Raw input is one plain-text file per song.  A blank line separates verses;
lines matching configurable metadata / chorus markers are dropped before
tokenization.  Verses shorter than the token floor are discarded entirely.
"""

from __future__ import annotations

import json
import re
import statistics
from dataclasses import dataclass, field
from pathlib import Path

DEFAULT_MIN_TOKENS = 20

_HAS_ALNUM = re.compile(r"[a-z0-9]")
_NON_TOKEN = re.compile(r"[^a-z0-9']+")


class EmptyCorpusError(ValueError):
    """Raised when an operation requires at least one verse."""


@dataclass(frozen=True)
class Provenance:
    kind: str  # "authentic" | "generated"
    checkpoint: int | None = None

    @classmethod
    def authentic(cls) -> "Provenance":
        return cls("authentic")

    @classmethod
    def generated(cls, checkpoint: int) -> "Provenance":
        return cls("generated", checkpoint)


@dataclass
class Verse:
    """Tokenized lines of one verse plus artist id and provenance."""

    artist_id: str
    verse_id: str
    lines: list[list[str]]
    provenance: Provenance = field(default_factory=Provenance.authentic)

    @property
    def token_count(self) -> int:
        return sum(len(line) for line in self.lines)

    def tokens(self) -> list[str]:
        return [tok for line in self.lines for tok in line]

    def text(self) -> str:
        return "\n".join(" ".join(line) for line in self.lines)


@dataclass
class ArtistCorpus:
    artist_id: str
    verses: list[Verse]

    @property
    def vocabulary(self) -> set[str]:
        return {tok for v in self.verses for tok in v.tokens()}

    @property
    def total_tokens(self) -> int:
        return sum(v.token_count for v in self.verses)


@dataclass(frozen=True)
class CorpusStats:
    verse_count: int
    unique_vocab: int
    vocab_richness: float  # percent
    avg_len: float
    stdev_len: float
    max_len: int


@dataclass
class CleaningRules:
    """Heuristic line filters, kept as data so they stay configurable.

    `metadata_patterns` and `chorus_patterns` drop whole lines; `strip_patterns`
    remove matching substrings (e.g. repetition markup) before tokenization.
    All patterns are matched case-insensitively against the raw line.
    """

    metadata_patterns: list[str] = field(default_factory=lambda: [
        r"^\s*artist\s*:",
        r"^\s*album\s*:",
        r"^\s*song\s*:",
        r"^\s*title\s*:",
        r"^\s*typed\s+by\s*:",
        r"^\s*\[",
    ])
    chorus_patterns: list[str] = field(default_factory=lambda: [
        r"^\s*\(?\s*chorus",
        r"^\s*\(?\s*hook",
        r"^\s*\(?\s*refrain",
    ])
    strip_patterns: list[str] = field(default_factory=lambda: [
        r"\(\s*x\s*\d+\s*\)",
        r"\(\s*\d+\s*x\s*\)",
        r"\(\s*repeat(?:\s+\d+\s*x?)?\s*\)",
        r"\*[^*\n]*\*",
    ])
    min_tokens: int = DEFAULT_MIN_TOKENS

    def _compiled(self) -> tuple[list[re.Pattern], list[re.Pattern]]:
        drop = [re.compile(p, re.IGNORECASE)
                for p in self.metadata_patterns + self.chorus_patterns]
        strip = [re.compile(p, re.IGNORECASE) for p in self.strip_patterns]
        return drop, strip


def tokenize(text: str) -> list[str]:
    """Lowercase, detach punctuation (apostrophes stay inside tokens), split."""
    text = text.lower().replace("’", "'")
    text = _NON_TOKEN.sub(" ", text)
    return [t for t in text.split() if _HAS_ALNUM.search(t)]


def parse_lyrics(raw_text: str, rules: CleaningRules | None = None,
                 artist_id: str = "", source_id: str = "") -> list[Verse]:
    """Segment raw song text into cleaned, tokenized verses.

    Verse boundaries are blank lines.  Dropped (metadata/chorus) lines do not
    split a verse.  Verses below ``rules.min_tokens`` are filtered out.
    """
    rules = rules or CleaningRules()
    drop, strip = rules._compiled()

    stanzas: list[list[list[str]]] = []
    current: list[list[str]] = []
    for raw_line in raw_text.splitlines():
        if not raw_line.strip():
            if current:
                stanzas.append(current)
                current = []
            continue
        if any(p.search(raw_line) for p in drop):
            continue
        line = raw_line
        for p in strip:
            line = p.sub(" ", line)
        toks = tokenize(line)
        if toks:
            current.append(toks)
    if current:
        stanzas.append(current)

    prefix = source_id or artist_id or "verse"
    verses = []
    for lines in stanzas:
        v = Verse(artist_id=artist_id, verse_id="", lines=lines)
        if v.token_count >= rules.min_tokens:
            v.verse_id = f"{prefix}:v{len(verses):03d}"
            verses.append(v)
    return verses


def corpus_stats(corpus: ArtistCorpus) -> CorpusStats:
    """Verse count, vocabulary size and richness, token-length moments.

    Richness is 100 * unique_vocab / total_tokens; the length stdev is the
    population standard deviation.
    """
    if not corpus.verses:
        raise EmptyCorpusError(f"no verses for artist {corpus.artist_id!r}")
    lengths = [v.token_count for v in corpus.verses]
    total = sum(lengths)
    unique = len(corpus.vocabulary)
    return CorpusStats(
        verse_count=len(corpus.verses),
        unique_vocab=unique,
        vocab_richness=100.0 * unique / total,
        avg_len=statistics.fmean(lengths),
        stdev_len=statistics.pstdev(lengths),
        max_len=max(lengths),
    )


def load_artist_dir(artist_dir: str | Path, rules: CleaningRules | None = None,
                    artist_id: str | None = None) -> ArtistCorpus:
    """Parse every ``*.txt`` song file under one artist directory.

    Files are read in sorted order so verse ids are stable across runs.
    """
    artist_dir = Path(artist_dir)
    artist = artist_id or artist_dir.name
    verses: list[Verse] = []
    for song in sorted(artist_dir.glob("*.txt")):
        raw = song.read_text(encoding="utf-8")  # strict: malformed bytes raise
        for v in parse_lyrics(raw, rules, artist_id=artist,
                              source_id=f"{artist}/{song.stem}"):
            verses.append(v)
    return ArtistCorpus(artist_id=artist, verses=verses)


def golden_corpus_root() -> Path:
    """Directory of the packaged demo corpus: three synthetic artists with
    distinct rhyme profiles, twenty verses each under default cleaning rules."""
    return Path(__file__).parent / "data" / "golden_corpus"


# --- manifest serialization -------------------------------------------------

def manifest_dict(corpus: ArtistCorpus, provenance: dict | None = None) -> dict:
    doc = {
        "artist_id": corpus.artist_id,
        "verses": [
            {
                "verse_id": v.verse_id,
                "lines": v.lines,
                "token_count": v.token_count,
                "provenance": v.provenance.kind,
                "checkpoint": v.provenance.checkpoint,
            }
            for v in corpus.verses
        ],
    }
    if provenance:
        doc["_provenance"] = provenance
    return doc


def write_manifest(corpus: ArtistCorpus, path: str | Path,
                   provenance: dict | None = None) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(manifest_dict(corpus, provenance), indent=1) + "\n",
                    encoding="utf-8")


def read_manifest(path: str | Path) -> ArtistCorpus:
    doc = json.loads(Path(path).read_text(encoding="utf-8"))
    verses = []
    for rec in doc["verses"]:
        if rec.get("provenance") == "generated":
            prov = Provenance.generated(rec.get("checkpoint"))
        else:
            prov = Provenance.authentic()
        verses.append(Verse(artist_id=doc["artist_id"], verse_id=rec["verse_id"],
                            lines=rec["lines"], provenance=prov))
    return ArtistCorpus(artist_id=doc["artist_id"], verses=verses)
