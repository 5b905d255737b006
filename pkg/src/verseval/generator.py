"""Baseline n-gram verse generator with skip-gram backoff, plus checkpoint suites.

Each verse is framed as a start sentinel, its tokens with line-break sentinels
between lines, and an end sentinel.  An unseen context backs off by wildcarding
the most recent position while keeping the older ones (a skip pattern), down to
the unigram table which always has support, so no smoothing is needed.

Externally generated verses (e.g. from a neural model) enter as iteration-named
text files and are aggregated into nine checkpoint points.
"""

from __future__ import annotations

import hashlib
import logging
import random
import re
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path

from .corpus import ArtistCorpus, Provenance, Verse
from .rhyme import PronouncingDictionary, RhymeParams, weighted_rhyme_density
from .similarity import TfIdfIndex, max_similarity

log = logging.getLogger(__name__)

START = "<s>"
END = "</s>"
BREAK = "<br>"
SENTINELS = frozenset({START, END, BREAK})

MAX_ORDER = 9
DEFAULT_MAX_TOKENS = 1100  # above the longest real verse length we evaluate

CHECKPOINT_STEP = 2000
CHECKPOINT_LAST = 16000
CHECKPOINT_OFFSETS = (0, 100, 200, 300, 400, -100, -200, -300, -400)

_ITER_FILE = re.compile(r"^iter_(\d+)\.txt$")


class OrderError(ValueError):
    pass


class MissingCheckpointError(ValueError):
    def __init__(self, x: int):
        super().__init__(f"no checkpoint verses within +/-400 of iteration {x}")
        self.x = x


@dataclass
class NGramModel:
    order: int
    artist_id: str
    # (context length, wildcards) -> older-context tuple -> next-token counts
    tables: dict[tuple[int, int], dict[tuple[str, ...], Counter]]
    vocabulary: set[str]


@dataclass
class CheckpointPoint:
    x: float  # iteration number, or n-gram length for the baseline
    avg_rhyme_density: float
    avg_max_similarity: float
    verse_refs: list[str] = field(default_factory=list)


def frame(verse: Verse) -> list[str]:
    seq = [START]
    for k, line in enumerate(verse.lines):
        if k > 0:
            seq.append(BREAK)
        seq.extend(line)
    seq.append(END)
    return seq


def train(corpus: ArtistCorpus, n: int) -> NGramModel:
    """Collect next-token counts for every context length and skip pattern.

    For context length L (0..n-1) and k wildcards in the most recent slots,
    the table keys on the L-k oldest context tokens; every emission position
    with at least L predecessors contributes.
    """
    if not 1 <= n <= MAX_ORDER:
        raise OrderError(f"n must be in [1, {MAX_ORDER}], got {n}")
    if not corpus.verses:
        raise OrderError("cannot train on an empty corpus")
    tables: dict[tuple[int, int], dict[tuple[str, ...], Counter]] = {(0, 0): {(): Counter()}}
    for L in range(1, n):
        for k in range(L):
            tables[(L, k)] = {}
    vocab = {START, END, BREAK}
    for verse in corpus.verses:
        seq = frame(verse)
        vocab.update(seq)
        for p in range(1, len(seq)):
            target = seq[p]
            tables[(0, 0)][()][target] += 1
            for L in range(1, min(p, n - 1) + 1):
                window = tuple(seq[p - L:p])
                for k in range(L):
                    key = window[:L - k]
                    table = tables[(L, k)]
                    bucket = table.get(key)
                    if bucket is None:
                        bucket = table[key] = Counter()
                    bucket[target] += 1
    return NGramModel(order=n, artist_id=corpus.artist_id,
                      tables=tables, vocabulary=vocab)


def next_token_distribution(model: NGramModel, context: list[str]) -> dict[str, float]:
    """Normalized counts for the seen pattern closest to the full context.

    Tries the exact trailing (n-1)-context, then wildcards the most recent
    position, and so on; the unigram level terminates the chain.
    """
    ctx = tuple(context)[-(model.order - 1):] if model.order > 1 else ()
    L = len(ctx)
    for k in range(L):
        counts = model.tables.get((L, k), {}).get(ctx[:L - k])
        if counts:
            return _normalize(counts)
    return _normalize(model.tables[(0, 0)][()])


def _normalize(counts: Counter) -> dict[str, float]:
    total = sum(counts.values())
    return {tok: c / total for tok, c in counts.items()}


def derive_seed(*parts) -> int:
    """Stable sub-seed from a label, identical across platforms and runs."""
    label = ":".join(str(p) for p in parts)
    return int.from_bytes(hashlib.sha256(label.encode()).digest()[:8], "big")


def generate_verse(model: NGramModel, rng_seed: int,
                   max_tokens: int = DEFAULT_MAX_TOKENS,
                   greedy: bool = False, verse_id: str = "") -> Verse:
    """Sample a verse token by token; deterministic for a fixed seed.

    Greedy mode takes the argmax with lexicographic tie-breaking.  Sentinels
    never appear in the surface text; the end sentinel is suppressed until at
    least one surface token has been emitted.
    """
    if max_tokens < 1:
        raise ValueError(f"max_tokens must be >= 1, got {max_tokens}")
    rng = random.Random(rng_seed)
    history: list[str] = [START]
    lines: list[list[str]] = [[]]
    surface = 0
    while surface < max_tokens:
        dist = next_token_distribution(model, history)
        if surface == 0:
            dist = {t: p for t, p in dist.items() if t != END}
            if not dist:  # unigram of a single-token corpus verse
                dist = {next(iter(model.tables[(0, 0)][()])): 1.0}
        token = _pick(dist, rng, greedy)
        if token == END:
            break
        history.append(token)
        if token == BREAK:
            if lines[-1]:
                lines.append([])
        else:
            lines[-1].append(token)
            surface += 1
    if not lines[-1]:
        lines.pop()
    return Verse(
        artist_id=model.artist_id,
        verse_id=verse_id or f"{model.artist_id}:gen-n{model.order}-s{rng_seed}",
        lines=lines or [[]],
        provenance=Provenance.generated(model.order),
    )


def _pick(dist: dict[str, float], rng: random.Random, greedy: bool) -> str:
    items = sorted(dist.items())
    if greedy:
        # argmax; sorted order makes ties break lexicographically
        return max(items, key=lambda kv: kv[1])[0]
    r = rng.random()
    acc = 0.0
    for tok, p in items:
        acc += p
        if r < acc:
            return tok
    return items[-1][0]  # guard against accumulated float error


def score_point(x: float, verses: list[Verse], index: TfIdfIndex,
                pron_dict: PronouncingDictionary,
                params: RhymeParams | None = None) -> CheckpointPoint:
    """Average weighted rhyme density and max similarity over one verse batch."""
    rd = [weighted_rhyme_density(v, pron_dict, params) for v in verses]
    sim = [max_similarity(index, v).score for v in verses]
    return CheckpointPoint(
        x=x,
        avg_rhyme_density=sum(rd) / len(rd),
        avg_max_similarity=sum(sim) / len(sim),
        verse_refs=[v.verse_id for v in verses],
    )


def baseline_checkpoint_suite(corpus: ArtistCorpus, index: TfIdfIndex,
                              pron_dict: PronouncingDictionary,
                              params: RhymeParams | None = None,
                              seed: int = 0, verses_per_n: int = 5,
                              max_tokens: int = DEFAULT_MAX_TOKENS,
                              ) -> tuple[list[CheckpointPoint], list[Verse]]:
    """Nine points: for each n in 1..9 generate verses and average the metrics."""
    points = []
    all_verses = []
    for n in range(1, MAX_ORDER + 1):
        model = train(corpus, n)
        verses = []
        for i in range(verses_per_n):
            vid = f"{corpus.artist_id}:baseline-n{n}-v{i}"
            verses.append(generate_verse(
                model, derive_seed(seed, corpus.artist_id, n, i),
                max_tokens=max_tokens, verse_id=vid))
        points.append(score_point(float(n), verses, index, pron_dict, params))
        all_verses.extend(verses)
    return points, all_verses


def load_checkpoint_verses(directory: str | Path, artist_id: str = "") -> dict[int, Verse]:
    """Read ``iter_<k>.txt`` files; verbatim whitespace tokenization."""
    directory = Path(directory)
    artist = artist_id or directory.name
    verses: dict[int, Verse] = {}
    for f in sorted(directory.iterdir()):
        m = _ITER_FILE.match(f.name)
        if not m:
            continue
        iteration = int(m.group(1))
        lines = [ln.split() for ln in f.read_text(encoding="utf-8").splitlines()
                 if ln.split()]
        if not lines:
            continue
        verses[iteration] = Verse(
            artist_id=artist, verse_id=f"{artist}:iter{iteration}",
            lines=lines, provenance=Provenance.generated(iteration))
    return verses


def external_checkpoint_suite(directory: str | Path, index: TfIdfIndex,
                              pron_dict: PronouncingDictionary,
                              params: RhymeParams | None = None,
                              artist_id: str = "") -> tuple[list[CheckpointPoint], dict[int, Verse]]:
    """Nine points at iterations 0, 2000, ..., 16000.

    Each point averages the verses found at x and x +/- {100,...,400}; a
    2000-multiple with nothing in its window is an error naming x.
    """
    verses = load_checkpoint_verses(directory, artist_id)
    points = []
    for x in range(0, CHECKPOINT_LAST + 1, CHECKPOINT_STEP):
        batch = [verses[x + off] for off in CHECKPOINT_OFFSETS if x + off in verses]
        if not batch:
            raise MissingCheckpointError(x)
        if len(batch) == 1:
            log.warning("checkpoint %d: only the exact-multiple verse present", x)
        points.append(score_point(float(x), batch, index, pron_dict, params))
    return points, verses
