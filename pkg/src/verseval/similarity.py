"""Textual uniqueness scoring: max tf-idf cosine against an artist's training verses.

A generated verse that rebuilds a single training verse scores near 1; one that
draws from many training verses scores low.  Token weight in verse i is
``f_ij * ln(N / n_j)`` where N is the number of training verses and n_j the
number of them containing token j, so corpus-wide tokens vanish from every
vector.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass

from .corpus import Verse

# model-internal sentinels; excluded from vectors by default
STRUCTURAL_TOKENS = frozenset({"<s>", "</s>", "<br>"})


class EmptyIndexError(ValueError):
    """Raised when building an index over zero training verses."""


@dataclass(frozen=True)
class SimilarityScore:
    score: float
    best_verse_id: str | None
    degenerate: bool  # candidate vector was all-zero


class TfIdfIndex:
    """Immutable per-artist index of training-verse tf-idf vectors."""

    def __init__(self, training: list[Verse], include_structural: bool = False):
        if not training:
            raise EmptyIndexError("cannot index an empty training set")
        self.include_structural = include_structural
        self.N = len(training)
        self.verse_ids = [v.verse_id for v in training]
        self.term_freq: list[Counter] = []
        self.doc_freq: Counter = Counter()
        for v in training:
            tf = Counter(self._usable(v))
            self.term_freq.append(tf)
            self.doc_freq.update(tf.keys())
        self._idf = {tok: math.log(self.N / nj) for tok, nj in self.doc_freq.items()}
        self._vectors = [
            {tok: f * self._idf[tok] for tok, f in tf.items() if self._idf[tok] > 0.0}
            for tf in self.term_freq
        ]
        self.weight_norms = [math.sqrt(sum(w * w for w in vec.values()))
                             for vec in self._vectors]

    def _usable(self, verse: Verse) -> list[str]:
        toks = verse.tokens()
        if self.include_structural:
            return toks
        return [t for t in toks if t not in STRUCTURAL_TOKENS]

    def vectorize(self, verse: Verse) -> dict[str, float]:
        """Candidate vector under the index's idf; unknown tokens get weight 0."""
        vec = {}
        for tok, f in Counter(self._usable(verse)).items():
            idf = self._idf.get(tok, 0.0)
            if idf > 0.0:
                vec[tok] = f * idf
        return vec


def build_index(training: list[Verse], include_structural: bool = False) -> TfIdfIndex:
    return TfIdfIndex(training, include_structural=include_structural)


def cosine(u: dict[str, float], v: dict[str, float]) -> float:
    nu = math.sqrt(sum(w * w for w in u.values()))
    nv = math.sqrt(sum(w * w for w in v.values()))
    if nu == 0.0 or nv == 0.0:
        return 0.0
    if len(v) < len(u):
        u, v = v, u
    dot = sum(w * v[t] for t, w in u.items() if t in v)
    return dot / (nu * nv)


def max_similarity(index: TfIdfIndex, candidate: Verse) -> SimilarityScore:
    """Max cosine between the candidate and any single training verse.

    An all-zero candidate vector (every token unknown or idf-zero) scores 0.0
    with the degenerate flag set; never NaN.
    """
    cand = index.vectorize(candidate)
    cnorm = math.sqrt(sum(w * w for w in cand.values()))
    if cnorm == 0.0:
        return SimilarityScore(0.0, None, degenerate=True)
    best, best_id = 0.0, None
    for vec, vnorm, vid in zip(index._vectors, index.weight_norms, index.verse_ids):
        if vnorm == 0.0:
            continue
        dot = sum(w * vec[t] for t, w in cand.items() if t in vec)
        sim = dot / (cnorm * vnorm)
        if sim > best:
            best, best_id = sim, vid
    return SimilarityScore(min(best, 1.0), best_id, degenerate=False)
