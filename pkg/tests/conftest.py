"""Shared fixtures: pronunciation dictionary, verse builders, tiny corpora."""

from __future__ import annotations

import random

import pytest

from verseval.corpus import ArtistCorpus, Provenance, Verse
from verseval.rhyme import default_dictionary


def make_verse(text: str, artist: str = "a", verse_id: str = "a:v0",
               provenance: Provenance | None = None) -> Verse:
    """Verse from newline-separated, space-tokenized text."""
    lines = [ln.split() for ln in text.strip().splitlines() if ln.split()]
    return Verse(artist_id=artist, verse_id=verse_id, lines=lines,
                 provenance=provenance or Provenance.authentic())


def make_corpus(texts: list[str], artist: str = "a") -> ArtistCorpus:
    verses = [make_verse(t, artist, f"{artist}:v{k:03d}") for k, t in enumerate(texts)]
    return ArtistCorpus(artist_id=artist, verses=verses)


def random_corpus(rng: random.Random, artist: str = "a",
                  max_tokens: int = 200, vocab_size: int | None = None,
                  ) -> ArtistCorpus:
    """Small corpus of random verses with at most ``max_tokens`` tokens total."""
    vocab = [f"w{k}" for k in range(vocab_size or rng.randint(3, 12))]
    budget = rng.randint(max_tokens // 2, max_tokens)
    texts = []
    while budget > 0:
        n_lines = rng.randint(1, 4)
        lines = []
        for _ in range(n_lines):
            n_tok = rng.randint(1, 8)
            lines.append(" ".join(rng.choice(vocab) for _ in range(n_tok)))
            budget -= n_tok
        texts.append("\n".join(lines))
    return make_corpus(texts, artist)


@pytest.fixture(scope="session")
def pron():
    return default_dictionary()


@pytest.fixture
def rng():
    return random.Random(0xC0FFEE)
