#!/usr/bin/env python3
"""Regenerate the packaged golden mini-corpus (3 synthetic artists x 20 verses).

The corpus is checked in as package data; rerun this only when the layout
must change, then re-freeze any test constants that depend on it.  Every
content word comes from the packaged pronouncing dictionary so rhyme
transcriptions never fall back to grapheme guessing.  Each artist has a
distinct rhyme-richness profile so corpus statistics and densities spread out.
"""

import argparse
import random
from pathlib import Path

FAMILIES = {
    "ay": ["day", "say", "way", "play", "stay", "gray", "pray", "away", "today", "pay"],
    "ite": ["night", "light", "fight", "right", "bright", "sight", "tight", "flight", "write"],
    "een": ["green", "seen", "queen", "clean", "mean", "scene", "between"],
    "old": ["gold", "cold", "bold", "told", "old", "hold"],
    "ame": ["name", "game", "fame", "flame", "same", "came", "shame", "claim", "aim"],
    "ine": ["line", "mine", "shine", "fine", "nine", "sign"],
    "ime": ["time", "rhyme", "climb", "dime", "lime"],
    "ow": ["flow", "go", "show", "know", "slow", "low", "grow", "snow"],
    "at": ["cat", "hat", "bat", "rat", "flat", "that"],
    "an": ["man", "plan", "can", "ran", "van"],
    "ing": ["king", "ring", "sing", "thing", "bring", "swing", "spring"],
    "ool": ["fool", "cool", "school", "rule", "pool", "tool"],
    "eet": ["street", "beat", "heat", "sweet", "feet", "meet", "complete"],
    "ound": ["sound", "ground", "round", "found", "around"],
    "ack": ["back", "track", "black", "stack", "pack", "attack"],
    "ane": ["pain", "rain", "train", "chain", "brain", "lane", "again"],
    "own": ["town", "down", "crown", "brown"],
}

# Filler pool balanced across vowel nuclei with mixed coda classes, so the
# accidental assonance floor stays well below the deliberate rhyme signal.
FILLERS = [
    "the", "a", "up", "one", "love", "from",
    "we", "deep", "feel", "streets",
    "my", "mind", "life",
    "with", "this", "still", "in",
    "when", "let", "tell", "them",
    "make", "brave", "late",
    "verse", "world", "burn",
    "road", "home", "soul",
    "got", "dark", "was", "heart", "bars",
    "you", "truth", "moon",
    "for", "your",
    "out", "now",
    "voice",
]

# (internal-rhyme prob, couplet prob, lines per verse, tokens per line)
STYLES = {
    "ash": (0.16, 0.90, (8, 10), (6, 8)),
    "blaze": (0.06, 0.65, (8, 12), (5, 8)),
    "coda": (0.03, 0.60, (9, 12), (5, 7)),
}
CHORUS = ["Chorus: repeat after me now", "(Hook) la la la (x2)"]


class Deck:
    """Shuffled sampling without local repeats, so accidental assonance
    between nearby filler words stays low."""

    def __init__(self, rng, words):
        self.rng, self.words, self.pile = rng, list(words), []

    def draw(self):
        if not self.pile:
            self.pile = self.rng.sample(self.words, len(self.words))
        return self.pile.pop()


def make_line(rng, deck, family, n_tokens, internal_p, end_word):
    words = []
    while len(words) < n_tokens - 1:
        if rng.random() < internal_p:
            words.append(rng.choice(FAMILIES[family]))
        else:
            words.append(deck.draw())
    words.append(end_word)
    return " ".join(words)


def make_verse(rng, style):
    internal_p, couplet_p, line_range, tok_range = style
    n_lines = rng.randint(*line_range)
    deck = Deck(rng, FILLERS)
    lines = []
    family = rng.choice(list(FAMILIES))
    end = None
    for i in range(n_lines):
        if i % 2 == 0:
            family = rng.choice(list(FAMILIES))
            end = rng.choice(FAMILIES[family])
            keep = rng.random() < couplet_p
        else:
            if keep:
                others = [w for w in FAMILIES[family] if w != end] or FAMILIES[family]
                end = rng.choice(others)
            else:
                family = rng.choice(list(FAMILIES))
                end = rng.choice(FAMILIES[family])
        lines.append(make_line(rng, deck, family, rng.randint(*tok_range),
                               internal_p, end))
    return lines


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="src/verseval/data/golden_corpus")
    parser.add_argument("--seed", type=int, default=20240717)
    parser.add_argument("--songs", type=int, default=10)
    parser.add_argument("--verses-per-song", type=int, default=2)
    args = parser.parse_args()

    out = Path(args.out)
    for artist, style in STYLES.items():
        rng = random.Random((args.seed, artist).__repr__())
        adir = out / artist
        adir.mkdir(parents=True, exist_ok=True)
        for old in adir.glob("*.txt"):
            old.unlink()
        for s in range(args.songs):
            blocks = [f"Artist: {artist.title()}", f"Song: Cut {s + 1:02d}", ""]
            for v in range(args.verses_per_song):
                blocks.extend(make_verse(rng, style))
                blocks.append("")
                if v == 0:
                    blocks.append(rng.choice(CHORUS))
                    blocks.append("")
            (adir / f"song{s + 1:02d}.txt").write_text(
                "\n".join(blocks).rstrip() + "\n", encoding="utf-8")
        print(f"wrote {args.songs} songs for {artist}")

    # report the densities the corpus actually achieves
    from verseval.corpus import load_artist_dir
    from verseval.rhyme import default_dictionary, weighted_rhyme_density

    pron = default_dictionary()
    for artist in STYLES:
        corpus = load_artist_dir(out / artist, artist_id=artist)
        dens = [weighted_rhyme_density(v, pron) for v in corpus.verses]
        oov = sorted({t for v in corpus.verses for t in v.tokens()
                      if t not in pron})
        print(f"{artist}: {len(corpus.verses)} verses, "
              f"avg weighted density {sum(dens) / len(dens):.3f}, "
              f"oov={oov}")


if __name__ == "__main__":
    main()
