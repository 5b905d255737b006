"""Manual-evaluation machinery: style-match pages and all annotation statistics.

Fluency and coherence are graded per line on a strong/weak/none scale by two
annotators and averaged into one score per verse.  Style matching shows an
evaluation verse next to four candidates (one from the target artist, three
from distinct other artists); match rates, agreement and the artist confusion
matrix all derive from those forced choices.
"""

from __future__ import annotations

import random
from collections import Counter, defaultdict
from dataclasses import dataclass, field

from .corpus import Verse

LABEL_VALUES = {"strong": 1.0, "weak": 0.5, "none": 0.0}
DISTRACTORS_PER_PAGE = 3
ANNOTATORS_PER_ITEM = 2
STYLE_POOL_MIN_TOKENS = 40


def _display(verse: Verse) -> tuple[str, ...]:
    """Verse lines as annotator-facing strings (tokens joined by spaces)."""
    return tuple(" ".join(line) for line in verse.lines)


class LayoutError(ValueError):
    pass


class InsufficientPoolError(ValueError):
    pass


class IncompleteAnnotationError(ValueError):
    def __init__(self, message: str, missing: list | None = None):
        super().__init__(message)
        self.missing = missing or []


@dataclass(frozen=True)
class LineAnnotation:
    task: str  # "fluency" | "coherence"
    verse_id: str
    line_index: int
    annotator_id: str
    label: str  # "strong" | "weak" | "none"


@dataclass(frozen=True)
class PageChoice:
    verse_id: str
    artist_id: str
    lines: tuple[str, ...]


@dataclass
class StyleMatchPage:
    page_id: str
    eval_verse_id: str
    eval_artist_id: str
    eval_provenance: str  # "authentic" | "generated"
    eval_lines: tuple[str, ...]
    choices: list[PageChoice]
    target_choice_index: int  # hidden from annotators


@dataclass(frozen=True)
class StyleMatchAnnotation:
    page_id: str
    annotator_id: str
    chosen_index: int


@dataclass(frozen=True)
class MatchTally:
    m: int    # annotations picking the target artist's verse
    a: int    # total annotations
    m_A: int  # agreed pages whose agreed choice is the target
    s_A: int  # pages where both annotators chose the same index
    pages: int

    @property
    def match_pct(self) -> float:
        return 100.0 * self.m / self.a

    @property
    def match_a_pct(self) -> float | None:
        if self.s_A == 0:
            return None  # undefined, never zero
        return 100.0 * self.m_A / self.s_A

    @property
    def agreement_pct(self) -> float:
        return 100.0 * self.s_A / self.pages


def build_style_pages(eval_verses: list[Verse], pools: dict[str, list[Verse]],
                      seed: int, min_tokens: int = STYLE_POOL_MIN_TOKENS,
                      ) -> list[StyleMatchPage]:
    """Construct the forced-choice pages for a batch of evaluation verses.

    Per eval verse there is one page per group of three other artists, so the
    other-artist count must divide by 3 (12 others -> 4 pages).  Across one
    verse's pages every other artist supplies exactly one distractor verse,
    and each page carries one authentic target-artist verse that is never the
    eval verse itself.  Deterministic for a fixed seed.
    """
    rng = random.Random(seed)
    artists = sorted(pools)
    usable = {a: [v for v in pools[a] if v.token_count >= min_tokens]
              for a in artists}
    for a in artists:
        if not usable[a]:
            raise InsufficientPoolError(
                f"artist {a!r} has no pool verses with >= {min_tokens} tokens")

    pages: list[StyleMatchPage] = []
    for ev in eval_verses:
        target = ev.artist_id
        if target not in pools:
            raise InsufficientPoolError(f"no pool for eval artist {target!r}")
        others = [a for a in artists if a != target]
        if len(others) % DISTRACTORS_PER_PAGE != 0:
            raise LayoutError(
                f"{len(others)} other artists cannot split into groups of "
                f"{DISTRACTORS_PER_PAGE} (remainder {len(others) % DISTRACTORS_PER_PAGE})")
        n_pages = len(others) // DISTRACTORS_PER_PAGE
        own = [v for v in usable[target] if v.verse_id != ev.verse_id]
        if len(own) < n_pages:
            raise InsufficientPoolError(
                f"artist {target!r} needs {n_pages} distinct pool verses "
                f"besides {ev.verse_id!r}, has {len(own)}")
        rng.shuffle(others)
        own_picks = rng.sample(own, n_pages)
        for p in range(n_pages):
            group = others[p * DISTRACTORS_PER_PAGE:(p + 1) * DISTRACTORS_PER_PAGE]
            own_v = own_picks[p]
            choices = [PageChoice(own_v.verse_id, target, _display(own_v))]
            for b in group:
                v = rng.choice(usable[b])
                choices.append(PageChoice(v.verse_id, b, _display(v)))
            rng.shuffle(choices)
            target_idx = next(i for i, c in enumerate(choices)
                              if c.artist_id == target)
            pages.append(StyleMatchPage(
                page_id=f"{target}:{ev.verse_id}:p{p}",
                eval_verse_id=ev.verse_id,
                eval_artist_id=target,
                eval_provenance=ev.provenance.kind,
                eval_lines=_display(ev),
                choices=choices,
                target_choice_index=target_idx,
            ))
    return pages


# --- fluency / coherence ----------------------------------------------------

def eligible_lines(verse: Verse, task: str) -> list[int]:
    if task == "coherence":
        return list(range(1, len(verse.lines)))  # line 0 has no preceding line
    return list(range(len(verse.lines)))


def flag_repeated_lines(annotations: list[LineAnnotation],
                        verse: Verse) -> list[LineAnnotation]:
    """Force consecutive duplicate lines to not-coherent; idempotent pre-pass."""
    repeated = {i for i in range(1, len(verse.lines))
                if verse.lines[i] == verse.lines[i - 1]}
    out = []
    for ann in annotations:
        if ann.task == "coherence" and ann.verse_id == verse.verse_id \
                and ann.line_index in repeated and ann.label != "none":
            ann = LineAnnotation(ann.task, ann.verse_id, ann.line_index,
                                 ann.annotator_id, "none")
        out.append(ann)
    return out


def _gather(annotations: list[LineAnnotation], verse: Verse,
            task: str) -> dict[int, list[str]]:
    lines = eligible_lines(verse, task)
    got: dict[int, list[str]] = defaultdict(list)
    for ann in annotations:
        if ann.task == task and ann.verse_id == verse.verse_id:
            got[ann.line_index].append(ann.label)
    bad = [i for i in lines if len(got.get(i, [])) != ANNOTATORS_PER_ITEM]
    if bad:
        raise IncompleteAnnotationError(
            f"verse {verse.verse_id!r} {task}: lines {bad} lack exactly "
            f"{ANNOTATORS_PER_ITEM} annotations", missing=bad)
    return {i: got[i] for i in lines}


def fluency_score(annotations: list[LineAnnotation], verse: Verse,
                  task: str = "fluency") -> float:
    """(#strong + 0.5 * #weak) / #annotations, two annotators per line."""
    if task == "coherence":
        annotations = flag_repeated_lines(annotations, verse)
    labels = [lab for labs in _gather(annotations, verse, task).values()
              for lab in labs]
    return sum(LABEL_VALUES[lab] for lab in labels) / len(labels)


def coherence_score(annotations: list[LineAnnotation], verse: Verse) -> float:
    return fluency_score(annotations, verse, task="coherence")


def raw_iaa(annotations: list[LineAnnotation], verses: list[Verse],
            task: str = "fluency") -> float:
    """Fraction of lines on which the two annotators gave identical labels."""
    agree = total = 0
    for verse in verses:
        anns = annotations
        if task == "coherence":
            anns = flag_repeated_lines(anns, verse)
        for labs in _gather(anns, verse, task).values():
            total += 1
            if labs[0] == labs[1]:
                agree += 1
    if total == 0:
        raise IncompleteAnnotationError("no annotated lines")
    return agree / total


# --- style matching ---------------------------------------------------------

def _index_annotations(pages: list[StyleMatchPage],
                       annotations: list[StyleMatchAnnotation],
                       ) -> dict[str, list[StyleMatchAnnotation]]:
    by_page: dict[str, list[StyleMatchAnnotation]] = defaultdict(list)
    for ann in annotations:
        by_page[ann.page_id].append(ann)
    bad = [p.page_id for p in pages
           if len(by_page.get(p.page_id, [])) != ANNOTATORS_PER_ITEM]
    if bad:
        raise IncompleteAnnotationError(
            f"pages without exactly {ANNOTATORS_PER_ITEM} annotations: {bad}",
            missing=bad)
    return by_page


def match_stats(pages: list[StyleMatchPage],
                annotations: list[StyleMatchAnnotation]) -> MatchTally:
    """Match%, agreed-match% and raw agreement over a set of pages."""
    by_page = _index_annotations(pages, annotations)
    m = a = m_agreed = s_agreed = 0
    for page in pages:
        anns = by_page[page.page_id]
        for ann in anns:
            a += 1
            if ann.chosen_index == page.target_choice_index:
                m += 1
        if anns[0].chosen_index == anns[1].chosen_index:
            s_agreed += 1
            if anns[0].chosen_index == page.target_choice_index:
                m_agreed += 1
    return MatchTally(m=m, a=a, m_A=m_agreed, s_A=s_agreed, pages=len(pages))


@dataclass
class ConfusionMatrix:
    artists: list[str]
    chosen: dict[tuple[str, str], int] = field(default_factory=dict)     # c(a,b)
    presented: dict[tuple[str, str], int] = field(default_factory=dict)  # p(a,b)

    def value(self, a: str, b: str) -> float | None:
        pres = self.presented.get((a, b), 0) + self.presented.get((b, a), 0)
        if pres == 0:
            return None  # pair never presented: undefined
        chos = self.chosen.get((a, b), 0) + self.chosen.get((b, a), 0)
        return chos / pres


def confusion_matrix(pages: list[StyleMatchPage],
                     annotations: list[StyleMatchAnnotation]) -> ConfusionMatrix:
    """Symmetric confusion over artist pairs; callers pass authentic pages only.

    p(a,b) counts pages evaluating artist a that offered a verse of artist b;
    c(a,b) counts annotations on those pages that picked b's verse.
    """
    by_page = _index_annotations(pages, annotations)
    chosen: Counter = Counter()
    presented: Counter = Counter()
    artists: set[str] = set()
    for page in pages:
        a = page.eval_artist_id
        artists.add(a)
        for choice in page.choices:
            artists.add(choice.artist_id)
            if choice.artist_id != a:
                presented[(a, choice.artist_id)] += 1
        for ann in by_page[page.page_id]:
            b = page.choices[ann.chosen_index].artist_id
            if b != a:
                chosen[(a, b)] += 1
    return ConfusionMatrix(artists=sorted(artists),
                           chosen=dict(chosen), presented=dict(presented))


# --- serialization ----------------------------------------------------------

def page_to_dict(page: StyleMatchPage) -> dict:
    return {
        "page_id": page.page_id,
        "eval_verse_id": page.eval_verse_id,
        "eval_artist_id": page.eval_artist_id,
        "eval_provenance": page.eval_provenance,
        "eval_lines": list(page.eval_lines),
        "choices": [{"verse_id": c.verse_id, "artist_id": c.artist_id,
                     "lines": list(c.lines)} for c in page.choices],
        "target_choice_index": page.target_choice_index,
    }


def page_from_dict(d: dict) -> StyleMatchPage:
    return StyleMatchPage(
        page_id=d["page_id"],
        eval_verse_id=d["eval_verse_id"],
        eval_artist_id=d["eval_artist_id"],
        eval_provenance=d["eval_provenance"],
        eval_lines=tuple(d["eval_lines"]),
        choices=[PageChoice(c["verse_id"], c["artist_id"], tuple(c["lines"]))
                 for c in d["choices"]],
        target_choice_index=d["target_choice_index"],
    )


def annotations_from_records(records: list[dict],
                             ) -> tuple[list[LineAnnotation],
                                        list[StyleMatchAnnotation]]:
    """Split exported records into line grades and style choices."""
    lines: list[LineAnnotation] = []
    styles: list[StyleMatchAnnotation] = []
    for rec in records:
        if rec["task"] == "style":
            styles.append(StyleMatchAnnotation(
                page_id=rec["page_id"], annotator_id=rec["annotator_id"],
                chosen_index=rec["chosen_index"]))
        else:
            lines.append(LineAnnotation(
                task=rec["task"], verse_id=rec["verse_id"],
                line_index=rec["line_index"],
                annotator_id=rec["annotator_id"], label=rec["label"]))
    return lines, styles
