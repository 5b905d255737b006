"""Annotation layer: page construction, grading formulas, match/confusion stats."""

import random

import pytest

from conftest import make_verse
from verseval.annotation import (
    ANNOTATORS_PER_ITEM, DISTRACTORS_PER_PAGE, ConfusionMatrix,
    IncompleteAnnotationError, InsufficientPoolError, LayoutError,
    LineAnnotation, MatchTally, StyleMatchAnnotation, StyleMatchPage, PageChoice,
    annotations_from_records, build_style_pages, coherence_score,
    confusion_matrix, eligible_lines, flag_repeated_lines, fluency_score,
    match_stats, page_from_dict, page_to_dict, raw_iaa,
)


def _pool_verse(artist: str, k: int) -> "Verse":
    words = " ".join(f"{artist}w{k}t{i}" for i in range(9))
    text = "\n".join([words] * 5)  # 45 tokens, clears the pool floor
    return make_verse(text, artist=artist, verse_id=f"{artist}:p{k}")


def make_pools(artists: list[str], per_artist: int = 6):
    return {a: [_pool_verse(a, k) for k in range(per_artist)] for a in artists}


def make_eval_verses(artists: list[str], per_artist: int, pools):
    return [pools[a][k] for a in artists for k in range(per_artist)]


class TestBuildStylePages:
    def test_four_artists_one_page_each(self):
        artists = ["a1", "a2", "a3", "a4"]
        pools = make_pools(artists)
        evs = make_eval_verses(artists, 2, pools)
        pages = build_style_pages(evs, pools, seed=5)
        assert len(pages) == len(evs)
        for page in pages:
            assert len(page.choices) == DISTRACTORS_PER_PAGE + 1
            assert page.choices[page.target_choice_index].artist_id == page.eval_artist_id

    def test_distractor_coverage_each_other_artist_once(self):
        artists = [f"a{k}" for k in range(7)]  # 6 others -> 2 pages per verse
        pools = make_pools(artists)
        evs = make_eval_verses(artists, 2, pools)
        pages = build_style_pages(evs, pools, seed=5)
        assert len(pages) == len(evs) * 2
        by_ev = {}
        for page in pages:
            by_ev.setdefault(page.eval_verse_id, []).append(page)
        for ev in evs:
            group = by_ev[ev.verse_id]
            distractors = [c.artist_id for p in group for c in p.choices
                           if c.artist_id != ev.artist_id]
            assert sorted(distractors) == sorted(a for a in artists
                                                 if a != ev.artist_id)

    def test_target_choice_is_never_the_eval_verse(self):
        artists = ["a1", "a2", "a3", "a4"]
        pools = make_pools(artists)
        evs = make_eval_verses(artists, 3, pools)
        for page in build_style_pages(evs, pools, seed=1):
            tgt = page.choices[page.target_choice_index]
            assert tgt.artist_id == page.eval_artist_id
            assert tgt.verse_id != page.eval_verse_id

    def test_deterministic_for_seed(self):
        artists = ["a1", "a2", "a3", "a4"]
        pools = make_pools(artists)
        evs = make_eval_verses(artists, 2, pools)
        p1 = [page_to_dict(p) for p in build_style_pages(evs, pools, seed=9)]
        p2 = [page_to_dict(p) for p in build_style_pages(evs, pools, seed=9)]
        assert p1 == p2

    def test_seed_changes_layout(self):
        artists = ["a1", "a2", "a3", "a4"]
        pools = make_pools(artists)
        evs = make_eval_verses(artists, 4, pools)
        p1 = [page_to_dict(p) for p in build_style_pages(evs, pools, seed=1)]
        p2 = [page_to_dict(p) for p in build_style_pages(evs, pools, seed=2)]
        assert p1 != p2

    def test_artist_count_must_split_into_groups(self):
        artists = [f"a{k}" for k in range(6)]  # 5 others per verse
        pools = make_pools(artists)
        evs = make_eval_verses(artists, 1, pools)
        with pytest.raises(LayoutError) as exc:
            build_style_pages(evs, pools, seed=0)
        assert "remainder 2" in str(exc.value)

    def test_short_pool_verses_rejected(self):
        artists = ["a1", "a2", "a3", "a4"]
        pools = make_pools(artists)
        pools["a2"] = [make_verse("too short", artist="a2", verse_id="a2:p0")]
        evs = make_eval_verses(artists, 1, pools)
        with pytest.raises(InsufficientPoolError):
            build_style_pages(evs, pools, seed=0)

    def test_own_pool_must_have_spare_verses(self):
        artists = ["a1", "a2", "a3", "a4"]
        pools = make_pools(artists, per_artist=1)
        evs = [pools["a1"][0]]  # only a1 verse is also the eval verse
        with pytest.raises(InsufficientPoolError):
            build_style_pages(evs, pools, seed=0)

    def test_display_lines_are_joined_tokens(self):
        artists = ["a1", "a2", "a3", "a4"]
        pools = make_pools(artists)
        evs = make_eval_verses(artists, 1, pools)
        page = build_style_pages(evs, pools, seed=0)[0]
        assert page.eval_lines == tuple(" ".join(line) for line in evs[0].lines)
        for c in page.choices:
            assert all(" " in ln for ln in c.lines)

    def test_round_trip_serialization(self):
        artists = ["a1", "a2", "a3", "a4"]
        pools = make_pools(artists)
        evs = make_eval_verses(artists, 1, pools)
        for page in build_style_pages(evs, pools, seed=3):
            assert page_from_dict(page_to_dict(page)) == page


class TestEligibleAndFlags:
    def test_eligible_lines(self):
        v = make_verse("a b\nc d\ne f")
        assert eligible_lines(v, "fluency") == [0, 1, 2]
        assert eligible_lines(v, "coherence") == [1, 2]

    def test_flag_repeated_lines(self):
        v = make_verse("a b\na b\nc d", verse_id="v1")
        anns = [LineAnnotation("coherence", "v1", 1, "x", "strong"),
                LineAnnotation("coherence", "v1", 2, "x", "strong"),
                LineAnnotation("fluency", "v1", 1, "x", "strong")]
        out = flag_repeated_lines(anns, v)
        assert out[0].label == "none"       # repeated line forced down
        assert out[1].label == "strong"     # distinct line untouched
        assert out[2].label == "strong"     # fluency untouched
        assert flag_repeated_lines(out, v) == out  # idempotent


def grade(verse_id, task, labels_by_annotator):
    anns = []
    for who, labels in labels_by_annotator.items():
        for line, label in labels.items():
            anns.append(LineAnnotation(task, verse_id, line, who, label))
    return anns


class TestGradingScores:
    def test_published_fluency_example(self):
        # 20 annotations over 10 lines: 10 strong, 6 weak, 4 none -> 0.65
        v = make_verse("\n".join(f"line {i} tok" for i in range(10)), verse_id="v")
        a1 = {i: "strong" for i in range(7)} | {7: "weak", 8: "weak", 9: "weak"}
        a2 = {i: "strong" for i in range(3)} | {3: "weak", 4: "weak", 5: "weak"} \
             | {i: "none" for i in range(6, 10)}
        anns = grade("v", "fluency", {"x": a1, "y": a2})
        assert fluency_score(anns, v) == 0.65

    def test_coherence_skips_first_line(self):
        v = make_verse("a b\nc d\ne f", verse_id="v")
        anns = grade("v", "coherence",
                     {"x": {1: "strong", 2: "none"}, "y": {1: "strong", 2: "none"}})
        assert coherence_score(anns, v) == 0.5

    def test_coherence_forces_repeated_lines_down(self):
        v = make_verse("a b\na b\nc d", verse_id="v")
        anns = grade("v", "coherence",
                     {"x": {1: "strong", 2: "strong"},
                      "y": {1: "strong", 2: "strong"}})
        # line 1 repeats line 0: its two strongs count as none -> 2/4
        assert coherence_score(anns, v) == 0.5

    def test_incomplete_annotations_listed(self):
        v = make_verse("a b\nc d\ne f", verse_id="v")
        anns = grade("v", "fluency", {"x": {0: "strong", 1: "weak", 2: "none"},
                                      "y": {0: "strong", 2: "none"}})
        with pytest.raises(IncompleteAnnotationError) as exc:
            fluency_score(anns, v)
        assert exc.value.missing == [1]

    def test_triple_annotation_rejected(self):
        v = make_verse("a b", verse_id="v")
        anns = grade("v", "fluency", {"x": {0: "strong"}, "y": {0: "weak"},
                                      "z": {0: "none"}})
        with pytest.raises(IncompleteAnnotationError):
            fluency_score(anns, v)


class TestRawIaa:
    def test_hand_fraction(self):
        v = make_verse("a b\nc d\ne f\ng h", verse_id="v")
        anns = grade("v", "fluency",
                     {"x": {0: "strong", 1: "weak", 2: "none", 3: "strong"},
                      "y": {0: "strong", 1: "none", 2: "none", 3: "weak"}})
        assert raw_iaa(anns, [v]) == 0.5

    def test_no_lines_errors(self):
        with pytest.raises(IncompleteAnnotationError):
            raw_iaa([], [])


def style_pages_and_annotations(n_pages, correct_first, correct_second,
                                agree_extra=0):
    """Pages plus two annotations each; counts of correct picks per annotator."""
    pages = []
    anns = []
    for k in range(n_pages):
        page = StyleMatchPage(
            page_id=f"p{k}", eval_verse_id=f"ev{k}", eval_artist_id="t",
            eval_provenance="authentic", eval_lines=("x y",),
            choices=[PageChoice(f"c{k}{i}", a, ("l m",))
                     for i, a in enumerate(["t", "b1", "b2", "b3"])],
            target_choice_index=0)
        pages.append(page)
        first = 0 if k < correct_first else 1
        second = 0 if k < correct_second else (1 if k < correct_second + agree_extra
                                               else 2)
        anns.append(StyleMatchAnnotation("p" + str(k), "x", first))
        anns.append(StyleMatchAnnotation("p" + str(k), "y", second))
    return pages, anns


class TestMatchStats:
    def test_published_match_percentages(self):
        # 20 pages, 40 annotations, 14 correct -> Match% 35.0; the ten pages
        # where both picked the target are the agreed set -> Match_A% 50.0
        pages, anns = style_pages_and_annotations(20, correct_first=4,
                                                 correct_second=10,
                                                 agree_extra=10)
        tally = match_stats(pages, anns)
        assert (tally.m, tally.a) == (14, 40)
        assert tally.match_pct == 35.0
        assert round(tally.match_pct * tally.a / 100) == tally.m  # round-trips
        assert tally.s_A == 4 + 10  # 4 agree on target, 10 agree on choice 1
        assert tally.m_A == 4
        assert tally.match_a_pct == pytest.approx(100 * 4 / 14, abs=1e-12)
        assert tally.agreement_pct == pytest.approx(70.0, abs=1e-12)

    def test_agreed_percentage_undefined_without_agreement(self):
        pages, anns = style_pages_and_annotations(3, correct_first=3,
                                                  correct_second=0)
        tally = match_stats(pages, anns)
        assert tally.s_A == 0
        assert tally.match_a_pct is None

    def test_incomplete_pages_rejected(self):
        pages, anns = style_pages_and_annotations(2, 1, 1)
        with pytest.raises(IncompleteAnnotationError):
            match_stats(pages, anns[:-1])


class TestConfusion:
    def _random_set(self, rng, artists):
        pages = []
        anns = []
        for k in range(rng.randint(4, 12)):
            target = rng.choice(artists)
            others = rng.sample([a for a in artists if a != target], 3)
            order = [target] + others
            rng.shuffle(order)
            choices = [PageChoice(f"v{k}{i}", a, ("x",)) for i, a in enumerate(order)]
            pages.append(StyleMatchPage(
                page_id=f"p{k}", eval_verse_id=f"e{k}", eval_artist_id=target,
                eval_provenance="authentic", eval_lines=("x",),
                choices=choices, target_choice_index=order.index(target)))
            for who in ("x", "y"):
                anns.append(StyleMatchAnnotation(f"p{k}", who, rng.randrange(4)))
        return pages, anns

    def test_symmetric_on_randomized_sets(self):
        rng = random.Random(123)
        artists = [f"a{k}" for k in range(6)]
        for _ in range(100):
            pages, anns = self._random_set(rng, artists)
            cm = confusion_matrix(pages, anns)
            for a in artists:
                for b in artists:
                    assert cm.value(a, b) == cm.value(b, a)

    def test_hand_counts(self):
        # b1 offered on all four of t's pages, chosen twice -> 2/4 = 0.5
        pages, _ = style_pages_and_annotations(4, 0, 0)
        anns = []
        for k in range(4):
            anns.append(StyleMatchAnnotation(f"p{k}", "x", 0))  # always target
            anns.append(StyleMatchAnnotation(f"p{k}", "y", 1 if k < 2 else 3))
        cm = confusion_matrix(pages, anns)
        assert cm.value("t", "b1") == pytest.approx(0.5, abs=1e-12)
        assert cm.value("t", "b2") == 0.0
        assert cm.value("t", "b3") == pytest.approx(0.5, abs=1e-12)
        assert cm.value("b1", "b2") is None  # never evaluated against each other

    def test_always_correct_means_zero_confusion(self):
        pages, _ = style_pages_and_annotations(3, 0, 0)
        anns = [StyleMatchAnnotation(f"p{k}", who, 0)
                for k in range(3) for who in ("x", "y")]
        cm = confusion_matrix(pages, anns)
        for b in ("b1", "b2", "b3"):
            assert cm.value("t", b) == 0.0

    def test_never_presented_pair_is_undefined(self):
        cm = ConfusionMatrix(artists=["a", "b"])
        assert cm.value("a", "b") is None


class TestRecordImport:
    def test_split_by_task(self):
        records = [
            {"task": "style", "page_id": "p0", "annotator_id": "x",
             "chosen_index": 2, "timestamp": "t"},
            {"task": "fluency", "verse_id": "v0", "line_index": 3,
             "annotator_id": "y", "label": "weak", "timestamp": "t"},
        ]
        lines, styles = annotations_from_records(records)
        assert styles == [StyleMatchAnnotation("p0", "x", 2)]
        assert lines == [LineAnnotation("fluency", "v0", 3, "y", "weak")]
