"""Parity between the compiled rhyme kernel and its pure-Python fallback.

Both implementations must agree bit for bit: the pipeline's byte-identical
reruns only hold if kernel choice never changes results.
"""

from __future__ import annotations

import json
import os
import random
import subprocess
import sys
import textwrap

import numpy as np
import pytest

from verseval.rhyme import _kernel_py

try:
    from verseval.rhyme import _kernel as _kernel_c
except ImportError:  # pragma: no cover - depends on build environment
    _kernel_c = None

needs_compiled = pytest.mark.skipif(
    _kernel_c is None, reason="compiled rhyme kernel not built")


def random_stream(rng, max_syllables=60):
    """Random per-syllable arrays shaped like real verse transcriptions."""
    n_lines = rng.randint(1, 8)
    line_idx = []
    for li in range(n_lines):
        line_idx.extend([li] * rng.randint(0, max_syllables // n_lines))
    n = len(line_idx)
    nuc = [rng.randrange(4) for _ in range(n)]
    cod = [rng.randrange(4) for _ in range(n)]
    return line_idx, nuc, cod


def random_compat(rng, k=4, equivalence=False):
    if equivalence:
        # partition codes into classes, as the detector's signatures do
        cls = [rng.randrange(2) for _ in range(k)]
        m = [[1 if cls[a] == cls[b] else 0 for b in range(k)]
             for a in range(k)]
    else:
        m = [[0] * k for _ in range(k)]
        for a in range(k):
            for b in range(a, k):
                m[a][b] = m[b][a] = rng.randrange(2)
    return m


def both(line_idx, nuc, cod, compat, window, min_span, max_span):
    args = (
        np.asarray(line_idx, dtype=np.intc),
        np.asarray(nuc, dtype=np.intc),
        np.asarray(cod, dtype=np.intc),
        np.asarray(compat, dtype=np.uint8),
        window, min_span, max_span,
    )
    return _kernel_py.mark_rhymes(*args), _kernel_c.mark_rhymes(*args)


@needs_compiled
class TestKernelParity:
    def test_random_streams_match_exactly(self):
        rng = random.Random(1234)
        for trial in range(300):
            line_idx, nuc, cod = random_stream(rng)
            compat = random_compat(rng, equivalence=trial % 2 == 0)
            min_span = rng.randint(1, 2)
            max_span = rng.randint(min_span, 5)
            window = rng.randint(1, 3)
            py, cc = both(line_idx, nuc, cod, compat,
                          window, min_span, max_span)
            assert py[0] == cc[0], f"marks diverge on trial {trial}"
            assert py[1] == cc[1], f"pairs diverge on trial {trial}"

    def test_empty_stream(self):
        py, cc = both([], [], [], [[1]], 2, 1, 4)
        assert py == cc == ([], [])

    def test_single_syllable(self):
        py, cc = both([0], [0], [0], [[1]], 2, 1, 4)
        assert py == cc == ([0], [])

    def test_dense_rhyme_stream(self):
        # every syllable identical: maximal pair pressure and subsumption
        n = 40
        py, cc = both([0] * n, [0] * n, [0] * n, [[1]], 2, 1, 8)
        assert py == cc
        assert all(f == 1 for f in py[0])


class TestKernelSelection:
    def _kernel_name(self, extra_env):
        env = dict(os.environ)
        env.pop("VERSEVAL_PURE", None)
        env.update(extra_env)
        out = subprocess.run(
            [sys.executable, "-c",
             "from verseval.rhyme import KERNEL; print(KERNEL)"],
            capture_output=True, text=True, env=env, check=True)
        return out.stdout.strip()

    def test_env_flag_forces_pure_fallback(self):
        assert self._kernel_name({"VERSEVAL_PURE": "1"}) == "pure"

    @needs_compiled
    def test_compiled_selected_by_default(self):
        assert self._kernel_name({}) == "compiled"


@needs_compiled
class TestDetectorUnderPureKernel:
    def test_analysis_identical_across_kernels(self, tmp_path, pron):
        """Full detect_rhymes output matches between kernels on real text."""
        from test_rhyme import GOLDEN_VERSE
        from verseval.corpus import Verse
        from verseval.rhyme import detect_rhymes

        verse = Verse(artist_id="a", verse_id="a:v0",
                      lines=[l.split() for l in GOLDEN_VERSE.splitlines()])
        res = detect_rhymes(verse, pron)

        script = textwrap.dedent("""\
            import json, sys
            from verseval.corpus import Verse
            from verseval.rhyme import KERNEL, default_dictionary, detect_rhymes
            text = sys.stdin.read()
            verse = Verse(artist_id="a", verse_id="a:v0",
                          lines=[l.split() for l in text.splitlines()])
            r = detect_rhymes(verse, default_dictionary())
            print(json.dumps({
                "kernel": KERNEL,
                "total": r.total_syllables,
                "rhymed": r.rhymed_syllables,
                "pairs": [list(p) for p in r.rhyme_pairs],
                "density": r.density,
            }))
        """)
        env = dict(os.environ)
        env["VERSEVAL_PURE"] = "1"
        out = subprocess.run([sys.executable, "-c", script],
                             input=GOLDEN_VERSE, capture_output=True,
                             text=True, env=env, check=True)
        got = json.loads(out.stdout)
        assert got["kernel"] == "pure"
        assert got["total"] == res.total_syllables
        assert got["rhymed"] == res.rhymed_syllables
        assert [tuple(p) for p in got["pairs"]] == res.rhyme_pairs
        assert got["density"] == res.density
