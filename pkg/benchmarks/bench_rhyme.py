"""Benchmark the compiled rhyme kernel against the pure-Python fallback.

Generates synthetic syllable streams shaped like real verses and times
``mark_rhymes`` from both implementations on identical inputs.  Outputs are
compared for equality first; a benchmark over diverging kernels is meaningless.

Usage:
    python benchmarks/bench_rhyme.py --verses 300 --repeat 5
"""

from __future__ import annotations

import argparse
import random
import sys
from time import perf_counter

import numpy as np

from verseval.rhyme import _kernel_py

try:
    from verseval.rhyme import _kernel as _kernel_c
except ImportError:
    _kernel_c = None


def make_stream(rng: random.Random, n_lines: int, per_line: int):
    """One verse worth of per-syllable arrays plus a signature compat matrix."""
    line_idx = []
    for li in range(n_lines):
        line_idx.extend([li] * rng.randint(per_line // 2, per_line))
    n = len(line_idx)
    nuc = [rng.randrange(12) for _ in range(n)]
    cod = [rng.randrange(8) for _ in range(n)]
    cls = [rng.randrange(4) for _ in range(8)]
    compat = [[1 if cls[a] == cls[b] else 0 for b in range(8)]
              for a in range(8)]
    return (np.asarray(line_idx, dtype=np.intc),
            np.asarray(nuc, dtype=np.intc),
            np.asarray(cod, dtype=np.intc),
            np.asarray(compat, dtype=np.uint8))


def run(kernel, streams, window, min_span, max_span):
    t0 = perf_counter()
    out = [kernel.mark_rhymes(*s, window, min_span, max_span) for s in streams]
    return perf_counter() - t0, out


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--verses", type=int, default=300)
    ap.add_argument("--lines", type=int, default=10)
    ap.add_argument("--syllables-per-line", type=int, default=9)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--window", type=int, default=2)
    ap.add_argument("--max-span", type=int, default=4)
    args = ap.parse_args(argv)

    if _kernel_c is None:
        print("compiled kernel not built; nothing to compare", file=sys.stderr)
        return 1

    rng = random.Random(args.seed)
    streams = [make_stream(rng, args.lines, args.syllables_per_line)
               for _ in range(args.verses)]
    total_syllables = sum(len(s[0]) for s in streams)

    _, ref = run(_kernel_py, streams, args.window, 1, args.max_span)
    _, cc = run(_kernel_c, streams, args.window, 1, args.max_span)
    if ref != cc:
        print("FATAL: kernels disagree; fix parity before benchmarking",
              file=sys.stderr)
        return 1

    best_py = min(run(_kernel_py, streams, args.window, 1, args.max_span)[0]
                  for _ in range(args.repeat))
    best_c = min(run(_kernel_c, streams, args.window, 1, args.max_span)[0]
                 for _ in range(args.repeat))

    rhymed = sum(sum(marked) for marked, _ in ref)
    print(f"streams:   {args.verses} verses, {total_syllables} syllables "
          f"({rhymed} rhymed)")
    print(f"pure:      {best_py * 1e3:8.2f} ms  "
          f"({best_py / args.verses * 1e6:7.1f} us/verse)")
    print(f"compiled:  {best_c * 1e3:8.2f} ms  "
          f"({best_c / args.verses * 1e6:7.1f} us/verse)")
    print(f"speedup:   {best_py / best_c:.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
