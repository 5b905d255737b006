"""Pure-Python rhyme span kernel; fallback twin of the compiled extension.

Semantics (both implementations must match bit for bit):
  * a span is `s` consecutive syllables lying within a single line,
    min_span <= s <= max_span;
  * two spans rhyme when their nuclei agree position by position and the
    codas of their final syllables are compatible (``compat`` matrix);
  * only span pairs whose start lines are within ``window`` lines compare;
  * span lengths are scanned longest-first and a pair is skipped when a
    previously recorded pair on the same alignment diagonal covers it;
  * every syllable of a recorded pair is marked, and marks are idempotent.
"""

from __future__ import annotations


def mark_rhymes(line_idx, nucleus, coda, compat, window, min_span, max_span):
    """Return (marked flags, pairs) for one verse.

    ``line_idx``, ``nucleus`` and ``coda`` are per-syllable integer sequences;
    ``compat`` is a square 0/1 matrix over coda codes.  Pairs are
    (start_a, start_b, length) with start_a < start_b.
    """
    line = list(line_idx)
    nuc = list(nucleus)
    cod = list(coda)
    cmp_rows = [list(row) for row in compat]
    n = len(line)
    marked = [0] * n
    pairs: list[tuple[int, int, int]] = []
    by_diag: dict[int, list[tuple[int, int]]] = {}

    top = min(max_span, n)
    for s in range(top, min_span - 1, -1):
        for i in range(0, n - 2 * s + 1):
            if line[i] != line[i + s - 1]:
                continue
            ci = cod[i + s - 1]
            for j in range(i + s, n - s + 1):
                if line[j] - line[i] > window:
                    break
                if line[j] != line[j + s - 1]:
                    continue
                if not cmp_rows[ci][cod[j + s - 1]]:
                    continue
                ok = True
                for t in range(s):
                    if nuc[i + t] != nuc[j + t]:
                        ok = False
                        break
                if not ok:
                    continue
                diag = j - i
                covered = False
                for (i0, s0) in by_diag.get(diag, ()):
                    if i0 <= i and i + s <= i0 + s0:
                        covered = True
                        break
                if covered:
                    continue
                by_diag.setdefault(diag, []).append((i, s))
                pairs.append((i, j, s))
                for t in range(s):
                    marked[i + t] = 1
                    marked[j + t] = 1
    return marked, pairs
