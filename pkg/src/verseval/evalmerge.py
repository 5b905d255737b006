"""Regression merge of the two automated metrics, correlations and structure report.

Rhyme density and max similarity over a checkpoint series each get an ordinary
least squares line; the merged score is the similarity line evaluated where the
rhyme-density line reaches the target artist's average density.  Models that
overshoot the target density early intersect at a negative x, which is reported
as-is.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .generator import CheckpointPoint


class DegenerateFitError(ValueError):
    pass


class NoIntersectionError(ValueError):
    pass


class UnderdeterminedError(ValueError):
    pass


@dataclass(frozen=True)
class RegressionLine:
    slope: float
    intercept: float
    r_squared: float

    def at(self, x: float) -> float:
        return self.slope * x + self.intercept


@dataclass(frozen=True)
class MergedScore:
    target_rhyme_density: float
    intersection_x: float
    similarity_at_target: float
    extrapolated: bool  # intersection outside the observed x range


def fit_line(points: list[tuple[float, float]]) -> RegressionLine:
    """Ordinary least squares through (x, y) points; needs two distinct x."""
    if len(points) < 2:
        raise DegenerateFitError(f"need >= 2 points, got {len(points)}")
    n = len(points)
    mx = sum(x for x, _ in points) / n
    my = sum(y for _, y in points) / n
    sxx = sum((x - mx) ** 2 for x, _ in points)
    if sxx == 0.0:
        raise DegenerateFitError("all x values identical")
    sxy = sum((x - mx) * (y - my) for x, y in points)
    slope = sxy / sxx
    intercept = my - slope * mx
    syy = sum((y - my) ** 2 for _, y in points)
    if syy == 0.0:
        r2 = 1.0
    else:
        ss_res = sum((y - (slope * x + intercept)) ** 2 for x, y in points)
        r2 = 1.0 - ss_res / syy
    return RegressionLine(slope=slope, intercept=intercept, r_squared=r2)


def merged_similarity(series: list[CheckpointPoint], target_rd: float) -> MergedScore:
    """Similarity read off the fitted line where fitted rhyme density hits target."""
    rd_line = fit_line([(p.x, p.avg_rhyme_density) for p in series])
    sim_line = fit_line([(p.x, p.avg_max_similarity) for p in series])
    if rd_line.slope == 0.0:
        if rd_line.intercept == target_rd:
            raise UnderdeterminedError(
                "rhyme-density line is horizontal at the target: every x intersects")
        raise NoIntersectionError(
            f"horizontal rhyme-density line at {rd_line.intercept} never reaches "
            f"target {target_rd}")
    x_star = (target_rd - rd_line.intercept) / rd_line.slope
    xs = [p.x for p in series]
    return MergedScore(
        target_rhyme_density=target_rd,
        intersection_x=x_star,
        similarity_at_target=sim_line.at(x_star),
        extrapolated=not (min(xs) <= x_star <= max(xs)),
    )


UNDEFINED = float("nan")  # zero-variance columns correlate with nothing


@dataclass
class CorrelationMatrix:
    columns: list[str]
    values: list[list[float]]  # NaN marks undefined cells

    def at(self, a: str, b: str) -> float:
        return self.values[self.columns.index(a)][self.columns.index(b)]


def metric_correlations(rows: list[dict[str, float]],
                        columns: list[str] | None = None) -> CorrelationMatrix:
    """Pearson correlations between metric columns over per-artist rows.

    Zero-variance columns yield NaN cells (undefined), never a fabricated zero.
    """
    if len(rows) < 3:
        raise ValueError(f"need >= 3 rows for correlations, got {len(rows)}")
    cols = columns or sorted(rows[0].keys())
    series = {c: [float(r[c]) for r in rows] for c in cols}
    out = [[UNDEFINED] * len(cols) for _ in cols]
    for i, a in enumerate(cols):
        for j, b in enumerate(cols[i:], start=i):
            r = _pearson(series[a], series[b])
            out[i][j] = out[j][i] = r
    return CorrelationMatrix(columns=cols, values=out)


def _pearson(xs: list[float], ys: list[float]) -> float:
    n = len(xs)
    mx, my = sum(xs) / n, sum(ys) / n
    dx = [x - mx for x in xs]
    dy = [y - my for y in ys]
    sxx = sum(d * d for d in dx)
    syy = sum(d * d for d in dy)
    if sxx == 0.0 or syy == 0.0:
        return UNDEFINED
    r = sum(a * b for a, b in zip(dx, dy)) / math.sqrt(sxx * syy)
    return max(-1.0, min(1.0, r))


@dataclass(frozen=True)
class StructureRow:
    artist_id: str
    max_len: int
    checkpoint: int
    pct_training: float | None


def verse_structure_report(checkpoint_verses: dict[str, dict[int, "object"]],
                           total_iterations: dict[str, int] | None = None,
                           ) -> list[StructureRow]:
    """Longest generated verse per artist, where it occurred, and % of training.

    ``checkpoint_verses`` maps artist -> iteration -> verse.  The percent
    column is filled only when the caller supplies total iteration counts.
    """
    rows = []
    for artist in sorted(checkpoint_verses):
        best_len, best_ckpt = -1, -1
        for iteration in sorted(checkpoint_verses[artist]):
            verse = checkpoint_verses[artist][iteration]
            if verse.token_count > best_len:
                best_len, best_ckpt = verse.token_count, iteration
        if best_len < 0:
            continue
        pct = None
        if total_iterations and artist in total_iterations:
            pct = 100.0 * best_ckpt / total_iterations[artist]
        rows.append(StructureRow(artist_id=artist, max_len=best_len,
                                 checkpoint=best_ckpt, pct_training=pct))
    return rows
