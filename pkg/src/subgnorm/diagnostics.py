"""Visual sub-Gaussianity check: resampled maxima against sqrt(log j + 1).

For each j = 1..n, draw j points from the empirical distribution (fresh,
with replacement) and record their maximum y_j.  Sub-Gaussian data makes the
cloud (sqrt(log j + 1), y_j) look linear; heavier tails bend it upward, in
which case y_j tracks log j + 1 better.  tendency_fit runs both ordinary
least-squares fits and compares their R^2 with a small decision margin.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .distributions import Sample

__all__ = [
    "SUBGAUSSIAN_CONSISTENT",
    "HEAVIER_TAIL",
    "INCONCLUSIVE",
    "MAX_PLOT_POINTS",
    "VERDICT_MARGIN",
    "SubGaussPlotData",
    "TendencyReport",
    "subgauss_plot_data",
    "tendency_fit",
]

SUBGAUSSIAN_CONSISTENT = "subgaussian_consistent"
HEAVIER_TAIL = "heavier_tail"
INCONCLUSIVE = "inconclusive"

# the O(n^2) resampling pass gets expensive beyond this
MAX_PLOT_POINTS = 10_000

# minimum R^2 edge required before either model is declared the better one
VERDICT_MARGIN = 0.01


@dataclass(frozen=True, eq=False)
class SubGaussPlotData:
    """Columns of the diagnostic plot: draw count, x = sqrt(log j + 1), y = max."""

    j: np.ndarray
    x: np.ndarray
    y: np.ndarray
    seed: int
    n: int

    def rows(self):
        """Iterate (j, x, y) tuples, ready for CSV writing."""
        for jj, xx, yy in zip(self.j, self.x, self.y):
            yield int(jj), float(xx), float(yy)


@dataclass(frozen=True)
class TendencyReport:
    """R^2 of the two growth models and the margin-based verdict."""

    r2_sqrtlog: float
    r2_log: float
    verdict: str


def subgauss_plot_data(sample: Sample, seed: int = 0) -> SubGaussPlotData:
    """Resampled-maximum curve of the sample, deterministic in the seed.

    Each j in 1..n gets its own fresh draws: j indices uniform over the
    sample, y_j their maximum.  Raw values are used (no centering); the
    plot diagnoses the data as it is.
    """
    n = len(sample)
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    if n > MAX_PLOT_POINTS:
        raise ValueError(
            f"n = {n} exceeds the plot cap of {MAX_PLOT_POINTS} points"
        )
    rng = np.random.default_rng(seed)
    total = n * (n + 1) // 2
    draws = sample.values[rng.integers(0, n, size=total)]
    starts = np.concatenate(([0], np.cumsum(np.arange(1, n))))
    y = np.maximum.reduceat(draws, starts)
    j = np.arange(1, n + 1)
    x = np.sqrt(np.log(j) + 1.0)
    return SubGaussPlotData(j=j, x=x, y=y, seed=seed, n=n)


def _r2(x: np.ndarray, y: np.ndarray) -> float:
    """R^2 of the least-squares line y ~ 1 + x."""
    coeffs, *_ = np.linalg.lstsq(np.column_stack([np.ones_like(x), x]), y, rcond=None)
    resid = y - coeffs[0] - coeffs[1] * x
    ss_tot = float(((y - y.mean()) ** 2).sum())
    if ss_tot == 0.0:
        return 0.0
    return 1.0 - float((resid**2).sum()) / ss_tot


def tendency_fit(data: SubGaussPlotData) -> TendencyReport:
    """Compare the sqrt(log j + 1) and (log j + 1) growth fits of the maxima.

    A verdict needs one model to beat the other by VERDICT_MARGIN in R^2;
    anything closer (including the degenerate all-equal-y case) is
    INCONCLUSIVE.
    """
    if data.y.size < 10:
        raise ValueError(f"need at least 10 plot rows, got {data.y.size}")
    y = data.y
    if np.all(y == y[0]):
        return TendencyReport(r2_sqrtlog=0.0, r2_log=0.0, verdict=INCONCLUSIVE)
    x_sqrt = data.x
    x_log = data.x**2  # x was sqrt(log j + 1)
    r2_sqrt = _r2(x_sqrt, y)
    r2_log = _r2(x_log, y)
    if r2_sqrt >= r2_log + VERDICT_MARGIN:
        verdict = SUBGAUSSIAN_CONSISTENT
    elif r2_log >= r2_sqrt + VERDICT_MARGIN:
        verdict = HEAVIER_TAIL
    else:
        verdict = INCONCLUSIVE
    return TendencyReport(r2_sqrtlog=r2_sqrt, r2_log=r2_log, verdict=verdict)
