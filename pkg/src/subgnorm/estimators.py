"""Data-driven estimators of the intrinsic moment norm and variance proxy.

The plug-in (direct) estimator replaces population moments with empirical
ones; the median-of-means variant averages within blocks and takes a median
across them, which is what buys robustness to heavy contamination.  A
leave-one-out criterion selects the block count, and two small-sample
stabilizers (an (n-1)-out-of-n bootstrap median and a leave-one-out
Hodges-Lehmann aggregation) help when n is tiny.  The optimal-variance-proxy
plug-in maximizes 2 log M_n(t) / t^2 over a sign-symmetric t grid and is
included mostly as a cautionary baseline: its heavy upward noise is the
reason the moment-based estimators exist.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .distributions import Sample, double_factorial_odd

__all__ = [
    "DE",
    "MOM",
    "MOM_LOCV",
    "BOOT",
    "LOO_HL",
    "OP_PROXY",
    "BlockConfig",
    "NormEstimate",
    "CoverageBound",
    "SaturationError",
    "kappa_policy",
    "de_estimate",
    "mom_estimate",
    "mom_locv_estimate",
    "locv_objective",
    "locv_select_b",
    "default_block_candidates",
    "bootstrap_median_estimate",
    "loo_hl_estimate",
    "loo_hl_mean",
    "default_mgf_grid",
    "sigma_opt_plugin",
    "mom_coverage_bound",
]

DE = "de"
MOM = "mom"
MOM_LOCV = "mom_locv"
BOOT = "boot"
LOO_HL = "loo_hl"
OP_PROXY = "op_proxy"

_METHODS = (DE, MOM, MOM_LOCV, BOOT, LOO_HL, OP_PROXY)

KAPPA_HARD_CAP = 20


class SaturationError(RuntimeError):
    """Every grid point overflowed the empirical moment generating function."""


def kappa_policy(n: int) -> int:
    """Moment index cap for a sample of size n: max(1, ceil(log n)), at most 20."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return min(KAPPA_HARD_CAP, max(1, math.ceil(math.log(n))))


@dataclass(frozen=True, eq=False)
class BlockConfig:
    """How a sample was split into blocks.

    assignment is a permutation of all sample indices; the first b*m entries,
    read in b contiguous runs of length m, are the blocks (the tail beyond
    b*m is dropped).  b=1 always uses the identity assignment so that the
    single block reproduces the full-sample plug-in exactly.
    """

    b: int
    m: int
    assignment: np.ndarray

    def __post_init__(self):
        if self.b < 1 or self.m < 1:
            raise ValueError(f"need b >= 1 and m >= 1, got b={self.b}, m={self.m}")
        n = self.assignment.size
        if self.b * self.m > n:
            raise ValueError("b * m exceeds the sample size")
        if not np.array_equal(np.sort(self.assignment), np.arange(n)):
            raise ValueError("assignment must be a permutation of the sample indices")

    def blocks(self) -> np.ndarray:
        """Index matrix of shape (b, m)."""
        return self.assignment[: self.b * self.m].reshape(self.b, self.m)


@dataclass(frozen=True, eq=False)
class NormEstimate:
    """An estimated norm plus the bookkeeping needed to reproduce it."""

    value: float
    method: str
    k_star: int
    kappa_n: int
    block: BlockConfig | None = None
    seed: int | None = None

    def __post_init__(self):
        if self.method not in _METHODS:
            raise ValueError(f"unknown estimator method {self.method!r}")
        if math.isnan(self.value) or self.value < 0:
            raise ValueError(f"estimate must be nonnegative, got {self.value}")
        if self.kappa_n < 1 or not (1 <= self.k_star <= self.kappa_n):
            raise ValueError(
                f"need 1 <= k_star <= kappa_n, got {self.k_star}, {self.kappa_n}"
            )


def _blockwise_norm_curve(blocks: np.ndarray, kappa: int) -> np.ndarray:
    """Median over blocks of [block mean of X^(2k) / (2k-1)!!]^(1/(2k)), k = 1..kappa.

    blocks has shape (b, m) and holds centered values.  Everything is scaled
    by the largest |value| first so the powers cannot overflow; the norm is
    absolutely homogeneous so the scale multiplies back out at the end.
    """
    scale = float(np.abs(blocks).max())
    if scale == 0.0 or not math.isfinite(scale):
        # all-zero data has norm 0 at every k; non-finite data is rejected
        # upstream by Sample, so scale here is only 0 for the zero sample
        return np.zeros(kappa)
    z = blocks / scale
    z2 = z * z
    pk = np.ones_like(z)
    dfact = 1.0
    curve = np.empty(kappa)
    for k in range(1, kappa + 1):
        pk = pk * z2
        dfact *= 2 * k - 1
        roots = (pk.mean(axis=1) / dfact) ** (1.0 / (2 * k))
        curve[k - 1] = np.median(roots)
    return scale * curve


def _resolve_kappa(sample: Sample, kappa_n: int | None) -> int:
    if kappa_n is None:
        return kappa_policy(len(sample))
    if kappa_n < 1:
        raise ValueError(f"kappa_n must be >= 1, got {kappa_n}")
    return kappa_n


def de_estimate(sample: Sample, kappa_n: int | None = None) -> NormEstimate:
    """Plug-in estimate: largest empirical normalized even-moment root.

    Centering uses the sample's known mean when present and the sample mean
    otherwise; kappa_n defaults to the kappa_policy of the sample size.
    Ties across k go to the smallest k.
    """
    kappa = _resolve_kappa(sample, kappa_n)
    z = sample.centered()
    curve = _blockwise_norm_curve(z.reshape(1, -1), kappa)
    k_star = int(np.argmax(curve)) + 1
    return NormEstimate(
        value=float(curve[k_star - 1]), method=DE, k_star=k_star, kappa_n=kappa
    )


def mom_estimate(
    sample: Sample, b: int, kappa_n: int | None = None, seed: int = 0
) -> NormEstimate:
    """Median-of-means estimate with b blocks.

    The sample is centered once globally, shuffled by the seed, truncated to
    the first m*b points (m = n // b), and split into b contiguous blocks;
    the estimate is the max over k of the across-block median of the
    normalized moment roots.  b=1 skips the shuffle and reproduces
    de_estimate exactly, bit for bit.
    """
    n = len(sample)
    if not (1 <= b <= n):
        raise ValueError(f"need 1 <= b <= n = {n}, got b = {b}")
    kappa = _resolve_kappa(sample, kappa_n)
    z = sample.centered()
    if b == 1:
        assignment = np.arange(n)
    else:
        assignment = np.random.default_rng(seed).permutation(n)
    m = n // b
    blocks = z[assignment[: m * b]].reshape(b, m)
    curve = _blockwise_norm_curve(blocks, kappa)
    k_star = int(np.argmax(curve)) + 1
    return NormEstimate(
        value=float(curve[k_star - 1]),
        method=MOM,
        k_star=k_star,
        kappa_n=kappa,
        block=BlockConfig(b=b, m=m, assignment=assignment),
        seed=seed,
    )


def default_block_candidates(n: int, full_grid: bool = False) -> list[int]:
    """Candidate block counts for selection: 1..floor(sqrt(n)) plus 2*ceil(log n).

    full_grid=True widens to every admissible b in 1..n-1.
    """
    if n < 2:
        raise ValueError(f"need n >= 2 to select a block count, got {n}")
    if full_grid:
        return list(range(1, n))
    cand = set(range(1, math.isqrt(n) + 1))
    cand.add(2 * math.ceil(math.log(n)))
    return sorted(b for b in cand if 1 <= b <= n - 1)


def locv_objective(sample: Sample, b: int, kappa_n: int | None = None) -> float:
    """Leave-one-out stability objective for block count b.

    For each observation j and each k, compare the observation's own
    normalized moment root against the across-block median recomputed with j
    removed from its block's sum (the block-sum divisor stays m); the
    objective is the worst-k sum of squared gaps.  Lower is calmer.
    """
    n = len(sample)
    if not (1 <= b <= n - 1):
        raise ValueError(f"need 1 <= b <= n - 1 = {n - 1}, got b = {b}")
    kappa = _resolve_kappa(sample, kappa_n)
    values = sample.centered()
    scale = float(np.abs(values).max())
    if scale == 0.0:
        return 0.0
    z = values / scale
    m = n // b
    kept = m * b
    member = np.zeros((n, b))
    member[np.arange(kept), np.repeat(np.arange(b), m)] = 1.0

    z2 = z * z
    pk = np.ones_like(z)
    dfact = 1.0
    worst = 0.0
    for k in range(1, kappa + 1):
        pk = pk * z2
        dfact *= 2 * k - 1
        block_sums = pk[:kept].reshape(b, m).sum(axis=1)
        loo = block_sums[None, :] - pk[:, None] * member
        roots = (loo / (m * dfact)) ** (1.0 / (2 * k))
        meds = np.median(roots, axis=1)
        own = (pk / dfact) ** (1.0 / (2 * k))
        worst = max(worst, float(((own - meds) ** 2).sum()))
    return worst * scale * scale


def locv_select_b(
    sample: Sample,
    kappa_n: int | None = None,
    b_candidates: list[int] | None = None,
) -> int:
    """Block count minimizing the leave-one-out objective (ties to smallest b)."""
    n = len(sample)
    if b_candidates is None:
        b_candidates = default_block_candidates(n)
    cands = sorted(set(int(b) for b in b_candidates))
    if not cands:
        raise ValueError("empty candidate set")
    for b in cands:
        if not (1 <= b <= n - 1):
            raise ValueError(f"candidate b = {b} outside 1..{n - 1}")
    best_b, best_obj = cands[0], math.inf
    for b in cands:
        obj = locv_objective(sample, b, kappa_n)
        if obj < best_obj:
            best_b, best_obj = b, obj
    return best_b


def mom_locv_estimate(
    sample: Sample,
    kappa_n: int | None = None,
    b_candidates: list[int] | None = None,
    seed: int = 0,
) -> NormEstimate:
    """Median-of-means with the block count picked by locv_select_b."""
    b = locv_select_b(sample, kappa_n, b_candidates)
    est = mom_estimate(sample, b, kappa_n, seed)
    return NormEstimate(
        value=est.value,
        method=MOM_LOCV,
        k_star=est.k_star,
        kappa_n=est.kappa_n,
        block=est.block,
        seed=seed,
    )


def bootstrap_median_estimate(
    sample: Sample, kappa_n: int | None = None, seed: int = 0
) -> NormEstimate:
    """Median of plug-in estimates over leave-one-out bootstrap resamples.

    One iteration per observation: iteration i removes X_i from the pool and
    draws n-1 points from the remaining n-1 with replacement, then runs the
    plug-in estimator.  Meant for very small n, where the plain plug-in is
    noisy.
    """
    n = len(sample)
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    kappa = _resolve_kappa(sample, kappa_n)
    rng = np.random.default_rng(seed)
    vals = sample.values
    ests = np.empty(n)
    kstars = np.empty(n, dtype=int)
    for i in range(n):
        pool = np.delete(vals, i)
        draw = pool[rng.integers(0, n - 1, size=n - 1)]
        est = de_estimate(
            Sample(draw, sample.known_mean, sample.assumed_symmetric), kappa
        )
        ests[i] = est.value
        kstars[i] = est.k_star
    order = np.argsort(ests, kind="stable")
    k_star = int(kstars[order[(n - 1) // 2]])
    return NormEstimate(
        value=float(np.median(ests)),
        method=BOOT,
        k_star=k_star,
        kappa_n=kappa,
        seed=seed,
    )


def loo_hl_estimate(sample: Sample, kappa_n: int | None = None) -> NormEstimate:
    """Hodges-Lehmann aggregation of leave-one-out plug-in estimates.

    The estimate is the median over all n(n-1)/2 pairs i < j of the pairwise
    averages of the leave-one-out plug-in norms.  Needs n >= 3 so that each
    leave-one-out subsample still has two points to center with (n >= 2
    suffices when the mean is known).
    """
    n = len(sample)
    need = 2 if sample.known_mean is not None else 3
    if n < need:
        raise ValueError(f"need n >= {need}, got {n}")
    kappa = _resolve_kappa(sample, kappa_n)
    vals = sample.values
    loo = np.empty(n)
    kstars = np.empty(n, dtype=int)
    for i in range(n):
        sub = Sample(np.delete(vals, i), sample.known_mean, sample.assumed_symmetric)
        est = de_estimate(sub, kappa)
        loo[i] = est.value
        kstars[i] = est.k_star
    iu, ju = np.triu_indices(n, k=1)
    value = float(np.median(0.5 * (loo[iu] + loo[ju])))
    # metadata: most frequent optimizing index, smallest on ties
    k_star = int(np.argmax(np.bincount(kstars, minlength=kappa + 1)[1:])) + 1
    return NormEstimate(value=value, method=LOO_HL, k_star=k_star, kappa_n=kappa)


def loo_hl_mean(values) -> float:
    """Mean-estimation flavor of the same aggregation.

    Median over pairs i < j of the averaged leave-one-out means; with n = 2
    this is just the overall average.
    """
    vals = np.asarray(values, dtype=float)
    if vals.ndim != 1 or vals.size < 2:
        raise ValueError("need a one-dimensional sample with n >= 2")
    n = vals.size
    loo = (vals.sum() - vals) / (n - 1)
    iu, ju = np.triu_indices(n, k=1)
    return float(np.median(0.5 * (loo[iu] + loo[ju])))


def default_mgf_grid(
    n_points: int = 200, t_min: float = 1e-3, t_max: float = 5.0
) -> np.ndarray:
    """Sign-symmetric log-spaced grid of MGF arguments, |t| in [t_min, t_max]."""
    if not (0 < t_min < t_max) or n_points < 1:
        raise ValueError("need 0 < t_min < t_max and n_points >= 1")
    mags = np.geomspace(t_min, t_max, n_points)
    return np.concatenate([-mags[::-1], mags])

# exp() arguments above this are treated as saturated grid points
_MGF_SATURATION = 709.0


def sigma_opt_plugin(sample: Sample, t_grid: np.ndarray | None = None) -> float:
    """Plug-in for the optimal variance proxy: 2 max_t log M_n(t) / t^2, floored at 0.

    M_n is the empirical moment generating function of the sample, shifted
    by known_mean when one is given.  Unlike the moment estimators, the
    plug-in never subtracts the sample mean, and shifting by a constant
    does not remove empirical mean drift: log M_n(t)/t^2 near the origin
    amplifies any residual drift by 2/t, which is exactly the instability
    that makes this estimator a cautionary baseline rather than a
    recommendation.  Callers who want the proxy of the fluctuation around
    the sample mean must center upstream.  Grid points where some
    exp(t x_i) would overflow are skipped with a warning; if every point
    saturates, SaturationError is raised.  The grid must be symmetric about
    0 and keep |t| >= 1e-3 (the ratio is numerically meaningless nearer the
    origin).
    """
    z = sample.values if sample.known_mean is None else sample.values - sample.known_mean
    grid = default_mgf_grid() if t_grid is None else np.asarray(t_grid, dtype=float)
    if grid.ndim != 1 or grid.size == 0 or not np.all(np.isfinite(grid)):
        raise ValueError("t_grid must be a non-empty finite one-dimensional array")
    if np.abs(grid).min() < 1e-3 * (1.0 - 1e-12):
        raise ValueError("grid magnitudes below 1e-3 are not allowed")
    srt = np.sort(grid)
    if not np.allclose(srt, -srt[::-1], rtol=1e-12, atol=0.0):
        raise ValueError("t_grid must be symmetric about 0")

    best = -math.inf
    n_saturated = 0
    any_ok = False
    # chunk the (grid x sample) table to keep memory flat for large samples
    chunk = max(1, int(2e7 // max(1, z.size)))
    for start in range(0, grid.size, chunk):
        t = grid[start : start + chunk]
        a = np.outer(t, z)
        rowmax = a.max(axis=1)
        ok = rowmax <= _MGF_SATURATION
        n_saturated += int((~ok).sum())
        if not ok.any():
            continue
        any_ok = True
        shifted = a[ok] - rowmax[ok, None]
        log_mgf = np.log(np.exp(shifted).mean(axis=1)) + rowmax[ok]
        best = max(best, float((2.0 * log_mgf / t[ok] ** 2).max()))
    if not any_ok:
        raise SaturationError("every grid point overflowed exp(t * x)")
    if n_saturated:
        warnings.warn(
            f"{n_saturated} of {grid.size} grid points saturated and were skipped",
            RuntimeWarning,
        )
    return max(0.0, best)


@dataclass(frozen=True)
class CoverageBound:
    """Multiplicative-deviation bounds for the median-of-means estimator.

    g_bar_max / g_under_max bound the relative under/over-shoot; with
    probability at least 1 - failure_prob the true norm is at most
    estimate / (1 - g_bar_max).  vacuous marks parameter regimes where the
    guarantee says nothing (failure probability >= 1, or a negative
    deviation bracket).
    """

    g_bar_max: float
    g_under_max: float
    failure_prob: float
    vacuous: bool


def mom_coverage_bound(
    moments, sigma_seq, m: int, b: int, eta: float, kappa_n: int
) -> CoverageBound:
    """Finite-sample coverage bound for the median-of-means norm estimate.

    moments[k-1] = E X^(2k) and sigma_seq[k-1] bounds the standard deviation
    scale of X^(2k) per block; m is the block size, b the block count, and
    eta the Chebyshev slack.  failure_prob = kappa_n exp(-2 b eta
    (1 - 3/(4 eta))^2), which is vacuous at eta = 3/4.
    """
    moments = np.asarray(moments, dtype=float)
    sigma_seq = np.asarray(sigma_seq, dtype=float)
    if kappa_n < 1:
        raise ValueError(f"kappa_n must be >= 1, got {kappa_n}")
    if moments.size < kappa_n or sigma_seq.size < kappa_n:
        raise ValueError("moment and sigma sequences must cover k = 1..kappa_n")
    if m < 1 or b < 1:
        raise ValueError("block size and count must be >= 1")
    if eta <= 0:
        raise ValueError(f"eta must be positive, got {eta}")
    mom = moments[:kappa_n]
    sig = sigma_seq[:kappa_n]
    if np.any(mom <= 0):
        raise ValueError("even moments must be positive")
    k = np.arange(1, kappa_n + 1, dtype=float)
    dfact = np.array([float(double_factorial_odd(int(kk))) for kk in k])
    a = (mom / dfact) ** (1.0 / (2.0 * k))
    pert = 2.0 * math.sqrt(eta / m) * sig**k / mom
    inner = mom / dfact - pert
    valid = inner >= 0.0
    if valid.any():
        big = float(np.max(inner[valid] ** (1.0 / (2.0 * k[valid]))))
    else:
        big = 0.0
    g_bar_max = float(np.max(1.0 - big / a))
    g_under_max = float(np.max((pert + 1.0) ** (1.0 / (2.0 * k)) - 1.0))
    failure = kappa_n * math.exp(-2.0 * b * eta * (1.0 - 3.0 / (4.0 * eta)) ** 2)
    return CoverageBound(
        g_bar_max=g_bar_max,
        g_under_max=g_under_max,
        failure_prob=float(failure),
        vacuous=bool((~valid).any() or failure >= 1.0),
    )
