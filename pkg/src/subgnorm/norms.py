"""Exact norm computations on the reference distributions.

The intrinsic moment norm of a centered variable is the largest normalized
even-moment root

    max_k [ E X^(2k) / (2k-1)!! ]^(1/(2k)),

normalized so that a Gaussian's sequence is flat at sigma.  Its min-variant
(the lower intrinsic norm) bounds tails from below; bounded variables push
it to zero as the search cap grows.  This module evaluates both on the
distribution oracles, together with the optimal variance proxy of a centered
Bernoulli, the psi2 moment-scaling norm, the w2 Orlicz-type norm, and the
confidence-interval half-length table that puts all of them side by side.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .distributions import (
    BernoulliCentered,
    Distribution,
    double_factorial_odd,
)

__all__ = [
    "NormValue",
    "HalfLengthTable",
    "UnsupportedDistributionError",
    "BracketingError",
    "double_factorial_odd",
    "normalized_moment_roots",
    "exact_intrinsic_norm",
    "exact_lower_intrinsic_norm",
    "bernoulli_opt_variance_proxy",
    "psi2_norm",
    "w2_norm",
    "ci_half_length_table",
]


class UnsupportedDistributionError(ValueError):
    """The requested computation is only available for specific distributions."""


class BracketingError(RuntimeError):
    """Could not bracket the root of a monotone equation."""


@dataclass(frozen=True)
class NormValue:
    """A norm value together with the index that produced it.

    attained is False when the optimum sits at the search cap, in which case
    the reported value is only the best seen, not a certified optimum.
    """

    value: float
    k_star: int
    attained: bool
    kappa_cap: int

    def __post_init__(self):
        if self.kappa_cap < 1 or not (1 <= self.k_star <= self.kappa_cap):
            raise ValueError(
                f"need 1 <= k_star <= kappa_cap, got {self.k_star}, {self.kappa_cap}"
            )
        if self.value < 0:
            raise ValueError(f"norm value must be nonnegative, got {self.value}")
        if not self.attained and self.k_star != self.kappa_cap:
            raise ValueError("an unattained optimum must sit at the cap")


def normalized_moment_roots(dist: Distribution, kappa_cap: int) -> np.ndarray:
    """[E X^(2k) / (2k-1)!!]^(1/(2k)) for k = 1..kappa_cap."""
    if kappa_cap < 1:
        raise ValueError(f"kappa_cap must be >= 1, got {kappa_cap}")
    roots = np.empty(kappa_cap)
    for k in range(1, kappa_cap + 1):
        # float() raises OverflowError once the double factorial leaves
        # float64 range, which is the capacity limit of this computation
        ratio = dist.central_even_moment(k) / float(double_factorial_odd(k))
        roots[k - 1] = ratio ** (1.0 / (2 * k))
    return roots


def exact_intrinsic_norm(dist: Distribution, kappa_cap: int = 10) -> NormValue:
    """Largest normalized even-moment root over k = 1..kappa_cap.

    Ties go to the smallest k.  attained=False means the maximum sits at the
    cap and the true supremum may lie beyond it (the Gaussian scale mixture
    is the standard example).
    """
    roots = normalized_moment_roots(dist, kappa_cap)
    k_star = int(np.argmax(roots)) + 1
    return NormValue(
        value=float(roots[k_star - 1]),
        k_star=k_star,
        attained=k_star != kappa_cap,
        kappa_cap=kappa_cap,
    )


def exact_lower_intrinsic_norm(dist: Distribution, kappa_cap: int = 10) -> NormValue:
    """Smallest normalized even-moment root over k = 1..kappa_cap.

    For bounded distributions the sequence keeps decreasing, so the minimum
    sits at the cap (attained=False) and tends to zero as the cap grows.
    """
    roots = normalized_moment_roots(dist, kappa_cap)
    k_star = int(np.argmin(roots)) + 1
    return NormValue(
        value=float(roots[k_star - 1]),
        k_star=k_star,
        attained=k_star != kappa_cap,
        kappa_cap=kappa_cap,
    )


def bernoulli_opt_variance_proxy(mu: float) -> float:
    """Smallest variance proxy of a centered Bernoulli(mu).

    Equals (1 - 2 mu) / (2 log((1 - mu)/mu)), extended by continuity to 1/4
    at mu = 1/2.  Always between the variance mu(1 - mu) and 1/4.
    """
    if not (0.0 < mu < 1.0):
        raise ValueError(f"mu must lie in (0, 1), got {mu}")
    if abs(mu - 0.5) < 1e-9:
        return 0.25
    return (1.0 - 2.0 * mu) / (2.0 * math.log((1.0 - mu) / mu))


def psi2_norm(dist: Distribution, p_cap: int = 500) -> NormValue:
    """Largest p^(-1/2) (E|X|^p)^(1/p) over integer p = 2..p_cap.

    The classical moment-scaling characterization of sub-Gaussianity; a
    standard Gaussian gives 1/sqrt(2) ~ 0.7071.
    """
    if p_cap < 2:
        raise ValueError(f"p_cap must be >= 2, got {p_cap}")
    vals = np.empty(p_cap - 1)
    for p in range(2, p_cap + 1):
        vals[p - 2] = dist.abs_moment_root(p) / math.sqrt(p)
    p_star = int(np.argmax(vals)) + 2
    return NormValue(
        value=float(vals[p_star - 2]),
        k_star=p_star,
        attained=p_star != p_cap,
        kappa_cap=p_cap,
    )


def w2_norm(dist: Distribution, tol: float = 1e-8) -> float:
    """Orlicz-type norm: the c solving E exp(X^2 / c^2) = 2.

    Solved by bisection at relative tolerance tol; E exp(X^2/c^2) is
    strictly decreasing in c, which the bracketing step asserts.  A standard
    Gaussian gives sqrt(8/3).
    """
    if tol <= 0:
        raise ValueError(f"tol must be positive, got {tol}")
    target = 2.0
    scale = math.sqrt(dist.variance())
    if scale <= 0 or not math.isfinite(scale):
        raise ValueError("distribution must have a positive finite variance")

    lo = hi = scale
    if dist.exp_square_mean(scale) > target:
        for _ in range(200):
            hi *= 2.0
            if dist.exp_square_mean(hi) <= target:
                break
        else:
            raise BracketingError("could not bracket: expectation stays above 2")
    else:
        for _ in range(200):
            lo /= 2.0
            if dist.exp_square_mean(lo) > target:
                break
        else:
            raise BracketingError("could not bracket: expectation never exceeds 2")

    e_lo, e_hi = dist.exp_square_mean(lo), dist.exp_square_mean(hi)
    # monotone decrease in c is what makes the bisection valid
    assert e_lo > target >= e_hi and e_lo > e_hi, (lo, hi, e_lo, e_hi)

    while hi - lo > tol * hi:
        mid = 0.5 * (lo + hi)
        if dist.exp_square_mean(mid) > target:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


# Multiplier on the intrinsic norm in moment-generating-function bounds for
# asymmetric variables (symmetric variables need no inflation).
ASYMMETRIC_MGF_FACTOR = 17.0 / 12.0

# Multipliers that convert the psi2 and w2 norms into variance proxies.
PSI2_PROXY_FACTOR = 10.0 * math.e
W2_PROXY_FACTOR = 2.5


@dataclass(frozen=True)
class HalfLengthTable:
    """Half-lengths of a (1-delta) mean CI for n = 1, one per norm route."""

    opt_proxy: float
    intrinsic: float
    psi2: float
    w2: float
    std_dev: float

    def as_tuple(self) -> tuple[float, float, float, float, float]:
        return (self.opt_proxy, self.intrinsic, self.psi2, self.w2, self.std_dev)


def ci_half_length_table(
    dist: Distribution,
    delta: float,
    kappa_cap: int = 10,
    p_cap: int = 500,
    w2_tol: float = 1e-8,
) -> HalfLengthTable:
    """Side-by-side CI half-lengths for a centered Bernoulli variable.

    Every entry is sqrt(2 log(2/delta)) times a sub-Gaussian scale for the
    same variable: the optimal variance proxy, sqrt(17/12) times the
    intrinsic norm, sqrt(10e) times the psi2 norm, sqrt(5/2) times the w2
    norm, and the standard deviation (valid asymptotically only).
    """
    if not isinstance(dist, BernoulliCentered):
        raise UnsupportedDistributionError(
            "the half-length table is defined for BernoulliCentered only"
        )
    if not (0.0 < delta < 1.0):
        raise ValueError(f"delta must lie in (0, 1), got {delta}")
    base = math.sqrt(2.0 * math.log(2.0 / delta))
    return HalfLengthTable(
        opt_proxy=base * math.sqrt(bernoulli_opt_variance_proxy(dist.p)),
        intrinsic=base
        * math.sqrt(ASYMMETRIC_MGF_FACTOR)
        * exact_intrinsic_norm(dist, kappa_cap).value,
        psi2=base * math.sqrt(PSI2_PROXY_FACTOR) * psi2_norm(dist, p_cap).value,
        w2=base * math.sqrt(W2_PROXY_FACTOR) * w2_norm(dist, w2_tol),
        std_dev=base * math.sqrt(dist.variance()),
    )
