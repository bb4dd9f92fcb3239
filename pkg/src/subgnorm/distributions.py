"""Reference distributions with exact moment structure, plus the sample container.

Each distribution here knows the moments of its centered version well enough
to act as an oracle for the norm computations in :mod:`subgnorm.norms`:
central even moments, absolute central moments, and the squared-exponential
expectation E exp((X - EX)^2 / c^2), in closed form where one exists and by
adaptive quadrature otherwise.  The same classes drive sampling for the
simulation studies.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import integrate, special

# Relative tolerance demanded of every adaptive quadrature call.
QUAD_REL_TOL = 1e-10

# exp() overflows float64 just above this exponent.
EXP_OVERFLOW = 709.0


class QuadratureError(RuntimeError):
    """Adaptive quadrature did not reach the requested tolerance."""


def double_factorial_odd(k: int) -> int:
    """(2k-1)!! = 1 * 3 * ... * (2k-1), the 2k-th moment of a standard normal.

    Exact for any k >= 1 (arbitrary-precision integers); the empty product
    convention makes the value 1 at k = 1.
    """
    if k < 1:
        raise ValueError(f"k must be a positive integer, got {k}")
    out = 1
    for j in range(3, 2 * k, 2):
        out *= j
    return out


@dataclass
class Sample:
    """An ordered batch of real observations.

    known_mean, when given, is used for centering instead of the sample mean.
    assumed_symmetric marks data whose distribution is symmetric about its
    mean, which sharpens the constants in the concentration bounds.
    """

    values: np.ndarray
    known_mean: float | None = None
    assumed_symmetric: bool = False

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float)
        if self.values.ndim != 1 or self.values.size == 0:
            raise ValueError("sample must be a non-empty one-dimensional sequence")
        if not np.all(np.isfinite(self.values)):
            raise ValueError("sample values must all be finite")
        if self.known_mean is not None and not math.isfinite(self.known_mean):
            raise ValueError("known_mean must be finite")

    def __len__(self) -> int:
        return int(self.values.size)

    def centered(self) -> np.ndarray:
        """Values minus the known mean, or minus the sample mean when unknown."""
        center = self.known_mean if self.known_mean is not None else self.values.mean()
        return self.values - center


def _quad(f, a: float, b: float, points=None) -> float:
    val, err = integrate.quad(
        f, a, b, epsabs=0.0, epsrel=QUAD_REL_TOL, limit=200, points=points
    )
    if not math.isfinite(val) or err > abs(val) * 1e-8 + 1e-300:
        raise QuadratureError(
            f"quadrature achieved absolute error {err:.3e} on value {val:.6e}"
        )
    return val


class Distribution:
    """A data/reward distribution with exact centered-moment structure.

    Subclasses describe X - E[X]; the norm oracles never see the raw
    location.  All moment methods refer to the centered variable.
    """

    def mean(self) -> float:
        raise NotImplementedError

    def variance(self) -> float:
        raise NotImplementedError

    def central_even_moment(self, k: int) -> float:
        """E[(X - EX)^(2k)] for integer k >= 1."""
        raise NotImplementedError

    def abs_moment_root(self, p: int) -> float:
        """(E|X - EX|^p)^(1/p) for integer p >= 1, computed overflow-safe."""
        raise NotImplementedError

    def exp_square_mean(self, c: float) -> float:
        """E exp((X - EX)^2 / c^2); math.inf when divergent or overflowing."""
        raise NotImplementedError

    def sample(self, rng: np.random.Generator, size: int) -> np.ndarray:
        raise NotImplementedError


def _check_k(k: int):
    if k < 1:
        raise ValueError(f"moment order k must be >= 1, got {k}")


def _check_p(p: int):
    if p < 1:
        raise ValueError(f"moment order p must be >= 1, got {p}")


def _check_c(c: float):
    if c <= 0:
        raise ValueError(f"scale c must be positive, got {c}")


# log E|Z|^p for standard normal Z: E|Z|^p = 2^(p/2) Gamma((p+1)/2) / sqrt(pi)
def _log_abs_normal_moment(p: int) -> float:
    return 0.5 * p * math.log(2.0) + math.lgamma(0.5 * (p + 1)) - 0.5 * math.log(math.pi)


@dataclass(frozen=True)
class Gaussian(Distribution):
    mu: float = 0.0
    sigma: float = 1.0

    def __post_init__(self):
        if not (self.sigma > 0 and math.isfinite(self.sigma)):
            raise ValueError(f"sigma must be positive, got {self.sigma}")
        if not math.isfinite(self.mu):
            raise ValueError("mu must be finite")

    def mean(self) -> float:
        return self.mu

    def variance(self) -> float:
        return self.sigma**2

    def central_even_moment(self, k: int) -> float:
        _check_k(k)
        return float(double_factorial_odd(k)) * self.sigma ** (2 * k)

    def abs_moment_root(self, p: int) -> float:
        _check_p(p)
        return self.sigma * math.exp(_log_abs_normal_moment(p) / p)

    def exp_square_mean(self, c: float) -> float:
        _check_c(c)
        r = 2.0 * self.sigma**2 / c**2
        if r >= 1.0:
            return math.inf
        return 1.0 / math.sqrt(1.0 - r)

    def sample(self, rng, size):
        return rng.normal(self.mu, self.sigma, size)


@dataclass(frozen=True)
class UniformSym(Distribution):
    """Uniform on [-a, a]."""

    a: float = 1.0

    def __post_init__(self):
        if not (self.a > 0 and math.isfinite(self.a)):
            raise ValueError(f"half-width a must be positive, got {self.a}")

    def mean(self) -> float:
        return 0.0

    def variance(self) -> float:
        return self.a**2 / 3.0

    def central_even_moment(self, k: int) -> float:
        _check_k(k)
        return self.a ** (2 * k) / (2 * k + 1)

    def abs_moment_root(self, p: int) -> float:
        _check_p(p)
        # E|X|^p = a^p / (p+1)
        return self.a * math.exp(-math.log(p + 1.0) / p)

    def exp_square_mean(self, c: float) -> float:
        _check_c(c)
        u = self.a / c
        if u * u > EXP_OVERFLOW:
            return math.inf
        if u < 1e-8:
            return 1.0 + u * u / 3.0
        # (1/2a) int_{-a}^{a} e^{x^2/c^2} dx = sqrt(pi) erfi(u) / (2u)
        return math.sqrt(math.pi) * float(special.erfi(u)) / (2.0 * u)

    def sample(self, rng, size):
        return rng.uniform(-self.a, self.a, size)


@dataclass(frozen=True)
class RademacherScaled(Distribution):
    """Takes +c or -c with probability 1/2 each."""

    c: float = 1.0

    def __post_init__(self):
        if not (self.c > 0 and math.isfinite(self.c)):
            raise ValueError(f"scale c must be positive, got {self.c}")

    def mean(self) -> float:
        return 0.0

    def variance(self) -> float:
        return self.c**2

    def central_even_moment(self, k: int) -> float:
        _check_k(k)
        return self.c ** (2 * k)

    def abs_moment_root(self, p: int) -> float:
        _check_p(p)
        return self.c

    def exp_square_mean(self, c: float) -> float:
        _check_c(c)
        u = (self.c / c) ** 2
        return math.inf if u > EXP_OVERFLOW else math.exp(u)

    def sample(self, rng, size):
        return self.c * (2.0 * rng.integers(0, 2, size) - 1.0)


@dataclass(frozen=True)
class BernoulliCentered(Distribution):
    """Bernoulli(mu) minus its mean: 1-mu with probability mu, else -mu."""

    p: float = 0.5

    def __post_init__(self):
        if not (0.0 < self.p < 1.0):
            raise ValueError(f"success probability must lie in (0, 1), got {self.p}")

    def mean(self) -> float:
        return 0.0

    def variance(self) -> float:
        return self.p * (1.0 - self.p)

    def central_even_moment(self, k: int) -> float:
        _check_k(k)
        mu = self.p
        return (1.0 - mu) * mu ** (2 * k) + mu * (1.0 - mu) ** (2 * k)

    def abs_moment_root(self, p: int) -> float:
        _check_p(p)
        mu = self.p
        log_m = np.logaddexp(
            math.log1p(-mu) + p * math.log(mu),
            math.log(mu) + p * math.log1p(-mu),
        )
        return math.exp(float(log_m) / p)

    def exp_square_mean(self, c: float) -> float:
        _check_c(c)
        mu = self.p
        e1 = (mu / c) ** 2
        e2 = ((1.0 - mu) / c) ** 2
        if max(e1, e2) > EXP_OVERFLOW:
            return math.inf
        return (1.0 - mu) * math.exp(e1) + mu * math.exp(e2)

    def sample(self, rng, size):
        return (rng.random(size) < self.p).astype(float) - self.p


@dataclass(frozen=True)
class TruncExpCentered(Distribution):
    """Unit-rate exponential truncated to [0, cutoff], minus its mean.

    Moments have no convenient closed form; they are produced by adaptive
    quadrature at relative tolerance QUAD_REL_TOL and validated against the
    achieved error estimate.
    """

    cutoff: float = 1.0

    def __post_init__(self):
        if not (self.cutoff > 0 and math.isfinite(self.cutoff)):
            raise ValueError(f"cutoff must be positive, got {self.cutoff}")

    @property
    def _mass(self) -> float:
        return -math.expm1(-self.cutoff)  # 1 - e^{-M}

    @property
    def trunc_mean(self) -> float:
        """Mean of the truncated exponential before centering."""
        m = self.cutoff
        return (1.0 - (1.0 + m) * math.exp(-m)) / self._mass

    def mean(self) -> float:
        return 0.0

    def _pdf(self, x):
        return math.exp(-x) / self._mass

    def variance(self) -> float:
        return self.central_even_moment(1)

    def central_even_moment(self, k: int) -> float:
        _check_k(k)
        mu = self.trunc_mean
        return _quad(
            lambda x: (x - mu) ** (2 * k) * self._pdf(x),
            0.0,
            self.cutoff,
            points=[mu],
        )

    def abs_moment_root(self, p: int) -> float:
        _check_p(p)
        mu = self.trunc_mean
        s = max(mu, self.cutoff - mu)  # bound on |X - mu|, keeps integrand <= 1
        r = _quad(
            lambda x: (abs(x - mu) / s) ** p * self._pdf(x),
            0.0,
            self.cutoff,
            points=[mu],
        )
        return s * r ** (1.0 / p)

    def exp_square_mean(self, c: float) -> float:
        _check_c(c)
        mu = self.trunc_mean
        s = max(mu, self.cutoff - mu)
        if (s / c) ** 2 > EXP_OVERFLOW:
            return math.inf
        return _quad(
            lambda x: math.exp(((x - mu) / c) ** 2) * self._pdf(x),
            0.0,
            self.cutoff,
            points=[mu],
        )

    def sample(self, rng, size):
        u = rng.random(size)
        return -np.log1p(-u * self._mass) - self.trunc_mean


@dataclass(frozen=True)
class GaussianMixture(Distribution):
    """Zero-mean scale mixture: N(0, sigma1^2) w.p. p, else N(0, sigma2^2).

    With sigma1 > sigma2, the normalized even-moment sequence increases
    toward sigma1 without attaining it, which makes this the stock example
    of an intrinsic-norm supremum that sits at the search cap.
    """

    p: float = 0.5
    sigma1: float = 2.0
    sigma2: float = 1.0

    def __post_init__(self):
        if not (0.0 < self.p < 1.0):
            raise ValueError(f"mixture weight must lie in (0, 1), got {self.p}")
        if not (self.sigma1 > self.sigma2 > 0):
            raise ValueError(
                f"need sigma1 > sigma2 > 0, got {self.sigma1}, {self.sigma2}"
            )

    def mean(self) -> float:
        return 0.0

    def variance(self) -> float:
        return self.p * self.sigma1**2 + (1.0 - self.p) * self.sigma2**2

    def central_even_moment(self, k: int) -> float:
        _check_k(k)
        mix = self.p * self.sigma1 ** (2 * k) + (1.0 - self.p) * self.sigma2 ** (2 * k)
        return float(double_factorial_odd(k)) * mix

    def abs_moment_root(self, p: int) -> float:
        _check_p(p)
        log_mix = np.logaddexp(
            math.log(self.p) + p * math.log(self.sigma1),
            math.log1p(-self.p) + p * math.log(self.sigma2),
        )
        return math.exp((float(log_mix) + _log_abs_normal_moment(p)) / p)

    def exp_square_mean(self, c: float) -> float:
        _check_c(c)
        r1 = 2.0 * self.sigma1**2 / c**2
        r2 = 2.0 * self.sigma2**2 / c**2
        if r1 >= 1.0:
            return math.inf
        return self.p / math.sqrt(1.0 - r1) + (1.0 - self.p) / math.sqrt(1.0 - r2)

    def sample(self, rng, size):
        scales = np.where(rng.random(size) < self.p, self.sigma1, self.sigma2)
        return rng.normal(0.0, 1.0, size) * scales
