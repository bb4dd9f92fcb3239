"""Multi-armed bandits with norm-calibrated confidence widths.

The headline policy pairs a multiplier-bootstrap quantile of the centered
rewards with a median-of-means estimate of the intrinsic moment norm, so the
exploration bonus adapts to the actual reward tails.  Baselines plug other
scale estimates into the same UCB template (optimal-variance-proxy plug-in,
CLT standard error, Hoeffding range) and a Gaussian-conjugate Thompson
sampler rounds out the comparison.  Two reward environments are provided:
unit-variance Gaussians and two-component Gaussian mixtures with matched
means, optionally contaminated by replacing a fraction of draws with small
Cauchy noise.
"""

from __future__ import annotations

import math
import zlib
from dataclasses import dataclass, field

import numpy as np

from .concentration import inverse_normal_cdf
from .distributions import Sample
from .estimators import (
    default_mgf_grid,
    kappa_policy,
    mom_estimate,
)

__all__ = [
    "EG1",
    "EG2",
    "BEUCB",
    "OP_UCB",
    "CLT_UCB",
    "HOEFFDING_UCB",
    "THOMPSON",
    "FIXED",
    "THEOREM",
    "THOMPSON_PRIOR_GRID",
    "BanditEnv",
    "ArmState",
    "PolicySpec",
    "RegretTrace",
    "PolicyCurve",
    "ExperimentConfig",
    "ExperimentResult",
    "make_env",
    "draw_reward",
    "bootstrap_quantile",
    "beucb_index",
    "baseline_phi",
    "thompson_step",
    "run_episode",
    "run_experiment",
]

EG1 = "eg1"
EG2 = "eg2"

BEUCB = "beucb"
OP_UCB = "op_ucb"
CLT_UCB = "clt_ucb"
HOEFFDING_UCB = "hoeffding_ucb"
THOMPSON = "thompson"

_UCB_KINDS = (BEUCB, OP_UCB, CLT_UCB, HOEFFDING_UCB)
_ALL_KINDS = _UCB_KINDS + (THOMPSON,)

FIXED = "fixed"
THEOREM = "theorem"

# Gaussian-conjugate prior variances swept when tuning Thompson sampling.
THOMPSON_PRIOR_GRID = (8.0, 4.0, 2.0, 1.0, 0.5, 0.25)

# seed-derivation tags so environment and episode streams never collide
_ENV_TAG = 0x0E57
_RUN_TAG = 0x0417


@dataclass(frozen=True, eq=False)
class BanditEnv:
    """Arm distributions plus the contamination model.

    kind "eg1": arm k pays N(means[k], 1).  kind "eg2": arm k pays a
    two-component Gaussian mixture with weight mix_p[k] on N(2 means[k], 1)
    and the second component placed so the overall mean is exactly means[k].
    Each pull is independently replaced, with probability contamination_prob,
    by cauchy_scale times a standard Cauchy draw.
    """

    kind: str
    means: np.ndarray
    mix_p: np.ndarray | None
    contamination_prob: float
    cauchy_scale: float
    seed: int

    def __post_init__(self):
        if self.kind not in (EG1, EG2):
            raise ValueError(f"unknown environment kind {self.kind!r}")
        means = np.asarray(self.means, dtype=float)
        object.__setattr__(self, "means", means)
        if means.ndim != 1 or means.size < 2 or not np.all(np.isfinite(means)):
            raise ValueError("means must be a finite vector with at least 2 arms")
        if not (0.0 <= self.contamination_prob < 1.0):
            raise ValueError("contamination_prob must lie in [0, 1)")
        if self.cauchy_scale <= 0:
            raise ValueError("cauchy_scale must be positive")
        if self.kind == EG2:
            if self.mix_p is None:
                raise ValueError("eg2 requires mixture weights")
            mix_p = np.asarray(self.mix_p, dtype=float)
            object.__setattr__(self, "mix_p", mix_p)
            if mix_p.shape != means.shape or np.any(mix_p < 0) or np.any(mix_p > 0.5):
                raise ValueError("mixture weights must match arms and lie in [0, 1/2]")
            # the second component is positioned so each arm's mean is means[k]
            second = (1.0 - 2.0 * mix_p) / (1.0 - mix_p) * means
            recon = mix_p * 2.0 * means + (1.0 - mix_p) * second
            assert np.allclose(recon, means), "mixture mean identity violated"
        elif self.mix_p is not None:
            raise ValueError("eg1 takes no mixture weights")

    @property
    def n_arms(self) -> int:
        return int(self.means.size)

    @property
    def best_arm(self) -> int:
        return int(np.argmax(self.means))


def make_env(
    kind: str,
    n_arms: int,
    contamination_prob: float = 0.15,
    cauchy_scale: float = 0.01,
    seed: int = 0,
    means=None,
    mix_p=None,
) -> BanditEnv:
    """Draw an environment: arm means ~ Exp(1), eg2 weights ~ U(0, 1/2).

    means / mix_p can be passed explicitly to pin the environment (handy for
    tests and zero-gap sanity checks); the seed then only matters for
    whichever pieces are still random.
    """
    if n_arms < 2:
        raise ValueError(f"need at least 2 arms, got {n_arms}")
    rng = np.random.default_rng(np.random.SeedSequence((seed, _ENV_TAG)))
    drawn_means = rng.exponential(1.0, n_arms) if means is None else np.asarray(means, float)
    drawn_p = None
    if kind == EG2:
        drawn_p = rng.uniform(0.0, 0.5, n_arms) if mix_p is None else np.asarray(mix_p, float)
    return BanditEnv(
        kind=kind,
        means=drawn_means,
        mix_p=drawn_p,
        contamination_prob=contamination_prob,
        cauchy_scale=cauchy_scale,
        seed=seed,
    )


def draw_reward(env: BanditEnv, arm: int, rng: np.random.Generator) -> float:
    """One pull of the given arm, possibly replaced by contamination."""
    if env.contamination_prob > 0.0 and rng.random() < env.contamination_prob:
        return env.cauchy_scale * float(rng.standard_cauchy())
    mu = env.means[arm]
    if env.kind == EG1:
        return float(rng.normal(mu, 1.0))
    p = env.mix_p[arm]
    if rng.random() < p:
        return float(rng.normal(2.0 * mu, 1.0))
    return float(rng.normal((1.0 - 2.0 * p) / (1.0 - p) * mu, 1.0))


@dataclass(frozen=True, eq=False)
class ArmState:
    """Reward history of one arm."""

    rewards: np.ndarray

    def __post_init__(self):
        rewards = np.asarray(self.rewards, dtype=float)
        object.__setattr__(self, "rewards", rewards)
        if rewards.ndim != 1:
            raise ValueError("rewards must be one-dimensional")
        if not np.all(np.isfinite(rewards)):
            raise ValueError("rewards must be finite")

    @property
    def pulls(self) -> int:
        return int(self.rewards.size)


@dataclass(frozen=True)
class PolicySpec:
    """Which policy to run and with what knobs.

    alpha_rule "fixed" uses alpha as given; "theorem" sets alpha = 4/T^2
    from the horizon at episode start.  min_pulls defaults to 2 for the UCB
    family (index formulas need two points) and 0 for Thompson.
    """

    kind: str
    alpha_rule: str = FIXED
    alpha: float = 0.05
    bootstrap_reps: int = 500
    min_pulls: int | None = None
    prior_var: float = 1.0
    label: str | None = None

    def __post_init__(self):
        if self.kind not in _ALL_KINDS:
            raise ValueError(f"unknown policy kind {self.kind!r}")
        if self.alpha_rule not in (FIXED, THEOREM):
            raise ValueError(f"unknown alpha rule {self.alpha_rule!r}")
        if not (0.0 < self.alpha < 1.0):
            raise ValueError(f"alpha must lie in (0, 1), got {self.alpha}")
        if self.kind == BEUCB and self.bootstrap_reps < 100:
            raise ValueError("the bootstrap needs at least 100 replicates")
        if self.bootstrap_reps < 1:
            raise ValueError("bootstrap_reps must be positive")
        if self.prior_var <= 0:
            raise ValueError("prior_var must be positive")
        resolved = self.min_pulls
        if resolved is None:
            resolved = 0 if self.kind == THOMPSON else 2
        if self.kind == BEUCB and resolved < 2:
            raise ValueError("the bootstrap-norm index needs min_pulls >= 2")
        if resolved < 0:
            raise ValueError("min_pulls must be nonnegative")
        object.__setattr__(self, "min_pulls", resolved)
        if self.label is None:
            object.__setattr__(self, "label", self.kind)

    def resolve_alpha(self, horizon: int) -> float:
        if self.alpha_rule == THEOREM:
            return 4.0 / float(horizon) ** 2
        return self.alpha


def bootstrap_quantile(data, alpha: float, n_boot: int = 500, seed: int = 0) -> float:
    """Multiplier-bootstrap quantile of the centered mean.

    Each replicate is (1/n) sum_i w_i (x_i - mean) with i.i.d. sign weights;
    the return value is the ceil((1-alpha) n_boot)-th order statistic, the
    smallest replicate whose empirical exceedance is at most alpha.
    """
    x = np.asarray(data, dtype=float)
    if x.ndim != 1 or x.size == 0 or not np.all(np.isfinite(x)):
        raise ValueError("data must be a non-empty finite vector")
    if not (0.0 < alpha < 1.0):
        raise ValueError(f"alpha must lie in (0, 1), got {alpha}")
    if n_boot < 1:
        raise ValueError("n_boot must be positive")
    rng = np.random.default_rng(seed)
    z = x - x.mean()
    signs = 2.0 * rng.integers(0, 2, size=(n_boot, x.size)) - 1.0
    reps = signs @ z / x.size
    m = math.ceil((1.0 - alpha) * n_boot)
    return float(np.partition(reps, m - 1)[m - 1])


def _beucb_width_factor(alpha: float, pulls: int) -> float:
    """sqrt(2 log(4/alpha) / T) times the norm-to-width conversion sqrt(2 log(4/alpha))/(sqrt(T)-1)."""
    log_term = 2.0 * math.log(4.0 / alpha)
    return math.sqrt(log_term / pulls) * math.sqrt(log_term) / (math.sqrt(pulls) - 1.0)


def _mom_block_count(pulls: int) -> int:
    return max(1, min(pulls, 2 * math.ceil(math.log(pulls))))


def beucb_index(
    arm: ArmState,
    alpha: float,
    seed: int = 0,
    n_boot: int = 500,
    min_pulls: int = 2,
) -> float:
    """Bootstrap-plus-norm UCB index of one arm.

    mean + bootstrap quantile at level alpha/2 + sqrt(2 log(4/alpha)/T) times
    the norm width sqrt(2 log(4/alpha))/(sqrt(T)-1) * MOM norm estimate with
    2 ceil(log T) blocks.  Arms with fewer than max(min_pulls, 2) pulls get
    +inf so they are explored first.
    """
    if not (0.0 < alpha < 1.0):
        raise ValueError(f"alpha must lie in (0, 1), got {alpha}")
    pulls = arm.pulls
    if pulls < max(min_pulls, 2):
        return math.inf
    q = bootstrap_quantile(arm.rewards, alpha / 2.0, n_boot, seed)
    est = mom_estimate(
        Sample(arm.rewards),
        b=_mom_block_count(pulls),
        kappa_n=kappa_policy(pulls),
        seed=seed ^ 0x9E3779B9,
    )
    return float(arm.rewards.mean()) + q + _beucb_width_factor(alpha, pulls) * est.value


def baseline_phi(arm: ArmState, kind: str, alpha: float) -> float:
    """Confidence width of the baseline UCB policies.

    op_ucb: plug-in optimal-proxy scale times sqrt(2 log(2/alpha)/T);
    clt_ucb: root-mean-square deviation times the normal quantile over
    sqrt(T); hoeffding_ucb: the observed range times sqrt(log(2/alpha)/(2T)).
    """
    from .estimators import sigma_opt_plugin  # local import to avoid cycle noise

    if kind not in (OP_UCB, CLT_UCB, HOEFFDING_UCB):
        raise ValueError(f"no baseline width for kind {kind!r}")
    if not (0.0 < alpha < 1.0):
        raise ValueError(f"alpha must lie in (0, 1), got {alpha}")
    pulls = arm.pulls
    if pulls < 2:
        raise ValueError(f"need at least 2 pulls, got {pulls}")
    r = arm.rewards
    if kind == OP_UCB:
        # deviation width needs the proxy of the centered rewards
        proxy = sigma_opt_plugin(Sample(r, known_mean=float(r.mean())))
        return math.sqrt(proxy) * math.sqrt(2.0 * math.log(2.0 / alpha) / pulls)
    if kind == CLT_UCB:
        sd = float(np.sqrt(np.mean((r - r.mean()) ** 2)))
        return sd * inverse_normal_cdf(1.0 - alpha / 2.0) / math.sqrt(pulls)
    rng_width = float(r.max() - r.min())
    return rng_width * math.sqrt(math.log(2.0 / alpha) / (2.0 * pulls))


def thompson_step(counts, sums, prior_var: float, rng) -> int:
    """One Gaussian-conjugate Thompson draw; returns the arm to pull.

    Rewards are modeled as unit-variance Gaussians with a N(0, prior_var)
    prior on each mean, so arm k's posterior is N(s_k v_k, v_k) with
    v_k = 1/(1/prior_var + T_k).  Ties go to the lowest arm index.
    """
    counts = np.asarray(counts, dtype=float)
    sums = np.asarray(sums, dtype=float)
    if counts.shape != sums.shape or counts.ndim != 1:
        raise ValueError("counts and sums must be matching vectors")
    if prior_var <= 0:
        raise ValueError("prior_var must be positive")
    if not isinstance(rng, np.random.Generator):
        rng = np.random.default_rng(rng)
    post_var = 1.0 / (1.0 / prior_var + counts)
    post_mean = post_var * sums
    draws = post_mean + np.sqrt(post_var) * rng.standard_normal(counts.size)
    return int(np.argmax(draws))


@dataclass(frozen=True, eq=False)
class RegretTrace:
    """Cumulative pseudo-regret per round plus the final pull counts."""

    cumulative_regret: np.ndarray
    pulls_per_arm: np.ndarray
    seed: int


class _ArmAccumulator:
    """Running statistics of one arm, updated in O(B) per pull.

    Keeps per-replicate bootstrap sums (so the quantile never rescans the
    history), the moment-generating-function sums on the fixed grid for the
    proxy policy, and the plain sum/sumsq/extrema for the rest.  Sign
    weights for fresh observations come from the episode stream, which makes
    replicates i.i.d. sign vectors, exactly as the one-shot bootstrap draws
    them.
    """

    __slots__ = (
        "history", "count", "total", "total_sq", "lo", "hi",
        "boot_s", "boot_w", "mgf_sums",
    )

    def __init__(self, horizon: int, n_boot: int, mgf_grid_size: int):
        self.history = np.empty(horizon)
        self.count = 0
        self.total = 0.0
        self.total_sq = 0.0
        self.lo = math.inf
        self.hi = -math.inf
        self.boot_s = np.zeros(n_boot) if n_boot else None
        self.boot_w = np.zeros(n_boot) if n_boot else None
        self.mgf_sums = np.zeros(mgf_grid_size) if mgf_grid_size else None

    def push(self, y: float, rng: np.random.Generator, mgf_grid: np.ndarray | None):
        self.history[self.count] = y
        self.count += 1
        self.total += y
        self.total_sq += y * y
        self.lo = min(self.lo, y)
        self.hi = max(self.hi, y)
        if self.boot_s is not None:
            w = 2.0 * rng.integers(0, 2, size=self.boot_s.size) - 1.0
            self.boot_s += w * y
            self.boot_w += w
        if self.mgf_sums is not None:
            with np.errstate(over="ignore"):
                self.mgf_sums += np.exp(mgf_grid * y)

    @property
    def mean(self) -> float:
        return self.total / self.count


def _ucb_index(
    acc: _ArmAccumulator,
    policy: PolicySpec,
    alpha: float,
    rng: np.random.Generator,
    mgf_grid: np.ndarray | None,
    z_quantile: float,
) -> float:
    pulls = acc.count
    if pulls < max(policy.min_pulls, 2):
        return math.inf
    mean = acc.mean
    if policy.kind == BEUCB:
        reps = (acc.boot_s - mean * acc.boot_w) / pulls
        m = math.ceil((1.0 - alpha / 2.0) * policy.bootstrap_reps)
        q = float(np.partition(reps, m - 1)[m - 1])
        est = mom_estimate(
            Sample(acc.history[: pulls]),
            b=_mom_block_count(pulls),
            kappa_n=kappa_policy(pulls),
            seed=int(rng.integers(0, 2**63)),
        )
        return mean + q + _beucb_width_factor(alpha, pulls) * est.value
    if policy.kind == CLT_UCB:
        var = max(0.0, acc.total_sq / pulls - mean * mean)
        return mean + math.sqrt(var) * z_quantile / math.sqrt(pulls)
    if policy.kind == HOEFFDING_UCB:
        width = (acc.hi - acc.lo) * math.sqrt(math.log(2.0 / alpha) / (2.0 * pulls))
        return mean + width
    # OP_UCB: centered log-MGF from raw sums, saturated grid points skipped
    finite = np.isfinite(acc.mgf_sums)
    if not finite.any():
        return math.inf
    t = mgf_grid[finite]
    log_mgf = np.log(acc.mgf_sums[finite] / pulls) - t * mean
    proxy = max(0.0, float((2.0 * log_mgf / t**2).max()))
    return mean + math.sqrt(proxy) * math.sqrt(2.0 * math.log(2.0 / alpha) / pulls)


def run_episode(
    env: BanditEnv, policy: PolicySpec, horizon: int, seed: int = 0
) -> RegretTrace:
    """One full bandit run; deterministic in (env, policy, horizon, seed).

    Every arm is first pulled min_pulls times round-robin; afterwards the
    policy's index (or posterior draw) is greedily followed, ties to the
    lowest arm.  Only the pulled arm's index is recomputed, since nothing
    else changes between rounds.
    """
    n_arms = env.n_arms
    if horizon < 1:
        raise ValueError("horizon must be >= 1")
    if horizon < n_arms * policy.min_pulls:
        raise ValueError(
            f"horizon {horizon} cannot give {n_arms} arms {policy.min_pulls} pulls each"
        )
    rng = np.random.default_rng(np.random.SeedSequence((seed, _RUN_TAG)))
    alpha = policy.resolve_alpha(horizon)
    is_thompson = policy.kind == THOMPSON
    mgf_grid = default_mgf_grid() if policy.kind == OP_UCB else None
    n_boot = policy.bootstrap_reps if policy.kind == BEUCB else 0
    z_quantile = (
        inverse_normal_cdf(1.0 - alpha / 2.0) if policy.kind == CLT_UCB else 0.0
    )

    arms = [
        _ArmAccumulator(horizon, n_boot, mgf_grid.size if mgf_grid is not None else 0)
        for _ in range(n_arms)
    ]
    indices = np.full(n_arms, math.inf)
    gaps = float(env.means.max()) - env.means
    regret = np.empty(horizon)
    running = 0.0

    for t in range(horizon):
        forced = next((k for k in range(n_arms) if arms[k].count < policy.min_pulls), None)
        if forced is not None:
            arm = forced
        elif is_thompson:
            counts = np.array([a.count for a in arms], dtype=float)
            sums = np.array([a.total for a in arms])
            arm = thompson_step(counts, sums, policy.prior_var, rng)
        else:
            arm = int(np.argmax(indices))
        y = draw_reward(env, arm, rng)
        arms[arm].push(y, rng, mgf_grid)
        if not is_thompson:
            indices[arm] = _ucb_index(arms[arm], policy, alpha, rng, mgf_grid, z_quantile)
        running += gaps[arm]
        regret[t] = running

    pulls = np.array([a.count for a in arms])
    return RegretTrace(cumulative_regret=regret, pulls_per_arm=pulls, seed=seed)


@dataclass(frozen=True)
class ExperimentConfig:
    """A full regret study: one environment family, several policies."""

    env_kind: str = EG1
    n_arms: int = 10
    horizon: int = 1000
    policies: tuple[PolicySpec, ...] = (PolicySpec(BEUCB),)
    replications: int = 1
    master_seed: int = 0
    contamination_prob: float = 0.15
    cauchy_scale: float = 0.01
    means: tuple | None = None
    mix_p: tuple | None = None

    def __post_init__(self):
        object.__setattr__(self, "policies", tuple(self.policies))
        if not self.policies:
            raise ValueError("need at least one policy")
        labels = [p.label for p in self.policies]
        if len(set(labels)) != len(labels):
            raise ValueError(f"policy labels must be unique, got {labels}")
        if self.replications < 1:
            raise ValueError("replications must be >= 1")


@dataclass(frozen=True, eq=False)
class PolicyCurve:
    """Across-replication mean and standard error of cumulative regret."""

    mean_regret: np.ndarray
    se_regret: np.ndarray


@dataclass(frozen=True, eq=False)
class ExperimentResult:
    rounds: np.ndarray
    curves: dict[str, PolicyCurve]
    config: ExperimentConfig


def _derived_seed(*entropy: int) -> int:
    state = np.random.SeedSequence(entropy).generate_state(2)
    return int(state[0]) << 32 | int(state[1])


def _label_tag(label: str) -> int:
    return zlib.crc32(label.encode("utf-8"))


def run_experiment(config: ExperimentConfig) -> ExperimentResult:
    """Replicate every policy on matched environments and aggregate regret.

    Replication r draws its environment from (master_seed, r) and every
    policy from (master_seed, its label, r), so policies face identical
    environments within a replication and reordering the policy list
    changes nothing.
    """
    horizon = config.horizon
    acc = {
        p.label: (np.zeros(horizon), np.zeros(horizon)) for p in config.policies
    }
    for rep in range(config.replications):
        env = make_env(
            config.env_kind,
            config.n_arms,
            config.contamination_prob,
            config.cauchy_scale,
            seed=_derived_seed(config.master_seed, _ENV_TAG, rep),
            means=config.means,
            mix_p=config.mix_p,
        )
        for policy in config.policies:
            trace = run_episode(
                env,
                policy,
                horizon,
                seed=_derived_seed(config.master_seed, _label_tag(policy.label), rep),
            )
            s, s2 = acc[policy.label]
            s += trace.cumulative_regret
            s2 += trace.cumulative_regret**2
    curves = {}
    reps = config.replications
    for label, (s, s2) in acc.items():
        mean = s / reps
        if reps > 1:
            var = np.maximum(0.0, (s2 - reps * mean**2) / (reps - 1))
            se = np.sqrt(var / reps)
        else:
            se = np.zeros(horizon)
        curves[label] = PolicyCurve(mean_regret=mean, se_regret=se)
    return ExperimentResult(
        rounds=np.arange(1, horizon + 1), curves=curves, config=config
    )
