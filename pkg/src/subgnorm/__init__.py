"""Sub-Gaussian intrinsic moment norms: exact values, estimators, intervals.

The package computes the intrinsic moment norm (the largest normalized even
moment root) and its companions (optimal variance proxy, Orlicz-type norms)
exactly for several closed-form families, estimates the norm from data with
direct, median-of-means, bootstrap, and pairwise-average variants, turns any
of them into non-asymptotic confidence intervals, and drives a UCB bandit
whose exploration width is calibrated by the estimated norm.
"""

__version__ = "0.1.0"

from .distributions import (
    BernoulliCentered,
    Distribution,
    Gaussian,
    GaussianMixture,
    QuadratureError,
    RademacherScaled,
    Sample,
    TruncExpCentered,
    UniformSym,
    double_factorial_odd,
)
from .norms import (
    ASYMMETRIC_MGF_FACTOR,
    PSI2_PROXY_FACTOR,
    W2_PROXY_FACTOR,
    BracketingError,
    HalfLengthTable,
    NormValue,
    UnsupportedDistributionError,
    bernoulli_opt_variance_proxy,
    ci_half_length_table,
    exact_intrinsic_norm,
    exact_lower_intrinsic_norm,
    normalized_moment_roots,
    psi2_norm,
    w2_norm,
)
from .concentration import (
    BE_CORRECTION,
    ConfidenceInterval,
    MaxBounds,
    TailBoundParams,
    be_clt_ci,
    be_clt_min_n,
    hoeffding_ci,
    intrinsic_ci,
    inverse_normal_cdf,
    max_bounds,
    mgf_bound,
    reverse_chernoff_lower,
    sum_tail_bound,
    wrong_hoeffding_gaussian_ci,
)
from .estimators import (
    KAPPA_HARD_CAP,
    BlockConfig,
    CoverageBound,
    NormEstimate,
    SaturationError,
    bootstrap_median_estimate,
    de_estimate,
    default_block_candidates,
    default_mgf_grid,
    kappa_policy,
    locv_objective,
    locv_select_b,
    loo_hl_estimate,
    loo_hl_mean,
    mom_coverage_bound,
    mom_estimate,
    mom_locv_estimate,
    sigma_opt_plugin,
)
from .diagnostics import (
    HEAVIER_TAIL,
    INCONCLUSIVE,
    MAX_PLOT_POINTS,
    SUBGAUSSIAN_CONSISTENT,
    VERDICT_MARGIN,
    SubGaussPlotData,
    TendencyReport,
    subgauss_plot_data,
    tendency_fit,
)
from .bandit import (
    BEUCB,
    CLT_UCB,
    EG1,
    EG2,
    FIXED,
    HOEFFDING_UCB,
    OP_UCB,
    THEOREM,
    THOMPSON,
    THOMPSON_PRIOR_GRID,
    ArmState,
    BanditEnv,
    ExperimentConfig,
    ExperimentResult,
    PolicyCurve,
    PolicySpec,
    RegretTrace,
    baseline_phi,
    beucb_index,
    bootstrap_quantile,
    draw_reward,
    make_env,
    run_episode,
    run_experiment,
    thompson_step,
)

__all__ = [
    "__version__",
    # distributions
    "Sample",
    "Distribution",
    "Gaussian",
    "UniformSym",
    "RademacherScaled",
    "BernoulliCentered",
    "TruncExpCentered",
    "GaussianMixture",
    "double_factorial_odd",
    "QuadratureError",
    # norms
    "NormValue",
    "HalfLengthTable",
    "UnsupportedDistributionError",
    "BracketingError",
    "exact_intrinsic_norm",
    "exact_lower_intrinsic_norm",
    "normalized_moment_roots",
    "bernoulli_opt_variance_proxy",
    "psi2_norm",
    "w2_norm",
    "ci_half_length_table",
    "ASYMMETRIC_MGF_FACTOR",
    "PSI2_PROXY_FACTOR",
    "W2_PROXY_FACTOR",
    # concentration
    "ConfidenceInterval",
    "TailBoundParams",
    "MaxBounds",
    "mgf_bound",
    "sum_tail_bound",
    "intrinsic_ci",
    "hoeffding_ci",
    "be_clt_ci",
    "be_clt_min_n",
    "wrong_hoeffding_gaussian_ci",
    "reverse_chernoff_lower",
    "max_bounds",
    "inverse_normal_cdf",
    "BE_CORRECTION",
    # estimators
    "NormEstimate",
    "BlockConfig",
    "CoverageBound",
    "SaturationError",
    "KAPPA_HARD_CAP",
    "kappa_policy",
    "de_estimate",
    "mom_estimate",
    "default_block_candidates",
    "locv_objective",
    "locv_select_b",
    "mom_locv_estimate",
    "bootstrap_median_estimate",
    "loo_hl_estimate",
    "loo_hl_mean",
    "sigma_opt_plugin",
    "default_mgf_grid",
    "mom_coverage_bound",
    # diagnostics
    "SubGaussPlotData",
    "TendencyReport",
    "subgauss_plot_data",
    "tendency_fit",
    "SUBGAUSSIAN_CONSISTENT",
    "HEAVIER_TAIL",
    "INCONCLUSIVE",
    "MAX_PLOT_POINTS",
    "VERDICT_MARGIN",
    # bandit
    "BanditEnv",
    "ArmState",
    "PolicySpec",
    "RegretTrace",
    "PolicyCurve",
    "ExperimentConfig",
    "ExperimentResult",
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
    "make_env",
    "draw_reward",
    "bootstrap_quantile",
    "beucb_index",
    "baseline_phi",
    "thompson_step",
    "run_episode",
    "run_experiment",
]
