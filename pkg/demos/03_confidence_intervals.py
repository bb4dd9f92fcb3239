"""Mean confidence intervals: intrinsic-norm, Hoeffding, and CLT with a
Berry-Esseen guardrail.

The intrinsic interval needs the norm (or an estimate of it) but wins on
width.  Hoeffding needs only the range.  The CLT interval is asymptotic;
the Berry-Esseen correction turns it into a finite-sample statement that
is simply infeasible below a minimum n, and the demo prints those
feasibility thresholds.  A deliberately wrong Gaussian-quantile interval
shows what the guardrail protects against.
"""

import math

import numpy as np

import subgnorm as sg

# --- width comparison for a symmetric variable with norm 1 ---------------
print("=== 95% CI half-widths, norm 1, symmetric data ===")
print(f"{'n':>6s} {'intrinsic':>10s} {'hoeffding[-1,1]':>16s}")
for n in (30, 100, 300, 1000):
    ci = sg.intrinsic_ci(0.0, 1.0, n, 0.05, symmetric=True)
    ho = sg.hoeffding_ci(0.0, -1.0, 1.0, n, 0.05)
    print(f"{n:6d} {ci.half_width:10.4f} {ho.half_width:16.4f}")

# the 17/12 factor is the price of dropping the symmetry assumption
ci_sym = sg.intrinsic_ci(0.0, 1.0, 100, 0.05, symmetric=True)
ci_asym = sg.intrinsic_ci(0.0, 1.0, 100, 0.05, symmetric=False)
print()
print(f"symmetry price at n=100: {ci_asym.half_width / ci_sym.half_width:.4f}"
      f" (= sqrt(17/12) = {math.sqrt(17 / 12):.4f})")

# --- Berry-Esseen feasibility ---------------------------------------------
print()
print("=== smallest n where the corrected CLT interval exists ===")
for delta in (0.05, 0.075, 0.1):
    print(f"delta {delta:5.3f} -> n >= {sg.be_clt_min_n(delta)}")

n = 300
ci = sg.be_clt_ci(n, 0.05)
print(f"\nat n={n}, delta=0.05 the corrected interval has half-width {ci.half_width:.4f}")
print(f"naive Gaussian-quantile width would be {sg.wrong_hoeffding_gaussian_ci(n, 1.0, 0.05).half_width:.4f}")

# --- coverage check: the intrinsic interval keeps its promise -------------
reps, n, delta = 20_000, 100, 0.1
half = sg.intrinsic_ci(0.0, 1.0, n, delta, symmetric=True).half_width
means = np.random.default_rng(3).normal(0.0, 1.0, (reps, n)).mean(axis=1)
cov = float(np.mean(np.abs(means) <= half))
print()
print(f"=== N(0,1) coverage at nominal {1 - delta:.2f}, n={n}, {reps} reps ===")
print(f"empirical coverage {cov:.4f} (conservative, as a bound should be)")

# --- high-probability sandwich on the maximum -----------------------------
print()
print("=== max of n standard Gaussians, each side at confidence 0.95 ===")
print(f"{'n':>8s} {'lower':>8s} {'sqrt(2 ln n)':>13s} {'upper':>8s}")
for n in (10, 100, 1000, 10_000):
    mb = sg.max_bounds(n, 0.05, 1.0, 1.0)
    lo = f"{mb.lower:8.4f}" if mb.lower_defined else "   n/a  "
    print(f"{n:8d} {lo} {math.sqrt(2 * math.log(n)):13.4f} {mb.upper:8.4f}")
