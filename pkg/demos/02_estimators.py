"""Plug-in and robust estimators of the intrinsic norm, clean and contaminated.

DE is the direct plug-in: empirical moments into the norm formula.  MOM
replaces each moment with a median over blocks, with the block count either
fixed or chosen by leave-one-out cross-validation.  The sigma_opt plug-in
maximizes log M_n(t)/t^2 over a grid and is shown here as the cautionary
baseline it is: without centering it amplifies mean drift by 2/t near the
origin.
"""

import numpy as np

import subgnorm as sg

TRUE_NORM = 1.0  # N(0,1) has intrinsic norm exactly 1


def mae(errs):
    return float(np.mean(np.abs(errs)))


# --- clean Gaussian data, n = 1000, 100 replications ---------------------
de_err, mom_err, locv_err, op_err = [], [], [], []
for seed in range(100):
    rng = np.random.default_rng(seed)
    s = sg.Sample(rng.normal(0.0, 1.0, 1000))
    de_err.append(sg.de_estimate(s).value - TRUE_NORM)
    mom_err.append(sg.mom_estimate(s, b=5, seed=seed).value - TRUE_NORM)
    locv_err.append(sg.mom_locv_estimate(s, seed=seed).value - TRUE_NORM)
    op_err.append(sg.sigma_opt_plugin(s) - TRUE_NORM)

print("=== clean N(0,1), n=1000, mean absolute error over 100 runs ===")
print(f"DE          {mae(de_err):8.4f}")
print(f"MOM b=5     {mae(mom_err):8.4f}")
print(f"MOM LOCV    {mae(locv_err):8.4f}")
print(f"sigma_opt   {mae(op_err):8.4f}   <- drift-dominated, by design uncentered")

# --- 2% additive Cauchy contamination ------------------------------------
de_err, mom_err = [], []
b = 2 * int(np.ceil(np.log(1000)))
for seed in range(100):
    rng = np.random.default_rng(seed)
    x = rng.normal(0.0, 1.0, 1000)
    hit = rng.random(1000) < 0.02
    x[hit] += 5.0 * rng.standard_cauchy(int(hit.sum()))
    s = sg.Sample(x)
    de_err.append(sg.de_estimate(s).value - TRUE_NORM)
    mom_err.append(sg.mom_estimate(s, b=b, seed=seed).value - TRUE_NORM)

print()
print(f"=== 2% Cauchy(0,5) contamination, n=1000, b={b} ===")
print(f"DE          {mae(de_err):8.4f}   <- a single outlier wrecks the top moment")
print(f"MOM         {mae(mom_err):8.4f}   <- the block median shrugs it off")

# --- tiny samples: the n <= 5 specialists ---------------------------------
hl_err, boot_err, de_small = [], [], []
for seed in range(500):
    rng = np.random.default_rng(seed)
    x = rng.normal(0.0, 1.0, 4)
    x[rng.integers(0, 4)] += 5.0 * rng.standard_cauchy()
    s = sg.Sample(x)
    hl_err.append(sg.loo_hl_estimate(s).value - TRUE_NORM)
    boot_err.append(sg.bootstrap_median_estimate(s, seed=seed).value - TRUE_NORM)
    de_small.append(sg.de_estimate(s).value - TRUE_NORM)

print()
print("=== n=4 with one Cauchy(0,5) contaminant, median |error|, 500 runs ===")
print(f"DE                {float(np.median(np.abs(de_small))):8.4f}")
print(f"bootstrap median  {float(np.median(np.abs(boot_err))):8.4f}")
print(f"LOO-HL            {float(np.median(np.abs(hl_err))):8.4f}")

# --- the LOCV block selector reacts to outliers ---------------------------
picks_clean, picks_dirty = [], []
for seed in range(50):
    rng = np.random.default_rng(seed)
    x = rng.normal(0.0, 1.0, 300)
    picks_clean.append(sg.locv_select_b(sg.Sample(x)))
    x[rng.random(300) < 0.05] += 5.0 * rng.standard_cauchy()
    picks_dirty.append(sg.locv_select_b(sg.Sample(x)))

print()
print("=== LOCV block counts, n=300, 50 runs ===")
print(f"clean data:       median b {int(np.median(picks_clean))} "
      "(objective is nearly flat, the pick barely matters)")
print(f"5% contaminated:  b>1 chosen {sum(1 for b_ in picks_dirty if b_ > 1)}/50 times")
