"""Is my data sub-Gaussian?  A resampling plot answers by eye or by fit.

For j = 1..n the plot records the maximum of j values resampled from the
data; sub-Gaussian samples grow like sqrt(log j), heavier tails grow
faster.  tendency_fit regresses the curve against both shapes and issues a
verdict.  The script writes the raw curves to CSV (plot them with anything)
and prints the verdicts.
"""

import csv
import pathlib

import numpy as np

import subgnorm as sg

samples = {
    "gaussian": sg.Sample(np.random.default_rng(9).normal(0.0, 1.0, 1000)),
    "uniform": sg.Sample(np.random.default_rng(10).uniform(-1.0, 1.0, 1000)),
    "exponential": sg.Sample(np.random.default_rng(39).exponential(1.0, 1000)),
    "student_t3": sg.Sample(np.random.default_rng(11).standard_t(3, 1000)),
}

out = pathlib.Path(__file__).with_name("diagnostic_curves.csv")
with out.open("w", newline="") as fh:
    w = csv.writer(fh)
    w.writerow(["sample", "j", "sqrt_log_scale", "max_of_j"])
    for name, s in samples.items():
        data = sg.subgauss_plot_data(s, seed=0)
        for j, x, y in data.rows():
            w.writerow([name, j, f"{x:.6f}", f"{y:.6f}"])
print(f"curves written to {out.name}")

print()
print("=== fitted tendency and verdict ===")
print(f"{'sample':>12s} {'R2 sqrt-log':>12s} {'R2 log':>8s}  verdict")
for name, s in samples.items():
    rep = sg.tendency_fit(sg.subgauss_plot_data(s, seed=0))
    print(f"{name:>12s} {rep.r2_sqrtlog:12.4f} {rep.r2_log:8.4f}  {rep.verdict}")

print()
print("verdicts are margin-based: when the two fits are within 0.01 of each")
print("other the report says inconclusive rather than guessing")
