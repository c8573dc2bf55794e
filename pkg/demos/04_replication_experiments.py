# Replication experiments: the sample coefficient estimates the population
# one without bias at ANY sample size, and concentrates as n grows.
#
# Writes an SVG of the replication spread next to this script.

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from taucorr import convergence_table, make_model, run_replications, unbiasedness_table

SEED = 20240811
model = make_model("pareto", t=1.0)
target = model.tau_closed_form()

################ the mean of tau_n does not move with n #####################

# Even n = 2 (where each replication is exactly +1 or -1) averages to the
# same reference value -- that is the distinctive contrast with the
# product-moment coefficient, which needs large n.

print(f"reference tau = {target:+.6f}\n")
print(f"{'n':>6} {'mean tau_n':>12} {'std error':>10} {'dev (SE)':>9}")
for summary in unbiasedness_table(model, [2, 10, 100, 1000], 400, SEED):
    dev = (summary.tau_mean - target) / summary.tau_std_error
    print(f"{summary.n:>6} {summary.tau_mean:>+12.5f} {summary.tau_std_error:>10.5f} {dev:>+9.2f}")

#################### concentration: exceedance shrinks ######################

print("\nempirical P(|tau_n - tau| > eps), 600 replications each:")
rows = convergence_table(model, [25, 100, 400, 1600], 600, [0.05, 0.1], SEED + 1)
print(f"{'n':>6} {'eps':>6} {'exceed':>8} {'var(tau_n)':>11}")
for row in rows:
    print(f"{row.n:>6} {row.epsilon:>6.2f} {row.exceed_fraction:>8.3f} {row.tau_variance:>11.2e}")

variances = {r.n: r.tau_variance for r in rows}
print("\nvariance ratios per quadrupling of n (expect about 1/4):")
for a, b in ((25, 100), (100, 400), (400, 1600)):
    print(f"  var({b}) / var({a}) = {variances[b] / variances[a]:.3f}")

########################### picture of the spread ###########################

summaries = [run_replications(model, n, 150, SEED + 2 + i) for i, n in enumerate((25, 100, 400, 1600))]
fig, ax = plt.subplots(figsize=(6, 4))
for s in summaries:
    ax.scatter(np.full(s.n_replications, s.n), s.tau_values, s=6, alpha=0.25,
               color="steelblue", edgecolors="none")
ax.scatter([s.n for s in summaries], [s.tau_mean for s in summaries],
           color="darkorange", zorder=3, label="replication mean")
ax.axhline(target, color="black", linewidth=1, label="population tau")
ax.set_xscale("log")
ax.set_xlabel("sample size n")
ax.set_ylabel("kendall tau")
ax.legend()
fig.tight_layout()
out = Path(__file__).with_name("replication_spread.svg")
fig.savefig(out, format="svg")
print(f"\nwrote {out}")
