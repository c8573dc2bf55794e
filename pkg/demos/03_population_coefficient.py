# Computing tau = 4 E F(X,Y) - 1 by every route and comparing.
#
# The coefficient needs no moments, so it exists even for the t = 0.5
# Pareto family whose mean diverges.  Routes: closed form, Monte Carlo on
# the joint CDF, Monte Carlo on the joint survival form (same draws,
# different integrand), and Gauss-Legendre quadrature on the unit square.

import numpy as np

from taucorr import (
    DiscretePmf,
    make_model,
    prob_iid_copy_below,
    tau_discrete,
    tau_monte_carlo,
    tau_monte_carlo_survival,
    tau_quadrature_unit_square,
)

DRAWS = 300_000
SEED = 99

######################## four routes, one number ############################

print(f"{'model':<22} {'closed':>8} {'mc':>9} {'mc(surv)':>9} {'quad':>9}")
for family, params in (("exp-pareto", dict(t=0.5)), ("pareto", dict(t=0.5)),
                       ("pareto", dict(t=2.0)), ("fgm", dict(alpha=1.0)),
                       ("fgm", dict(alpha=-0.5))):
    model = make_model(family, **params)
    direct = tau_monte_carlo(model, DRAWS, SEED)
    survival = tau_monte_carlo_survival(model, DRAWS, SEED)
    quad = (f"{tau_quadrature_unit_square(model, order=8):+9.5f}"
            if model.has_unit_square_support() else "      n/a")
    print(f"{family + ' ' + str(params):<22} {model.tau_closed_form():+8.4f} "
          f"{direct.value:+9.5f} {survival.value:+9.5f} {quad}")
print(f"(Monte Carlo standard error at {DRAWS} draws is about "
      f"{tau_monte_carlo(make_model('fgm', alpha=0.0), DRAWS, SEED).std_error:.1e})")

####################### discrete laws: exact double sum #####################

# With atoms the strict-inequality convention P(X < j, Y < k) matters.
# A comonotone staircase approaches +1 as the grid refines:

for m in (2, 10, 100, 1000):
    diag = DiscretePmf(np.arange(m, dtype=float), np.arange(m, dtype=float), np.eye(m) / m)
    print(f"uniform diagonal on {m:>4} points: tau = {tau_discrete(diag):+.4f}")

# ... but independence does NOT give 0 when atoms carry real mass.  For
# independent fair coins every pair has probability 1/4 and only the
# (1,1) cell sees any mass strictly below it:

coins = DiscretePmf([0.0, 1.0], [0.0, 1.0], np.full((2, 2), 0.25))
print(f"\nindependent fair coins: tau = {tau_discrete(coins)}  (not 0: atoms!)")
print(f"the same pmf under the inclusive convention: "
      f"{tau_discrete(coins, right_continuous=True)}  (outside [-1, 1] -- why strict is the default)")

# The [-1, 1] range is pinned by a simple bound: an iid copy of a
# coordinate lands strictly below it with probability at most 1/2.

rng = np.random.default_rng(5)
worst = 0.0
for _ in range(200):
    nx, ny = int(rng.integers(1, 15)), int(rng.integers(1, 15))
    probs = rng.random((nx, ny))
    probs /= probs.sum()
    pmf = DiscretePmf(np.sort(rng.choice(50, nx, replace=False)).astype(float),
                      np.sort(rng.choice(50, ny, replace=False)).astype(float),
                      probs)
    worst = max(worst, prob_iid_copy_below(pmf))
print(f"\nmax P(iid copy strictly below) over 200 random pmfs: {worst:.4f} <= 0.5")
