"""Replication harness for repeated-sample estimates of the rank coefficient.

Each replication draws a fresh n-point sample from a model, computes the
Kendall coefficient (O(n log n) path) and the product-moment coefficient,
and the harness aggregates across replications: mean, variance, and
exceedance counts |tau_n - tau| > epsilon against a reference value.

Reproducibility: replication r uses a generator spawned from the master
seed via ``SeedSequence(master_seed).spawn(...)[r]``, so streams are
mutually independent, identical runs are bit-identical, and results do
not depend on execution order.  Aggregation is done in replication-index
order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np

from .families import BivariateModel
from .population import tau_monte_carlo
from .rank_stats import (
    BivariateSample,
    DegenerateSampleError,
    kendall_tau_fast,
    kendall_tau_naive,
    pearson_rho_sample,
)

__all__ = [
    "ReplicationSummary",
    "ConvergenceRow",
    "replication_streams",
    "reference_tau",
    "run_replications",
    "unbiasedness_table",
    "convergence_table",
]

REFERENCE_MC_DRAWS = 10**6


def replication_streams(
    master_seed: int | np.random.SeedSequence, count: int
) -> list[np.random.Generator]:
    """Independent generators for replications 0..count-1.

    Deterministic in (master_seed, count) and order-insensitive: stream r
    is always the r-th spawned child of the master sequence.
    """
    root = (
        master_seed
        if isinstance(master_seed, np.random.SeedSequence)
        else np.random.SeedSequence(master_seed)
    )
    return [np.random.default_rng(child) for child in root.spawn(count)]


def reference_tau(model: BivariateModel, seed=0, n_draws: int = REFERENCE_MC_DRAWS) -> float:
    """Reference dependence coefficient for exceedance counting.

    Closed form when the model has one, else a high-precision Monte Carlo
    estimate, so estimator error is not conflated with reference error.
    """
    closed = model.tau_closed_form()
    if closed is not None:
        return float(closed)
    return tau_monte_carlo(model, n_draws, seed).value


@dataclass(frozen=True)
class ReplicationSummary:
    """Aggregate of R simulated samples of size n from one model."""

    n: int
    n_replications: int
    tau_mean: float
    tau_variance: float
    rho_mean: float | None
    tau_reference: float | None
    exceed_counts: dict[float, int]
    tau_values: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        values = np.asarray(self.tau_values, dtype=float)
        values.setflags(write=False)
        object.__setattr__(self, "tau_values", values)

    @property
    def tau_std_error(self) -> float:
        """Standard error of tau_mean across replications."""
        return math.sqrt(self.tau_variance / self.n_replications)

    def exceed_fraction(self, epsilon: float) -> float:
        return self.exceed_counts[epsilon] / self.n_replications


class ConvergenceRow(NamedTuple):
    n: int
    epsilon: float
    exceed_fraction: float
    tau_variance: float


def run_replications(
    model: BivariateModel,
    n: int,
    n_replications: int,
    master_seed: int | np.random.SeedSequence,
    *,
    epsilons: Sequence[float] = (),
    tau_reference: float | None = None,
    use_naive: bool = False,
) -> ReplicationSummary:
    """Draw R independent n-point samples and aggregate their statistics.

    When ``epsilons`` are given, counts replications with
    |tau_n - tau_reference| > epsilon (reference defaults to
    :func:`reference_tau`).  A degenerate sample makes that replication's
    rho absent instead of aborting the run; ``rho_mean`` averages the
    defined values and is None when none are.  ``use_naive`` switches the
    per-replication estimator to the quadratic path (same values, for
    consistency checks).
    """
    if n < 2:
        raise ValueError("need at least two observations")
    if n_replications < 1:
        raise ValueError("need at least one replication")
    epsilons = tuple(float(e) for e in epsilons)
    if any(e <= 0 for e in epsilons):
        raise ValueError("epsilons must be positive")
    if epsilons and tau_reference is None:
        tau_reference = reference_tau(model)

    taus = np.empty(n_replications)
    rho_sum = 0.0
    rho_count = 0
    for r, rng in enumerate(replication_streams(master_seed, n_replications)):
        x, y = model.draw(rng, size=n)
        sample = BivariateSample(x, y)
        if use_naive:
            taus[r] = kendall_tau_naive(sample)
        else:
            taus[r] = kendall_tau_fast(sample).value
        try:
            rho_sum += pearson_rho_sample(sample)
            rho_count += 1
        except DegenerateSampleError:
            pass

    exceed = {}
    if epsilons:
        deviations = np.abs(taus - tau_reference)
        exceed = {e: int(np.count_nonzero(deviations > e)) for e in epsilons}
    return ReplicationSummary(
        n=n,
        n_replications=n_replications,
        tau_mean=float(taus.mean()),
        tau_variance=float(taus.var(ddof=1)) if n_replications > 1 else 0.0,
        rho_mean=rho_sum / rho_count if rho_count else None,
        tau_reference=tau_reference,
        exceed_counts=exceed,
        tau_values=taus,
    )


def unbiasedness_table(
    model: BivariateModel,
    n_list: Sequence[int],
    n_replications: int,
    master_seed: int,
) -> list[ReplicationSummary]:
    """One replication summary per sample size, each on its own seed block.

    The point of the table: the mean of tau_n should sit within sampling
    error of the same reference value at every n, smallest included.
    """
    if not n_list:
        raise ValueError("n_list must not be empty")
    if any(n < 2 for n in n_list):
        raise ValueError("need at least two observations")
    root = np.random.SeedSequence(master_seed)
    blocks = root.spawn(len(n_list))
    ref = reference_tau(model)
    return [
        run_replications(model, n, n_replications, block, tau_reference=ref)
        for n, block in zip(n_list, blocks)
    ]


def convergence_table(
    model: BivariateModel,
    n_list: Sequence[int],
    n_replications: int,
    epsilons: Sequence[float],
    master_seed: int,
    *,
    tau_reference: float | None = None,
) -> list[ConvergenceRow]:
    """Empirical exceedance frequencies and variances along growing n.

    Rows come out grouped by n, one row per (n, epsilon).  Expected
    behavior: exceedance shrinks with n, and the variance of tau_n decays
    roughly like 1/n.
    """
    if not n_list:
        raise ValueError("n_list must not be empty")
    if any(b <= a for a, b in zip(n_list, n_list[1:])):
        raise ValueError("n_list must be strictly increasing")
    if not epsilons:
        raise ValueError("epsilons must not be empty")
    root = np.random.SeedSequence(master_seed)
    blocks = root.spawn(len(n_list))
    ref = reference_tau(model) if tau_reference is None else tau_reference
    rows = []
    for n, block in zip(n_list, blocks):
        summary = run_replications(
            model, n, n_replications, block, epsilons=epsilons, tau_reference=ref
        )
        for eps in epsilons:
            rows.append(
                ConvergenceRow(
                    n=n,
                    epsilon=float(eps),
                    exceed_fraction=summary.exceed_fraction(float(eps)),
                    tau_variance=summary.tau_variance,
                )
            )
    return rows
