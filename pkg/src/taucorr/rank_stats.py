"""Rank statistics of paired samples via concomitants of order statistics.

Sorting a paired sample by its x-values induces an order on the y-values:
each y travels with its x partner and becomes the *concomitant* of the
corresponding order statistic.  Ranking each concomitant among its
predecessors (inclusive comparison, so ties count) and normalizing the
rank sum gives the Kendall rank correlation coefficient

    tau_n = 4 * sum_{j=2..n} r_j / (n * (n - 1)) - 1.

Two interchangeable implementations are provided: a direct quadratic one
and an O(n log n) merge-sort inversion count.  Both accumulate exact
integer counts and perform a single float division at the end, so on
tie-free data they return bit-identical values.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "BivariateSample",
    "ConcomitantSequence",
    "RankVector",
    "TieReport",
    "FastTauResult",
    "DegenerateSampleError",
    "sort_with_concomitants",
    "concomitant_ranks",
    "kendall_tau_naive",
    "kendall_tau_fast",
    "count_inversions",
    "pearson_rho_sample",
    "detect_ties",
]


class DegenerateSampleError(ValueError):
    """Sample statistic undefined because a variance term vanishes."""


def _readonly(values, dtype=float) -> np.ndarray:
    arr = np.array(values, dtype=dtype)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class BivariateSample:
    """Paired observations (x_i, y_i).

    Arrays are copied, validated (equal length, all finite) and marked
    read-only, so instances are safe to share across threads.
    """

    xs: np.ndarray
    ys: np.ndarray

    def __post_init__(self) -> None:
        xs = np.asarray(self.xs, dtype=float)
        ys = np.asarray(self.ys, dtype=float)
        if xs.ndim != 1 or ys.ndim != 1:
            raise ValueError("xs and ys must be one-dimensional")
        if len(xs) != len(ys):
            raise ValueError(
                f"xs and ys must pair up: got {len(xs)} x-values and {len(ys)} y-values"
            )
        for name, arr in (("xs", xs), ("ys", ys)):
            bad = np.flatnonzero(~np.isfinite(arr))
            if bad.size:
                raise ValueError(
                    f"non-finite value in {name} at index {int(bad[0])}"
                )
        object.__setattr__(self, "xs", _readonly(xs))
        object.__setattr__(self, "ys", _readonly(ys))

    @property
    def n(self) -> int:
        return len(self.xs)


@dataclass(frozen=True)
class ConcomitantSequence:
    """A sample sorted by x with the induced order of the paired y-values.

    ``original_indices`` maps sorted position j back to the input position
    of that pair, so ``y_concomitants[j] == ys[original_indices[j]]``.
    """

    x_sorted: np.ndarray
    y_concomitants: np.ndarray
    original_indices: np.ndarray

    def __post_init__(self) -> None:
        x = _readonly(self.x_sorted)
        y = _readonly(self.y_concomitants)
        idx = _readonly(self.original_indices, dtype=np.intp)
        if not (len(x) == len(y) == len(idx)):
            raise ValueError("x_sorted, y_concomitants and original_indices must share one length")
        if np.any(x[1:] < x[:-1]):
            raise ValueError("x_sorted must be nondecreasing")
        if not np.array_equal(np.sort(idx), np.arange(len(idx))):
            raise ValueError("original_indices must be a permutation of 0..n-1")
        object.__setattr__(self, "x_sorted", x)
        object.__setattr__(self, "y_concomitants", y)
        object.__setattr__(self, "original_indices", idx)

    @property
    def n(self) -> int:
        return len(self.x_sorted)


@dataclass(frozen=True)
class RankVector:
    """Concomitant ranks for positions j = 2..n; ``ranks[j - 2]`` counts the
    predecessors of position j that are <= it."""

    ranks: np.ndarray

    def __post_init__(self) -> None:
        ranks = _readonly(self.ranks, dtype=np.int64)
        upper = np.arange(1, len(ranks) + 1)
        if np.any(ranks < 0) or np.any(ranks > upper):
            raise ValueError("rank at position j must lie in 0..j-1")
        object.__setattr__(self, "ranks", ranks)

    @property
    def n(self) -> int:
        return len(self.ranks) + 1

    def rank_sum(self) -> int:
        return int(self.ranks.sum())


@dataclass(frozen=True)
class TieReport:
    """Counts of tied adjacent pairs in each coordinate after sorting."""

    x_tie_count: int
    y_tie_count: int

    @property
    def has_ties(self) -> bool:
        return bool(self.x_tie_count or self.y_tie_count)


@dataclass(frozen=True)
class FastTauResult:
    """Kendall coefficient plus a note of whether the tie fallback engaged."""

    value: float
    used_naive_fallback: bool
    ties: TieReport


def sort_with_concomitants(sample: BivariateSample) -> ConcomitantSequence:
    """Stable-sort the sample by x, carrying each y with its x partner.

    Equal x-values keep their input order, so results on tied data are
    deterministic and reproducible.
    """
    order = np.argsort(sample.xs, kind="stable")
    return ConcomitantSequence(sample.xs[order], sample.ys[order], order)


def concomitant_ranks(seq: ConcomitantSequence) -> RankVector:
    """Rank each concomitant among its predecessors.

    Position j (j = 2..n) gets the count of earlier positions i < j with
    ``y[i] <= y[j]``; the inclusive comparison means tied predecessors are
    counted.
    """
    n = seq.n
    if n < 2:
        raise ValueError("need at least two observations")
    y = seq.y_concomitants
    ranks = np.empty(n - 1, dtype=np.int64)
    for j in range(1, n):
        ranks[j - 1] = np.count_nonzero(y[:j] <= y[j])
    return RankVector(ranks)


def kendall_tau_naive(sample: BivariateSample) -> float:
    """Kendall rank correlation from concomitant ranks (quadratic cost).

    Evaluates ``4 * rank_sum / (n (n-1)) - 1`` with exact integer
    arithmetic; the closing ratio is the only float operation.
    """
    ranks = concomitant_ranks(sort_with_concomitants(sample))
    m = sample.n * (sample.n - 1)
    return (4 * ranks.rank_sum() - m) / m


def kendall_tau_fast(sample: BivariateSample) -> FastTauResult:
    """Kendall rank correlation in O(n log n) via inversion counting.

    On tie-free data the inversion count D of the concomitant order
    satisfies ``rank_sum = n(n-1)/2 - D``, so the value is bit-identical
    to :func:`kendall_tau_naive`.  Samples with ties in either coordinate
    fall back to the quadratic path and flag it in the result.
    """
    if sample.n < 2:
        raise ValueError("need at least two observations")
    ties = detect_ties(sample)
    if ties.has_ties:
        return FastTauResult(kendall_tau_naive(sample), True, ties)
    seq = sort_with_concomitants(sample)
    inversions = count_inversions(seq.y_concomitants)
    m = sample.n * (sample.n - 1)
    rank_sum = m // 2 - inversions
    return FastTauResult((4 * rank_sum - m) / m, False, ties)


def count_inversions(values) -> int:
    """Exact number of pairs i < j with ``values[i] > values[j]``.

    Top-down merge sort; equal elements are not inversions.
    """
    arr = [float(v) for v in values]
    _, total = _merge_count(arr)
    return total


def _merge_count(arr: list[float]) -> tuple[list[float], int]:
    n = len(arr)
    if n <= 1:
        return arr, 0
    left, count_left = _merge_count(arr[: n // 2])
    right, count_right = _merge_count(arr[n // 2 :])
    merged: list[float] = []
    count = count_left + count_right
    i = j = 0
    len_left, len_right = len(left), len(right)
    while i < len_left and j < len_right:
        if right[j] < left[i]:
            count += len_left - i  # every remaining left element exceeds right[j]
            merged.append(right[j])
            j += 1
        else:
            merged.append(left[i])
            i += 1
    merged.extend(left[i:])
    merged.extend(right[j:])
    return merged, count


def pearson_rho_sample(sample: BivariateSample) -> float:
    """Product-moment correlation of the sample (centered cross-products)."""
    if sample.n < 2:
        raise ValueError("need at least two observations")
    dx = sample.xs - sample.xs.mean()
    dy = sample.ys - sample.ys.mean()
    sxx = float(np.dot(dx, dx))
    syy = float(np.dot(dy, dy))
    if sxx == 0.0 or syy == 0.0:
        coord = "xs" if sxx == 0.0 else "ys"
        raise DegenerateSampleError(f"degenerate sample: zero variance in {coord}")
    return float(np.dot(dx, dy) / np.sqrt(sxx * syy))


def detect_ties(sample: BivariateSample) -> TieReport:
    """Count tied adjacent pairs per coordinate (each sorted separately).

    A run of k equal values contributes k - 1.
    """
    xs = np.sort(sample.xs)
    ys = np.sort(sample.ys)
    return TieReport(
        x_tie_count=int(np.count_nonzero(xs[1:] == xs[:-1])),
        y_tie_count=int(np.count_nonzero(ys[1:] == ys[:-1])),
    )
