import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from taucorr import (
    BivariateSample,
    ConcomitantSequence,
    DegenerateSampleError,
    RankVector,
    concomitant_ranks,
    count_inversions,
    detect_ties,
    kendall_tau_fast,
    kendall_tau_naive,
    pearson_rho_sample,
    sort_with_concomitants,
)


def brute_force_tau(xs, ys):
    """Independent oracle: concordant/discordant pair counting.

    Tie-free samples only: 2 (C - D) / (n (n - 1)).
    """
    n = len(xs)
    concordant = discordant = 0
    for i in range(n):
        for j in range(i + 1, n):
            prod = (xs[i] - xs[j]) * (ys[i] - ys[j])
            if prod > 0:
                concordant += 1
            elif prod < 0:
                discordant += 1
    return (2 * (concordant - discordant)) / (n * (n - 1))


def random_tiefree_sample(rng, n):
    return BivariateSample(rng.permutation(n).astype(float), rng.permutation(n).astype(float))


# unique small integers: exact float arithmetic, cubes stay below 2**53
unique_ints = st.lists(
    st.integers(min_value=-20000, max_value=20000), min_size=2, max_size=25, unique=True
)


@st.composite
def tiefree_samples(draw):
    xs = draw(unique_ints)
    ys = draw(st.lists(st.integers(min_value=-20000, max_value=20000),
                       min_size=len(xs), max_size=len(xs), unique=True))
    return BivariateSample([float(v) for v in xs], [float(v) for v in ys])


class TestSortWithConcomitants:
    def test_monotone_relabeling(self):
        seq = sort_with_concomitants(BivariateSample([3, 1, 2], [30, 10, 20]))
        assert seq.x_sorted.tolist() == [1, 2, 3]
        assert seq.y_concomitants.tolist() == [10, 20, 30]
        assert seq.original_indices.tolist() == [1, 2, 0]

    def test_constant_y(self):
        seq = sort_with_concomitants(BivariateSample([1, 2, 3], [5, 5, 5]))
        assert seq.y_concomitants.tolist() == [5, 5, 5]

    def test_tied_x_keeps_input_order(self):
        seq = sort_with_concomitants(BivariateSample([2, 2, 1], [7, 8, 9]))
        assert seq.x_sorted.tolist() == [1, 2, 2]
        assert seq.y_concomitants.tolist() == [9, 7, 8]

    def test_pairing_preserved(self):
        rng = np.random.default_rng(0)
        sample = BivariateSample(rng.normal(size=40), rng.normal(size=40))
        seq = sort_with_concomitants(sample)
        assert np.array_equal(seq.y_concomitants, sample.ys[seq.original_indices])
        assert np.array_equal(seq.x_sorted, np.sort(sample.xs))

    def test_rejects_nan_with_index(self):
        with pytest.raises(ValueError, match=r"non-finite value in ys at index 2"):
            BivariateSample([1, 2, 3], [1, 2, np.nan])
        with pytest.raises(ValueError, match=r"non-finite value in xs at index 0"):
            BivariateSample([np.inf, 2], [1, 2])

    def test_rejects_length_mismatch(self):
        with pytest.raises(ValueError, match="pair up"):
            BivariateSample([1, 2, 3], [1, 2])

    def test_sample_arrays_readonly(self):
        sample = BivariateSample([1, 2], [3, 4])
        with pytest.raises(ValueError):
            sample.xs[0] = 9.0


class TestConcomitantRanks:
    @pytest.mark.parametrize(
        "ys, expected",
        [
            ([10, 20, 30], [1, 2]),
            ([30, 20, 10], [0, 0]),
            ([1, 3, 2, 4], [1, 1, 3]),
        ],
    )
    def test_examples(self, ys, expected):
        seq = sort_with_concomitants(BivariateSample(list(range(len(ys))), ys))
        assert concomitant_ranks(seq).ranks.tolist() == expected

    def test_inclusive_comparison_counts_ties(self):
        seq = sort_with_concomitants(BivariateSample([1, 2, 3], [5, 5, 5]))
        assert concomitant_ranks(seq).ranks.tolist() == [1, 2]

    def test_too_short(self):
        seq = ConcomitantSequence([1.0], [2.0], [0])
        with pytest.raises(ValueError, match="at least two"):
            concomitant_ranks(seq)

    def test_rank_bounds_validated(self):
        with pytest.raises(ValueError, match="0..j-1"):
            RankVector([2])  # position j=2 allows at most 1


class TestKendallTau:
    def test_perfect_agreement(self):
        assert kendall_tau_naive(BivariateSample([1, 2, 3], [1, 2, 3])) == 1.0

    def test_perfect_disagreement(self):
        assert kendall_tau_naive(BivariateSample([1, 2, 3], [3, 2, 1])) == -1.0

    def test_single_swap(self):
        assert kendall_tau_naive(BivariateSample([1, 2, 3, 4], [1, 3, 2, 4])) == pytest.approx(2 / 3)

    def test_fast_matches_example(self):
        result = kendall_tau_fast(BivariateSample([1, 2, 3, 4], [1, 3, 2, 4]))
        assert result.value == kendall_tau_naive(BivariateSample([1, 2, 3, 4], [1, 3, 2, 4]))
        assert not result.used_naive_fallback

    def test_fast_reversed(self):
        xs = list(range(1, 9))
        result = kendall_tau_fast(BivariateSample(xs, xs[::-1]))
        assert result.value == -1.0

    def test_needs_two_observations(self):
        with pytest.raises(ValueError, match="at least two"):
            kendall_tau_naive(BivariateSample([1.0], [2.0]))
        with pytest.raises(ValueError, match="at least two"):
            kendall_tau_fast(BivariateSample([1.0], [2.0]))

    def test_fast_equals_naive_bitwise(self):
        rng = np.random.default_rng(123)
        for _ in range(300):
            n = int(rng.integers(2, 201))
            sample = random_tiefree_sample(rng, n)
            assert kendall_tau_fast(sample).value == kendall_tau_naive(sample)

    def test_brute_force_all_small_n(self):
        rng = np.random.default_rng(5)
        for n in range(2, 9):
            for _ in range(30):
                sample = random_tiefree_sample(rng, n)
                assert kendall_tau_naive(sample) == brute_force_tau(sample.xs, sample.ys)

    def test_tie_fallback_flagged(self):
        result = kendall_tau_fast(BivariateSample([1, 2, 3, 4], [2, 2, 3, 4]))
        assert result.used_naive_fallback
        assert result.ties.y_tie_count == 1
        assert result.value == kendall_tau_naive(BivariateSample([1, 2, 3, 4], [2, 2, 3, 4]))

    def test_ties_count_as_concordant(self):
        # inclusive indicator: constant y ranks maximal, tau = 1
        assert kendall_tau_naive(BivariateSample([1, 2, 3], [7, 7, 7])) == 1.0

    def test_matches_scipy_on_tiefree_data(self):
        scipy_stats = pytest.importorskip("scipy.stats")
        rng = np.random.default_rng(99)
        for _ in range(25):
            n = int(rng.integers(5, 120))
            sample = random_tiefree_sample(rng, n)
            expected = scipy_stats.kendalltau(sample.xs, sample.ys).statistic
            assert kendall_tau_fast(sample).value == pytest.approx(expected, abs=1e-12)

    def test_plus_minus_one_iff_monotone(self):
        rng = np.random.default_rng(17)
        for _ in range(60):
            n = int(rng.integers(3, 40))
            sample = random_tiefree_sample(rng, n)
            seq = sort_with_concomitants(sample)
            tau = kendall_tau_fast(sample).value
            y = seq.y_concomitants
            increasing = bool(np.all(np.diff(y) > 0))
            decreasing = bool(np.all(np.diff(y) < 0))
            assert -1.0 <= tau <= 1.0
            assert (tau == 1.0) == increasing
            assert (tau == -1.0) == decreasing


class TestTauProperties:
    @settings(max_examples=60, deadline=None)
    @given(tiefree_samples())
    def test_permutation_invariance(self, sample):
        rng = np.random.default_rng(1)
        perm = rng.permutation(sample.n)
        shuffled = BivariateSample(sample.xs[perm], sample.ys[perm])
        assert kendall_tau_naive(shuffled) == kendall_tau_naive(sample)
        assert kendall_tau_fast(shuffled).value == kendall_tau_fast(sample).value

    @settings(max_examples=60, deadline=None)
    @given(tiefree_samples())
    def test_monotone_transform_invariance(self, sample):
        tau = kendall_tau_naive(sample)
        cubed_x = BivariateSample(sample.xs**3, sample.ys)
        shifted_y = BivariateSample(sample.xs, 2.0 * sample.ys + 1.0)
        assert kendall_tau_naive(cubed_x) == tau
        assert kendall_tau_naive(shifted_y) == tau

    @settings(max_examples=60, deadline=None)
    @given(tiefree_samples())
    def test_range(self, sample):
        assert -1.0 <= kendall_tau_naive(sample) <= 1.0

    def test_pearson_not_monotone_invariant(self):
        sample = BivariateSample([1, 2, 3, 10], [1, 3, 2, 4])
        assert pearson_rho_sample(
            BivariateSample(sample.xs**3, sample.ys)
        ) != pearson_rho_sample(sample)

    def test_permutation_invariance_pearson(self):
        rng = np.random.default_rng(2)
        sample = BivariateSample(rng.normal(size=50), rng.normal(size=50))
        perm = rng.permutation(50)
        shuffled = BivariateSample(sample.xs[perm], sample.ys[perm])
        assert pearson_rho_sample(shuffled) == pytest.approx(
            pearson_rho_sample(sample), abs=1e-12
        )

    def test_independent_coordinates_center_on_zero(self):
        rng = np.random.default_rng(31)
        reps, n = 1000, 50
        taus = np.empty(reps)
        for r in range(reps):
            taus[r] = kendall_tau_fast(
                BivariateSample(rng.random(n), rng.random(n))
            ).value
        se = taus.std(ddof=1) / np.sqrt(reps)
        assert abs(taus.mean()) < 4 * se


class TestCountInversions:
    def test_sorted(self):
        assert count_inversions([1, 2, 3, 4]) == 0

    def test_reversed(self):
        assert count_inversions(list(range(10, 0, -1))) == 45

    def test_single_swap(self):
        assert count_inversions([1, 3, 2, 4]) == 1

    def test_equal_elements_not_inversions(self):
        assert count_inversions([2, 2, 2]) == 0

    def test_matches_quadratic_count(self):
        rng = np.random.default_rng(8)
        for _ in range(50):
            vals = rng.permutation(int(rng.integers(1, 80))).astype(float)
            expected = sum(
                1 for i in range(len(vals)) for j in range(i + 1, len(vals)) if vals[i] > vals[j]
            )
            assert count_inversions(vals) == expected


class TestPearson:
    def test_perfect_linear(self):
        assert pearson_rho_sample(BivariateSample([1, 2, 3], [3, 5, 7])) == 1.0

    def test_perfect_negative(self):
        assert pearson_rho_sample(BivariateSample([1, 2, 3], [-1, -2, -3])) == -1.0

    def test_example(self):
        assert pearson_rho_sample(BivariateSample([1, 2, 3, 4], [1, 3, 2, 4])) == pytest.approx(0.8)

    def test_degenerate(self):
        with pytest.raises(DegenerateSampleError, match="degenerate sample"):
            pearson_rho_sample(BivariateSample([1, 1, 1], [1, 2, 3]))
        with pytest.raises(DegenerateSampleError, match="degenerate sample"):
            pearson_rho_sample(BivariateSample([1, 2, 3], [4, 4, 4]))


class TestDetectTies:
    @pytest.mark.parametrize(
        "xs, expected",
        [([1, 2, 3], 0), ([1, 1, 2], 1), ([5, 5, 5], 2)],
    )
    def test_x_counts(self, xs, expected):
        report = detect_ties(BivariateSample(xs, [1, 2, 3]))
        assert report.x_tie_count == expected

    def test_counts_are_order_independent(self):
        a = detect_ties(BivariateSample([3, 1, 3], [1, 2, 3]))
        b = detect_ties(BivariateSample([3, 3, 1], [1, 2, 3]))
        assert a.x_tie_count == b.x_tie_count == 1
