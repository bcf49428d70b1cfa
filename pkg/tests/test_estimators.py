"""Sample estimators: hand-enumerated values, identities, invariances."""

import numpy as np
import pytest
from conftest import euclidean_kernel, gaussian_kernel, random_orthonormal

from ginidist import (
    STATISTICS,
    correlation_ratio,
    distance_correlation,
    distance_covariance,
    gini_correlation,
    gini_covariance,
    gini_mean_difference,
    gini_mean_difference_1d,
    gini_statistics,
    pairwise_distances,
    plug_in_distance_covariance,
    set_distance_matrix,
    u_center,
)
from ginidist.exceptions import (
    ClassTooSmallError,
    DegenerateDistributionError,
    DegenerateFeatureError,
    InsufficientDataError,
    SmallClassWarning,
)


def euclidean_matrix(values):
    return pairwise_distances(euclidean_kernel(), np.asarray(values, dtype=float))


class TestGiniMeanDifference:
    def test_three_points(self):
        """Pairwise distances of {0,1,3} are {1,3,2}; mean is 2."""
        assert gini_mean_difference(euclidean_matrix([0, 1, 3])) == pytest.approx(2.0)

    def test_identical_pair_subset(self):
        D = euclidean_matrix([5.0, 5.0, 1.0])
        assert gini_mean_difference(D, subset=[0, 1]) == 0.0

    def test_single_pair_subset(self):
        D = euclidean_matrix([0, 1, 3, 5])
        assert gini_mean_difference(D, subset=[2, 3]) == pytest.approx(2.0)

    def test_subset_too_small(self):
        with pytest.raises(InsufficientDataError):
            gini_mean_difference(euclidean_matrix([0, 1, 3]), subset=[1])


class TestGiniMeanDifference1d:
    def test_three_points(self):
        assert gini_mean_difference_1d([0, 1, 3]) == pytest.approx(2.0)

    def test_constant_values(self):
        assert gini_mean_difference_1d([4.0] * 10) == 0.0

    def test_matches_quadratic_computation(self):
        rng = np.random.default_rng(8)
        values = rng.normal(size=1000)
        fast = gini_mean_difference_1d(values)
        slow = gini_mean_difference(euclidean_matrix(values))
        assert abs(fast - slow) < 1e-10

    def test_too_few(self):
        with pytest.raises(InsufficientDataError):
            gini_mean_difference_1d([1.0])


class TestGiniCovariance:
    def test_hand_enumerated_two_class(self):
        """a:{0,1}, b:{3,5}: delta=17/6, within-class GMDs 1 and 2."""
        D = euclidean_matrix([0, 1, 3, 5])
        labels = ["a", "a", "b", "b"]
        with pytest.warns(SmallClassWarning):
            stats = gini_statistics(D, labels)
        assert stats.delta_hat == pytest.approx(17 / 6)
        assert stats.gcov == pytest.approx(4 / 3)
        assert stats.gcor == pytest.approx(8 / 17)

    def test_single_class_is_exactly_zero(self):
        rng = np.random.default_rng(1)
        D = euclidean_matrix(rng.normal(size=12))
        assert gini_covariance(D, ["only"] * 12) == 0.0
        assert gini_correlation(D, ["only"] * 12) == 0.0

    def test_point_mass_classes_give_correlation_one(self):
        D = euclidean_matrix([0.0, 0.0, 0.0, 1.0, 1.0, 1.0])
        labels = [0, 0, 0, 1, 1, 1]
        assert gini_correlation(D, labels) == pytest.approx(1.0)

    def test_all_identical_points_degenerate(self):
        D = euclidean_matrix([2.0] * 8)
        with pytest.raises(DegenerateDistributionError):
            gini_correlation(D, [0, 0, 0, 0, 1, 1, 1, 1])

    def test_small_class_rejected_and_named(self):
        D = euclidean_matrix([0, 1, 2, 3, 4])
        with pytest.raises(ClassTooSmallError, match="lonely"):
            gini_covariance(D, ["a", "a", "a", "a", "lonely"])

    def test_duplicated_dataset_bounded_replacement(self):
        """On a tie-heavy duplicated sample, one replacement moves gcov
        by at most 5/n (brute-force recomputation)."""
        rng = np.random.default_rng(2)
        base = rng.normal(size=15)
        values = np.repeat(base, 2)
        labels = np.repeat(rng.integers(0, 3, size=15), 2)
        n = values.size
        kernel = gaussian_kernel(10.0)
        original = gini_covariance(pairwise_distances(kernel, values), labels)
        assert np.isfinite(original)
        for trial in range(50):
            i = rng.integers(n)
            new_values = values.copy()
            new_labels = labels.copy()
            new_values[i] = rng.normal()
            new_labels[i] = rng.integers(0, 3)
            _, counts = np.unique(new_labels, return_counts=True)
            if counts.min() < 2:
                continue
            replaced = gini_covariance(pairwise_distances(kernel, new_values), new_labels)
            assert abs(replaced - original) <= 5.0 / n + 1e-12


class TestUCentering:
    def test_zero_matrix(self):
        assert np.all(u_center(np.zeros((5, 5))) == 0.0)

    @pytest.mark.parametrize("seed", range(5))
    def test_rows_sum_to_zero(self, seed):
        rng = np.random.default_rng(seed)
        M = rng.uniform(size=(5, 5))
        D = (M + M.T) / 2
        np.fill_diagonal(D, 0.0)
        A = u_center(D)
        assert np.max(np.abs(A.sum(axis=1))) < 1e-12
        assert np.max(np.abs(A.sum(axis=0))) < 1e-12

    def test_matches_entrywise_formula(self):
        D = euclidean_matrix([0, 1, 3, 6])
        n = 4
        expected = np.zeros((n, n))
        for i in range(n):
            for j in range(n):
                if i == j:
                    continue
                expected[i, j] = (
                    D[i, j]
                    - D[i, :].sum() / (n - 2)
                    - D[:, j].sum() / (n - 2)
                    + D.sum() / ((n - 1) * (n - 2))
                )
        assert np.max(np.abs(u_center(D) - expected)) < 1e-12

    def test_too_small(self):
        with pytest.raises(InsufficientDataError):
            u_center(np.zeros((3, 3)))


class TestDistanceCovariance:
    def test_single_class_labels_give_zero(self):
        rng = np.random.default_rng(3)
        D = euclidean_matrix(rng.normal(size=10))
        Dy = set_distance_matrix([0] * 10)
        assert distance_covariance(D, Dy) == 0.0

    def test_balanced_point_mass_matches_half_gcov(self):
        """Two balanced point-mass classes: dcov ~ gcov * 2 p1 p2 = gcov / 2."""
        values = np.concatenate([np.zeros(100), np.ones(100)])
        labels = np.array([0] * 100 + [1] * 100)
        D = pairwise_distances(gaussian_kernel(10.0), values)
        dcov = distance_covariance(D, set_distance_matrix(labels))
        gcov = gini_covariance(D, labels)
        assert dcov == pytest.approx(gcov / 2.0, abs=0.01)

    def test_size_mismatch(self):
        from ginidist.exceptions import InvalidInputError

        with pytest.raises(InvalidInputError):
            distance_covariance(np.zeros((5, 5)), np.zeros((4, 4)))


class TestDistanceCorrelation:
    @pytest.mark.parametrize("seed", range(3))
    def test_self_correlation_is_one(self, seed):
        rng = np.random.default_rng(seed)
        D = euclidean_matrix(rng.normal(size=15))
        assert distance_correlation(D, D) == pytest.approx(1.0, abs=1e-12)

    def test_degenerate_label_matrix_gives_zero(self):
        rng = np.random.default_rng(4)
        D = euclidean_matrix(rng.normal(size=10))
        assert distance_correlation(D, np.zeros((10, 10))) == 0.0

    def test_independent_data_stays_small(self):
        """|dcor| < 0.1 in the bulk under independence at n=200."""
        values = []
        for seed in range(40):
            rng = np.random.default_rng(1000 + seed)
            D = pairwise_distances(gaussian_kernel(10.0), rng.normal(size=200))
            Dy = set_distance_matrix(rng.integers(0, 3, size=200))
            values.append(abs(distance_correlation(D, Dy)))
        values = np.asarray(values)
        assert values.mean() < 0.05
        assert np.mean(values < 0.1) >= 0.9


class TestCorrelationRatio:
    def test_class_constant_feature(self):
        x = [1.0, 1.0, 1.0, 4.0, 4.0, 4.0]
        assert correlation_ratio(x, [0, 0, 0, 1, 1, 1]) == pytest.approx(1.0)

    def test_single_class_gives_zero(self):
        rng = np.random.default_rng(5)
        assert correlation_ratio(rng.normal(size=20), [0] * 20) == pytest.approx(0.0)

    @pytest.mark.parametrize("seed", range(5))
    def test_two_class_matches_squared_pearson(self, seed):
        rng = np.random.default_rng(seed)
        x = rng.normal(size=60)
        labels = rng.integers(0, 2, size=60)
        eta = correlation_ratio(x, labels)
        r = np.corrcoef(x, labels.astype(float))[0, 1]
        assert abs(eta - r**2) < 1e-12

    def test_constant_feature_rejected(self):
        with pytest.raises(DegenerateFeatureError):
            correlation_ratio([3.0] * 10, [0] * 5 + [1] * 5)


class TestIdentitiesAndInvariances:
    @pytest.mark.parametrize("seed", range(5))
    def test_recomposition(self, seed):
        """gcor * delta equals gcov to machine precision."""
        rng = np.random.default_rng(seed)
        D = pairwise_distances(gaussian_kernel(5.0), rng.normal(size=(40, 2)))
        labels = rng.integers(0, 3, size=40)
        stats = gini_statistics(D, labels)
        assert abs(stats.gcor * stats.delta_hat - stats.gcov) < 1e-12

    @pytest.mark.parametrize("seed", range(3))
    def test_rigid_motion_invariance(self, seed):
        rng = np.random.default_rng(seed)
        X = rng.normal(size=(30, 3))
        labels = rng.integers(0, 3, size=30)
        R = random_orthonormal(rng, 3)
        b = rng.normal(size=3)
        kernel = gaussian_kernel(10.0)
        D = pairwise_distances(kernel, X)
        D2 = pairwise_distances(kernel, X @ R.T + b)
        Dy = set_distance_matrix(labels)
        assert abs(gini_covariance(D, labels) - gini_covariance(D2, labels)) < 1e-12
        assert abs(gini_correlation(D, labels) - gini_correlation(D2, labels)) < 1e-12
        assert abs(distance_covariance(D, Dy) - distance_covariance(D2, Dy)) < 1e-12

    @pytest.mark.parametrize("seed", range(3))
    def test_row_permutation_invariance(self, seed):
        """Shuffling (rows, labels) jointly changes nothing."""
        rng = np.random.default_rng(seed)
        X = rng.normal(size=(50, 2))
        labels = rng.integers(0, 4, size=50)
        perm = rng.permutation(50)
        kernel = gaussian_kernel(10.0)
        D = pairwise_distances(kernel, X)
        Dp = pairwise_distances(kernel, X[perm])
        for name, fn in STATISTICS.items():
            assert abs(fn(D, labels) - fn(Dp, labels[perm])) < 1e-12, name

    def test_large_bandwidth_matches_euclidean_gcor(self):
        rng = np.random.default_rng(9)
        X = rng.normal(size=60)
        labels = rng.integers(0, 3, size=60)
        wide = gini_correlation(pairwise_distances(gaussian_kernel(1e6), X), labels)
        plain = gini_correlation(pairwise_distances(euclidean_kernel(), X), labels)
        assert abs(wide - plain) < 1e-3

    @pytest.mark.parametrize("k", [2, 3, 4])
    def test_balanced_plug_in_proportionality(self, k):
        """Balanced classes: plug-in dcov equals gcov / K exactly."""
        rng = np.random.default_rng(k)
        X = rng.normal(size=(12 * k, 2)) + np.repeat(np.arange(k), 12)[:, None]
        labels = np.repeat(np.arange(k), 12)
        D = pairwise_distances(gaussian_kernel(10.0), X)
        plug = plug_in_distance_covariance(D, labels)
        gcov = gini_covariance(D, labels)
        assert abs(plug - gcov / k) < 1e-12

    def test_bounded_differences_sample(self):
        """Single-sample replacement moves gcov by <= 5/n, delta by <= 2/n,
        dcov by <= 32/n (bounded kernel)."""
        rng = np.random.default_rng(7)
        n = 40
        values = rng.normal(size=n)
        labels = np.repeat([0, 1, 2], [14, 13, 13])
        kernel = gaussian_kernel(10.0)
        D = pairwise_distances(kernel, values)
        base_gcov = gini_covariance(D, labels)
        base_delta = gini_mean_difference(D)
        base_dcov = distance_covariance(D, set_distance_matrix(labels))
        for _ in range(100):
            i = rng.integers(n)
            v2 = values.copy()
            l2 = labels.copy()
            v2[i] = rng.normal(scale=3.0)
            l2[i] = rng.integers(0, 3)
            if np.bincount(l2, minlength=3).min() < 2:
                continue
            D2 = pairwise_distances(kernel, v2)
            assert abs(gini_covariance(D2, l2) - base_gcov) <= 5.0 / n + 1e-12
            assert abs(gini_mean_difference(D2) - base_delta) <= 2.0 / n + 1e-12
            d2 = distance_covariance(D2, set_distance_matrix(l2))
            assert abs(d2 - base_dcov) <= 32.0 / n + 1e-12
