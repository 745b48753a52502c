import numpy as np
import pytest

from corerank import (
    GdConfig,
    KernelSpec,
    MetricSpec,
    ValidationError,
    fit_core_gd,
    kernel_extend,
    median_bandwidth,
    monotone_link_residuals,
    pairwise_distance_matrix,
    preference_center,
    preference_leave_two_out,
    sample,
    win_rates,
)
from corerank.synth import Normal1D

from conftest import random_complementary, random_preferences


def test_win_rates_hand_example():
    p = preference_leave_two_out(pairwise_distance_matrix([[0.0], [1.0], [4.0]]))
    assert np.array_equal(win_rates(p), [0.5, 1.0, 0.0])


def test_win_rates_uniform():
    p = np.full((6, 6), 0.5)
    np.fill_diagonal(p, 0.0)
    assert np.array_equal(win_rates(p), np.full(6, 0.5))


def test_win_rates_complementary_mean_half(rng):
    p = random_complementary(11, rng)
    assert win_rates(p).mean() == pytest.approx(0.5, abs=1e-12)
    assert np.allclose(win_rates(p) + win_rates(p.T), 1.0, atol=1e-12)


def test_preference_center_examples():
    idx, row, tied = preference_center(np.array([-1.0, 2.0, -1.0]))
    assert idx == 1 and row is None and not tied
    idx, _, tied = preference_center(np.zeros(4))
    assert idx == 0 and tied
    idx, row, _ = preference_center(np.array([0.0, 3.0]), [[1.0, 2.0], [5.0, 6.0]])
    assert idx == 1
    assert np.array_equal(row, [5.0, 6.0])


def test_preference_center_monte_carlo_pipeline():
    x = sample(Normal1D(), 500, seed=42)
    pref = preference_leave_two_out(pairwise_distance_matrix(x))
    theta, _ = fit_core_gd(pref, GdConfig(max_iter=2000))
    _, row, _ = preference_center(theta, x)
    assert abs(row[0]) <= 0.25


def test_median_bandwidth_hand_example():
    d = pairwise_distance_matrix([[0.0], [1.0], [4.0]])
    assert median_bandwidth(d) == 3.0


def test_median_bandwidth_lower_median():
    d = pairwise_distance_matrix([[0.0], [1.0], [3.0], [6.0]])
    # pairwise distances sorted: 1,2,3,3,5,6 -> lower median is 3
    assert median_bandwidth(d) == 3.0


def test_kernel_extend_equidistant_average():
    data = np.array([[0.0], [2.0], [100.0]])
    theta = np.array([1.0, 3.0, -7.0])
    res = kernel_extend(theta, data, [[1.0]], kernel=KernelSpec(1.0))
    assert res.theta[0] == pytest.approx(2.0, abs=1e-6)
    assert res.strength[0] == pytest.approx(np.exp(res.theta[0]))


def test_kernel_extend_concentration_at_sample_point():
    data = np.array([[0.0], [1.0], [4.0]])
    theta = np.array([0.3, -0.2, 0.9])
    res = kernel_extend(theta, data, [[1.0]], kernel=KernelSpec(0.05))
    assert res.theta[0] == pytest.approx(-0.2, abs=1e-12)
    assert not res.fallback.any()


def test_kernel_extend_median_rule_resolution():
    data = np.array([[0.0], [1.0], [4.0]])
    res = kernel_extend(np.zeros(3), data, [[0.5]])
    assert res.bandwidth == 3.0


def test_kernel_extend_shift_invariance(rng):
    data = rng.normal(size=(10, 2))
    theta = rng.normal(size=10)
    queries = rng.normal(size=(4, 2))
    base = kernel_extend(theta, data, queries, kernel=KernelSpec(1.0))
    shifted = kernel_extend(theta + 5.0, data, queries, kernel=KernelSpec(1.0))
    assert np.allclose(shifted.theta, base.theta + 5.0, atol=1e-9)


def test_kernel_extend_far_query_fallback():
    data = np.array([[0.0], [1.0]])
    theta = np.array([2.0, -1.0])
    res = kernel_extend(theta, data, [[1e6]], kernel=KernelSpec(1.0))
    assert res.fallback[0]
    assert res.theta[0] == -1.0  # nearest neighbor is the point at 1.0


def test_kernel_extend_empty_queries():
    res = kernel_extend(np.zeros(2), [[0.0], [1.0]], np.empty((0, 1)))
    assert res.theta.size == 0


def test_kernel_extend_dimension_mismatch():
    with pytest.raises(ValidationError):
        kernel_extend(np.zeros(3), np.zeros((3, 2)), [[1.0]], kernel=KernelSpec(1.0))


def test_kernel_spec_validation():
    with pytest.raises(ValidationError):
        KernelSpec(-1.0).resolve(None)
    with pytest.raises(ValidationError):
        KernelSpec("mean").resolve(None)


def test_kernel_extend_mahalanobis_metric(rng):
    data = rng.normal(size=(8, 2))
    theta = rng.normal(size=8)
    spec = MetricSpec("mahalanobis", np.diag([4.0, 1.0]))
    res = kernel_extend(theta, data, data[:2], metric=spec, kernel=KernelSpec(0.01))
    assert np.allclose(res.theta, theta[:2], atol=1e-9)


def test_monotone_link_residuals_uniform_zero():
    p = np.full((5, 5), 0.5)
    np.fill_diagonal(p, 0.0)
    assert np.array_equal(monotone_link_residuals(np.zeros(5), p), np.zeros(5))


def test_monotone_link_residuals_at_zero(rng):
    p = random_preferences(7, rng)
    res = monotone_link_residuals(np.zeros(7), p)
    assert np.allclose(res, 0.5 - win_rates(p), atol=1e-12)


def test_monotone_link_residuals_converged_fit(rng):
    n = 30
    p = random_complementary(n, rng)
    theta, report = fit_core_gd(p)
    assert report.converged
    assert np.abs(monotone_link_residuals(theta, p)).max() <= 10 * (1e-8 * n)
