import numpy as np
import pytest
from scipy import stats

from corerank import ValidationError, pearson, spearman
from corerank.metrics import midranks


def test_midranks_with_ties():
    assert np.array_equal(midranks([10.0, 20.0, 20.0, 30.0]), [1.0, 2.5, 2.5, 4.0])
    assert np.array_equal(midranks([3.0, 1.0, 2.0]), [3.0, 1.0, 2.0])


def test_spearman_identical_and_reversed(rng):
    a = rng.normal(size=20)
    assert spearman(a, a) == pytest.approx(1.0)
    assert spearman(a, -a) == pytest.approx(-1.0)


def test_spearman_hand_value():
    assert spearman([1.0, 2.0, 3.0], [1.0, 3.0, 2.0]) == pytest.approx(0.5)


def test_spearman_matches_scipy_with_ties(rng):
    for _ in range(25):
        a = rng.integers(0, 6, size=30).astype(float)
        b = rng.integers(0, 6, size=30).astype(float)
        ref = stats.spearmanr(a, b).statistic
        if np.isnan(ref):
            continue
        assert spearman(a, b) == pytest.approx(ref, abs=1e-12)


def test_spearman_monotone_invariance_exact(rng):
    a = rng.normal(size=40)
    b = rng.normal(size=40)
    base = spearman(a, b)
    assert spearman(np.exp(a), b) == base
    assert spearman(a, b**3) == base


def test_spearman_constant_flagged():
    assert np.isnan(spearman(np.ones(5), np.arange(5.0)))


def test_pearson_affine():
    a = np.array([0.5, 1.5, -2.0, 3.0])
    assert pearson(a, 2.0 * a + 3.0) == pytest.approx(1.0)


def test_pearson_orthogonal():
    a = np.array([1.0, -1.0, 1.0, -1.0])
    b = np.array([1.0, 1.0, -1.0, -1.0])
    assert pearson(a, b) == pytest.approx(0.0, abs=1e-15)


def test_pearson_hand_value():
    assert pearson([0.0, 1.0, 2.0], [0.0, 1.0, 4.0]) == pytest.approx(0.960769, abs=1e-6)


def test_pearson_matches_scipy(rng):
    a = rng.normal(size=50)
    b = rng.normal(size=50)
    assert pearson(a, b) == pytest.approx(stats.pearsonr(a, b).statistic, abs=1e-12)


def test_pearson_constant_flagged():
    assert np.isnan(pearson(np.zeros(4), np.arange(4.0)))


def test_shape_validation():
    with pytest.raises(ValidationError):
        pearson([1.0], [1.0])
    with pytest.raises(ValidationError):
        spearman([1.0, 2.0], [1.0, 2.0, 3.0])
