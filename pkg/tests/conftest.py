import numpy as np
import pytest

from corerank._backend import backend_name, kernels


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    """Compile the jit kernels up front so timed tests see steady-state speed."""
    mod = kernels()
    if hasattr(mod, "warmup"):
        mod.warmup()
    return backend_name()


@pytest.fixture
def rng():
    return np.random.default_rng(20240811)


def random_complementary(n, rng):
    """Random preference matrix with p + p.T = 1 off the diagonal."""
    upper = rng.uniform(0.05, 0.95, size=(n, n))
    p = np.triu(upper, k=1)
    p = p + np.triu(1.0 - upper, k=1).T
    np.fill_diagonal(p, 0.0)
    return p


def random_preferences(n, rng):
    """Random preference matrix without complementarity structure."""
    p = rng.uniform(0.0, 1.0, size=(n, n))
    np.fill_diagonal(p, 0.0)
    return p
