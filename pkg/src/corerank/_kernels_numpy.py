"""Pure-numpy implementations of the hot kernels.

This is the fallback path used when numba is unavailable or when
``CORE_BACKEND=numpy`` is set. Each function here is the semantic twin of
the jit kernel with the same name in ``_kernels_numba``; integer outputs
agree bitwise, float outputs agree to rounding (summation order differs).
"""

import numpy as np
from scipy.special import expit

NAME = "numpy"


def pairwise_distances(x):
    """Euclidean distance matrix of the rows of ``x`` (n x d).

    The upper triangle is computed and mirrored, so the result is exactly
    symmetric with an exactly zero diagonal.
    """
    x = np.ascontiguousarray(x, dtype=np.float64)
    n = x.shape[0]
    out = np.zeros((n, n), dtype=np.float64)
    for i in range(n - 1):
        d = np.sqrt(((x[i + 1 :] - x[i]) ** 2).sum(axis=1))
        out[i, i + 1 :] = d
        out[i + 1 :, i] = d
    return out


def cross_distances(refs, x):
    """Euclidean distances from each row of ``refs`` (m x d) to each row of ``x`` (n x d)."""
    refs = np.ascontiguousarray(refs, dtype=np.float64)
    x = np.ascontiguousarray(x, dtype=np.float64)
    m = refs.shape[0]
    out = np.empty((m, x.shape[0]), dtype=np.float64)
    for l in range(m):
        out[l] = np.sqrt(((x - refs[l]) ** 2).sum(axis=1))
    return out


def leave_two_out_counts(d):
    """Reference counts for the leave-two-out preference estimator.

    For a symmetric distance matrix ``d``, returns integer matrices
    ``(gt, eq)`` where ``gt[i, j]`` counts references ``l`` (l != i, j) with
    ``d[l, i] > d[l, j]`` and ``eq[i, j]`` counts exact distance ties.
    """
    d = np.asarray(d, dtype=np.float64)
    n = d.shape[0]
    gt = np.zeros((n, n), dtype=np.int64)
    eq = np.zeros((n, n), dtype=np.int64)
    for l in range(n):
        row = d[l]
        g = row[:, None] > row[None, :]
        e = row[:, None] == row[None, :]
        g[l, :] = False
        g[:, l] = False
        e[l, :] = False
        e[:, l] = False
        gt += g
        eq += e
    np.fill_diagonal(gt, 0)
    np.fill_diagonal(eq, 0)
    return gt, eq


def reference_counts(dc):
    """Reference counts for the data-reference preference estimator.

    ``dc`` is the m x n cross-distance matrix from reference points to the
    sample; returns ``(gt, eq)`` with ``gt[i, j] = #{l: dc[l, i] > dc[l, j]}``.
    """
    dc = np.asarray(dc, dtype=np.float64)
    n = dc.shape[1]
    gt = np.zeros((n, n), dtype=np.int64)
    eq = np.zeros((n, n), dtype=np.int64)
    for l in range(dc.shape[0]):
        row = dc[l]
        gt += row[:, None] > row[None, :]
        eq += row[:, None] == row[None, :]
    np.fill_diagonal(gt, 0)
    np.fill_diagonal(eq, 0)
    return gt, eq


def pair_softplus_sum(theta):
    """Sum of softplus(theta_i - theta_j) over ordered pairs i < j."""
    theta = np.asarray(theta, dtype=np.float64)
    diff = theta[:, None] - theta[None, :]
    iu = np.triu_indices(theta.shape[0], k=1)
    return float(np.logaddexp(0.0, diff[iu]).sum())


def sigmoid_rowsums(theta):
    """Vector with component k equal to sum_i sigmoid(theta_k - theta_i), i != k."""
    theta = np.asarray(theta, dtype=np.float64)
    s = expit(theta[:, None] - theta[None, :])
    return s.sum(axis=1) - 0.5
