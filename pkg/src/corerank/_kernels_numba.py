"""Numba jit implementations of the hot kernels.

Every kernel parallelizes over independent output entries only: each entry
is accumulated sequentially by exactly one thread, so results are bitwise
reproducible for any thread count. ``fastmath`` stays off because the
preference kernels rely on exact float comparisons.
"""

import numpy as np
from numba import njit, prange

NAME = "numba"


@njit(cache=True, parallel=True)
def _pairwise(x, out):
    n, dim = x.shape
    for i in prange(n):
        for j in range(i + 1, n):
            acc = 0.0
            for k in range(dim):
                diff = x[i, k] - x[j, k]
                acc += diff * diff
            d = np.sqrt(acc)
            out[i, j] = d
            out[j, i] = d


def pairwise_distances(x):
    """Euclidean distance matrix of the rows of ``x`` (n x d)."""
    x = np.ascontiguousarray(x, dtype=np.float64)
    out = np.zeros((x.shape[0], x.shape[0]), dtype=np.float64)
    _pairwise(x, out)
    return out


@njit(cache=True, parallel=True)
def _cross(refs, x, out):
    m, dim = refs.shape
    n = x.shape[0]
    for l in prange(m):
        for i in range(n):
            acc = 0.0
            for k in range(dim):
                diff = x[i, k] - refs[l, k]
                acc += diff * diff
            out[l, i] = np.sqrt(acc)


def cross_distances(refs, x):
    """Euclidean distances from each row of ``refs`` (m x d) to each row of ``x`` (n x d)."""
    refs = np.ascontiguousarray(refs, dtype=np.float64)
    x = np.ascontiguousarray(x, dtype=np.float64)
    out = np.empty((refs.shape[0], x.shape[0]), dtype=np.float64)
    _cross(refs, x, out)
    return out


@njit(cache=True, parallel=True)
def _lto_counts(d, gt, eq):
    n = d.shape[0]
    for i in prange(n):
        for j in range(i + 1, n):
            g_ij = 0
            g_ji = 0
            e_ij = 0
            for l in range(n):
                if l == i or l == j:
                    continue
                # d is symmetric: d[l, i] == d[i, l]; row-major access is faster
                dli = d[i, l]
                dlj = d[j, l]
                if dli > dlj:
                    g_ij += 1
                elif dli < dlj:
                    g_ji += 1
                else:
                    e_ij += 1
            gt[i, j] = g_ij
            gt[j, i] = g_ji
            eq[i, j] = e_ij
            eq[j, i] = e_ij


def leave_two_out_counts(d):
    """Reference counts (gt, eq) for the leave-two-out preference estimator."""
    d = np.ascontiguousarray(d, dtype=np.float64)
    n = d.shape[0]
    gt = np.zeros((n, n), dtype=np.int64)
    eq = np.zeros((n, n), dtype=np.int64)
    _lto_counts(d, gt, eq)
    return gt, eq


@njit(cache=True, parallel=True)
def _ref_counts(dct, gt, eq):
    n, m = dct.shape
    for i in prange(n):
        for j in range(i + 1, n):
            g_ij = 0
            g_ji = 0
            e_ij = 0
            for l in range(m):
                dli = dct[i, l]
                dlj = dct[j, l]
                if dli > dlj:
                    g_ij += 1
                elif dli < dlj:
                    g_ji += 1
                else:
                    e_ij += 1
            gt[i, j] = g_ij
            gt[j, i] = g_ji
            eq[i, j] = e_ij
            eq[j, i] = e_ij


def reference_counts(dc):
    """Reference counts (gt, eq) for the data-reference preference estimator."""
    dct = np.ascontiguousarray(np.asarray(dc, dtype=np.float64).T)
    n = dct.shape[0]
    gt = np.zeros((n, n), dtype=np.int64)
    eq = np.zeros((n, n), dtype=np.int64)
    _ref_counts(dct, gt, eq)
    return gt, eq


@njit(cache=True, parallel=True)
def _softplus_rows(theta, partial):
    n = theta.shape[0]
    for i in prange(n):
        acc = 0.0
        ti = theta[i]
        for j in range(i + 1, n):
            x = ti - theta[j]
            if x > 0.0:
                acc += x + np.log1p(np.exp(-x))
            else:
                acc += np.log1p(np.exp(x))
        partial[i] = acc


def pair_softplus_sum(theta):
    """Sum of softplus(theta_i - theta_j) over ordered pairs i < j."""
    theta = np.ascontiguousarray(theta, dtype=np.float64)
    partial = np.zeros(theta.shape[0], dtype=np.float64)
    _softplus_rows(theta, partial)
    return float(partial.sum())


@njit(cache=True, parallel=True)
def _sigmoid_rowsums(theta, out):
    n = theta.shape[0]
    for k in prange(n):
        acc = 0.0
        tk = theta[k]
        for i in range(n):
            if i == k:
                continue
            x = tk - theta[i]
            if x >= 0.0:
                acc += 1.0 / (1.0 + np.exp(-x))
            else:
                e = np.exp(x)
                acc += e / (1.0 + e)
        out[k] = acc
    return out


def sigmoid_rowsums(theta):
    """Vector with component k equal to sum_i sigmoid(theta_k - theta_i), i != k."""
    theta = np.ascontiguousarray(theta, dtype=np.float64)
    out = np.empty(theta.shape[0], dtype=np.float64)
    _sigmoid_rowsums(theta, out)
    return out


def warmup():
    """Trigger jit compilation of every kernel on tiny inputs."""
    x = np.array([[0.0], [1.0], [2.0]])
    d = pairwise_distances(x)
    cross_distances(x[:2], x)
    leave_two_out_counts(d)
    reference_counts(d[:2])
    t = np.array([0.0, 0.5, -0.5])
    pair_softplus_sum(t)
    sigmoid_rowsums(t)
