"""Classical centrality baselines used for comparison in the experiments.

Four scores: negative euclidean distance to the sample mean, Mahalanobis
depth, spatial depth, and spatial depth aggregated over random orthonormal
projections (the high-dimensional workaround).
"""

import numpy as np
import scipy.linalg

from .errors import ValidationError
from .geometry import as_data_matrix


def neg_l2_scores(data):
    """Negative euclidean distance to the sample mean, so the mean scores 0."""
    x = as_data_matrix(data)
    return -np.sqrt(((x - x.mean(axis=0)) ** 2).sum(axis=1))


def mahalanobis_depth_scores(data):
    """Mahalanobis depth 1/(1 + squared whitened distance to the mean).

    The sample covariance uses the n-1 divisor. Needs n > d and a
    nonsingular covariance; failures report the condition number.
    """
    x = as_data_matrix(data)
    n, d = x.shape
    if n <= d:
        raise ValidationError(f"mahalanobis depth needs n > d, got n={n}, d={d}")
    centered = x - x.mean(axis=0)
    cov = centered.T @ centered / (n - 1)
    try:
        chol = scipy.linalg.cholesky(cov, lower=True)
    except scipy.linalg.LinAlgError as exc:
        raise ValidationError(
            f"sample covariance is singular (condition number {np.linalg.cond(cov):.3e})"
        ) from exc
    white = scipy.linalg.solve_triangular(chol, centered.T, lower=True)
    sq = (white * white).sum(axis=0)
    return 1.0 / (1.0 + sq)


def spatial_depth_scores(data):
    """Spatial depth: one minus the norm of the average unit vector to the other points.

    Coincident points contribute nothing to the average; the divisor stays
    n-1. Scores live in [0, 1] and peak at the spatial median.
    """
    x = as_data_matrix(data)
    n = x.shape[0]
    if n < 2:
        raise ValidationError("spatial depth needs at least two points")
    out = np.empty(n)
    for i in range(n):
        diff = x - x[i]
        norms = np.sqrt((diff * diff).sum(axis=1))
        keep = norms > 0
        units = diff[keep] / norms[keep, None]
        out[i] = 1.0 - np.sqrt((units.sum(axis=0) ** 2).sum()) / (n - 1)
    return out


def rp_spatial_scores(data, n_proj=100, proj_dim=5, seed=0):
    """Spatial depth averaged over random orthonormal projections.

    Each draw projects the data onto a proj_dim-dimensional subspace from a
    QR-orthonormalized Gaussian matrix; per-draw generators spawn from the
    master seed, so results are reproducible.
    """
    x = as_data_matrix(data)
    d = x.shape[1]
    if n_proj < 1:
        raise ValidationError("need at least one projection")
    if not 1 <= proj_dim <= d:
        raise ValidationError(f"projection dimension must be in [1, {d}], got {proj_dim}")
    acc = np.zeros(x.shape[0])
    for child in np.random.SeedSequence(seed).spawn(n_proj):
        rng = np.random.default_rng(child)
        q, _ = np.linalg.qr(rng.standard_normal((d, proj_dim)))
        acc += spatial_depth_scores(x @ q)
    return acc / n_proj


BASELINES = {
    "neg_l2": lambda data, seed=0: neg_l2_scores(data),
    "mahalanobis_depth": lambda data, seed=0: mahalanobis_depth_scores(data),
    "spatial_depth": lambda data, seed=0: spatial_depth_scores(data),
    "rp_spatial": lambda data, seed=0: rp_spatial_scores(data, seed=seed),
}


def baseline_scores(name, data, seed=0):
    """Dispatch a baseline by name; rp_spatial consumes the seed."""
    try:
        fn = BASELINES[name]
    except KeyError:
        raise ValidationError(f"unknown baseline {name!r}; expected one of {sorted(BASELINES)}")
    return fn(data, seed=seed)
