"""Derived scores and diagnostics on top of fitted score vectors.

Covers the average win rate, the sample preference center, the kernel
out-of-sample extension, and the empirical monotone-link residuals that
certify solver convergence.
"""

import logging
from dataclasses import dataclass

import numpy as np
from scipy.special import expit

from .errors import ValidationError
from .geometry import MetricSpec, as_data_matrix, cross_distance_matrix, pairwise_distance_matrix
from .preference import PreferenceMatrix

log = logging.getLogger(__name__)


def _pref_values(p):
    if isinstance(p, PreferenceMatrix):
        return p.values
    return np.asarray(p, dtype=np.float64)


def win_rates(p):
    """Average win rate of each item: column means of the preference matrix."""
    vals = _pref_values(p)
    n = vals.shape[0]
    if n < 2:
        raise ValidationError("win rates need at least two items")
    return vals.sum(axis=0) / (n - 1.0)


def preference_center(theta, data=None):
    """Index (and observation, when data is given) of the highest score.

    Ties break to the lowest index and are flagged. Returns (index,
    observation-or-None, tied).
    """
    theta = np.asarray(theta, dtype=np.float64)
    idx = int(theta.argmax())
    tied = bool((theta == theta[idx]).sum() > 1)
    if tied:
        log.warning("preference center tie broken to lowest index %d", idx)
    row = None
    if data is not None:
        data = as_data_matrix(data)
        if data.shape[0] != theta.shape[0]:
            raise ValidationError("data rows do not match score length")
        row = data[idx].copy()
    return idx, row, tied


@dataclass(frozen=True)
class KernelSpec:
    """Gaussian kernel exp(-t^2) with a fixed or median-rule bandwidth."""

    bandwidth: float | str = "median"

    def resolve(self, d):
        if isinstance(self.bandwidth, str):
            if self.bandwidth != "median":
                raise ValidationError(f"unknown bandwidth rule {self.bandwidth!r}")
            return median_bandwidth(d)
        h = float(self.bandwidth)
        if h <= 0:
            raise ValidationError(f"bandwidth must be positive, got {h}")
        return h


def median_bandwidth(d):
    """Lower median of the n(n-1)/2 pairwise distances (deterministic for even counts)."""
    d = d.values if hasattr(d, "values") else np.asarray(d, dtype=np.float64)
    n = d.shape[0]
    if n < 2:
        raise ValidationError("median bandwidth needs at least two points")
    pair_vals = d[np.triu_indices(n, k=1)]
    h = float(np.sort(pair_vals)[(pair_vals.size - 1) // 2])
    if h <= 0:
        raise ValidationError("median pairwise distance is zero; pass an explicit bandwidth")
    return h


@dataclass(frozen=True)
class ExtensionResult:
    theta: np.ndarray
    strength: np.ndarray
    bandwidth: float
    fallback: np.ndarray  # bool per query: nearest-neighbor fallback used


def kernel_extend(theta, data, queries, metric=MetricSpec("euclidean"), kernel=KernelSpec()):
    """Score arbitrary points by kernel-weighted averaging of fitted scores.

    Weights are exp(-(d(x, x_i)/h)^2), normalized over the whole sample.
    Queries so far from the sample that every weight underflows fall back
    to the nearest neighbor's score and are flagged.
    """
    theta = np.asarray(theta, dtype=np.float64)
    data = as_data_matrix(data)
    if data.shape[0] != theta.shape[0]:
        raise ValidationError("data rows do not match score length")
    queries = as_data_matrix(queries)
    if queries.shape[0] == 0:
        return ExtensionResult(
            np.empty(0), np.empty(0), float("nan"), np.empty(0, dtype=bool)
        )
    h = kernel.resolve(pairwise_distance_matrix(data, metric))
    dq = cross_distance_matrix(queries, data, metric).values
    w = np.exp(-((dq / h) ** 2))
    denom = w.sum(axis=1)
    fallback = denom == 0.0
    out = np.empty(queries.shape[0])
    ok = ~fallback
    if ok.any():
        out[ok] = (w[ok] / denom[ok, None]) @ theta
    if fallback.any():
        log.warning(
            "kernel weights underflowed for %d queries; using nearest neighbor",
            int(fallback.sum()),
        )
        out[fallback] = theta[dq[fallback].argmin(axis=1)]
    return ExtensionResult(out, np.exp(out), h, fallback)


def monotone_link_residuals(theta, p):
    """Empirical link residuals: mean sigmoid margin of each item minus its win rate.

    At a converged unpenalized fit on a complementary preference matrix the
    residuals vanish up to the solver tolerance, so their sup-norm is a
    convergence certificate.
    """
    theta = np.asarray(theta, dtype=np.float64)
    vals = _pref_values(p)
    n = vals.shape[0]
    if theta.shape != (n,):
        raise ValidationError(f"theta shape {theta.shape} does not match n={n}")
    s = expit(theta[:, None] - theta[None, :])
    h = (s.sum(axis=1) - 0.5) / (n - 1.0)
    return h - win_rates(vals)
