"""Dissimilarity matrices: computed from raw data or loaded from files.

Distances are the sole geometric input to everything downstream. Computed
matrices are exactly symmetric with a zero diagonal; precomputed matrices
only have to be nonnegative, finite, and (when square) symmetric within
tolerance, since the scoring machinery never uses metric axioms beyond
order comparisons.
"""

import csv
import logging
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from ._backend import kernels
from .errors import ValidationError

log = logging.getLogger(__name__)

SYMMETRY_TOL = 1e-9

METRIC_KINDS = ("euclidean", "mahalanobis", "precomputed")


@dataclass(frozen=True)
class MetricSpec:
    """Dissimilarity choice: euclidean, mahalanobis(scatter), or precomputed."""

    kind: str = "euclidean"
    scatter: np.ndarray | None = None
    _chol: np.ndarray | None = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if self.kind not in METRIC_KINDS:
            raise ValidationError(
                f"unknown metric kind {self.kind!r}; expected one of {METRIC_KINDS}"
            )
        if self.kind == "mahalanobis":
            if self.scatter is None:
                raise ValidationError("mahalanobis metric requires a scatter matrix")
            s = np.asarray(self.scatter, dtype=np.float64)
            if s.ndim != 2 or s.shape[0] != s.shape[1]:
                raise ValidationError(f"scatter must be square, got shape {s.shape}")
            if not np.all(np.isfinite(s)):
                raise ValidationError("scatter contains non-finite entries")
            asym = np.abs(s - s.T).max()
            scale = max(np.abs(s).max(), 1.0)
            if asym > 1e-12 * scale:
                raise ValidationError(f"scatter is not symmetric (max deviation {asym:g})")
            try:
                chol = scipy.linalg.cholesky(s, lower=True)
            except scipy.linalg.LinAlgError as exc:
                raise ValidationError(f"scatter is not positive definite: {exc}") from exc
            object.__setattr__(self, "scatter", s)
            object.__setattr__(self, "_chol", chol)
        elif self.scatter is not None:
            raise ValidationError(f"metric {self.kind!r} does not take a scatter matrix")

    def whiten(self, data):
        """Map points into coordinates where the metric is plain euclidean."""
        data = as_data_matrix(data)
        if self.kind == "euclidean":
            return data
        if self.kind == "mahalanobis":
            if data.shape[1] != self.scatter.shape[0]:
                raise ValidationError(
                    f"scatter dimension {self.scatter.shape[0]} does not match "
                    f"data dimension {data.shape[1]}"
                )
            return scipy.linalg.solve_triangular(self._chol, data.T, lower=True).T
        raise ValidationError("precomputed metric cannot evaluate distances on points")


@dataclass(frozen=True)
class DistanceMatrix:
    """Nonnegative dissimilarity grid; square and symmetric when built from one sample."""

    values: np.ndarray
    symmetric: bool = True

    @property
    def shape(self):
        return self.values.shape

    @property
    def n(self):
        return self.values.shape[1]


def as_data_matrix(data):
    """Validate raw observations and return them as a float64 (n, d) array."""
    x = np.asarray(data, dtype=np.float64)
    if x.ndim == 1:
        x = x[:, None]
    if x.ndim != 2:
        raise ValidationError(f"data must be a 2-d array of observations, got ndim={x.ndim}")
    bad = ~np.isfinite(x).all(axis=1)
    if bad.any():
        raise ValidationError(f"non-finite value in data row {int(np.flatnonzero(bad)[0])}")
    return x


def pairwise_distance_matrix(data, metric=MetricSpec("euclidean")):
    """All pairwise dissimilarities within one sample.

    Returns a symmetric DistanceMatrix with an exactly zero diagonal. The
    mahalanobis path whitens once through the cached scatter factor and
    reuses the euclidean kernel.
    """
    if metric.kind == "precomputed":
        raise ValidationError("pairwise_distance_matrix cannot build a precomputed metric")
    x = metric.whiten(as_data_matrix(data))
    return DistanceMatrix(kernels().pairwise_distances(x), symmetric=True)


def cross_distance_matrix(refs, data, metric=MetricSpec("euclidean")):
    """Dissimilarities from m reference points to n sample points (m x n)."""
    if metric.kind == "precomputed":
        raise ValidationError("cross_distance_matrix cannot build a precomputed metric")
    refs = as_data_matrix(refs)
    data = as_data_matrix(data)
    if refs.shape[1] != data.shape[1]:
        raise ValidationError(
            f"dimension mismatch: references have d={refs.shape[1]}, data d={data.shape[1]}"
        )
    return DistanceMatrix(
        kernels().cross_distances(metric.whiten(refs), metric.whiten(data)),
        symmetric=False,
    )


def _read_numeric_csv(path):
    rows = []
    with open(path, newline="") as fh:
        for lineno, row in enumerate(csv.reader(fh), start=1):
            if not row or (len(row) == 1 and not row[0].strip()):
                continue
            try:
                rows.append([float(v) for v in row])
            except ValueError as exc:
                raise ValidationError(f"{path}: line {lineno}: {exc}") from exc
            if len(rows) > 1 and len(rows[-1]) != len(rows[0]):
                raise ValidationError(
                    f"{path}: line {lineno} has {len(rows[-1])} entries, expected {len(rows[0])}"
                )
    if not rows:
        raise ValidationError(f"{path}: no numeric rows found")
    return np.asarray(rows, dtype=np.float64)


def load_data_matrix(path, header=False):
    """Read an observations CSV (one row per observation, '.' decimals)."""
    with open(path, newline="") as fh:
        lines = fh.read().splitlines()
    if header:
        lines = lines[1:]
    rows = []
    for lineno, row in enumerate(csv.reader(lines), start=1):
        if not row or (len(row) == 1 and not row[0].strip()):
            continue
        try:
            rows.append([float(v) for v in row])
        except ValueError as exc:
            raise ValidationError(f"{path}: data line {lineno}: {exc}") from exc
        if len(rows) > 1 and len(rows[-1]) != len(rows[0]):
            raise ValidationError(
                f"{path}: data line {lineno} has {len(rows[-1])} entries, expected {len(rows[0])}"
            )
    if not rows:
        return np.empty((0, 0), dtype=np.float64)
    return as_data_matrix(np.asarray(rows, dtype=np.float64))


def load_distance_matrix(path, expect_symmetric=True):
    """Read and validate a distance CSV (plain numeric grid, no header).

    Symmetric inputs are symmetrized by averaging when the asymmetry stays
    within 1e-9; larger deviations, negative entries, and a diagonal away
    from zero are rejected with the offending 1-indexed location.
    """
    vals = _read_numeric_csv(path)
    if not np.all(np.isfinite(vals)):
        i, j = np.argwhere(~np.isfinite(vals))[0]
        raise ValidationError(f"{path}: non-finite entry at ({i + 1},{j + 1})")
    neg = np.argwhere(vals < 0)
    if neg.size:
        i, j = neg[0]
        raise ValidationError(f"{path}: negative entry at ({i + 1},{j + 1})")
    if not expect_symmetric:
        return DistanceMatrix(vals, symmetric=False)
    r, c = vals.shape
    if r != c:
        raise ValidationError(f"{path}: expected a square matrix, got {r}x{c}")
    dev = np.abs(vals - vals.T).max() if r else 0.0
    if dev > SYMMETRY_TOL:
        i, j = np.argwhere(np.abs(vals - vals.T) > SYMMETRY_TOL)[0]
        raise ValidationError(
            f"{path}: asymmetry {dev:g} at ({i + 1},{j + 1}) exceeds tolerance {SYMMETRY_TOL:g}"
        )
    if dev > 0:
        log.warning("%s: symmetrized by averaging (max deviation %g)", path, dev)
        vals = 0.5 * (vals + vals.T)
    diag = np.abs(np.diag(vals))
    if diag.size and diag.max() > SYMMETRY_TOL:
        i = int(diag.argmax())
        raise ValidationError(
            f"{path}: diagonal entry ({i + 1},{i + 1}) = {vals[i, i]:g} exceeds {SYMMETRY_TOL:g}"
        )
    np.fill_diagonal(vals, 0.0)
    return DistanceMatrix(vals, symmetric=True)


def save_matrix_csv(path, values):
    """Write a numeric grid with round-trip-exact float formatting."""
    values = np.atleast_2d(np.asarray(values))
    with open(path, "w", newline="") as fh:
        for row in values:
            fh.write(",".join(repr(float(v)) for v in row))
            fh.write("\n")
