"""Empirical and population pairwise preference matrices.

Entry (i, j) is the estimated probability that item j is preferred over
item i, i.e. that a reference point lands strictly closer to x_j than to
x_i. Distance ties contribute nothing under the strict policy and half a
win to each side under half_weight. Tie detection is exact float equality
on purpose: the indicators are exact events and an epsilon would silently
change the estimand.
"""

import json
from dataclasses import dataclass

import numpy as np

from ._backend import kernels
from .errors import ValidationError
from .geometry import DistanceMatrix

STRICT = "strict"
HALF_WEIGHT = "half_weight"
TIE_POLICIES = (STRICT, HALF_WEIGHT)


@dataclass(frozen=True)
class PreferenceMatrix:
    """n x n win-probability grid with its tie policy and provenance tag."""

    values: np.ndarray
    tie_policy: str = STRICT
    provenance: str = "external"

    @property
    def n(self):
        return self.values.shape[0]

    def validate(self):
        v = self.values
        if v.ndim != 2 or v.shape[0] != v.shape[1]:
            raise ValidationError(f"preference matrix must be square, got {v.shape}")
        if self.tie_policy not in TIE_POLICIES:
            raise ValidationError(f"unknown tie policy {self.tie_policy!r}")
        if not np.all(np.isfinite(v)):
            raise ValidationError("preference matrix contains non-finite entries")
        if v.min() < 0.0 or v.max() > 1.0:
            raise ValidationError("preference entries must lie in [0, 1]")
        if np.abs(np.diag(v)).max(initial=0.0) != 0.0:
            raise ValidationError("preference matrix diagonal must be zero")
        return self


def _check_policy(policy):
    if policy not in TIE_POLICIES:
        raise ValidationError(f"unknown tie policy {policy!r}; expected one of {TIE_POLICIES}")


def _combine_counts(gt, eq, denom, policy):
    # Integer counts are divided once, so both backends and the naive
    # oracle produce bitwise identical probabilities.
    if policy == STRICT:
        return gt / float(denom)
    return (2 * gt + eq) / float(2 * denom)


def preference_leave_two_out(d, policy=STRICT):
    """Leave-two-out preferences: every third sample point serves as referee.

    p[i, j] = (n-2)^-1 * #{l != i, j : d(x_l, x_i) > d(x_l, x_j)}, plus half
    weight for distance ties under the half_weight policy.
    """
    _check_policy(policy)
    if isinstance(d, DistanceMatrix):
        if not d.symmetric:
            raise ValidationError("leave-two-out estimation needs a symmetric distance matrix")
        d = d.values
    d = np.asarray(d, dtype=np.float64)
    if d.ndim != 2 or d.shape[0] != d.shape[1]:
        raise ValidationError(f"distance matrix must be square, got {d.shape}")
    n = d.shape[0]
    if n < 3:
        raise ValidationError(f"leave-two-out needs n >= 3 points, got {n}")
    gt, eq = kernels().leave_two_out_counts(d)
    vals = _combine_counts(gt, eq, n - 2, policy)
    return PreferenceMatrix(vals, tie_policy=policy, provenance="leave_two_out")


def preference_reference(d_cross, policy=STRICT):
    """Data-reference preferences from an m x n cross-distance matrix.

    p[i, j] = m^-1 * #{l : d(Z_l, x_i) > d(Z_l, x_j)} with the same tie
    handling as the leave-two-out estimator.
    """
    _check_policy(policy)
    if isinstance(d_cross, DistanceMatrix):
        d_cross = d_cross.values
    d_cross = np.asarray(d_cross, dtype=np.float64)
    if d_cross.ndim != 2:
        raise ValidationError("cross-distance input must be an m x n matrix")
    m = d_cross.shape[0]
    if m < 1:
        raise ValidationError("reference estimation needs at least one reference point")
    gt, eq = kernels().reference_counts(d_cross)
    vals = _combine_counts(gt, eq, m, policy)
    return PreferenceMatrix(vals, tie_policy=policy, provenance=f"reference({m})")


def preference_population_1d(sample, cdf):
    """Population preferences for 1-d samples under the absolute-value metric.

    With distribution function F, the win probability of the pair (x_i, x_j)
    is 1 - F((x_i+x_j)/2) when x_i < x_j and F((x_i+x_j)/2) when x_i > x_j:
    the referee prefers whichever point sits on its side of the midpoint.
    """
    x = np.asarray(sample, dtype=np.float64).reshape(-1)
    if x.size < 2:
        raise ValidationError("population preferences need at least two points")
    if not np.all(np.isfinite(x)):
        raise ValidationError("sample contains non-finite values")
    if np.unique(x).size != x.size:
        raise ValidationError("sample values must be distinct for the closed form")
    mid = 0.5 * (x[:, None] + x[None, :])
    f = np.asarray(cdf(mid), dtype=np.float64)
    if f.shape != mid.shape:
        f = np.vectorize(cdf, otypes=[np.float64])(mid)
    if f.min() < 0.0 or f.max() > 1.0:
        raise ValidationError("cdf values fall outside [0, 1]")
    vals = np.where(x[:, None] < x[None, :], 1.0 - f, f)
    np.fill_diagonal(vals, 0.0)
    return PreferenceMatrix(vals, tie_policy=STRICT, provenance="population_1d")


def save_preference_csv(path, pref):
    from .geometry import save_matrix_csv

    save_matrix_csv(path, pref.values)


def load_preference_csv(path, tie_policy=STRICT):
    from .geometry import _read_numeric_csv

    vals = _read_numeric_csv(path)
    return PreferenceMatrix(vals, tie_policy=tie_policy, provenance="external").validate()


def save_preference_json(path, pref):
    payload = {
        "n": pref.n,
        "tie_policy": pref.tie_policy,
        "provenance": pref.provenance,
        "values": pref.values.tolist(),
    }
    with open(path, "w") as fh:
        json.dump(payload, fh)


def load_preference_json(path):
    with open(path) as fh:
        payload = json.load(fh)
    vals = np.asarray(payload["values"], dtype=np.float64)
    return PreferenceMatrix(
        vals, tie_policy=payload.get("tie_policy", STRICT), provenance="external"
    ).validate()
