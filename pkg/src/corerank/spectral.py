"""Spectral strength scores from the empirical comparison chain.

A random walk moves from item i to item j with probability p[i, j]/(n-1);
leftover mass stays put. Its stationary distribution is a strength score,
and centered log-strengths live on the same scale as the convex solver's
output. Power iteration from the uniform vector converges geometrically
whenever the chain is aperiodic, which any positive diagonal guarantees.
"""

import logging
from dataclasses import dataclass, field

import numpy as np

from .errors import ValidationError
from .preference import PreferenceMatrix

log = logging.getLogger(__name__)

STATIONARY_FLOOR = 1e-300


@dataclass(frozen=True)
class PowerReport:
    iterations: int
    final_diff: float
    residual: float
    converged: bool
    floored: tuple[int, ...] = field(default_factory=tuple)


def _pref_values(p):
    if isinstance(p, PreferenceMatrix):
        p.validate()
        return p.values
    p = np.asarray(p, dtype=np.float64)
    PreferenceMatrix(p).validate()
    return p


def smooth_preferences(p, alpha):
    """Blend p with the uniform coin-flip matrix: (1-a)p + a/2 off-diagonal.

    Off by default; useful when a reducible chain (an item nobody ever
    prefers) stalls the walk.
    """
    if not 0.0 <= alpha <= 1.0:
        raise ValidationError(f"smoothing weight must be in [0, 1], got {alpha}")
    vals = _pref_values(p)
    if alpha == 0.0:
        return vals
    out = (1.0 - alpha) * vals + alpha * 0.5
    np.fill_diagonal(out, 0.0)
    return out


def build_transition(p):
    """Transition matrix: T[i, j] = p[i, j]/(n-1) off-diagonal, remainder on the diagonal."""
    vals = _pref_values(p)
    n = vals.shape[0]
    if n < 2:
        raise ValidationError("need at least two items to build a comparison chain")
    t = vals / (n - 1.0)
    np.fill_diagonal(t, 0.0)
    leftover = 1.0 - t.sum(axis=1)
    # row means of p are <= 1, so the leftover is nonnegative up to rounding
    np.fill_diagonal(t, np.maximum(leftover, 0.0))
    return t


def stationary_distribution(t, tol=1e-12, max_iter=None):
    """Leading left eigenvector of t by power iteration from the uniform start.

    Stops when the l1 change between iterates drops to tol; the returned
    vector then also satisfies |T's - s|_1 <= tol because T' contracts l1
    on differences. Non-convergence returns the last iterate, flagged.
    """
    t = np.asarray(t, dtype=np.float64)
    n = t.shape[0]
    if t.ndim != 2 or t.shape[0] != t.shape[1]:
        raise ValidationError(f"transition matrix must be square, got {t.shape}")
    if max_iter is None:
        max_iter = 100 * n
    tt = np.ascontiguousarray(t.T)
    s = np.full(n, 1.0 / n)
    diff = np.inf
    converged = False
    iterations = 0
    for iterations in range(1, max_iter + 1):
        s_next = tt @ s
        diff = float(np.abs(s_next - s).sum())
        s = s_next
        if diff <= tol:
            converged = True
            break
    if not converged:
        log.warning("power iteration stopped at max_iter=%d with diff %.3e", max_iter, diff)
    residual = float(np.abs(tt @ s - s).sum())
    return s, PowerReport(
        iterations=iterations, final_diff=diff, residual=residual, converged=converged
    )


def centered_log_scores(s):
    """Centered log of a strength vector; tiny entries are floored first.

    Flooring at 1e-300 keeps reducible chains (an item with stationary mass
    zero) from producing -inf scores; the affected indices are reported.
    """
    s = np.asarray(s, dtype=np.float64)
    if not np.all(np.isfinite(s)) or (s < 0).any():
        bad = int(np.flatnonzero(~np.isfinite(s) | (s < 0))[0])
        raise ValidationError(f"strength entry {bad} is not a nonnegative finite value")
    floored = tuple(int(i) for i in np.flatnonzero(s < STATIONARY_FLOOR))
    if floored:
        log.warning("floored %d stationary entries at %g", len(floored), STATIONARY_FLOOR)
    s = np.maximum(s, STATIONARY_FLOOR)
    if (s <= 0).any():
        bad = int(np.flatnonzero(s <= 0)[0])
        raise ValidationError(f"strength entry {bad} is zero after flooring")
    ls = np.log(s)
    return ls - ls.mean(), floored


def fit_core_spectral(p, tol=1e-12, max_iter=None, smoothing=0.0):
    """Full spectral pipeline: transition chain, stationary vector, centered logs.

    Returns (theta, strengths, PowerReport).
    """
    vals = smooth_preferences(p, smoothing)
    t = build_transition(PreferenceMatrix(vals))
    s, report = stationary_distribution(t, tol=tol, max_iter=max_iter)
    theta, floored = centered_log_scores(s)
    report = PowerReport(
        iterations=report.iterations,
        final_diff=report.final_diff,
        residual=report.residual,
        converged=report.converged,
        floored=floored,
    )
    return theta, s, report
