"""Convex cross-entropy projection of pairwise preferences onto scores.

The objective is the binary cross-entropy between the upper-triangle
preference probabilities and the logistic model sigmoid(theta_j - theta_i),
optionally plus a ridge term. It is minimized by projected gradient descent
on the centered subspace sum(theta) = 0: the gradient is mean-centered each
step, so iterates stay centered given the zero start.

Internally the objective is rewritten as

    loss(theta) = sum_{i<j} softplus(theta_i - theta_j) + c . theta + ridge*|theta|^2
    grad_k      = sum_{i != k} sigmoid(theta_k - theta_i) - b_k + 2*ridge*theta_k

with constant vectors b and c precomputed from the preference matrix; only
the O(n^2) softplus/sigmoid sums are evaluated per iteration.
"""

import json
import logging
from dataclasses import dataclass

import numpy as np

from ._backend import kernels
from .errors import ValidationError
from .preference import PreferenceMatrix

log = logging.getLogger(__name__)

ARMIJO_C = 1e-4
THETA_GUARD = 50.0
MIN_STEP = 1e-18
STALL_LIMIT = 12  # consecutive iterations without measurable descent


@dataclass(frozen=True)
class GdConfig:
    """Solver knobs; fields left at None resolve to n-scaled defaults."""

    stepsize: float | None = None  # initial step, default 1/n
    tol: float | None = None  # sup-norm of projected gradient, default 1e-8*n
    max_iter: int | None = None  # default 50*n
    ridge: float = 0.0
    line_search: bool = True

    def resolve(self, n):
        eta = 1.0 / n if self.stepsize is None else float(self.stepsize)
        tol = 1e-8 * n if self.tol is None else float(self.tol)
        max_iter = 50 * n if self.max_iter is None else int(self.max_iter)
        if eta <= 0 or tol <= 0 or max_iter < 1 or self.ridge < 0:
            raise ValidationError("need stepsize > 0, tol > 0, max_iter >= 1, ridge >= 0")
        return eta, tol, max_iter, float(self.ridge)


@dataclass(frozen=True)
class FitReport:
    iterations: int
    final_grad_norm: float
    final_loss: float
    converged: bool
    diverged: bool

    def summary(self):
        state = "converged" if self.converged else ("diverged" if self.diverged else "max-iter")
        return (
            f"{state} after {self.iterations} iterations, "
            f"grad sup-norm {self.final_grad_norm:.3e}, loss {self.final_loss:.6f}"
        )


def _pref_values(p):
    if isinstance(p, PreferenceMatrix):
        p.validate()
        return p.values
    p = np.asarray(p, dtype=np.float64)
    PreferenceMatrix(p).validate()
    return p


def _upper_sums(p):
    """Column/row sums of the strict upper triangle of p."""
    u = np.triu(p, k=1)
    return u.sum(axis=0), u.sum(axis=1)


def _linear_terms(p):
    n = p.shape[0]
    k = np.arange(n, dtype=np.float64)
    colsum, rowsum = _upper_sums(p)
    b = colsum + (n - 1.0 - k) - rowsum
    c = (k - colsum) - ((n - 1.0 - k) - rowsum)
    return b, c


def loss(p, theta, ridge=0.0):
    """Cross-entropy objective at theta, plus ridge * |theta|^2."""
    p = _pref_values(p)
    theta = np.asarray(theta, dtype=np.float64)
    if theta.shape != (p.shape[0],):
        raise ValidationError(f"theta shape {theta.shape} does not match n={p.shape[0]}")
    _, c = _linear_terms(p)
    value = kernels().pair_softplus_sum(theta) + float(c @ theta)
    if ridge:
        value += ridge * float(theta @ theta)
    return value


def gradient(p, theta, ridge=0.0):
    """Gradient of the objective; components sum to zero when ridge = 0."""
    p = _pref_values(p)
    theta = np.asarray(theta, dtype=np.float64)
    if theta.shape != (p.shape[0],):
        raise ValidationError(f"theta shape {theta.shape} does not match n={p.shape[0]}")
    b, _ = _linear_terms(p)
    g = kernels().sigmoid_rowsums(theta) - b
    if ridge:
        g = g + 2.0 * ridge * theta
    return g


def fit_core_gd(p, config=GdConfig()):
    """Minimize the centered objective by projected gradient descent.

    Returns (theta, FitReport). The gradient is projected onto the centered
    subspace every step; with line search enabled (default) each step
    backtracks by halving from a doubling warm start until the Armijo
    condition holds, which makes the loss non-increasing. A guard trips
    when max|theta| exceeds 50, signalling separable comparisons whose
    unpenalized minimizer sits at infinity.
    """
    p = _pref_values(p)
    n = p.shape[0]
    if n < 2:
        raise ValidationError("need at least two items to fit scores")
    eta0, tol, max_iter, ridge = config.resolve(n)
    b, c = _linear_terms(p)
    kern = kernels()

    def loss_at(th):
        val = kern.pair_softplus_sum(th) + float(c @ th)
        if ridge:
            val += ridge * float(th @ th)
        return val

    theta = np.zeros(n)
    cur_loss = loss_at(theta)
    eta = eta0
    iterations = 0
    converged = False
    diverged = False
    grad_norm = np.inf
    stalled = 0

    for _ in range(max_iter):
        g = kern.sigmoid_rowsums(theta) - b
        if ridge:
            g += 2.0 * ridge * theta
        g -= g.mean()
        grad_norm = float(np.abs(g).max())
        if grad_norm <= tol:
            converged = True
            break
        iterations += 1
        # descent below this is indistinguishable from rounding in the loss
        noise = 4.0 * np.finfo(float).eps * max(1.0, abs(cur_loss))
        if config.line_search:
            gsq = float(g @ g)
            # try growing the step occasionally; halving recovers right away
            if iterations % 8 == 1:
                eta = min(eta * 2.0, 1e12)
            prev_loss = cur_loss
            while True:
                trial = theta - eta * g
                trial_loss = loss_at(trial)
                if trial_loss <= cur_loss - ARMIJO_C * eta * gsq + noise:
                    theta = trial
                    cur_loss = trial_loss
                    break
                eta *= 0.5
                if eta < MIN_STEP:
                    log.warning("line search stalled at iteration %d", iterations)
                    break
            if eta < MIN_STEP:
                break
            stalled = stalled + 1 if cur_loss >= prev_loss - noise else 0
            if stalled >= STALL_LIMIT:
                log.info("descent below rounding for %d iterations; stopping", stalled)
                break
        else:
            theta = theta - eta0 * g
            cur_loss = loss_at(theta)
        if np.abs(theta).max() > THETA_GUARD:
            diverged = True
            log.warning(
                "divergence guard: max|theta| exceeded %g (separable comparisons)", THETA_GUARD
            )
            break

    if not converged:
        g = kern.sigmoid_rowsums(theta) - b
        if ridge:
            g += 2.0 * ridge * theta
        g -= g.mean()
        grad_norm = float(np.abs(g).max())
        converged = grad_norm <= tol and not diverged
    theta = theta - theta.mean()
    report = FitReport(
        iterations=iterations,
        final_grad_norm=grad_norm,
        final_loss=loss_at(theta),
        converged=converged,
        diverged=diverged,
    )
    return theta, report


def save_scores_csv(path, theta, ranks=None):
    """Write (index, theta, strength[, rank]) rows with round-trip floats."""
    theta = np.asarray(theta, dtype=np.float64)
    with open(path, "w", newline="") as fh:
        fh.write("index,theta,strength" + (",rank\n" if ranks is not None else "\n"))
        for i, t in enumerate(theta):
            row = f"{i},{float(t)!r},{float(np.exp(t))!r}"
            if ranks is not None:
                row += f",{int(ranks[i])}"
            fh.write(row + "\n")


def load_scores_csv(path):
    """Read theta back from a scores CSV produced by save_scores_csv."""
    import csv

    thetas = []
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or "theta" not in header:
            raise ValidationError(f"{path}: missing scores header")
        col = header.index("theta")
        for row in reader:
            if row:
                thetas.append(float(row[col]))
    return np.asarray(thetas, dtype=np.float64)


def save_fit_json(path, theta, report, method):
    payload = {
        "method": method,
        "theta": list(map(float, theta)),
        "strength": list(map(float, np.exp(theta))),
        "report": {
            "iterations": report.iterations,
            "final_grad_norm": report.final_grad_norm,
            "final_loss": report.final_loss,
            "converged": report.converged,
            "diverged": report.diverged,
        },
    }
    with open(path, "w") as fh:
        json.dump(payload, fh)
