"""Rank and product-moment correlation used to evaluate score vectors."""

import logging

import numpy as np

from .errors import ValidationError

log = logging.getLogger(__name__)


def midranks(a):
    """Average ranks (1-based) with ties sharing their group mean."""
    a = np.asarray(a, dtype=np.float64)
    n = a.size
    order = np.argsort(a, kind="mergesort")
    ranks = np.empty(n)
    i = 0
    sa = a[order]
    while i < n:
        j = i
        while j + 1 < n and sa[j + 1] == sa[i]:
            j += 1
        ranks[order[i : j + 1]] = 0.5 * (i + j) + 1.0
        i = j + 1
    return ranks


def pearson(a, b):
    """Product-moment correlation; constant input is undefined and returns nan."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape or a.ndim != 1:
        raise ValidationError("pearson needs two equal-length vectors")
    if a.size < 2:
        raise ValidationError("pearson needs at least two observations")
    ac = a - a.mean()
    bc = b - b.mean()
    va = float(ac @ ac)
    vb = float(bc @ bc)
    if va == 0.0 or vb == 0.0:
        log.warning("pearson undefined for constant input")
        return float("nan")
    return float((ac @ bc) / np.sqrt(va * vb))


def spearman(a, b):
    """Rank correlation: pearson of midranks; zero rank variance returns nan."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape or a.ndim != 1:
        raise ValidationError("spearman needs two equal-length vectors")
    if a.size < 2:
        raise ValidationError("spearman needs at least two observations")
    return pearson(midranks(a), midranks(b))
