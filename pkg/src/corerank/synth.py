"""Seedable synthetic distributions and the Monte Carlo centrality oracle.

Five families cover the simulation studies: a 1-d normal, a 1-d two-sided
exponential with unequal tail scales, a multivariate Student t with
identity scatter, a balanced two-component Gaussian mixture shifted on its
first ten coordinates, and a coordinate-wise asymmetric Laplace model with
a stretched first coordinate. Every family exposes a sampler, an exact
log-density, and (for the 1-d families) a distribution function.
"""

import json
import math
from dataclasses import asdict, dataclass

import numpy as np
from scipy.special import gammaln, ndtr

from .errors import ValidationError
from .geometry import MetricSpec, as_data_matrix
from ._backend import kernels


@dataclass(frozen=True)
class Normal1D:
    mu: float = 0.0
    sigma: float = 1.0

    kind = "normal_1d"
    dim = 1

    def __post_init__(self):
        if self.sigma <= 0:
            raise ValidationError("sigma must be positive")

    def sample(self, n, rng):
        return rng.normal(self.mu, self.sigma, size=(n, 1))

    def log_density(self, x):
        z = (np.asarray(x, dtype=np.float64).reshape(-1, 1)[:, 0] - self.mu) / self.sigma
        return -0.5 * z * z - 0.5 * math.log(2.0 * math.pi) - math.log(self.sigma)

    def cdf(self, x):
        return ndtr((np.asarray(x, dtype=np.float64) - self.mu) / self.sigma)


@dataclass(frozen=True)
class SkewLaplace1D:
    """Two-sided exponential: density (1/(bl+br)) * exp(x/bl) for x<0, exp(-x/br) for x>=0."""

    b_left: float = 2.0
    b_right: float = 1.0

    kind = "skew_laplace_1d"
    dim = 1

    def __post_init__(self):
        if self.b_left <= 0 or self.b_right <= 0:
            raise ValidationError("tail scales must be positive")

    def sample(self, n, rng):
        # P(X < 0) = bl/(bl+br); each side is a rescaled exponential
        side = rng.random(n)
        mag = rng.exponential(1.0, n)
        p_left = self.b_left / (self.b_left + self.b_right)
        x = np.where(side < p_left, -self.b_left * mag, self.b_right * mag)
        return x[:, None]

    def log_density(self, x):
        x = np.asarray(x, dtype=np.float64).reshape(-1, 1)[:, 0]
        norm = math.log(self.b_left + self.b_right)
        return np.where(x < 0, x / self.b_left, -x / self.b_right) - norm

    def cdf(self, x):
        x = np.asarray(x, dtype=np.float64)
        total = self.b_left + self.b_right
        left = self.b_left * np.exp(np.minimum(x, 0.0) / self.b_left) / total
        right = (self.b_left + self.b_right * (1.0 - np.exp(-np.maximum(x, 0.0) / self.b_right))) / total
        return np.where(x < 0, left, right)


@dataclass(frozen=True)
class StudentT:
    """Multivariate Student t with identity scatter, via the normal/chi-square ratio."""

    dim: int = 1
    dof: float = 5.0

    kind = "student_t"

    def __post_init__(self):
        if self.dim < 1:
            raise ValidationError("dimension must be at least 1")
        if self.dof <= 2:
            raise ValidationError("need dof > 2 for finite variance")

    def sample(self, n, rng):
        z = rng.standard_normal((n, self.dim))
        w = rng.chisquare(self.dof, n)
        return z * np.sqrt(self.dof / w)[:, None]

    def log_density(self, x):
        x = as_data_matrix(x)
        if x.shape[1] != self.dim:
            raise ValidationError(f"points have dimension {x.shape[1]}, expected {self.dim}")
        d, nu = float(self.dim), float(self.dof)
        sq = (x * x).sum(axis=1)
        return (
            gammaln(0.5 * (nu + d))
            - gammaln(0.5 * nu)
            - 0.5 * d * math.log(nu * math.pi)
            - 0.5 * (nu + d) * np.log1p(sq / nu)
        )


@dataclass(frozen=True)
class GaussianMixture:
    """Fair coin between N(u, I) and N(-u, I) with u = shift on the first few coordinates."""

    dim: int = 20
    shift: float = 4.0
    shift_coords: int = 10

    kind = "gaussian_mixture"

    def __post_init__(self):
        if self.dim < 1:
            raise ValidationError("dimension must be at least 1")
        if self.shift_coords < 1:
            raise ValidationError("need at least one shifted coordinate")

    def _center(self):
        u = np.zeros(self.dim)
        u[: min(self.shift_coords, self.dim)] = self.shift
        return u

    def sample(self, n, rng):
        u = self._center()
        signs = np.where(rng.random(n) < 0.5, 1.0, -1.0)
        return rng.standard_normal((n, self.dim)) + signs[:, None] * u

    def log_density(self, x):
        x = as_data_matrix(x)
        if x.shape[1] != self.dim:
            raise ValidationError(f"points have dimension {x.shape[1]}, expected {self.dim}")
        u = self._center()
        a = -0.5 * ((x - u) ** 2).sum(axis=1)
        b = -0.5 * ((x + u) ** 2).sum(axis=1)
        const = -0.5 * self.dim * math.log(2.0 * math.pi) + math.log(0.5)
        return const + np.logaddexp(a, b)


@dataclass(frozen=True)
class SkewALD:
    """Coordinate-wise asymmetric Laplace, first coordinate stretched after sampling.

    Convention for ALD(loc, scale, skew): density proportional to
    exp(-(x - loc) * skew / scale) right of loc and exp((x - loc)/(scale * skew))
    left of it, so mass kappa^2/(1 + kappa^2) sits on the left.
    """

    dim: int = 20
    loc: float = 0.0
    scale: float = 2.0
    skew: float = 10.0
    first_coord_scale: float = 100.0

    kind = "skew_ald"

    def __post_init__(self):
        if self.dim < 1:
            raise ValidationError("dimension must be at least 1")
        if self.scale <= 0 or self.skew <= 0 or self.first_coord_scale <= 0:
            raise ValidationError("scale, skew, and the stretch factor must be positive")

    def sample(self, n, rng):
        k = self.skew
        p_left = k * k / (1.0 + k * k)
        side = rng.random((n, self.dim))
        mag = rng.exponential(1.0, (n, self.dim))
        x = self.loc + np.where(
            side < p_left, -self.scale * k * mag, (self.scale / k) * mag
        )
        x[:, 0] *= self.first_coord_scale
        return x

    def log_density(self, x):
        x = as_data_matrix(x)
        if x.shape[1] != self.dim:
            raise ValidationError(f"points have dimension {x.shape[1]}, expected {self.dim}")
        k = x.copy()
        k[:, 0] /= self.first_coord_scale
        z = (k - self.loc) / self.scale
        kap = self.skew
        log_norm = math.log(kap / (1.0 + kap * kap)) - math.log(self.scale)
        per_coord = np.where(z >= 0, -z * kap, z / kap) + log_norm
        total = per_coord.sum(axis=1)
        return total - math.log(self.first_coord_scale)


_FAMILIES = {
    cls.kind: cls for cls in (Normal1D, SkewLaplace1D, StudentT, GaussianMixture, SkewALD)
}


def spec_to_dict(spec):
    payload = {"kind": spec.kind}
    payload.update(asdict(spec))
    return payload


def spec_from_dict(payload):
    payload = dict(payload)
    kind = payload.pop("kind", None)
    if kind not in _FAMILIES:
        raise ValidationError(f"unknown distribution kind {kind!r}")
    return _FAMILIES[kind](**payload)


def spec_to_json(spec):
    return json.dumps(spec_to_dict(spec))


def spec_from_json(text):
    return spec_from_dict(json.loads(text))


def sample(spec, n, seed):
    """Draw n observations; identical (spec, n, seed) triples are bitwise identical."""
    if n < 1:
        raise ValidationError("need n >= 1 draws")
    return spec.sample(n, np.random.default_rng(seed))


def log_density(spec, x):
    """Exact log-density of the distribution at the given points (row-wise)."""
    return spec.log_density(x)


@dataclass(frozen=True)
class OracleEstimate:
    value: float
    m1: int
    m2: int
    seed: int


def monte_carlo_r(y, spec, metric=MetricSpec("euclidean"), m1=2000, m2=10000, seed=0,
                  block=1024):
    """Monte Carlo estimate of the preference centrality of a point.

    Draws opponents X'_1..m1 and referees Z_1..m2 from independent
    substreams of the seed and averages the indicator that the referee
    sits strictly closer to y than to the opponent.
    """
    if m1 < 1 or m2 < 1:
        raise ValidationError("need m1 >= 1 and m2 >= 1")
    y = as_data_matrix(y)
    if y.shape[0] != 1:
        raise ValidationError("monte_carlo_r scores one point at a time")
    ss_x, ss_z = np.random.SeedSequence(seed).spawn(2)
    xs = spec.sample(m1, np.random.default_rng(ss_x))
    zs = spec.sample(m2, np.random.default_rng(ss_z))
    xs_w = metric.whiten(xs)
    zs_w = metric.whiten(zs)
    y_w = metric.whiten(y)
    kern = kernels()
    count = 0
    for start in range(0, m2, block):
        zb = zs_w[start : start + block]
        dzx = kern.cross_distances(zb, xs_w)
        dzy = kern.cross_distances(zb, y_w)[:, 0]
        count += int((dzx > dzy[:, None]).sum())
    return OracleEstimate(value=count / (m1 * m2), m1=m1, m2=m2, seed=seed)
