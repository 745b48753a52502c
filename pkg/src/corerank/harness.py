"""Experiment driver: synthetic studies at desk or full scale.

Five experiments ship:

* ``fig_1d_methods`` / ``fig_1d_convergence``: 1-d score curves for the
  population, reference, leave-two-out, and spectral estimators, emitted
  as (x, theta, method, n) CSVs for the plotting component.
* ``fig_mean_correlation``: Pearson correlation of each estimator against
  the population-preference fit over replicates, aggregated mean/sd.
* ``table_rank_recovery``: Spearman agreement of every method with the
  Monte Carlo centrality benchmark over (n, d) cells.
* ``table_logdensity``: same pipeline scored against the true log-density.

Desk scale shrinks replicates and Monte Carlo effort (R=5, M1=500,
M2=2000); paper scale restores R=20, M1=2000, M2=10000. Every replicate is
reproducible from (config, seed); replicate seeds are the base seed plus
the replicate index, refined per cell through a seed sequence.
"""

import dataclasses
import json
import logging
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .baselines import baseline_scores
from .btl import GdConfig, fit_core_gd
from .errors import ValidationError
from .geometry import MetricSpec, cross_distance_matrix, pairwise_distance_matrix
from .metrics import pearson, spearman
from .preference import (
    STRICT,
    preference_leave_two_out,
    preference_population_1d,
    preference_reference,
)
from .scoring import win_rates
from .spectral import fit_core_spectral
from .synth import (
    GaussianMixture,
    Normal1D,
    SkewALD,
    SkewLaplace1D,
    StudentT,
    log_density,
    monte_carlo_r,
    spec_from_dict,
)

log = logging.getLogger(__name__)

EXPERIMENTS = (
    "fig_1d_methods",
    "fig_1d_convergence",
    "fig_mean_correlation",
    "table_rank_recovery",
    "table_logdensity",
)

ONE_D_METHODS = ("population_gd", "reference_gd", "leaveout_gd", "leaveout_spectral")
TABLE_METHODS_WIDE = (
    "core_gd",
    "core_spectral",
    "neg_l2",
    "mahalanobis_depth",
    "spatial_depth",
    "rp_spatial",
)
TABLE_METHODS_HD = ("core_gd", "core_spectral", "neg_l2", "rp_spatial")

# population maximizer annotations for the 1-d figure experiments
MU_STAR = {"normal": 0.0, "skew_laplace": -0.462}

GD_ITER_CAP = 2000


@dataclass(frozen=True)
class ExperimentConfig:
    experiment: str
    scale: str = "desk"
    seed: int = 0
    replicates: int | None = None
    m1: int | None = None
    m2: int | None = None
    distributions: tuple[str, ...] | None = None
    n_values: tuple[int, ...] | None = None
    cells: tuple[tuple[int, int], ...] | None = None
    methods: tuple[str, ...] | None = None
    gd_max_iter: int | None = None

    def __post_init__(self):
        if self.experiment not in EXPERIMENTS:
            raise ValidationError(
                f"unknown experiment {self.experiment!r}; valid names: {', '.join(EXPERIMENTS)}"
            )
        if self.scale not in ("desk", "paper"):
            raise ValidationError(f"scale must be 'desk' or 'paper', got {self.scale!r}")

    @property
    def r(self):
        if self.replicates is not None:
            return self.replicates
        return 5 if self.scale == "desk" else 20

    @property
    def m1_eff(self):
        if self.m1 is not None:
            return self.m1
        return 500 if self.scale == "desk" else 2000

    @property
    def m2_eff(self):
        if self.m2 is not None:
            return self.m2
        return 2000 if self.scale == "desk" else 10000

    @property
    def n_grid(self):
        return self.n_values if self.n_values is not None else (50, 200, 500, 2000)

    @property
    def cell_grid(self):
        if self.cells is not None:
            return self.cells
        if self.scale == "desk":
            return ((150, 80), (80, 200))
        return ((150, 80), (500, 200), (80, 200), (150, 500))

    @property
    def dist_names(self):
        if self.distributions is not None:
            return self.distributions
        if self.experiment.startswith("fig"):
            return ("normal", "skew_laplace")
        return ("t", "mixture", "skew_ald")

    def to_json(self):
        return json.dumps(dataclasses.asdict(self))

    @classmethod
    def from_json(cls, text):
        payload = json.loads(text)
        for key in ("distributions", "n_values", "methods"):
            if payload.get(key) is not None:
                payload[key] = tuple(payload[key])  # dict entries stay dicts
        if payload.get("cells") is not None:
            payload["cells"] = tuple(tuple(c) for c in payload["cells"])
        return cls(**payload)


@dataclass(frozen=True)
class ResultRow:
    method: str
    distribution: str
    n: int
    d: int
    mean: float
    sd: float


@dataclass(frozen=True)
class ResultTable:
    rows: tuple[ResultRow, ...]

    def cell(self, method, distribution, n, d):
        for row in self.rows:
            if (row.method, row.distribution, row.n, row.d) == (method, distribution, n, d):
                return row
        raise KeyError((method, distribution, n, d))

    def write_csv(self, path):
        with open(path, "w", newline="") as fh:
            fh.write("method,distribution,n,d,mean,sd\n")
            for row in self.rows:
                fh.write(
                    f"{row.method},{row.distribution},{row.n},{row.d},{float(row.mean)!r},{float(row.sd)!r}\n"
                )


def make_distribution(entry, d=1):
    """Resolve a distribution entry: a named study family or an inline spec dict."""
    if isinstance(entry, dict):
        return spec_from_dict(entry)
    if entry == "normal":
        return Normal1D(0.0, 1.0)
    if entry == "skew_laplace":
        return SkewLaplace1D(2.0, 1.0)
    if entry == "t":
        return StudentT(dim=d, dof=5.0)
    if entry == "mixture":
        return GaussianMixture(dim=d)
    if entry == "skew_ald":
        return SkewALD(dim=d)
    raise ValidationError(f"unknown distribution name {entry!r}")


def dist_label(entry):
    return entry["kind"] if isinstance(entry, dict) else entry


def _seed_ints(*key, count):
    return [int(v) for v in np.random.SeedSequence(tuple(key)).generate_state(count)]


def _gd_theta(pref, max_iter):
    theta, report = fit_core_gd(pref, GdConfig(max_iter=max_iter))
    if not report.converged:
        log.info("gd fit stopped unconverged: %s", report.summary())
    return theta


def _fit_1d_estimators(spec, n, seed_key, gd_max_iter, methods=ONE_D_METHODS):
    """Fit the requested 1-d estimators on one fresh dataset; returns (x, scores).

    The population fit always runs because it is the benchmark the others
    are compared against.
    """
    data_seed, ref_seed = _seed_ints(*seed_key, count=2)
    x = spec.sample(n, np.random.default_rng(data_seed))
    xv = x[:, 0]
    cap = min(50 * n, GD_ITER_CAP) if gd_max_iter is None else gd_max_iter

    scores = {"population_gd": _gd_theta(preference_population_1d(xv, spec.cdf), cap)}
    if "reference_gd" in methods:
        refs = spec.sample(n, np.random.default_rng(ref_seed))
        pref_ref = preference_reference(cross_distance_matrix(refs, x), STRICT)
        scores["reference_gd"] = _gd_theta(pref_ref, cap)
    if "leaveout_gd" in methods or "leaveout_spectral" in methods:
        pref_lto = preference_leave_two_out(pairwise_distance_matrix(x), STRICT)
        if "leaveout_gd" in methods:
            scores["leaveout_gd"] = _gd_theta(pref_lto, cap)
        if "leaveout_spectral" in methods:
            scores["leaveout_spectral"] = fit_core_spectral(pref_lto)[0]
    return xv, scores


def _write_figure_data(path, per_n_results, methods):
    with open(path, "w", newline="") as fh:
        fh.write("x,theta,method,n\n")
        for n in sorted(per_n_results):
            xv, scores = per_n_results[n]
            order = np.argsort(xv, kind="mergesort")
            for method in methods:
                theta = scores[method]
                for i in order:
                    fh.write(f"{float(xv[i])!r},{float(theta[i])!r},{method},{n}\n")


def _run_fig_1d_curves(cfg, expdir):
    methods = cfg.methods or ONE_D_METHODS
    rows = []
    figdir = expdir / "figure_data"
    figdir.mkdir(exist_ok=True)
    for dist_idx, dist_entry in enumerate(cfg.dist_names):
        spec = make_distribution(dist_entry)
        dist_name = dist_label(dist_entry)
        per_n = {}
        for n in cfg.n_grid:
            xv, scores = _fit_1d_estimators(
                spec, n, (cfg.seed, dist_idx, n, 1), cfg.gd_max_iter, methods
            )
            per_n[n] = (xv, scores)
            bench = scores["population_gd"]
            for method in methods:
                rows.append(
                    ResultRow(method, dist_name, n, 1, pearson(scores[method], bench), 0.0)
                )
        _write_figure_data(figdir / f"{cfg.experiment}_{dist_name}.csv", per_n, methods)
    return rows, []


def _run_fig_mean_correlation(cfg, expdir):
    methods = cfg.methods or ("reference_gd", "leaveout_gd", "leaveout_spectral")
    rows = []
    failures = []
    for dist_idx, dist_entry in enumerate(cfg.dist_names):
        spec = make_distribution(dist_entry)
        dist_name = dist_label(dist_entry)
        for n in cfg.n_grid:
            per_rep = {}
            for r in range(cfg.r):
                try:
                    _, scores = _fit_1d_estimators(
                        spec, n, (cfg.seed + r, dist_idx, n, 1), cfg.gd_max_iter, methods
                    )
                    bench = scores["population_gd"]
                    per_rep[r] = {m: pearson(scores[m], bench) for m in methods}
                except Exception as exc:  # noqa: BLE001 - replicate failures are recorded
                    failures.append((dist_name, n, 1, r, str(exc)))
                    log.error("replicate %d failed for %s n=%d: %s", r, dist_name, n, exc)
            _write_cell_csv(expdir / f"{dist_name}_n{n}_d1.csv", per_rep, methods)
            rows.extend(_aggregate_cell(per_rep, methods, dist_name, n, 1))
    return rows, failures


def _mc_benchmark(x, spec, m1, m2, mc_key):
    values = np.empty(x.shape[0])
    for i in range(x.shape[0]):
        point_seed = _seed_ints(*mc_key, i, count=1)[0]
        values[i] = monte_carlo_r(
            x[i : i + 1], spec, MetricSpec("euclidean"), m1=m1, m2=m2, seed=point_seed
        ).value
    return values


def _table_replicate(cfg, spec, n, d, seed_key, methods, benchmark):
    data_seed, baseline_seed = _seed_ints(*seed_key, count=2)
    x = spec.sample(n, np.random.default_rng(data_seed))
    pref = preference_leave_two_out(pairwise_distance_matrix(x), STRICT)
    cap = min(50 * n, GD_ITER_CAP) if cfg.gd_max_iter is None else cfg.gd_max_iter

    scores = {}
    for method in methods:
        if method == "core_gd":
            scores[method] = _gd_theta(pref, cap)
        elif method == "core_spectral":
            scores[method] = fit_core_spectral(pref)[0]
        elif method == "winrate":
            scores[method] = win_rates(pref)
        else:
            scores[method] = baseline_scores(method, x, seed=baseline_seed)

    if benchmark == "mc_centrality":
        bench = _mc_benchmark(x, spec, cfg.m1_eff, cfg.m2_eff, (*seed_key, 0xA11CE))
    else:
        bench = log_density(spec, x)
    return {m: spearman(scores[m], bench) for m in methods}


def _write_cell_csv(path, per_rep, methods):
    with open(path, "w", newline="") as fh:
        fh.write("replicate,method,value\n")
        for r in sorted(per_rep):
            for method in methods:
                fh.write(f"{r},{method},{float(per_rep[r][method])!r}\n")


def _aggregate_cell(per_rep, methods, dist_name, n, d):
    rows = []
    if not per_rep:
        return rows
    for method in methods:
        vals = np.asarray([per_rep[r][method] for r in sorted(per_rep)])
        sd = float(vals.std(ddof=1)) if vals.size > 1 else 0.0
        rows.append(ResultRow(method, dist_name, n, d, float(vals.mean()), sd))
    return rows


def _run_table(cfg, expdir, benchmark):
    rows = []
    failures = []
    for dist_idx, dist_entry in enumerate(cfg.dist_names):
        dist_name = dist_label(dist_entry)
        for n, d in cfg.cell_grid:
            spec = make_distribution(dist_entry, d)
            methods = cfg.methods or (TABLE_METHODS_WIDE if n > d else TABLE_METHODS_HD)
            per_rep = {}
            for r in range(cfg.r):
                seed_key = (cfg.seed + r, dist_idx, n, d)
                try:
                    per_rep[r] = _table_replicate(cfg, spec, n, d, seed_key, methods, benchmark)
                except Exception as exc:  # noqa: BLE001 - replicate failures are recorded
                    failures.append((dist_name, n, d, r, str(exc)))
                    log.error(
                        "replicate %d failed for %s (n=%d, d=%d): %s", r, dist_name, n, d, exc
                    )
            _write_cell_csv(expdir / f"{dist_name}_n{n}_d{d}.csv", per_rep, methods)
            rows.extend(_aggregate_cell(per_rep, methods, dist_name, n, d))
    return rows, failures


_RUNNERS = {
    "fig_1d_methods": _run_fig_1d_curves,
    "fig_1d_convergence": _run_fig_1d_curves,
    "fig_mean_correlation": _run_fig_mean_correlation,
    "table_rank_recovery": lambda cfg, expdir: _run_table(cfg, expdir, "mc_centrality"),
    "table_logdensity": lambda cfg, expdir: _run_table(cfg, expdir, "logdensity"),
}


def run_experiment(cfg, outdir):
    """Run one experiment, write its artifacts under outdir/<experiment>/, return the table."""
    expdir = Path(outdir) / cfg.experiment
    expdir.mkdir(parents=True, exist_ok=True)
    rows, failures = _RUNNERS[cfg.experiment](cfg, expdir)
    rows = tuple(sorted(rows, key=lambda r: (r.distribution, r.n, r.d, r.method)))
    table = ResultTable(rows)
    table.write_csv(expdir / "summary.csv")
    if failures:
        with open(expdir / "failures.csv", "w", newline="") as fh:
            fh.write("distribution,n,d,replicate,error\n")
            for dist_name, n, d, r, msg in failures:
                fh.write(f"{dist_name},{n},{d},{r},{json.dumps(msg)}\n")
    manifest = {
        "experiment": cfg.experiment,
        "scale": cfg.scale,
        "seed": cfg.seed,
        "replicates": cfg.r,
        "m1": cfg.m1_eff,
        "m2": cfg.m2_eff,
        "distributions": [
            {"name": dist_label(entry), "mu_star": MU_STAR.get(dist_label(entry))}
            for entry in cfg.dist_names
        ],
        "failures": len(failures),
    }
    with open(expdir / "manifest.json", "w") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
    return table
