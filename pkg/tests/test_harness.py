import csv
import json

import numpy as np
import pytest

from corerank import ExperimentConfig, ValidationError, run_experiment
from corerank.harness import make_distribution
from corerank.synth import GaussianMixture, Normal1D, SkewALD, SkewLaplace1D, StudentT

TINY_FIG = dict(
    experiment="fig_mean_correlation",
    seed=3,
    replicates=2,
    distributions=("normal",),
    n_values=(40,),
)

TINY_TABLE = dict(
    experiment="table_rank_recovery",
    seed=3,
    replicates=2,
    m1=60,
    m2=120,
    distributions=("t",),
    cells=((25, 4),),
    methods=("core_gd", "core_spectral", "neg_l2"),
)


def read_csv_rows(path):
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


def test_make_distribution_mapping():
    assert make_distribution("normal") == Normal1D(0.0, 1.0)
    assert make_distribution("skew_laplace") == SkewLaplace1D(2.0, 1.0)
    assert make_distribution("t", 7) == StudentT(dim=7, dof=5.0)
    assert make_distribution("mixture", 30) == GaussianMixture(dim=30)
    assert make_distribution("skew_ald", 9) == SkewALD(dim=9)
    with pytest.raises(ValidationError):
        make_distribution("cauchy")


def test_config_validation_and_roundtrip():
    with pytest.raises(ValidationError, match="unknown experiment"):
        ExperimentConfig(experiment="fig_bogus")
    with pytest.raises(ValidationError, match="scale"):
        ExperimentConfig(experiment="fig_1d_methods", scale="huge")
    cfg = ExperimentConfig(**TINY_TABLE)
    again = ExperimentConfig.from_json(cfg.to_json())
    assert again == cfg


def test_scale_defaults():
    desk = ExperimentConfig(experiment="table_rank_recovery", scale="desk")
    paper = ExperimentConfig(experiment="table_rank_recovery", scale="paper")
    assert (desk.r, desk.m1_eff, desk.m2_eff) == (5, 500, 2000)
    assert (paper.r, paper.m1_eff, paper.m2_eff) == (20, 2000, 10000)
    assert len(paper.cell_grid) == 4
    assert desk.cell_grid == ((150, 80), (80, 200))
    assert desk.dist_names == ("t", "mixture", "skew_ald")


def test_fig_experiment_artifacts(tmp_path):
    cfg = ExperimentConfig(
        experiment="fig_1d_methods",
        seed=1,
        n_values=(30, 50),
        distributions=("normal",),
    )
    table = run_experiment(cfg, tmp_path)
    expdir = tmp_path / "fig_1d_methods"
    assert (expdir / "summary.csv").exists()
    assert (expdir / "manifest.json").exists()
    fig = read_csv_rows(expdir / "figure_data" / "fig_1d_methods_normal.csv")
    assert set(fig[0]) == {"x", "theta", "method", "n"}
    methods = {row["method"] for row in fig}
    assert methods == {"population_gd", "reference_gd", "leaveout_gd", "leaveout_spectral"}
    ns = {int(row["n"]) for row in fig}
    assert ns == {30, 50}
    # population benchmark correlates with itself perfectly
    assert table.cell("population_gd", "normal", 30, 1).mean == pytest.approx(1.0)
    # x values are sorted within each (method, n) block
    xs = [float(r["x"]) for r in fig if r["method"] == "leaveout_gd" and r["n"] == "30"]
    assert xs == sorted(xs)
    manifest = json.loads((expdir / "manifest.json").read_text())
    assert manifest["distributions"][0]["mu_star"] == 0.0


def test_mean_correlation_aggregation_matches_cells(tmp_path):
    cfg = ExperimentConfig(**TINY_FIG)
    table = run_experiment(cfg, tmp_path)
    cell_rows = read_csv_rows(tmp_path / "fig_mean_correlation" / "normal_n40_d1.csv")
    by_method = {}
    for row in cell_rows:
        by_method.setdefault(row["method"], []).append(float(row["value"]))
    for method, vals in by_method.items():
        vals = np.asarray(vals)
        cell = table.cell(method, "normal", 40, 1)
        assert cell.mean == float(vals.mean())
        assert cell.sd == float(vals.std(ddof=1))


def test_summary_deterministic_bytes(tmp_path):
    cfg = ExperimentConfig(**TINY_FIG)
    run_experiment(cfg, tmp_path / "a")
    run_experiment(cfg, tmp_path / "b")
    a = (tmp_path / "a" / "fig_mean_correlation" / "summary.csv").read_bytes()
    b = (tmp_path / "b" / "fig_mean_correlation" / "summary.csv").read_bytes()
    assert a == b
    different = ExperimentConfig(**{**TINY_FIG, "seed": 4})
    run_experiment(different, tmp_path / "c")
    c = (tmp_path / "c" / "fig_mean_correlation" / "summary.csv").read_bytes()
    assert a != c


def test_table_experiment_artifacts(tmp_path):
    cfg = ExperimentConfig(**TINY_TABLE)
    table = run_experiment(cfg, tmp_path)
    expdir = tmp_path / "table_rank_recovery"
    rows = read_csv_rows(expdir / "summary.csv")
    assert {r["method"] for r in rows} == {"core_gd", "core_spectral", "neg_l2"}
    cell = table.cell("core_gd", "t", 25, 4)
    assert -1.0 <= cell.mean <= 1.0
    assert cell.sd >= 0.0
    per_rep = read_csv_rows(expdir / "t_n25_d4.csv")
    assert len(per_rep) == 2 * 3  # replicates x methods
    assert not (expdir / "failures.csv").exists()


def test_table_logdensity_runs(tmp_path):
    cfg = ExperimentConfig(
        experiment="table_logdensity",
        seed=5,
        replicates=2,
        distributions=("t",),
        cells=((20, 3),),
        methods=("core_gd",),
    )
    table = run_experiment(cfg, tmp_path)
    assert len(table.rows) == 1
    assert table.rows[0].mean > 0.5  # radial structure is easy at n >> d


def test_replicate_failures_recorded_not_dropped(tmp_path):
    # mahalanobis depth needs n > d, so it fails on an n < d cell
    cfg = ExperimentConfig(
        experiment="table_logdensity",
        seed=6,
        replicates=2,
        distributions=("t",),
        cells=((10, 12),),
        methods=("core_gd", "mahalanobis_depth"),
    )
    table = run_experiment(cfg, tmp_path)
    expdir = tmp_path / "table_logdensity"
    failures = read_csv_rows(expdir / "failures.csv")
    assert len(failures) == 2
    assert "n > d" in failures[0]["error"]
    assert table.rows == ()  # every replicate failed, nothing aggregated
    manifest = json.loads((expdir / "manifest.json").read_text())
    assert manifest["failures"] == 2


def test_default_method_sets_by_regime():
    wide = ExperimentConfig(experiment="table_rank_recovery", cells=((150, 80),))
    hd = ExperimentConfig(experiment="table_rank_recovery", cells=((80, 200),))
    from corerank.harness import TABLE_METHODS_HD, TABLE_METHODS_WIDE

    assert len(TABLE_METHODS_WIDE) == 6
    assert set(TABLE_METHODS_HD) <= set(TABLE_METHODS_WIDE)
    assert wide.cell_grid == ((150, 80),)
    assert hd.cell_grid == ((80, 200),)


def test_inline_distribution_spec(tmp_path):
    cfg = ExperimentConfig(
        experiment="table_logdensity",
        seed=9,
        replicates=1,
        distributions=({"kind": "student_t", "dim": 6, "dof": 5.0},),
        cells=((30, 6),),
        methods=("core_gd",),
    )
    assert ExperimentConfig.from_json(cfg.to_json()) == cfg
    table = run_experiment(cfg, tmp_path)
    assert table.rows[0].distribution == "student_t"
    assert table.rows[0].mean > 0.5


def test_wide_cell_defaults_to_six_methods(tmp_path):
    cfg = ExperimentConfig(
        experiment="table_rank_recovery",
        seed=10,
        replicates=1,
        m1=40,
        m2=80,
        distributions=("t",),
        cells=((30, 8),),
    )
    table = run_experiment(cfg, tmp_path)
    methods = {row.method for row in table.rows}
    assert methods == {
        "core_gd",
        "core_spectral",
        "neg_l2",
        "mahalanobis_depth",
        "spatial_depth",
        "rp_spatial",
    }
    rows = read_csv_rows(tmp_path / "table_rank_recovery" / "summary.csv")
    assert len(rows) == 6


def test_three_gd_curves_agree_at_large_n(tmp_path):
    # at n=2000 the population, reference, and leave-out fits are nearly
    # indistinguishable: pairwise pearson >= 0.99
    cfg = ExperimentConfig(
        experiment="fig_1d_methods",
        seed=11,
        distributions=("normal",),
        n_values=(2000,),
        methods=("population_gd", "reference_gd", "leaveout_gd"),
    )
    run_experiment(cfg, tmp_path)
    fig = read_csv_rows(
        tmp_path / "fig_1d_methods" / "figure_data" / "fig_1d_methods_normal.csv"
    )
    curves = {}
    for row in fig:
        curves.setdefault(row["method"], []).append((float(row["x"]), float(row["theta"])))
    from corerank import pearson

    thetas = {m: np.array([t for _, t in sorted(pts)]) for m, pts in curves.items()}
    gd_methods = ["population_gd", "reference_gd", "leaveout_gd"]
    for i, a in enumerate(gd_methods):
        for b in gd_methods[i + 1 :]:
            assert pearson(thetas[a], thetas[b]) >= 0.99, (a, b)
