"""Command-line entry point: score, extend, simulate, and diagnose.

Exit codes are a stable contract for scripting: 0 success, 2 input
validation failure, 3 numerical failure (solver divergence).
"""

import argparse
import json
import logging
import sys

import numpy as np

from .btl import GdConfig, fit_core_gd, load_scores_csv, save_scores_csv
from .errors import ValidationError
from .geometry import (
    MetricSpec,
    load_data_matrix,
    load_distance_matrix,
)
from .harness import EXPERIMENTS, ExperimentConfig, run_experiment
from .preference import (
    HALF_WEIGHT,
    STRICT,
    load_preference_csv,
    preference_leave_two_out,
    save_preference_csv,
)
from .scoring import KernelSpec, kernel_extend, monotone_link_residuals, preference_center, win_rates
from .spectral import build_transition, fit_core_spectral

log = logging.getLogger("corerank")

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_NUMERICAL = 3


def _metric_from_flags(args):
    if args.metric == "mahalanobis":
        if not getattr(args, "scatter", None):
            raise ValidationError("--metric mahalanobis requires --scatter FILE")
        scatter = load_data_matrix(args.scatter)
        return MetricSpec("mahalanobis", scatter)
    return MetricSpec(args.metric)


def _tie_policy(flag):
    return HALF_WEIGHT if flag == "half" else STRICT


def _ranks_desc(theta):
    """Competition-free ranks: 1 = highest score, ties broken by index."""
    order = np.lexsort((np.arange(len(theta)), -np.asarray(theta)))
    ranks = np.empty(len(theta), dtype=np.int64)
    ranks[order] = np.arange(1, len(theta) + 1)
    return ranks


def cmd_score(args):
    if args.distances:
        if args.metric != "precomputed":
            raise ValidationError("--distances requires --metric precomputed")
        dmat = load_distance_matrix(args.distances, expect_symmetric=True)
        data = None
    else:
        if args.metric == "precomputed":
            raise ValidationError("--metric precomputed requires --distances")
        data = load_data_matrix(args.input, header=args.header)
        from .geometry import pairwise_distance_matrix

        dmat = pairwise_distance_matrix(data, _metric_from_flags(args))

    pref = preference_leave_two_out(dmat, _tie_policy(args.tie_policy))
    if args.save_preferences:
        save_preference_csv(args.save_preferences, pref)

    exit_code = EXIT_OK
    report_payload = None
    if args.estimator == "gd":
        cfg = GdConfig(tol=args.tol, max_iter=args.max_iter, ridge=args.ridge)
        theta, report = fit_core_gd(pref, cfg)
        print(f"fit: {report.summary()}")
        report_payload = {
            "iterations": report.iterations,
            "final_grad_norm": report.final_grad_norm,
            "final_loss": report.final_loss,
            "converged": report.converged,
            "diverged": report.diverged,
        }
        if report.diverged:
            print(
                "error: divergence guard tripped (max|theta| exceeded 50); "
                "comparisons look separable, consider --ridge",
                file=sys.stderr,
            )
            exit_code = EXIT_NUMERICAL
    elif args.estimator == "spectral":
        theta, _, power = fit_core_spectral(pref, smoothing=args.smoothing)
        print(
            f"fit: power iteration {'converged' if power.converged else 'stopped'} "
            f"after {power.iterations} iterations, residual {power.residual:.3e}"
        )
        report_payload = {
            "iterations": power.iterations,
            "final_diff": power.final_diff,
            "fixed_point_residual": power.residual,
            "converged": power.converged,
            "floored": list(power.floored),
        }
        if power.floored:
            print(
                f"warning: {len(power.floored)} stationary entries were floored "
                f"(indices {list(power.floored)})",
                file=sys.stderr,
            )
    else:
        theta = win_rates(pref)
        print("fit: win rates (no solver)")

    center_idx, _, tied = preference_center(theta, data)
    print(f"preference center: index {center_idx}" + (" (tie)" if tied else ""))
    save_scores_csv(args.output, theta, ranks=_ranks_desc(theta))
    if args.json_report:
        payload = {
            "method": args.estimator,
            "theta": [float(t) for t in theta],
            "strength": [float(np.exp(t)) for t in theta],
            "report": report_payload,
        }
        with open(args.json_report, "w") as fh:
            json.dump(payload, fh)
    print(f"wrote {args.output}")
    return exit_code


def cmd_extend(args):
    theta = load_scores_csv(args.scores)
    train = load_data_matrix(args.train, header=args.header)
    queries = load_data_matrix(args.queries, header=args.header)
    if queries.size and train.shape[1] != queries.shape[1]:
        raise ValidationError(
            f"query dimension {queries.shape[1]} does not match training dimension {train.shape[1]}"
        )
    bandwidth = args.bandwidth if args.bandwidth == "median" else float(args.bandwidth)
    result = kernel_extend(
        theta, train, queries, _metric_from_flags(args), KernelSpec(bandwidth)
    )
    print(f"bandwidth resolved to {result.bandwidth}")
    if result.fallback.any():
        print(
            f"warning: nearest-neighbor fallback used for {int(result.fallback.sum())} queries",
            file=sys.stderr,
        )
    with open(args.output, "w", newline="") as fh:
        fh.write("query_index,theta,strength\n")
        for i, (t, s) in enumerate(zip(result.theta, result.strength)):
            fh.write(f"{i},{float(t)!r},{float(s)!r}\n")
    print(f"wrote {args.output}")
    return EXIT_OK


def cmd_simulate(args):
    if args.config:
        with open(args.config) as fh:
            cfg = ExperimentConfig.from_json(fh.read())
        if args.experiment and args.experiment != cfg.experiment:
            raise ValidationError("--experiment conflicts with the experiment in --config")
    else:
        if not args.experiment:
            raise ValidationError(
                f"--experiment is required; valid names: {', '.join(EXPERIMENTS)}"
            )
        cfg = ExperimentConfig(
            experiment=args.experiment,
            scale=args.scale,
            seed=args.seed,
            replicates=args.replicates,
        )
    table = run_experiment(cfg, args.outdir)
    print(f"wrote {args.outdir}/{cfg.experiment}/summary.csv ({len(table.rows)} rows)")
    return EXIT_OK


def cmd_diagnose(args):
    theta = load_scores_csv(args.scores)
    pref = load_preference_csv(args.preferences)
    n = pref.n
    residuals = monotone_link_residuals(theta, pref)
    comp = pref.values + pref.values.T
    iu = np.triu_indices(n, k=1)
    violations = int((np.abs(comp[iu] - 1.0) > 1e-9).sum())
    strengths = np.exp(theta - theta.max())
    strengths = strengths / strengths.sum()
    t = build_transition(pref)
    spectral_residual = float(np.abs(t.T @ strengths - strengths).sum())
    payload = {
        "n": n,
        "max_stationarity_residual": float(np.abs(residuals).max()),
        "centering_residual": float(abs(theta.sum())),
        "complementarity_violations": violations,
        "spectral_fixed_point_residual": spectral_residual,
    }
    text = json.dumps(payload, indent=2, sort_keys=True)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
        print(f"wrote {args.output}")
    else:
        print(text)
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="corerank",
        description="Preference-based centrality scores on dissimilarity spaces.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_score = sub.add_parser("score", help="fit centrality scores for a sample")
    src = p_score.add_mutually_exclusive_group(required=True)
    src.add_argument("--input", help="observations CSV (one row per point)")
    src.add_argument("--distances", help="precomputed symmetric distance CSV")
    p_score.add_argument("--metric", choices=("euclidean", "mahalanobis", "precomputed"),
                         default="euclidean")
    p_score.add_argument("--scatter", help="scatter matrix CSV for --metric mahalanobis")
    p_score.add_argument("--estimator", choices=("gd", "spectral", "winrate"), default="gd")
    p_score.add_argument("--tie-policy", choices=("strict", "half"), default="strict")
    p_score.add_argument("--output", required=True, help="scores CSV to write")
    p_score.add_argument("--ridge", type=float, default=0.0)
    p_score.add_argument("--tol", type=float, default=None)
    p_score.add_argument("--max-iter", type=int, default=None)
    p_score.add_argument("--smoothing", type=float, default=0.0,
                         help="uniform smoothing weight for the spectral chain")
    p_score.add_argument("--seed", type=int, default=0,
                         help="reserved; both estimators are deterministic")
    p_score.add_argument("--header", action="store_true", help="input CSV has a header row")
    p_score.add_argument("--save-preferences", help="also write the preference matrix CSV")
    p_score.add_argument("--json-report", help="write scores plus fit report as JSON")
    p_score.set_defaults(fn=cmd_score)

    p_ext = sub.add_parser("extend", help="score query points by kernel smoothing")
    p_ext.add_argument("--scores", required=True, help="fitted scores CSV")
    p_ext.add_argument("--train", required=True, help="training observations CSV")
    p_ext.add_argument("--queries", required=True, help="query observations CSV")
    p_ext.add_argument("--metric", choices=("euclidean", "mahalanobis"), default="euclidean")
    p_ext.add_argument("--scatter", help="scatter matrix CSV for --metric mahalanobis")
    p_ext.add_argument("--bandwidth", default="median", help="'median' or a positive number")
    p_ext.add_argument("--output", required=True)
    p_ext.add_argument("--header", action="store_true")
    p_ext.set_defaults(fn=cmd_extend)

    p_sim = sub.add_parser("simulate", help="run a synthetic experiment")
    p_sim.add_argument("--experiment", help=f"one of: {', '.join(EXPERIMENTS)}")
    p_sim.add_argument("--scale", choices=("desk", "paper"), default="desk")
    p_sim.add_argument("--seed", type=int, default=0)
    p_sim.add_argument("--replicates", type=int, default=None)
    p_sim.add_argument("--outdir", default="results")
    p_sim.add_argument("--config", help="experiment config JSON (overrides other flags)")
    p_sim.set_defaults(fn=cmd_simulate)

    p_diag = sub.add_parser("diagnose", help="consistency diagnostics for a fit")
    p_diag.add_argument("--scores", required=True)
    p_diag.add_argument("--preferences", required=True, help="preference matrix CSV")
    p_diag.add_argument("--output", help="write diagnostics JSON here instead of stdout")
    p_diag.set_defaults(fn=cmd_diagnose)
    return parser


def main(argv=None):
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(name)s: %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
