"""Command-line front end.

Subcommands:

* ``estimate``  — MLE, E-Bayes estimates, and E-MSE for a dataset over a
  grid of hyperprior bounds c.
* ``simulate``  — seeded Monte Carlo table over (c, n) grids.
* ``gof``       — one-sample K-S goodness of fit against a Lomax model.
* ``plot-data`` — x,y series data (no rendering) for density families and
  c sweeps.

Every file written via ``--out`` gets a sibling ``<out>.manifest.json``
recording command, parameters, seed, tool version, and timestamp; the
data files themselves contain nothing run-dependent, so identical
invocations produce byte-identical output.

Exit codes: 0 success, 2 usage error, 3 data error, 4 numeric domain
error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from datetime import datetime, timezone
from pathlib import Path
from typing import Sequence

from . import __version__
from .core import MomentUndefinedError, LomaxParams, pdf, sufficient_t
from .data import DataError, Dataset, DataSource, embedded_dataset, load_dataset
from .emse import estimate_report
from .estimators import LossKind
from .gof import ks_test
from .simulation import run_table

__all__ = ["main"]

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DATA = 3
EXIT_DOMAIN = 4

DEFAULT_ESTIMATE_C = (0.25, 0.50, 0.75, 1.00, 1.25)
DEFAULT_SIM_C = (0.5, 1.0, 1.5)
DEFAULT_SIM_N = (20, 40, 60, 80, 100)
DEFAULT_EMBEDDED_LAMBDA = 3.0

TABLE_COLUMNS = ("n", "c", "eb_sel", "eb_kl", "eb_el",
                 "emse_sel", "emse_kl", "emse_el")
STDERR_COLUMNS = ("stderr_eb_sel", "stderr_eb_kl", "stderr_eb_el",
                  "stderr_emse_sel", "stderr_emse_kl", "stderr_emse_el")

_LOSS_ORDER = (LossKind.SEL, LossKind.KL, LossKind.EL)


class _UsageError(Exception):
    """Bad flag combination or value; maps to exit code 2."""


def _require_positive(value: float, flag: str) -> float:
    if value is None or not (value > 0):
        raise _UsageError(f"{flag} must be positive, got {value}")
    return value


def _resolve_dataset(args: argparse.Namespace) -> tuple[Dataset, float]:
    if getattr(args, "embedded", False):
        dataset = embedded_dataset()
    elif getattr(args, "data", None):
        dataset = load_dataset(args.data)
    else:
        raise _UsageError("one of --data PATH or --embedded is required")
    lam = args.lam
    if lam is None:
        if dataset.source is DataSource.EMBEDDED:
            lam = DEFAULT_EMBEDDED_LAMBDA
        else:
            raise _UsageError("--lambda is required with --data")
    return dataset, _require_positive(lam, "--lambda")


def _csv_text(header: Sequence[str], rows: Sequence[Sequence[object]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([v if isinstance(v, str) else
                         (str(v) if isinstance(v, int) else repr(float(v)))
                         for v in row])
    return buf.getvalue()


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text, encoding="utf-8")


def _write_manifest(out: Path, args: argparse.Namespace) -> None:
    parameters = {}
    for key, value in sorted(vars(args).items()):
        if key == "func":
            continue
        parameters[key] = str(value) if isinstance(value, Path) else value
    manifest = {
        "command": args.command,
        "parameters": parameters,
        "seed": getattr(args, "seed", None),
        "tool_version": __version__,
        "timestamp": datetime.now(timezone.utc).isoformat(),
    }
    Path(str(out) + ".manifest.json").write_text(
        json.dumps(manifest, indent=2) + "\n", encoding="utf-8"
    )


def cmd_estimate(args: argparse.Namespace) -> int:
    dataset, lam = _resolve_dataset(args)
    c_values = tuple(args.c) if args.c else DEFAULT_ESTIMATE_C
    for c in c_values:
        _require_positive(c, "--c")
    n = len(dataset.values)
    t_stat = sufficient_t(dataset.values, lam)
    reports = [estimate_report(n, t_stat, c) for c in c_values]

    if args.format == "csv":
        rows = [
            [n, r.c] + [r.eb[k] for k in _LOSS_ORDER]
            + [r.emse[k] for k in _LOSS_ORDER]
            for r in reports
        ]
        text = _csv_text(TABLE_COLUMNS, rows)
    else:
        text = json.dumps(
            {
                "dataset": dataset.name,
                "lambda": lam,
                "n": n,
                "t_stat": t_stat,
                "mle": reports[0].mle,
                "rows": [
                    {
                        "c": r.c,
                        **{f"eb_{k.value}": r.eb[k] for k in _LOSS_ORDER},
                        **{f"emse_{k.value}": r.emse[k] for k in _LOSS_ORDER},
                    }
                    for r in reports
                ],
            },
            indent=2,
        ) + "\n"
    _emit(text, args.out)
    if args.out is not None:
        _write_manifest(args.out, args)
        print(f"dataset: {dataset.name} (n={n})")
        print(f"lambda = {lam:g}  T = {t_stat:.5f}  mle_alpha = {reports[0].mle:.5f}")
        header = f"{'c':>8}" + "".join(f"{col:>10}" for col in TABLE_COLUMNS[2:])
        print(header)
        for r in reports:
            vals = [r.eb[k] for k in _LOSS_ORDER] + [r.emse[k] for k in _LOSS_ORDER]
            print(f"{r.c:8.5f}" + "".join(f"{v:10.5f}" for v in vals))
        print(f"wrote {args.out}")
    return EXIT_OK


def cmd_simulate(args: argparse.Namespace) -> int:
    alpha = _require_positive(args.alpha, "--alpha")
    lam = _require_positive(args.lam, "--lambda")
    c_values = tuple(args.c) if args.c else DEFAULT_SIM_C
    n_values = tuple(args.n) if args.n else DEFAULT_SIM_N
    for c in c_values:
        _require_positive(c, "--c")
    for n in n_values:
        if n < 1:
            raise _UsageError(f"--n must be >= 1, got {n}")
    if args.reps < 1:
        raise _UsageError(f"--reps must be >= 1, got {args.reps}")
    if args.seed < 0:
        raise _UsageError(f"--seed must be >= 0, got {args.seed}")
    if args.threads < 1:
        raise _UsageError(f"--threads must be >= 1, got {args.threads}")

    results = run_table(alpha, lam, c_values, n_values,
                        reps=args.reps, seed=args.seed, threads=args.threads)
    rows = [
        [r.config.n, r.config.c]
        + [r.eb_mean[k] for k in _LOSS_ORDER]
        + [r.emse_mean[k] for k in _LOSS_ORDER]
        + [r.eb_stderr[k] for k in _LOSS_ORDER]
        + [r.emse_stderr[k] for k in _LOSS_ORDER]
        for r in results
    ]
    if args.format == "csv":
        text = _csv_text(TABLE_COLUMNS + STDERR_COLUMNS, rows)
    else:
        keys = TABLE_COLUMNS + STDERR_COLUMNS
        text = json.dumps(
            {
                "alpha": alpha,
                "lambda": lam,
                "reps": args.reps,
                "seed": args.seed,
                "rows": [dict(zip(keys, row)) for row in rows],
            },
            indent=2,
        ) + "\n"
    _emit(text, args.out)
    if args.out is not None:
        _write_manifest(args.out, args)
        print(f"wrote {args.out} ({len(rows)} cells, reps={args.reps}, seed={args.seed})")
    return EXIT_OK


def cmd_gof(args: argparse.Namespace) -> int:
    dataset, lam = _resolve_dataset(args)
    alpha = args.alpha
    if alpha is not None:
        _require_positive(alpha, "--alpha")
    result = ks_test(dataset.values, lam, alpha)
    reject = result.p_value < 0.05
    if args.format == "json":
        text = json.dumps(
            {
                "dataset": dataset.name,
                "n": result.n,
                "alpha": result.fitted.alpha,
                "lambda": result.fitted.lam,
                "d_stat": result.d_stat,
                "p_value": result.p_value,
                "reject_at_0.05": reject,
            },
            indent=2,
        ) + "\n"
        _emit(text, args.out)
        if args.out is not None:
            _write_manifest(args.out, args)
    else:
        print(f"dataset: {dataset.name} (n={result.n})")
        print(f"fitted Lomax: alpha = {result.fitted.alpha:.6f}, "
              f"lambda = {result.fitted.lam:g}"
              + ("" if alpha is not None else "  (alpha from MLE)"))
        print(f"K-S distance D = {result.d_stat:.5f}")
        print(f"p-value = {result.p_value:.5f}")
        verdict = ("reject the Lomax fit at level 0.05" if reject
                   else "fail to reject the Lomax fit at level 0.05")
        print(verdict)
    return EXIT_OK


def _float_grid(lo: float, hi: float, step: float) -> list[float]:
    count = int(round((hi - lo) / step))
    return [lo + i * step for i in range(count + 1)]


def cmd_plot_data(args: argparse.Namespace) -> int:
    rows: list[list[object]] = []
    if args.kind == "pdf-family":
        if args.data or args.embedded:
            raise _UsageError("pdf-family takes no dataset")
        alphas = tuple(args.alpha) if args.alpha else (8.0, 10.0, 12.0)
        lam = args.lam if args.lam is not None else 1.0
        _require_positive(lam, "--lambda")
        _require_positive(args.x_step, "--x-step")
        _require_positive(args.x_max, "--x-max")
        for a in alphas:
            _require_positive(a, "--alpha")
            params = LomaxParams(alpha=a, lam=lam)
            for x in _float_grid(0.0, args.x_max, args.x_step):
                rows.append([f"pdf_alpha_{a:g}", x, pdf(params, x)])
    else:
        dataset, lam = _resolve_dataset(args)
        c_values = tuple(args.c) if args.c else DEFAULT_ESTIMATE_C
        for c in c_values:
            _require_positive(c, "--c")
        n = len(dataset.values)
        t_stat = sufficient_t(dataset.values, lam)
        for c in c_values:
            report = estimate_report(n, t_stat, c)
            series = report.eb if args.kind == "c-sweep-estimates" else report.emse
            prefix = "eb" if args.kind == "c-sweep-estimates" else "emse"
            for k in _LOSS_ORDER:
                rows.append([f"{prefix}_{k.value}", c, series[k]])
    text = _csv_text(("series", "x", "y"), rows)
    _emit(text, args.out)
    if args.out is not None:
        _write_manifest(args.out, args)
        print(f"wrote {args.out} ({len(rows)} points)")
    return EXIT_OK


def _add_dataset_options(sp: argparse.ArgumentParser, required: bool) -> None:
    group = sp.add_mutually_exclusive_group(required=required)
    group.add_argument("--data", metavar="PATH",
                       help="dataset file, one observation per line")
    group.add_argument("--embedded", action="store_true",
                       help="use the built-in 21-point electron-mobility dataset")
    sp.add_argument("--lambda", dest="lam", type=float, default=None,
                    help="known scale parameter (defaults to 3 with --embedded)")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lomax-ebayes",
        description="E-Bayesian estimation of the Lomax shape parameter "
                    "under squared-error, K, and entropy losses.",
    )
    parser.add_argument("--version", action="version",
                        version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    est = sub.add_parser(
        "estimate",
        help="point estimates and E-MSE for a dataset over a grid of c",
    )
    _add_dataset_options(est, required=True)
    est.add_argument("--c", action="append", type=float, metavar="C",
                     help="hyperprior bound, repeatable "
                          f"(default {' '.join(map(str, DEFAULT_ESTIMATE_C))})")
    est.add_argument("--format", choices=("csv", "json"), default="csv")
    est.add_argument("--out", type=Path, help="output file (default stdout)")
    est.set_defaults(func=cmd_estimate)

    sim = sub.add_parser(
        "simulate",
        help="Monte Carlo estimator-performance table over (c, n) grids",
    )
    sim.add_argument("--alpha", type=float, required=True,
                     help="true shape parameter")
    sim.add_argument("--lambda", dest="lam", type=float, required=True,
                     help="true scale parameter")
    sim.add_argument("--c", action="append", type=float, metavar="C",
                     help=f"hyperprior bound, repeatable (default "
                          f"{' '.join(map(str, DEFAULT_SIM_C))})")
    sim.add_argument("--n", action="append", type=int, metavar="N",
                     help=f"sample size, repeatable (default "
                          f"{' '.join(map(str, DEFAULT_SIM_N))})")
    sim.add_argument("--reps", type=int, default=10000,
                     help="replicates per cell (default 10000)")
    sim.add_argument("--seed", type=int, default=1,
                     help="base RNG seed (default 1)")
    sim.add_argument("--threads", type=int, default=1,
                     help="worker threads across cells (default 1); "
                          "output is identical for any value")
    sim.add_argument("--format", choices=("csv", "json"), default="csv")
    sim.add_argument("--out", type=Path, help="output file (default stdout)")
    sim.set_defaults(func=cmd_simulate)

    gof = sub.add_parser(
        "gof", help="one-sample K-S goodness of fit against a Lomax model",
    )
    _add_dataset_options(gof, required=True)
    gof.add_argument("--alpha", type=float, default=None,
                     help="shape parameter (default: MLE from the data)")
    gof.add_argument("--format", choices=("text", "json"), default="text")
    gof.add_argument("--out", type=Path,
                     help="output file for --format json (default stdout)")
    gof.set_defaults(func=cmd_gof)

    plot = sub.add_parser(
        "plot-data", help="emit x,y series data for plotting (no rendering)",
    )
    plot.add_argument("kind", choices=("pdf-family", "c-sweep-estimates",
                                       "c-sweep-emse"))
    _add_dataset_options(plot, required=False)
    plot.add_argument("--alpha", action="append", type=float, metavar="A",
                      help="shape parameter for pdf-family, repeatable "
                           "(default 8 10 12)")
    plot.add_argument("--c", action="append", type=float, metavar="C",
                      help="hyperprior bound for c sweeps, repeatable "
                           f"(default {' '.join(map(str, DEFAULT_ESTIMATE_C))})")
    plot.add_argument("--x-max", type=float, default=2.0,
                      help="pdf-family grid upper end (default 2.0)")
    plot.add_argument("--x-step", type=float, default=0.01,
                      help="pdf-family grid step (default 0.01)")
    plot.add_argument("--out", type=Path, help="output file (default stdout)")
    plot.set_defaults(func=cmd_plot_data)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DataError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except MomentUndefinedError as exc:
        print(f"numeric domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except ValueError as exc:
        print(f"numeric domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
