"""Batch command-line front end.

Subcommands: ``tau`` (correlations from a two-column CSV), ``theoretical``
(population coefficient of a built-in family by every available route),
``simulate`` (replication summary for one sample size), ``report``
(unbiasedness and convergence tables with pass/fail checks and an
optional SVG plot).

Exit codes: 0 success / all checks pass, 1 usage error, 2 data error,
3 a report check failed.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys

import numpy as np

from .families import FAMILIES, BivariateModel, make_model
from .population import tau_monte_carlo, tau_quadrature_unit_square
from .rank_stats import (
    BivariateSample,
    DegenerateSampleError,
    detect_ties,
    kendall_tau_fast,
    pearson_rho_sample,
)
from .simulate import (
    ReplicationSummary,
    convergence_table,
    reference_tau,
    run_replications,
    unbiasedness_table,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_CHECK_FAILED = 3

ENV_SEED = "TAUCORR_SEED"
DEFAULT_SEED = 42
DEFAULT_N = 1000
DEFAULT_REPS = 200
DEFAULT_DRAWS = 10**6

# Report checks: mean rows must sit within 4 SE of the reference;
# exceedance may rise between consecutive n only by worst-case binomial
# noise (2 * sqrt(0.25 / R)); variance must drop between consecutive n
# that at least double.
MEAN_SE_LIMIT = 4.0


class UsageError(Exception):
    pass


class DataError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse defaults to exit code 2
        raise UsageError(message)


def _parse_int_list(text: str) -> list[int]:
    items = [p.strip() for p in text.split(",") if p.strip()]
    if not items:
        raise argparse.ArgumentTypeError("list must not be empty")
    try:
        return [int(p) for p in items]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not an integer list: {text!r}") from exc


def _parse_float_list(text: str) -> list[float]:
    items = [p.strip() for p in text.split(",") if p.strip()]
    if not items:
        raise argparse.ArgumentTypeError("list must not be empty")
    try:
        return [float(p) for p in items]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a number list: {text!r}") from exc


def build_parser() -> _Parser:
    parser = _Parser(prog="taucorr", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add_model_flags(p):
        p.add_argument("--family", required=True, choices=sorted(FAMILIES))
        p.add_argument("--t", type=float, default=None, help="tail exponent (exp-pareto, pareto)")
        p.add_argument("--alpha", type=float, default=None, help="dependence parameter (fgm)")

    def add_common(p):
        p.add_argument("--seed", type=int, default=None,
                       help=f"master seed (default: ${ENV_SEED} or {DEFAULT_SEED})")
        p.add_argument("--format", choices=("table", "csv", "json"), default="table")

    p_tau = sub.add_parser("tau", help="correlations of a two-column CSV file")
    p_tau.add_argument("--input", required=True, help="CSV with columns x,y; one optional header row")
    p_tau.add_argument("--format", choices=("table", "csv", "json"), default="table")

    p_theo = sub.add_parser("theoretical", help="population coefficient by every route")
    add_model_flags(p_theo)
    p_theo.add_argument("--draws", type=int, default=DEFAULT_DRAWS, help="Monte Carlo draws")
    add_common(p_theo)

    p_sim = sub.add_parser("simulate", help="replication summary at one sample size")
    add_model_flags(p_sim)
    p_sim.add_argument("--n", type=int, default=DEFAULT_N, help="sample size per replication")
    p_sim.add_argument("--reps", type=int, default=DEFAULT_REPS, help="replication count")
    add_common(p_sim)

    p_rep = sub.add_parser("report", help="unbiasedness + convergence tables with checks")
    add_model_flags(p_rep)
    p_rep.add_argument("--n-list", type=_parse_int_list, default=[10, 100, 1000],
                       help="comma-separated sample sizes, strictly increasing")
    p_rep.add_argument("--reps", type=int, default=DEFAULT_REPS, help="replications per sample size")
    p_rep.add_argument("--eps", type=_parse_float_list, default=[0.1],
                       help="comma-separated exceedance thresholds")
    p_rep.add_argument("--plot", default=None, help="write an SVG spread plot to this path")
    add_common(p_rep)
    return parser


def _resolve_seed(args) -> int:
    if getattr(args, "seed", None) is not None:
        return args.seed
    env = os.environ.get(ENV_SEED)
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"{ENV_SEED} must be an integer, got {env!r}")
    return DEFAULT_SEED


def _build_model(args) -> BivariateModel:
    try:
        return make_model(args.family, t=args.t, alpha=args.alpha)
    except ValueError as exc:
        raise UsageError(str(exc))


def read_xy_csv(path: str) -> BivariateSample:
    """Two numeric columns, '.' decimal, UTF-8; blank lines ignored; one
    optional header row before the data."""
    xs: list[float] = []
    ys: list[float] = []
    header_allowed = True
    try:
        handle = open(path, newline="", encoding="utf-8")
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc}")
    with handle:
        for line_no, row in enumerate(csv.reader(handle), start=1):
            cells = [c.strip() for c in row]
            if not cells or all(c == "" for c in cells):
                continue
            if len(cells) != 2:
                raise DataError(f"{path}:{line_no}: expected two columns, got {len(cells)}")
            try:
                x, y = float(cells[0]), float(cells[1])
            except ValueError:
                if header_allowed:
                    header_allowed = False
                    continue
                raise DataError(f"{path}:{line_no}: could not parse {cells[0]!r},{cells[1]!r} as numbers")
            if not (math.isfinite(x) and math.isfinite(y)):
                raise DataError(f"{path}:{line_no}: non-finite value")
            header_allowed = False
            xs.append(x)
            ys.append(y)
    if len(xs) < 2:
        raise DataError(f"{path}: need at least two observations, got {len(xs)}")
    return BivariateSample(xs, ys)


# ---------------------------------------------------------------------------
# output


def _fmt_cell(value) -> str:
    if isinstance(value, float):
        return repr(value)  # shortest round-trip representation
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return ""
    return str(value)


def _emit(config: dict, sections: dict[str, list[dict]], fmt: str, out) -> None:
    if fmt == "json":
        json.dump({"config": config, "sections": sections}, out, indent=2, default=_fmt_cell)
        out.write("\n")
        return
    if fmt == "csv":
        writer = csv.writer(out, lineterminator="\n")
        for key, value in config.items():
            out.write(f"# {key}={_fmt_cell(value)}\n")
        for name, rows in sections.items():
            if not rows:
                continue
            out.write(f"# section={name}\n")
            headers = list(rows[0])
            writer.writerow(headers)
            for row in rows:
                writer.writerow([_fmt_cell(row.get(h)) for h in headers])
        return
    for key, value in config.items():
        out.write(f"# {key} = {_fmt_cell(value)}\n")
    for name, rows in sections.items():
        if not rows:
            continue
        out.write(f"\n[{name}]\n")
        headers = list(rows[0])
        table = [headers] + [[_fmt_cell(row.get(h)) for h in headers] for row in rows]
        widths = [max(len(line[i]) for line in table) for i in range(len(headers))]
        for line in table:
            out.write("  ".join(cell.ljust(w) for cell, w in zip(line, widths)).rstrip() + "\n")


def _model_config(args, seed=None) -> dict:
    config = {"command": args.command, "family": args.family}
    if args.t is not None:
        config["t"] = args.t
    if args.alpha is not None:
        config["alpha"] = args.alpha
    if seed is not None:
        config["seed"] = seed
    return config


# ---------------------------------------------------------------------------
# commands


def cmd_tau(args, out) -> int:
    sample = read_xy_csv(args.input)
    result = kendall_tau_fast(sample)
    ties = detect_ties(sample)
    try:
        rho = pearson_rho_sample(sample)
    except DegenerateSampleError:
        rho = "degenerate"
    row = {
        "n": sample.n,
        "kendall_tau": result.value,
        "tie_fallback": result.used_naive_fallback,
        "pearson_rho": rho,
        "x_tie_count": ties.x_tie_count,
        "y_tie_count": ties.y_tie_count,
    }
    _emit({"command": "tau", "input": args.input}, {"correlations": [row]}, args.format, out)
    return EXIT_OK


def cmd_theoretical(args, out) -> int:
    model = _build_model(args)
    seed = _resolve_seed(args)
    if args.draws < 100:
        raise UsageError("--draws must be at least 100")
    estimate = tau_monte_carlo(model, args.draws, seed)
    quad = (
        tau_quadrature_unit_square(model, order=8)
        if model.has_unit_square_support()
        else "n/a (unbounded support)"
    )
    rho = model.rho_closed_form()
    row = {
        "tau_closed_form": model.tau_closed_form(),
        "tau_monte_carlo": estimate.value,
        "mc_std_error": estimate.std_error,
        "mc_draws": estimate.n_draws,
        "tau_quadrature": quad,
        "rho_closed_form": rho if rho is not None else "undefined (requires t > 2)",
    }
    config = _model_config(args, seed)
    config["draws"] = args.draws
    _emit(config, {"theoretical": [row]}, args.format, out)
    return EXIT_OK


def _summary_row(summary: ReplicationSummary, seed) -> dict:
    deviation = (
        (summary.tau_mean - summary.tau_reference) / summary.tau_std_error
        if summary.tau_reference is not None and summary.tau_std_error > 0
        else None
    )
    return {
        "n": summary.n,
        "reps": summary.n_replications,
        "seed": seed,
        "tau_mean": summary.tau_mean,
        "tau_std_error": summary.tau_std_error,
        "tau_variance": summary.tau_variance,
        "rho_mean": summary.rho_mean if summary.rho_mean is not None else "degenerate",
        "tau_reference": summary.tau_reference,
        "deviation_se": deviation,
    }


def cmd_simulate(args, out) -> int:
    model = _build_model(args)
    seed = _resolve_seed(args)
    if args.n < 2:
        raise UsageError("need at least two observations")
    if args.reps < 1:
        raise UsageError("need at least one replication")
    summary = run_replications(
        model, args.n, args.reps, seed, tau_reference=reference_tau(model)
    )
    config = _model_config(args, seed)
    config.update({"n": args.n, "reps": args.reps})
    _emit(config, {"summary": [_summary_row(summary, seed)]}, args.format, out)
    return EXIT_OK


def _report_checks(summaries, rows, epsilons, reps) -> list[dict]:
    checks = []
    for s in summaries:
        dev = abs(s.tau_mean - s.tau_reference)
        limit = MEAN_SE_LIMIT * s.tau_std_error
        checks.append({
            "check": f"unbiased mean at n={s.n}",
            "status": "PASS" if dev <= limit else "FAIL",
            "detail": f"|dev|={dev:.3e} limit={limit:.3e}",
        })
    slack = 2.0 * math.sqrt(0.25 / reps)
    for eps in epsilons:
        fracs = [r.exceed_fraction for r in rows if r.epsilon == eps]
        ok = all(b <= a + slack for a, b in zip(fracs, fracs[1:]))
        checks.append({
            "check": f"exceedance nonincreasing at eps={eps:g}",
            "status": "PASS" if ok else "FAIL",
            "detail": f"fractions={[round(f, 4) for f in fracs]} slack={slack:.3g}",
        })
    variances = {s.n: s.tau_variance for s in summaries}
    ns = sorted(variances)
    for a, b in zip(ns, ns[1:]):
        if b >= 2 * a:
            ok = variances[b] < variances[a]
            checks.append({
                "check": f"variance decays n={a}->{b}",
                "status": "PASS" if ok else "FAIL",
                "detail": f"{variances[a]:.3e} -> {variances[b]:.3e}",
            })
    return checks


def cmd_report(args, out) -> int:
    model = _build_model(args)
    seed = _resolve_seed(args)
    if any(n < 2 for n in args.n_list):
        raise UsageError("need at least two observations")
    if any(b <= a for a, b in zip(args.n_list, args.n_list[1:])):
        raise UsageError("--n-list must be strictly increasing")
    if any(e <= 0 for e in args.eps):
        raise UsageError("--eps values must be positive")
    if args.reps < 1:
        raise UsageError("need at least one replication")

    ref = reference_tau(model)
    summaries = unbiasedness_table(model, args.n_list, args.reps, seed)
    conv_rows = convergence_table(
        model, args.n_list, args.reps, args.eps, seed, tau_reference=ref
    )
    checks = _report_checks(summaries, conv_rows, args.eps, args.reps)

    config = _model_config(args, seed)
    config.update({"n_list": ",".join(map(str, args.n_list)),
                   "reps": args.reps,
                   "eps": ",".join(map(str, args.eps))})
    sections = {
        "unbiasedness": [_summary_row(s, seed) for s in summaries],
        "convergence": [r._asdict() for r in conv_rows],
        "checks": checks,
    }
    _emit(config, sections, args.format, out)

    if args.plot is not None:
        _write_spread_plot(args.plot, summaries, ref)
    failed = any(c["status"] == "FAIL" for c in checks)
    return EXIT_CHECK_FAILED if failed else EXIT_OK


def _write_spread_plot(path: str, summaries, reference: float) -> None:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    for s in summaries:
        ax.scatter(np.full(s.n_replications, s.n), s.tau_values,
                   s=6, alpha=0.25, color="steelblue", edgecolors="none")
    ax.scatter([s.n for s in summaries], [s.tau_mean for s in summaries],
               color="darkorange", zorder=3, label="replication mean")
    ax.axhline(reference, color="black", linewidth=1, label="reference")
    ax.set_xscale("log")
    ax.set_xlabel("sample size n")
    ax.set_ylabel("kendall tau")
    ax.legend(loc="best")
    fig.tight_layout()
    try:
        fig.savefig(path, format="svg")
    except OSError as exc:
        raise DataError(f"cannot write plot to {path}: {exc}")
    finally:
        plt.close(fig)


_COMMANDS = {
    "tau": cmd_tau,
    "theoretical": cmd_theoretical,
    "simulate": cmd_simulate,
    "report": cmd_report,
}


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args, out)
    except UsageError as exc:
        print(f"taucorr: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DataError as exc:
        print(f"taucorr: data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except (ValueError, OSError) as exc:
        print(f"taucorr: data error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
