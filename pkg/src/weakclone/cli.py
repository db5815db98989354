"""Command line interface.

Subcommands:

* ``run``        one pipeline pass at fixed (xi, p), report all quantities
* ``sweep-grid`` tabulate the optimal clone over a (xi, xi') grid
* ``sweep-p``    sweep the measurement strength at fixed xi
* ``montecarlo`` sampled protocol statistics for one (xi, p)
* ``verify``     run the built-in verification suites

Exit codes: 0 success, 1 verification failure, 2 usage or parameter
error, 3 domain error (below-threshold strength or a degenerate
measurement branch).  Tables go to stdout or ``--out`` as CSV (UTF-8,
header row, newline line endings) or JSON, with floats at 17 significant
digits so values round-trip exactly.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from typing import Iterable, Sequence

from . import verify
from .errors import DegenerateOutcome, OrthogonalRegime
from .optimal import optimal_b_general, optimal_fidelity
from .protocol import monte_carlo, run_pipeline
from .qmath import StateAngle
from .weakmeas import WeakStrength, success_prob

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_DOMAIN = 3

#: A (xi, xi') pair closer than this to the unit-fidelity curve
#: sin 2xi' = sin^2 2xi is flagged in sweep output.
UNIT_CURVE_TOL = 1e-9


def _fmt(value: object) -> str:
    """Render one CSV cell; floats keep 17 significant digits."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return ""
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def _json_cell(value: object) -> object:
    if isinstance(value, float) and math.isnan(value):
        return None
    return value


def _emit(
    header: Sequence[str], rows: Iterable[Sequence[object]], args: argparse.Namespace
) -> None:
    rows = list(rows)
    if args.out is None:
        _write(header, rows, sys.stdout, args.format)
        return
    with open(args.out, "w", encoding="utf-8", newline="") as stream:
        _write(header, rows, stream, args.format)


def _write(header, rows, stream, fmt: str) -> None:
    if fmt == "csv":
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(cell) for cell in row])
    else:
        records = [
            {key: _json_cell(cell) for key, cell in zip(header, row)}
            for row in rows
        ]
        json.dump(records, stream, indent=2)
        stream.write("\n")


def _angle(args: argparse.Namespace, value: float) -> StateAngle:
    return StateAngle(math.radians(value) if args.deg else value)


def _linspace(start: float, stop: float, steps: int) -> list[float]:
    if steps < 2:
        raise ValueError(f"sweeps need at least 2 steps, got {steps}")
    width = (stop - start) / (steps - 1)
    values = [start + k * width for k in range(steps - 1)]
    values.append(stop)  # land on the endpoint exactly
    return values


def cmd_run(args: argparse.Namespace) -> int:
    report = run_pipeline(_angle(args, args.xi), WeakStrength(args.p))
    fields = (
        ("xi", report.xi.xi),
        ("p", report.strength.p),
        ("p_yes", report.p_yes),
        ("xi_prime", report.xi_prime.xi),
        ("a", report.coeffs.a),
        ("b", report.coeffs.b),
        ("c", report.coeffs.c),
        ("fidelity_closed", report.fidelity_closed),
        ("fidelity_sim", report.fidelity_sim),
    )
    lines = [f"{name} = {value:.10g}" for name, value in fields]
    text = "\n".join(lines) + "\n"
    if args.out is None:
        sys.stdout.write(text)
    else:
        with open(args.out, "w", encoding="utf-8", newline="") as stream:
            stream.write(text)
    return EXIT_OK


def cmd_sweep_grid(args: argparse.Namespace) -> int:
    xi_values = _linspace(args.xi_start, args.xi_stop, args.xi_steps)
    xip_values = _linspace(
        args.xi_prime_start, args.xi_prime_stop, args.xi_prime_steps
    )
    rows = []
    for xi_raw in xi_values:
        xi = _angle(args, xi_raw)
        s = math.sin(2.0 * xi.xi)
        for xip_raw in xip_values:
            xi_prime = _angle(args, xip_raw)
            b_star = optimal_b_general(xi, xi_prime)
            fidelity = optimal_fidelity(xi, xi_prime)
            on_curve = abs(math.sin(2.0 * xi_prime.xi) - s * s) < UNIT_CURVE_TOL
            rows.append(
                (xi.xi, xi_prime.xi, b_star, fidelity, on_curve)
            )
    _emit(("xi", "xi_prime", "b_star", "fidelity", "on_unit_curve"), rows, args)
    return EXIT_OK


def cmd_sweep_p(args: argparse.Namespace) -> int:
    xi = _angle(args, args.xi)
    rows = []
    for p in _linspace(args.p_start, args.p_stop, args.p_steps):
        strength = WeakStrength(p)
        try:
            report = run_pipeline(xi, strength)
        except (OrthogonalRegime, DegenerateOutcome):
            # below the threshold there is no effective angle; keep the
            # row so a sweep still covers the whole p axis
            rows.append((p, success_prob(xi, strength), None, None, False))
            continue
        rows.append((
            p, report.p_yes, report.xi_prime.xi, report.fidelity_closed, True,
        ))
    header = ("p", "p_yes", "xi_prime", "fidelity", "in_regime")
    _emit(header, rows, args)
    return EXIT_OK


def cmd_montecarlo(args: argparse.Namespace) -> int:
    stats = monte_carlo(
        _angle(args, args.xi), WeakStrength(args.p), args.trials, args.seed
    )
    header = (
        "trials", "successes", "success_rate", "mean_fidelity_clone1",
        "mean_fidelity_clone2", "standard_error", "seed",
    )
    row = (
        stats.trials, stats.successes, stats.success_rate,
        stats.mean_fidelity_clone1, stats.mean_fidelity_clone2,
        stats.standard_error, stats.seed,
    )
    _emit(header, [row], args)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    results = verify.run_suites(args.suite or None)
    failed = 0
    for result in results:
        status = "PASS" if result.passed else "FAIL"
        print(f"{status} {result.name}: {result.detail}")
        failed += 0 if result.passed else 1
    print(f"{len(results) - failed}/{len(results)} suites passed")
    return EXIT_OK if failed == 0 else EXIT_VERIFY_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="weakclone",
        description=(
            "Optimal state-dependent cloning of two nonorthogonal qubit "
            "states after a weak-measurement pretreatment."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_output_flags(p: argparse.ArgumentParser) -> None:
        p.add_argument(
            "--format", choices=("csv", "json"), default="csv",
            help="output table format (default csv)",
        )
        p.add_argument("--out", default=None, help="write the table to a file")
        p.add_argument(
            "--deg", action="store_true",
            help="interpret all angle arguments as degrees",
        )

    run_p = sub.add_parser("run", help="one pipeline pass at fixed (xi, p)")
    run_p.add_argument("--xi", type=float, required=True, help="pair angle")
    run_p.add_argument("--p", type=float, required=True, help="measurement strength")
    run_p.add_argument("--out", default=None, help="write the report to a file")
    run_p.add_argument(
        "--deg", action="store_true",
        help="interpret all angle arguments as degrees",
    )
    run_p.set_defaults(func=cmd_run)

    grid_p = sub.add_parser(
        "sweep-grid", help="optimal clone over a (xi, xi') grid"
    )
    grid_p.add_argument("--xi-start", type=float, required=True)
    grid_p.add_argument("--xi-stop", type=float, required=True)
    grid_p.add_argument("--xi-steps", type=int, required=True)
    grid_p.add_argument("--xi-prime-start", type=float, required=True)
    grid_p.add_argument("--xi-prime-stop", type=float, required=True)
    grid_p.add_argument("--xi-prime-steps", type=int, required=True)
    add_output_flags(grid_p)
    grid_p.set_defaults(func=cmd_sweep_grid)

    sweep_p = sub.add_parser(
        "sweep-p", help="strength sweep at fixed xi"
    )
    sweep_p.add_argument("--xi", type=float, required=True)
    sweep_p.add_argument("--p-start", type=float, required=True)
    sweep_p.add_argument("--p-stop", type=float, required=True)
    sweep_p.add_argument("--p-steps", type=int, required=True)
    add_output_flags(sweep_p)
    sweep_p.set_defaults(func=cmd_sweep_p)

    mc_p = sub.add_parser(
        "montecarlo", help="sampled protocol statistics at fixed (xi, p)"
    )
    mc_p.add_argument("--xi", type=float, required=True)
    mc_p.add_argument("--p", type=float, required=True)
    mc_p.add_argument("--trials", type=int, required=True)
    mc_p.add_argument("--seed", type=int, default=0)
    add_output_flags(mc_p)
    mc_p.set_defaults(func=cmd_montecarlo)

    verify_p = sub.add_parser("verify", help="run the verification suites")
    verify_p.add_argument(
        "--suite", action="append", default=None,
        metavar="NAME", help="run only the named suite (repeatable)",
    )
    verify_p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors and 0 on --help; pass both on
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (OrthogonalRegime, DegenerateOutcome) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
