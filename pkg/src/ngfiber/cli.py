"""Command-line interface: tabulate figures, design numbers, and checks.

Subcommands
    fig1      negativity versus squeezing magnitude
    fig2      negativity versus accumulated time, with and without fluctuations
    design    spacing bound and timing report for a fiber link
    validate  cross-route consistency suite
    sweep     parameter grid driven by a config file

Exit codes: 0 success, 2 parameter/config validation, 3 numerical failure,
4 validation-suite failure.  All tabular output is deterministic: rerunning
a command with the same inputs produces byte-identical files.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import validate as validate_mod
from .bath import BathSpec, dissipation_rate_closed
from .channel import ChannelParams, fidelity, negativity_after_dephasing, negativity_dissipative
from .config import RunConfig
from .design import FiberSpec, bb_timescale_ratio, max_spacing, segment_time, silica_preset, transit_time
from .errors import NgFiberError, ParameterError
from .negativity import negativity_analytic
from .states import build_state

EXIT_OK = 0
EXIT_PARAMETER = 2
EXIT_NUMERICAL = 3
EXIT_VALIDATION = 4


def _format_value(x) -> str:
    return f"{float(x):.16e}"


def write_csv(path: str, header, rows) -> None:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_format_value(v) for v in row))
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def write_json_table(path: str, header, rows) -> None:
    payload = {"columns": list(header), "rows": [[float(v) for v in row] for row in rows]}
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(json.dumps(payload, indent=2) + "\n")


def write_table(path: str, fmt: str, header, rows) -> None:
    if fmt == "csv":
        write_csv(path, header, rows)
    else:
        write_json_table(path, header, rows)


def write_plot_script(out_path: str, header, title: str) -> str:
    """Gnuplot script plotting every column against the first, by relative path."""
    import os

    script_path = out_path + ".gp"
    data_name = os.path.basename(out_path)
    lines = [
        f"# gnuplot script for {data_name}",
        "set datafile separator ','",
        "set key autotitle columnhead",
        f"set xlabel '{header[0]}'",
        f"set title '{title}'",
    ]
    plots = ", ".join(
        f"'{data_name}' using 1:{i + 2} with lines" for i in range(len(header) - 1)
    )
    lines.append(f"plot {plots}")
    with open(script_path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")
    return script_path


def cmd_fig1(args) -> int:
    if args.steps < 2:
        raise ParameterError("steps must be >= 2")
    if not (0.0 < args.zeta_min <= args.zeta_max < 1.0):
        raise ParameterError("need 0 < zeta-min <= zeta-max < 1")
    zetas = np.linspace(args.zeta_min, args.zeta_max, args.steps)
    rows = []
    for zeta in zetas:
        state = build_state(args.p, float(zeta), tail_tol=args.tail_tol)
        rows.append((zeta, negativity_analytic(state)))
    header = ("zeta", "negativity")
    write_table(args.out, args.format, header, rows)
    if args.emit_plot_script and args.format == "csv":
        write_plot_script(args.out, header, "negativity vs squeezing")
    return EXIT_OK


def cmd_fig2(args) -> int:
    if args.steps < 2:
        raise ParameterError("steps must be >= 2")
    if args.x_max <= 0:
        raise ParameterError("x-max must be > 0")
    state = build_state(args.p, args.zeta, tail_tol=args.tail_tol)
    bath = BathSpec(omega_phonon=args.omega_c, temperature=0.0, omega_c=args.omega_c)
    # the fluctuation-free reference, through the same series path so the
    # x = 0 row of both columns is bit-identical
    base = negativity_dissipative(
        state,
        ChannelParams(
            omega_a=0.0, omega_b=0.0, gamma_plus=0.0, gamma_minus=0.0,
            tau_l=0.0, epsilon=args.epsilon,
        ),
        bath,
    )
    xs = np.linspace(0.0, args.x_max, args.steps)
    rows = []
    for x in xs:
        params = ChannelParams(
            omega_a=0.0,
            omega_b=0.0,
            gamma_plus=0.0,
            gamma_minus=0.0,
            tau_l=float(x) / args.omega_c,
            epsilon=args.epsilon,
        )
        rows.append((x, negativity_dissipative(state, params, bath), base))
    header = ("x", "negativity_fluct", "negativity_no_fluct")
    write_table(args.out, args.format, header, rows)
    if args.emit_plot_script and args.format == "csv":
        write_plot_script(args.out, header, "negativity vs accumulated time")
    return EXIT_OK


def cmd_design(args) -> int:
    fiber = FiberSpec(
        length=args.length,
        group_index=args.group_index,
        omega_c=args.omega_c,
        error_budget=args.budget,
        delta_spacing=args.spacing,
    )
    tau_l = transit_time(fiber)
    delta_max, asymptote = max_spacing(fiber)
    if fiber.delta_spacing is None:
        fiber.delta_spacing = delta_max
    tau = segment_time(fiber)
    gamma = dissipation_rate_closed(fiber.omega_c, tau_l)
    report = {
        "length_m": fiber.length,
        "group_index": fiber.group_index,
        "omega_c_rad_s": fiber.omega_c,
        "error_budget": fiber.error_budget,
        "transit_time_s": tau_l,
        "x_cutoff_times_transit": fiber.omega_c * tau_l,
        "max_spacing_m": delta_max,
        "asymptotic_spacing_m": asymptote,
        "chosen_spacing_m": fiber.delta_spacing,
        "segment_time_s": tau,
        "segment_count": math.ceil(fiber.length / fiber.delta_spacing),
        "decay_exponent_at_budget": 4.0 * tau * tau * gamma,
        "budget_log_term": math.log(1.0 / (1.0 - fiber.error_budget)),
        "tau_omega_c": bb_timescale_ratio(fiber),
        "pulse_spacing_below_bath_correlation": bool(bb_timescale_ratio(fiber) < 1.0),
    }
    text = json.dumps(report, indent=2) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_validate(args) -> int:
    results = validate_mod.run(level=args.level, seed=args.seed)
    for res in results:
        status = "ok" if res.passed else "FAIL"
        sys.stdout.write(f"check {res.name}: {status} ({res.detail})\n")
    if args.out:
        payload = {
            "level": args.level,
            "checks": [
                {"name": r.name, "passed": bool(r.passed), "detail": r.detail}
                for r in results
            ],
        }
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(json.dumps(payload, indent=2) + "\n")
    if all(r.passed for r in results):
        sys.stdout.write(f"{len(results)} checks passed\n")
        return EXIT_OK
    failed = sum(1 for r in results if not r.passed)
    sys.stdout.write(f"{failed} of {len(results)} checks FAILED\n")
    return EXIT_VALIDATION


def _sweep_point(run: RunConfig, assignment: dict):
    params_dict = dict(run.fixed)
    params_dict.update(assignment)
    state = build_state(
        int(params_dict["p"]), params_dict["zeta"], tail_tol=params_dict["tail_tol"]
    )
    bath = BathSpec(
        omega_phonon=params_dict["omega_phonon"],
        temperature=params_dict["temperature"],
        omega_c=params_dict["omega_c"],
    )
    channel = ChannelParams(
        omega_a=params_dict["omega_a"],
        omega_b=params_dict["omega_b"],
        gamma_plus=params_dict["gamma_plus"],
        gamma_minus=params_dict["gamma_minus"],
        tau_l=params_dict["tau_l"],
        epsilon=params_dict["epsilon"],
    )
    values = []
    for name in run.observables:
        if name == "negativity":
            values.append(negativity_analytic(state))
        elif name == "negativity_dephased":
            values.append(negativity_after_dephasing(state, channel, bath))
        elif name == "negativity_dissipative":
            values.append(
                negativity_dissipative(state, channel, bath, combined=bath.temperature > 0)
            )
        else:
            values.append(fidelity(state, channel, bath))
    return values


def cmd_sweep(args) -> int:
    if args.jobs < 1:
        raise ParameterError("jobs must be >= 1")
    with open(args.config, "r", encoding="utf-8") as fh:
        run = RunConfig.from_text(fh.read())
    axes = run.axes_in_canonical_order()
    if not axes:
        raise ParameterError("sweep config declares no grid axes")

    assignments = [{}]
    for axis in axes:
        assignments = [
            {**base, axis: value} for base in assignments for value in run.grid[axis]
        ]

    with ThreadPoolExecutor(max_workers=args.jobs) as pool:
        results = list(pool.map(lambda a: _sweep_point(run, a), assignments))

    header = tuple(axes) + run.observables
    rows = [
        tuple(assignment[axis] for axis in axes) + tuple(values)
        for assignment, values in zip(assignments, results)
    ]
    write_table(args.out, args.format, header, rows)
    if args.emit_plot_script and args.format == "csv":
        write_plot_script(args.out, header, "parameter sweep")
    return EXIT_OK


def _add_common(parser: argparse.ArgumentParser, out_required: bool = True) -> None:
    parser.add_argument("--out", required=out_required, help="output file path")
    parser.add_argument("--format", choices=("csv", "json"), default="csv")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument(
        "--emit-plot-script",
        action="store_true",
        help="write a gnuplot script next to CSV output",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ngfiber",
        description="Entanglement transmission through a protected fiber link",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p1 = sub.add_parser("fig1", help="negativity vs squeezing magnitude")
    _add_common(p1)
    p1.add_argument("--p", type=int, default=1, help="number of subtracted photons")
    p1.add_argument("--zeta-min", type=float, default=0.05)
    p1.add_argument("--zeta-max", type=float, default=0.85)
    p1.add_argument("--steps", type=int, default=50)
    p1.add_argument("--tail-tol", type=float, default=1e-12)
    p1.set_defaults(func=cmd_fig1)

    p2 = sub.add_parser("fig2", help="negativity vs accumulated decay time")
    _add_common(p2)
    p2.add_argument("--p", type=int, default=1)
    p2.add_argument("--zeta", type=float, default=0.5)
    p2.add_argument("--epsilon", type=float, default=4.325e-12, help="timing jitter, s")
    p2.add_argument("--omega-c", type=float, default=2.62e10, help="bath cutoff, rad/s")
    p2.add_argument("--x-max", type=float, default=100.0, help="max omega_c * tau_l")
    p2.add_argument("--steps", type=int, default=201)
    p2.add_argument("--tail-tol", type=float, default=1e-12)
    p2.set_defaults(func=cmd_fig2)

    pd = sub.add_parser("design", help="spacing bound and timing report")
    _add_common(pd, out_required=False)
    pd.add_argument("--length", type=float, default=1000.0, help="link length, m")
    pd.add_argument("--group-index", type=float, default=1.6)
    pd.add_argument("--omega-c", type=float, default=2.62e10)
    pd.add_argument("--budget", type=float, default=0.05, help="acceptable loss fraction")
    pd.add_argument("--spacing", type=float, default=None, help="override spacing, m")
    pd.set_defaults(func=cmd_design)

    pv = sub.add_parser("validate", help="run the cross-route consistency suite")
    _add_common(pv, out_required=False)
    pv.add_argument("--level", choices=("fast", "full"), default="fast")
    pv.set_defaults(func=cmd_validate)

    ps = sub.add_parser("sweep", help="parameter grid from a config file")
    _add_common(ps)
    ps.add_argument("--config", required=True, help="sweep config file")
    ps.add_argument("--jobs", type=int, default=4, help="worker threads")
    ps.set_defaults(func=cmd_sweep)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParameterError as exc:
        sys.stderr.write(f"parameter error: {exc}\n")
        return EXIT_PARAMETER
    except NgFiberError as exc:
        sys.stderr.write(f"numerical failure: {exc}\n")
        return EXIT_NUMERICAL
    except OSError as exc:
        sys.stderr.write(f"i/o error: {exc}\n")
        return EXIT_PARAMETER


if __name__ == "__main__":
    sys.exit(main())
