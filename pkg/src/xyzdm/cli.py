"""Command-line entry point.

    xyzdm eval --jx -1 --jy -0.5 --jz 0.2 --dz 1 --temp 1
    xyzdm sweep --sweep temp --from 0.05 --to 5 --points 100 --curve jz=-1,0.2 --jx -1 --jy -0.5 --dz 1
    xyzdm figure fig1 --out fig1.csv
    xyzdm selftest --draws 200 --seed 42

Exit status: 0 success, 1 invalid arguments, 2 numerical failure, 3 self-test failure.
"""

from __future__ import annotations

import argparse
import contextlib
import dataclasses
import sys

from .errors import NumericalError
from .model import PARAM_FIELDS, ModelParams
from .sweep import FIGURE_IDS, SweepSpec, emit_csv, eval_point, figure_preset, run_sweep, self_test

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NUMERICAL = 2
EXIT_SELFTEST = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_params(parser):
    for name in ("jx", "jy", "jz", "dz"):
        parser.add_argument(f"--{name}", type=float, default=0.0)
    parser.add_argument("--temp", type=float, default=1.0)


def _add_output(parser, jobs: bool = False):
    parser.add_argument("--out", default="-", help="output path (default: stdout)")
    if jobs:
        parser.add_argument("--jobs", type=int, default=1, help="worker processes for the sweep")


def parse_curve(text: str) -> tuple[str, tuple[float, ...]]:
    name, sep, values = text.partition("=")
    name = name.strip()
    if not sep or name not in PARAM_FIELDS:
        raise UsageError(f"--curve expects <field>=v1,v2,... with field in {PARAM_FIELDS}, got {text!r}")
    try:
        vals = tuple(float(v) for v in values.split(",") if v.strip())
    except ValueError:
        raise UsageError(f"--curve values must be numbers, got {values!r}") from None
    if not vals:
        raise UsageError("--curve needs at least one value")
    return name, vals


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="xyzdm", description="LQFI and LQU of the two-qubit XYZ chain with z-axis DM interaction")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p_eval = sub.add_parser("eval", help="evaluate a single parameter point")
    _add_params(p_eval)
    _add_output(p_eval)

    p_sweep = sub.add_parser("sweep", help="sweep one parameter")
    p_sweep.add_argument("--sweep", required=True, choices=PARAM_FIELDS)
    p_sweep.add_argument("--from", dest="start", type=float, required=True)
    p_sweep.add_argument("--to", dest="stop", type=float, required=True)
    p_sweep.add_argument("--points", type=int, required=True)
    p_sweep.add_argument("--curve", default=None, help="<field>=v1,v2,...: one curve per value")
    _add_params(p_sweep)
    _add_output(p_sweep, jobs=True)

    p_fig = sub.add_parser("figure", help="reproduce a figure's sweep")
    p_fig.add_argument("id", choices=FIGURE_IDS)
    p_fig.add_argument("--curve", default=None, help="override the curve family, <field>=v1,v2,...")
    p_fig.add_argument("--points", type=int, default=None)
    _add_output(p_fig, jobs=True)

    p_self = sub.add_parser("selftest", help="randomized oracle and invariant checks")
    p_self.add_argument("--draws", type=int, default=200)
    p_self.add_argument("--seed", type=int, default=42)
    p_self.add_argument("--resolution", type=int, default=10_000)
    _add_output(p_self)
    return parser


@contextlib.contextmanager
def _open_out(path: str):
    if path == "-":
        yield sys.stdout
        return
    with open(path, "w", newline="") as fh:
        yield fh


def _params(args) -> ModelParams:
    return ModelParams(jx=args.jx, jy=args.jy, jz=args.jz, dz=args.dz, temp=args.temp)


def _sweep_spec(args) -> SweepSpec:
    curve_field, curve_values = parse_curve(args.curve) if args.curve else (None, ())
    # the fixed temperature is overwritten when temp is swept or a curve field
    temp = 1.0 if "temp" in (args.sweep, curve_field) else args.temp
    fixed = ModelParams(jx=args.jx, jy=args.jy, jz=args.jz, dz=args.dz, temp=temp)
    return SweepSpec(
        fixed=fixed, swept=args.sweep, start=args.start, stop=args.stop, points=args.points,
        curve_field=curve_field, curve_values=curve_values,
    )


def _figure_spec(args) -> SweepSpec:
    spec = figure_preset(args.id)
    changes = {}
    if args.curve:
        curve_field, curve_values = parse_curve(args.curve)
        if curve_field != spec.curve_field:
            raise UsageError(f"{args.id} curves run over {spec.curve_field}, not {curve_field}")
        changes["curve_values"] = curve_values
    if args.points is not None:
        changes["points"] = args.points
    return dataclasses.replace(spec, **changes)


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "selftest":
            report = self_test(args.draws, args.seed, args.resolution)
            with _open_out(args.out) as out:
                out.write(report.format() + "\n")
            return EXIT_OK if report.passed else EXIT_SELFTEST
        if args.command == "eval":
            rows = [eval_point(_params(args))]
        elif args.command == "sweep":
            rows = run_sweep(_sweep_spec(args), workers=args.jobs)
        else:
            rows = run_sweep(_figure_spec(args), workers=args.jobs)
        with _open_out(args.out) as out:
            emit_csv(rows, out)
    except (UsageError, ValueError) as exc:
        print(f"xyzdm: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NumericalError as exc:
        print(f"xyzdm: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except OSError as exc:
        print(f"xyzdm: output error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


def main() -> None:
    sys.exit(run())
