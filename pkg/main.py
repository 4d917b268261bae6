#!/usr/bin/env python3
"""
prasymp command line.

Subcommands:
- eval: exact pi_n(x) from the recurrence
- asym: the asymptotic formula at a scaled point
- compare: error sweep of the formulas over degrees and points
- zeros: all zeros of pi_n with residual certificates
- curve: trace of Gamma_A as CSV
- figure: data files for the case IB cut and zeros picture
- selftest: quick invariant checks with a pass/fail table
"""

import argparse
import logging
import sys
from typing import Any, Dict, List, Optional

from dotenv import load_dotenv
from pydantic import ValidationError

from src.arithmetic.backends import OracleMode
from src.asymptotics.regions import RegionKind
from src.exceptions import InvalidInputError, PrasympError
from src.managers.output_writer import dumps_json, render_csv, with_config_echo, write_csv, write_json
from src.managers.selftest_manager import SelftestManager
from src.managers.sweep_manager import ROW_HEADER, GridSpec, SweepPoint, representative_points
from src.recurrence.params import CaseTag, RecurrenceParams, family_preset, get_supported_families
from src.recurrence.recurrence_core import eval_family
from src.verification_system import VerificationSystem

logger = logging.getLogger("prasymp")

# name of the scaled coordinate flag per case
COORDINATE = {
    CaseTag.IA: "z",
    CaseTag.IB: "z",
    CaseTag.IC: "y",
    CaseTag.IIA: "y",
    CaseTag.IIB: "y",
    CaseTag.IIC: "x",
}


def parse_complex(text: str) -> complex:
    """'re,im' or a Python complex literal such as '3' or '1-2j'."""
    try:
        if "," in text:
            re, im = text.split(",", 1)
            return complex(float(re), float(im))
        return complex(text.replace(" ", ""))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r}")


def parse_int_list(text: str) -> List[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of integers: {text!r}")


def parse_grid(text: str) -> GridSpec:
    region, _, count = text.partition(":")
    try:
        return GridSpec(region=RegionKind(region), count=int(count or 20))
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"bad grid {text!r} (expected REGION:COUNT): {e}")


def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=str, default="config/config.json",
                        help="config file (default: config/config.json, defaults used when missing)")
    common.add_argument("--verbose", action="store_true", help="debug logging")
    common.add_argument("--out", type=str, help="output file (directory for figure); stdout when omitted")
    common.add_argument("--format", choices=["csv", "json"], help="output format")
    common.add_argument("--delta", type=float, help="region margin around cuts and turning points")
    common.add_argument("--mode", choices=[m.value for m in OracleMode], help="oracle arithmetic")
    common.add_argument("--bits", type=int, help="bits for the highprec oracle")
    return common


def _add_params(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--d", type=float, default=0.0, help="diagonal slope d (A_n = d n)")
    parser.add_argument("--a", type=float, help="coupling slope a (B_n = a n + b)")
    parser.add_argument("--b", type=float, default=0.0, help="coupling offset b")
    parser.add_argument("--family", choices=sorted(get_supported_families()),
                        help="classical family instead of --d/--a/--b")
    parser.add_argument("--family-param", type=float, help="family parameter (Charlier c)")


def _add_points(parser: argparse.ArgumentParser, repeat: bool) -> None:
    action = "append" if repeat else "store"
    for name, meaning in (("z", "IA, IB"), ("y", "IC, IIA, IIB"), ("x", "IIC")):
        parser.add_argument(f"--{name}", type=parse_complex, action=action,
                            help=f"scaled point for cases {meaning} ('re,im' or '3')")


def build_parser() -> argparse.ArgumentParser:
    common = _common_parser()
    parser = argparse.ArgumentParser(
        prog="prasymp",
        description="Plancherel-Rotach asymptotics of monic polynomials with linear recurrence coefficients",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  python main.py eval --d 1 --a 1 --b 0 --n 100 --x 130,0
  python main.py asym --d 1 --a 1 --n 400 --z 3
  python main.py compare --d 1 --a -1 --n-list 100,400,1600
  python main.py zeros --a -1 --n 50 --format json
  python main.py curve --A 1 --points 512 --out curve.csv
  python main.py figure --d 1 --a -1 --n 200 --out figure/
  python main.py selftest

Negative complex points need '=': --z=-5,0.5
Configuration example: config/config.json
        """
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[common], help="exact pi_n(x)")
    _add_params(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--x", type=parse_complex, required=True, help="physical argument x")

    p = sub.add_parser("asym", parents=[common], help="asymptotic formula at a scaled point")
    _add_params(p)
    p.add_argument("--n", type=int, required=True)
    _add_points(p, repeat=False)
    p.add_argument("--region", choices=[k.value for k in RegionKind if k is not RegionKind.TURNING_POINT_EXCLUDED],
                   help="force a region instead of classifying the point")

    p = sub.add_parser("compare", parents=[common], help="formula vs recurrence error sweep")
    _add_params(p)
    p.add_argument("--n-list", type=parse_int_list, default=[100, 400, 1600])
    _add_points(p, repeat=True)
    p.add_argument("--grid", type=parse_grid, help="REGION:COUNT grid of real points")

    p = sub.add_parser("zeros", parents=[common], help="all zeros of pi_n")
    _add_params(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--tol", type=float, help="Aberth convergence tolerance")

    p = sub.add_parser("curve", parents=[common], help="trace Gamma_A")
    p.add_argument("--A", type=float, required=True)
    p.add_argument("--points", type=int, help="points on the upper arm")
    p.add_argument("--tol", type=float, help="residual tolerance")

    p = sub.add_parser("figure", parents=[common], help="curve, segment and zeros data for case IB")
    _add_params(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--points", type=int, help="points on the upper arm")

    sub.add_parser("selftest", parents=[common], help="quick invariant checks")
    return parser


def _params(args: argparse.Namespace) -> RecurrenceParams:
    if getattr(args, "family", None):
        return family_preset(args.family, args.family_param).params
    if args.a is None:
        raise InvalidInputError("Give --a (and optionally --d, --b) or --family")
    return RecurrenceParams(args.d, args.a, args.b)


def _points(args: argparse.Namespace, params: RecurrenceParams) -> List[complex]:
    expected = COORDINATE[params.case_tag]
    points = []
    for name in ("z", "y", "x"):
        value = getattr(args, name, None)
        if value is None:
            continue
        if name != expected:
            raise InvalidInputError(f"Case {params.case_tag.value} takes --{expected}, not --{name}")
        points.extend(value if isinstance(value, list) else [value])
    return points


def _overrides(args: argparse.Namespace) -> Dict[str, Any]:
    overrides = {
        "asymptotics.delta": args.delta,
        "oracle.mode": args.mode,
        "oracle.highprec_bits": args.bits,
        "output.format": args.format,
        "curve.points": getattr(args, "points", None),
    }
    tol = getattr(args, "tol", None)
    if args.command == "curve":
        overrides["curve.tol"] = tol
    elif args.command == "zeros":
        overrides["zeros.tol"] = tol
    return overrides


def _emit_table(args, system: VerificationSystem, header, rows, data, comments=None) -> None:
    config = system.get_config()
    echo = config.echo()
    if config.output.format == "json":
        data = with_config_echo(data, echo)
        if args.out:
            write_json(args.out, data)
        else:
            print(dumps_json(data))
        return
    if args.out:
        write_csv(args.out, header, rows, echo, comments)
    else:
        sys.stdout.write(render_csv(header, rows, echo, comments))


def cmd_eval(system: VerificationSystem, args) -> int:
    if args.family:
        result = eval_family(args.family, args.x, args.n, args.family_param,
                             mode=system.oracle_mode(args.n))
    else:
        result = system.evaluate(_params(args), args.x, args.n)
    print(dumps_json(result.value.to_json()))
    return 0


def cmd_asym(system: VerificationSystem, args) -> int:
    params = _params(args)
    points = _points(args, params)
    if len(points) != 1:
        raise InvalidInputError(f"asym needs exactly one --{COORDINATE[params.case_tag]} point")
    value = system.asymptotic(params, args.n, points[0], RegionKind(args.region) if args.region else None)
    data = {"case": params.case_tag.value, "n": args.n, "point": points[0]}
    data.update(value.to_dict())
    print(dumps_json(with_config_echo(data, system.get_config().echo())))
    return 0


def cmd_compare(system: VerificationSystem, args) -> int:
    params = _params(args)
    points = [SweepPoint.at(p) for p in _points(args, params)]
    if not points and args.grid is None:
        points = representative_points(params, args.n_list, system.get_config().asymptotics.delta)
    sweep = system.sweep_config(params, args.n_list, points, grid=args.grid, output=args.out)
    report = system.compare(sweep)
    _emit_table(args, system, ROW_HEADER, report.to_rows(), report.to_dict(),
                [f"case={report.case}", f"violations={len(report.violations())}"])
    return 0


def cmd_zeros(system: VerificationSystem, args) -> int:
    params = _params(args)
    zero_set = system.zeros(params, args.n)
    _emit_table(args, system, ["re", "im", "scaled_re", "scaled_im", "residual"],
                zero_set.to_rows(), zero_set.to_dict(),
                [f"n={args.n}", f"iterations={zero_set.iterations}"])
    return 0


def cmd_curve(system: VerificationSystem, args) -> int:
    curve = system.curve(args.A)
    _emit_table(args, system, ["re", "im", "residual"], curve.to_rows(), curve.to_dict(),
                [f"z_A={curve.z_A!r}", f"A={curve.A!r}"])
    return 0


def cmd_figure(system: VerificationSystem, args) -> int:
    paths = system.figure(_params(args), args.n, args.out)
    for name, path in paths.items():
        print(f"{name}: {path}")
    return 0


def cmd_selftest(system: VerificationSystem, args) -> int:
    results = system.selftest()
    print(SelftestManager.format_table(results))
    return 0 if all(r.passed for r in results) else 1


HANDLERS = {
    "eval": cmd_eval,
    "asym": cmd_asym,
    "compare": cmd_compare,
    "zeros": cmd_zeros,
    "curve": cmd_curve,
    "figure": cmd_figure,
    "selftest": cmd_selftest,
}


def cli_main(argv: Optional[List[str]] = None) -> int:
    """Run one subcommand and return its exit code (0 ok, 2 usage, 1 numerical failure)."""
    load_dotenv()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if isinstance(e.code, int) else (0 if e.code is None else 2)

    system = VerificationSystem(args.config)
    try:
        system.initialize(_overrides(args), verbose=args.verbose)
        return HANDLERS[args.command](system, args)
    except (InvalidInputError, ValidationError) as e:
        logger.error(f"Invalid input: {e}")
        return 2
    except PrasympError as e:
        logger.error(f"Numerical failure ({type(e).__name__}): {e}")
        return 1
    except KeyboardInterrupt:
        logger.info("Interrupted")
        return 1
    except Exception as e:
        logger.error(f"Unexpected failure: {e}")
        return 1


def main():
    """Main entry point"""
    sys.exit(cli_main())


if __name__ == "__main__":
    main()
