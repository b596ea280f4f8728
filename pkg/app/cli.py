"""
Command-line surface. JSON reports go to stdout, the human summary and all
logging to stderr.

Exit codes: 0 pass, 1 check or suite failure, 2 bad input or usage,
3 internal structural error.
"""
import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, Dict, Optional, Sequence

from pydantic import ValidationError

from app.core.config import configure_logging, settings
from app.core.errors import InputError, StructuralError, VerificationError
from app.models.params import Profile
from app.services.check_catalogue import registry
from app.services.check_registry import summary_frame
from app.services.lie_realizations import build_compact_algebra
from app.services.loopmodel import cartan_vector, export_spectrum_csv
from app.utils.serialization import dumps

logger = logging.getLogger(__name__)

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_INPUT = 2
EXIT_STRUCTURAL = 3

# CLI flag -> parameter name in the check models
FLAG_PARAMS = {
    "algebra": "algebra",
    "group": "group",
    "modes": "modes",
    "sobolev": "sobolev",
    "samples": "samples",
    "fd_step": "fd_step",
    "eps": "eps",
}


class UsageError(InputError):
    """argparse usage problems, surfaced with exit code 2 instead of SystemExit."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _parse_param(text: str) -> Dict[str, Any]:
    if "=" not in text:
        raise UsageError(f"--param expects KEY=VALUE, got {text!r}")
    key, raw = text.split("=", 1)
    try:
        value = json.loads(raw)
    except json.JSONDecodeError:
        value = raw
    return {key.strip().replace("-", "_"): value}


def collect_params(args: argparse.Namespace) -> Dict[str, Any]:
    """Flags that were given, then --param overrides."""
    params: Dict[str, Any] = {}
    for flag, name in FLAG_PARAMS.items():
        value = getattr(args, flag, None)
        if value is not None:
            params[name] = value
    for item in getattr(args, "param", None) or []:
        params.update(_parse_param(item))
    return params


def _emit(payload: Dict[str, Any], out: Optional[str]) -> None:
    text = dumps(payload)
    print(text)
    if out:
        Path(out).write_text(text + "\n")
        logger.info(f"✅ Report written to {out}")


def cmd_list(args: argparse.Namespace) -> int:
    catalogue = [info.model_dump() for info in registry.catalogue()]
    print(dumps({"schema": settings.REPORT_SCHEMA_VERSION, "checks": catalogue}))
    for info in catalogue:
        print(f"{info['module']:<10} {info['name']:<24} {info['description']}", file=sys.stderr)
    return EXIT_PASS


def cmd_check(args: argparse.Namespace) -> int:
    report = registry.run_check(args.name, collect_params(args), args.seed)
    _emit(report.payload(include_timing=not args.no_timing), args.out)
    status = "PASS" if report.passed else "FAIL"
    print(f"{status} {report.check_name} ({report.wall_time_ms:.1f} ms)", file=sys.stderr)
    return EXIT_PASS if report.passed else EXIT_FAIL


def cmd_suite(args: argparse.Namespace) -> int:
    suite = registry.run_suite(Profile(args.profile), args.seed)
    _emit(suite.payload(include_timing=not args.no_timing), args.out)
    print(summary_frame(suite.reports).to_string(index=False), file=sys.stderr)
    if suite.failing:
        print("Failing checks:", file=sys.stderr)
        for entry in suite.failing:
            print(f"  - {entry}", file=sys.stderr)
        return EXIT_FAIL
    print(f"All {len(suite.reports)} checks passed", file=sys.stderr)
    return EXIT_PASS


def cmd_spectrum(args: argparse.Namespace) -> int:
    alg = build_compact_algebra(args.algebra or "A1")
    mu = cartan_vector(alg, args.mu if args.mu is not None else [0.0] * alg.rank)
    export_spectrum_csv(alg, mu, args.modes or 8, args.out)
    print(f"spectrum of d_mu for {alg.name}, N = {args.modes or 8} written to {args.out}", file=sys.stderr)
    return EXIT_PASS


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--seed", type=int, default=None, help=f"RNG seed (default {settings.DEFAULT_SEED})")
    parser.add_argument("--out", default=None, help="also write the JSON report to this path")
    parser.add_argument("--no-timing", action="store_true", help="drop wall_time_ms for byte-stable output")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="loopspin", description="Verification engine for loop-group and spinor constructions")
    subparsers = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    list_parser = subparsers.add_parser("list", help="print the check catalogue")
    list_parser.set_defaults(func=cmd_list)

    check_parser = subparsers.add_parser("check", help="run one named check")
    check_parser.add_argument("name")
    check_parser.add_argument("--algebra")
    check_parser.add_argument("--group")
    check_parser.add_argument("--modes", type=int)
    check_parser.add_argument("--sobolev", type=float)
    check_parser.add_argument("--samples", type=int)
    check_parser.add_argument("--fd-step", dest="fd_step", type=float)
    check_parser.add_argument("--eps", type=float)
    check_parser.add_argument("--param", action="append", metavar="KEY=VALUE",
                              help="any other parameter of the check, JSON-decoded when possible")
    _add_common(check_parser)
    check_parser.set_defaults(func=cmd_check)

    suite_parser = subparsers.add_parser("suite", help="run a whole profile")
    suite_parser.add_argument("--profile", choices=[p.value for p in Profile], default=Profile.QUICK.value)
    _add_common(suite_parser)
    suite_parser.set_defaults(func=cmd_suite)

    spectrum_parser = subparsers.add_parser("spectrum", help="write the spectrum of d_mu as CSV")
    spectrum_parser.add_argument("--algebra")
    spectrum_parser.add_argument("--modes", type=int)
    spectrum_parser.add_argument("--mu", type=float, nargs="+")
    spectrum_parser.add_argument("--out", required=True)
    spectrum_parser.set_defaults(func=cmd_spectrum)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    configure_logging()
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except (InputError, ValidationError) as e:
        logger.error(f"❌ {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except StructuralError as e:
        logger.error(f"❌ Structural failure: {e}")
        print(f"structural error: {e}", file=sys.stderr)
        return EXIT_STRUCTURAL
    except VerificationError as e:
        logger.error(f"❌ {e}")
        return EXIT_STRUCTURAL
    except Exception as e:
        logger.exception(f"❌ Unexpected failure: {type(e).__name__}: {e}")
        print(f"internal error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_STRUCTURAL


if __name__ == "__main__":
    sys.exit(main())
