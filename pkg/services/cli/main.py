"""
``stm`` command-line entry point.
"""
import argparse
import sys
from pathlib import Path
from typing import Callable, List, Optional

from pydantic import ValidationError

from shared.exceptions import DegenerateSampleError, EvaluationError, SatoTateError, SpecError
from shared.models.schemas import ExitCode, Norm, OutputFormat
from shared.utils.config import settings
from shared.utils.logging import logger, set_log_level, setup_logging
from services.cli import commands

Handler = Callable[[argparse.Namespace], int]


def _common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--output", type=Path, default=None, help="Write the result to FILE")
    parser.add_argument("--timing", action="store_true", help="Record elapsed seconds")


def _subject(parser: argparse.ArgumentParser) -> None:
    source = parser.add_mutually_exclusive_group()
    source.add_argument("--group", metavar="FILE", help="JSON spec file")
    source.add_argument("--catalog", metavar="NAME", help="Catalog entry")


def _sampling(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--samples", type=int, default=100_000)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--amax", type=int, default=4)
    parser.add_argument("--bmax", type=int, default=4)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stm",
        description="Exact and sampled Sato-Tate moments of compact groups",
    )
    parser.add_argument(
        "--log-level",
        default=None,
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        help="Diagnostics on stderr (default from STM_LOG_LEVEL)",
    )
    parser.add_argument("--workers", type=int, default=None, help="Worker threads")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("moments", help="Moment table F(a,b)")
    _subject(p)
    p.add_argument("--amax", type=int, required=True)
    p.add_argument("--bmax", type=int, required=True)
    p.add_argument(
        "--format", choices=[f.value for f in OutputFormat], default=OutputFormat.CSV.value
    )
    _common(p)
    p.set_defaults(handler=commands.cmd_moments)

    p = sub.add_parser("separate", help="Separation index of two subjects")
    p.add_argument("--left", required=True, help="Spec file or catalog name")
    p.add_argument("--right", required=True, help="Spec file or catalog name")
    p.add_argument("--norm", choices=[n.value for n in Norm], default=Norm.TOTAL.value)
    p.add_argument("--bound", type=int, default=None)
    _common(p)
    p.set_defaults(handler=commands.cmd_separate)

    p = sub.add_parser("torsion", help="Agreement with the n-torsion approximant")
    _subject(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--degree", type=int, default=None)
    _common(p)
    p.set_defaults(handler=commands.cmd_torsion)

    p = sub.add_parser("infer-dim", help="Bracket dim V from the diagonal")
    _subject(p)
    p.add_argument("--from-table", type=Path, default=None, metavar="CSV")
    p.add_argument("--amax", type=int, default=None)
    _common(p)
    p.set_defaults(handler=commands.cmd_infer_dim)

    p = sub.add_parser("sample", help="Monte Carlo moment estimates")
    _subject(p)
    _sampling(p)
    _common(p)
    p.set_defaults(handler=commands.cmd_sample)

    p = sub.add_parser("catalog", help="Named groups and data files")
    p.add_argument("action", choices=["list", "show", "verify"])
    p.add_argument("name", nargs="?", default=None)
    _common(p)
    p.set_defaults(handler=commands.cmd_catalog)

    p = sub.add_parser("identify", help="Rank catalog candidates against samples")
    _subject(p)
    _sampling(p)
    p.add_argument("--candidates", default=None, help="Comma-separated catalog names")
    p.add_argument("--z", type=float, default=None)
    _common(p)
    p.set_defaults(handler=commands.cmd_identify)

    p = sub.add_parser("coincidences", help="Catalog pairs agreeing up to a bound")
    p.add_argument("--names", default=None, help="Comma-separated catalog names")
    p.add_argument("--norm", choices=[n.value for n in Norm], default=Norm.TOTAL.value)
    p.add_argument("--bound", type=int, default=None)
    _common(p)
    p.set_defaults(handler=commands.cmd_coincidences)

    p = sub.add_parser("crude", help="Crude-bound threshold for U(n)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--amax", type=int, default=None)
    _common(p)
    p.set_defaults(handler=commands.cmd_crude)

    p = sub.add_parser("irreducible", help="F(1,1) == 1")
    _subject(p)
    _common(p)
    p.set_defaults(handler=commands.cmd_irreducible)

    p = sub.add_parser("finite-limit", help="Separation from finite subgroups")
    p.add_argument("--target", choices=["u1-wt1", "su2-std"], required=True)
    p.add_argument("--bound", type=int, default=None)
    _common(p)
    p.set_defaults(handler=commands.cmd_finite_limit)

    p = sub.add_parser("gaussian", help="U(n) diagonal against a!")
    p.add_argument("--ns", default="1,2,3")
    p.add_argument("--amax", type=int, default=6)
    p.add_argument("--samples", type=int, default=0)
    p.add_argument("--seed", type=int, default=0)
    _common(p)
    p.set_defaults(handler=commands.cmd_gaussian)

    return parser


def _report(error: SatoTateError) -> None:
    sys.stderr.write(f"error: {error.message}\n")


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    setup_logging(json_output=settings.log_json)
    set_log_level(args.log_level or settings.log_level)
    if args.workers is not None and args.workers < 1:
        sys.stderr.write("error: --workers must be positive\n")
        return int(ExitCode.PARSE)

    handler: Handler = args.handler
    try:
        return int(handler(args))
    except SpecError as e:
        _report(e)
        return int(ExitCode.PARSE)
    except ValidationError as e:
        sys.stderr.write(f"error: invalid input: {e.errors()[0]['msg']}\n")
        return int(ExitCode.PARSE)
    except (EvaluationError, DegenerateSampleError) as e:
        logger.error(f"{args.command} failed: {e.message}")
        _report(e)
        return int(ExitCode.EVALUATOR)
    except SatoTateError as e:
        _report(e)
        return int(ExitCode.PARSE)


if __name__ == "__main__":
    sys.exit(main())
