from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import Sequence

from .._errors import (
    DomainError,
    ModelValidityError,
    NewtonDivergence,
    SingularAction,
    Unsupported,
    ValidationError,
)
from ..utility import emit
from ._commands import COMMAND_TABLE, PROGRESS_COMMANDS
from ._runspec import COMMANDS, FORMATS, PAYOFFS, RunSpec
from ._writers import render


logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_VALIDATION = 2
EXIT_DOMAIN = 3

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


def configure_logging(verbosity: int = 0, quiet: bool = False) -> None:
    if quiet:
        level = logging.ERROR
    elif verbosity >= 2:
        level = logging.DEBUG
    elif verbosity == 1:
        level = logging.INFO
    else:
        level = logging.WARNING
    logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr, force=True)


def _add_common(parser: argparse.ArgumentParser) -> None:
    # Defaults stay None so that only explicit flags override a --config file.
    parser.add_argument("--config", help="JSON run specification; flags override its keys")
    parser.add_argument("--family", help="r, u1, u2, u3, trivial, log_plus, log_minus or linear")
    parser.add_argument("--model", help="cjp, frey or sircar")
    parser.add_argument("--sigma", type=float)
    parser.add_argument("--rho", type=float)
    parser.add_argument("--omega", type=float)
    parser.add_argument("--c", type=float)
    parser.add_argument("--d", type=float)
    parser.add_argument("--d2", type=float)
    parser.add_argument("--chart", type=int, choices=(1, 2))
    parser.add_argument("--s-range", dest="s_range", help="start:stop:count")
    parser.add_argument("--t-range", dest="t_range", help="start:stop:count")
    parser.add_argument("--format", choices=FORMATS)
    parser.add_argument("--out", help="output path; standard output when omitted")
    parser.add_argument("--payoff", choices=PAYOFFS)
    parser.add_argument("--strike", type=float)
    parser.add_argument("--scheme", help="backward_euler or trapezoidal")
    parser.add_argument("--levels", help="comma separated node counts of the refinement ladder")
    parser.add_argument("--c-values", dest="c_values", help="comma separated c values for sweep")
    parser.add_argument("-v", "--verbose", action="count", default=0)
    parser.add_argument("--quiet", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nlbs",
        description="Exact invariant solutions and a terminal-value solver for nonlinear Black-Scholes models.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "eval": "evaluate an exact family on an (S, t) grid",
        "residual": "conformance gates and printed-formula discrepancies",
        "solve": "march a terminal payoff back to t = 0",
        "converge": "error table of the solver against an exact family",
        "greeks": "analytic and finite-difference Delta of a family",
        "sweep": "eval over several values of c",
    }
    for name in COMMANDS:
        _add_common(sub.add_parser(name, help=helps[name]))
    return parser


def _spec_from_args(args: argparse.Namespace) -> RunSpec:
    overrides = {
        key: value for key, value in vars(args).items()
        if value is not None and key not in ("config", "verbose", "quiet")
    }
    if args.config is not None:
        return RunSpec.from_file(args.config, overrides)
    return RunSpec.from_mapping(overrides)


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(args.verbose, args.quiet)
    try:
        spec = _spec_from_args(args)
        logger.debug("run specification %s", spec.canonical_json())
        command = COMMAND_TABLE[spec.command]
        if spec.command in PROGRESS_COMMANDS:
            table = command(spec, progress=not args.quiet)
        else:
            table = command(spec)
        emit(render(spec, table.columns, table.rows), spec.out)
    except (ValidationError, Unsupported, SingularAction) as exc:
        print(f"nlbs: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except NewtonDivergence as exc:
        print(f"nlbs: {exc}", file=sys.stderr)
        print(json.dumps(exc.dump(), sort_keys=True), file=sys.stderr)
        return EXIT_DOMAIN
    except (DomainError, ModelValidityError) as exc:
        print(f"nlbs: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except Exception:
        logger.exception("unexpected failure")
        return EXIT_INTERNAL
    if not table.ok:
        logger.warning("%s: at least one gate exceeded its tolerance", spec.command)
        return EXIT_DOMAIN
    return EXIT_OK
