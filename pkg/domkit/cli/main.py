import argparse
import json
import sys
from typing import List, Optional

from domkit.utils.errors import DomkitError, InconclusiveError, SpecError
from domkit.utils.logging import init_logger

from .commands import COMMANDS, EXIT_INCONCLUSIVE, EXIT_INPUT_ERROR
from .spec import load_system_spec

logger = init_logger(__name__)


def _add_common_arguments(parser: argparse.ArgumentParser):
    parser.add_argument("spec", type=str, help="JSON system spec file")
    parser.add_argument("--out", type=str, default=None, help="Output path (stdout when omitted)")
    parser.add_argument("--indent_radius", "--indent-radius", type=float, default=None, dest="indent_radius")
    parser.add_argument("--grid_points", "--grid-points", type=int, default=None, dest="grid_points")
    parser.add_argument("--tol", type=float, default=None, help="Strictness threshold for frequency margins")
    parser.add_argument("--quiet", action="store_true", default=False, help="Disable progress bars")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="domkit", description="p-dominance analysis of LTI and Lur'e systems")
    subparsers = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("analyze", "Pole split, passivity candidates, KYP and circle criterion"),
        ("nyquist", "Export the shifted Nyquist locus as CSV"),
        ("simulate", "Simulate the feedback loop and label its attractor"),
        ("rate-scan", "p-passivity margin over a range of rates"),
    ):
        sub = subparsers.add_parser(name, help=help_text)
        _add_common_arguments(sub)
        if name == "rate-scan":
            sub.add_argument("--lambda_min", "--lambda-min", type=float, default=None, dest="lambda_min")
            sub.add_argument("--lambda_max", "--lambda-max", type=float, default=None, dest="lambda_max")
            sub.add_argument("--steps", type=int, default=None)
            sub.add_argument("--p", type=int, default=None, help="Requested degree (default: shifted pole count)")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        spec = load_system_spec(args.spec, strict_rel=args.tol)
        if args.indent_radius is not None and args.indent_radius <= 0:
            raise SpecError("--indent-radius must be positive")
        if args.grid_points is not None:
            spec.grid_options["points"] = args.grid_points
        options = vars(args).copy()
        del options["spec"]
        return COMMANDS[args.command](spec, **options)
    except InconclusiveError as e:
        logger.error(f"inconclusive: {e}")
        return EXIT_INCONCLUSIVE
    except (SpecError, ValueError, FileNotFoundError, json.JSONDecodeError) as e:
        logger.error(f"{args.spec}: {e}")
        return EXIT_INPUT_ERROR
    except DomkitError as e:
        logger.error(f"{type(e).__name__}: {e}")
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
