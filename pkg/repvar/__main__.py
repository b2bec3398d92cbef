#!/usr/bin/env python3
"""
Main entry point for repvar.

This module provides the command-line interface: it parses arguments,
configures logging, resolves oracle settings and prints the report.
"""

import sys
import logging
import argparse
from pathlib import Path
from typing import List, Optional

from .cli.algebra_file import AlgebraParseError
from .cli.report import render
from .cli.runner import COMMANDS, EXIT_ERROR, JobConfig, JobError, parse_dim, run
from .core.components import ComponentsError
from .core.filtrations import FiltrationSearchCapError
from .core.hereditary import HereditaryError
from .core.layers import LayeringError
from .core.quiver import QuiverError
from .core.repfield import RepresentationError
from .core.skeleta import SkeletonError
from .utils.config import Config, OutputFormat, PipelineMode
from .utils.settings import OracleSettings


LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'

logger = logging.getLogger(__name__)

HANDLED_ERRORS = (
    AlgebraParseError, JobError, QuiverError, LayeringError, SkeletonError,
    RepresentationError, HereditaryError, ComponentsError, FiltrationSearchCapError,
    OSError, ValueError,
)


def build_parser() -> argparse.ArgumentParser:
    """
    Build the argument parser.

    Returns:
        argparse.ArgumentParser: Parser with one subcommand per report type
    """
    parser = argparse.ArgumentParser(
        prog=Config.APP_NAME,
        description=f"{Config.APP_NAME} - {Config.APP_DESCRIPTION}",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  repvar components --algebra local_r3.alg --dim 10
  repvar canon-decomp --quiver kronecker.alg --dim 2,2
  repvar socle-layering --algebra two_cycle.alg --layering "1:1;2:1;3:1;4:1"
  repvar components --algebra bipartite23.alg --dim 2,2 --format structured
        """
    )

    parser.add_argument(
        '--version',
        action='version',
        version=f"{Config.APP_NAME} v{Config.APP_VERSION}"
    )

    parser.add_argument(
        'command',
        choices=sorted(COMMANDS),
        help='Report to compute'
    )

    parser.add_argument(
        '--algebra', '--quiver',
        dest='algebra',
        required=True,
        metavar='FILE',
        help='Algebra file (vertices, arrows, loewy_bound)'
    )

    parser.add_argument('--dim', type=str, help='Dimension vector, e.g. 2,2')
    parser.add_argument('--layering', type=str, help='Semisimple sequence, e.g. "1:1;2:1"')
    parser.add_argument(
        '--mode',
        choices=[m.value for m in PipelineMode],
        default=PipelineMode.AUTO.value,
        help='Component pipeline (default: auto)'
    )
    parser.add_argument('--prime', type=int, help='Prime for specializations and sampling')
    parser.add_argument('--hereditary-prime', type=int, help='Prime for hereditary oracles')
    parser.add_argument(
        '--small-prime',
        type=int,
        action='append',
        help='Prime for exhaustive filtration searches (repeatable)'
    )
    parser.add_argument('--samples', type=int, help='Samples per randomized estimate')
    parser.add_argument('--seed', type=int, help='Base random seed')
    parser.add_argument('--cap', type=int, help='Subspaces visited per filtration search')
    parser.add_argument('--sequence-cap', type=int, help='Maximum |Seq(d)| to enumerate')
    parser.add_argument('--workers', type=int, help='Worker threads for candidate tests')
    parser.add_argument(
        '--no-enrich',
        action='store_true',
        help='Skip skeleta, presentations and sampled invariants in component reports'
    )
    parser.add_argument(
        '--format',
        choices=[f.value for f in OutputFormat],
        default=OutputFormat.TEXT.value,
        help='Output format (default: text)'
    )
    parser.add_argument('--settings', type=str, metavar='FILE', help='JSON oracle settings file')

    parser.add_argument(
        '--debug',
        action='store_true',
        help='Enable debug logging'
    )

    parser.add_argument(
        '--log-file',
        type=str,
        metavar='FILE',
        help='Write logs to file'
    )

    return parser


def setup_logging(args):
    """
    Configure logging based on arguments.

    Reports go to stdout, so log records go to stderr.

    Args:
        args: Parsed command-line arguments
    """
    logging.basicConfig(
        level=logging.WARNING,
        format=LOG_FORMAT,
        handlers=[
            logging.StreamHandler(sys.stderr)
        ]
    )

    if args.debug:
        logging.getLogger().setLevel(logging.DEBUG)
        logger.debug("Debug logging enabled")

    if args.log_file:
        file_handler = logging.FileHandler(args.log_file)
        file_handler.setFormatter(logging.Formatter(LOG_FORMAT))
        logging.getLogger().addHandler(file_handler)
        logger.info(f"Logging to file: {args.log_file}")


def resolve_settings(args) -> OracleSettings:
    """
    Settings file values overridden by explicit flags.

    Raises:
        JobError: For unreadable files and out-of-range or mistyped values
    """
    settings = OracleSettings(args.settings) if args.settings else OracleSettings()
    if args.settings and not settings.load():
        raise JobError(f"Cannot read settings file {args.settings}")
    overrides = {
        "prime": args.prime,
        "hereditary_prime": args.hereditary_prime,
        "small_primes": args.small_prime,
        "samples": args.samples,
        "seed": args.seed,
        "filtration_cap": args.cap,
        "sequence_cap": args.sequence_cap,
        "workers": args.workers,
    }
    for key, value in overrides.items():
        if value is not None:
            try:
                settings.set(key, value)
            except (ValueError, TypeError) as e:
                raise JobError(f"Invalid value for setting '{key}': {e}") from e
    return settings


def main(argv: Optional[List[str]] = None) -> int:
    """Main application entry point."""
    parser = build_parser()
    args = parser.parse_args(argv)

    setup_logging(args)

    logger.info(f"Starting {Config.APP_NAME} v{Config.APP_VERSION}")

    try:
        job = JobConfig(
            command=args.command,
            algebra_path=Path(args.algebra),
            dim=parse_dim(args.dim) if args.dim else None,
            layering=args.layering,
            mode=PipelineMode(args.mode),
            output_format=OutputFormat(args.format),
            settings=resolve_settings(args),
            enrich=not args.no_enrich,
        )
        document, code = run(job)
    except HANDLED_ERRORS as e:
        logger.error(f"{args.command} failed: {e}")
        print(f"{Config.APP_NAME}: error: {e}", file=sys.stderr)
        return EXIT_ERROR
    except KeyboardInterrupt:
        logger.info("Interrupted by user")
        return EXIT_ERROR

    sys.stdout.write(render(document, job.output_format))
    return code


if __name__ == "__main__":
    sys.exit(main())
