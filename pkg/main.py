"""
HPFORGE
=======

Constructions and certificates for higgledy-piggledy sets of subspaces in
finite projective spaces, with their coding-theory and resolving-set
consequences.
"""

import argparse
import logging
import sys

from components.codes import add_codes_parser
from components.construct import add_construct_parser
from components.report import add_report_parser
from components.resolve import add_resolve_parser
from components.search import add_search_parser
from components.verify import add_verify_parser
from settings import get_config
from utils.constants import EXIT_FAILURE, EXIT_INPUT_ERROR, LOG_FORMAT, WORKERS_ENV
from utils.exceptions import ConstructionNotCertified, HPForgeError, SearchBudgetExhausted


def build_parser():
    workers_help = f"Worker processes (default: {WORKERS_ENV} or config)"
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--workers", type=int, default=argparse.SUPPRESS, help=workers_help)
    parents = [shared]

    parser = argparse.ArgumentParser(prog="hpforge", description="Higgledy-piggledy sets in finite projective spaces")
    parser.add_argument("--workers", type=int, help=workers_help)
    parser.add_argument("--verbose", "-v", action="store_true", help="Debug logging")
    subparsers = parser.add_subparsers(dest="command", required=True)
    add_verify_parser(subparsers, parents)
    add_construct_parser(subparsers, parents)
    add_search_parser(subparsers, parents)
    add_codes_parser(subparsers, parents)
    add_resolve_parser(subparsers, parents)
    add_report_parser(subparsers, parents)
    return parser


def setup_logging(verbose=False):
    level = "DEBUG" if verbose else str(get_config()["logging"]["level"]).upper()
    logging.basicConfig(level=getattr(logging, level, logging.INFO), format=LOG_FORMAT, stream=sys.stderr)


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT_ERROR if e.code else 0
    setup_logging(args.verbose)
    logger = logging.getLogger("hpforge")
    try:
        return args.handler(args)
    except (SearchBudgetExhausted, ConstructionNotCertified) as e:
        logger.error("%s", e)
        return EXIT_FAILURE
    except HPForgeError as e:
        logger.error("%s: %s", type(e).__name__, e)
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
