"""
search command: run a seeded template search
"""

import logging

from artifacts import dumps, load_template, save_arrangement
from search_engine import run
from utils.constants import EXIT_FAILURE, EXIT_OK

logger = logging.getLogger(__name__)


def add_search_parser(subparsers, parents=()):
    parser = subparsers.add_parser("search", help="Randomized search from a template file",
                                   parents=list(parents))
    parser.add_argument("template", help="Template JSON file")
    parser.add_argument("--seed", type=int, help="Override the template's master seed")
    parser.add_argument("--trials", type=int, help="Override the template's trial budget")
    parser.add_argument("--out", help="Write the arrangement found here")
    parser.set_defaults(handler=run_search_command)


def run_search_command(args):
    template = load_template(args.template)
    if args.seed is not None:
        template.seed = args.seed
    if args.trials is not None:
        template.budget = args.trials
        template.validate()
    outcome = run(template, args.workers)
    print(dumps(outcome.to_dict()))
    if not outcome.found:
        return EXIT_FAILURE
    if args.out:
        save_arrangement(outcome.arrangement, args.out)
    return EXIT_OK
