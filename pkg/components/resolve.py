"""
resolve command: resolving set of the incidence graph from a line arrangement
"""

import logging

from artifacts import dumps, load_arrangement, save_resolving
from resolving import is_resolving, resolving_from_lines
from utils.constants import EXIT_FAILURE, EXIT_OK

logger = logging.getLogger(__name__)


def add_resolve_parser(subparsers, parents=()):
    parser = subparsers.add_parser("resolve", help="Resolving set from a higgledy-piggledy line set",
                                   parents=list(parents))
    parser.add_argument("input", help="Line arrangement JSON file")
    parser.add_argument("--check", action="store_true",
                        help="Fail unless the candidate resolves the graph without augmentation")
    parser.add_argument("--out", help="Write the resolving set here")
    parser.set_defaults(handler=run_resolve_command)


def run_resolve_command(args):
    arr = load_arrangement(args.input)
    result = resolving_from_lines(arr)
    data = result.to_dict()
    if args.out:
        save_resolving(result, args.out)
    if args.check:
        ok, collision = is_resolving(arr.space, result.vertices[:2 * result.punctured])
        data["candidate_resolving"] = ok
        if not ok:
            data["candidate_collision"] = [v.to_dict() for v in collision]
        print(dumps(data))
        return EXIT_OK if ok and result.augmentations == 0 else EXIT_FAILURE
    print(dumps(data))
    return EXIT_OK if result.resolving else EXIT_FAILURE
