"""
construct command: build a named arrangement and write it with its certificate
"""

import logging

from artifacts import arrangement_to_dict, dumps, save_json
from constructions import CONSTRUCTIONS, seven_planes_spread_search, subline_triples_search, tetrahedron
from models.galois_field import gf
from models.projective_space import ProjSpace
from utils.constants import CONSTRUCTION_NAMES, DEFAULT_SEED, EXIT_FAILURE, EXIT_OK, SCHEMA_VERSION

logger = logging.getLogger(__name__)


def add_construct_parser(subparsers, parents=()):
    parser = subparsers.add_parser("construct", help="Build a named construction", parents=list(parents))
    parser.add_argument("name", choices=CONSTRUCTION_NAMES)
    parser.add_argument("--q", type=int, required=True)
    parser.add_argument("--N", type=int, default=3, help="Dimension for the tetrahedron")
    parser.add_argument("--m", type=int, default=2, help="Extension degree for subline triples")
    parser.add_argument("--seed", type=int, default=DEFAULT_SEED)
    parser.add_argument("--trials", type=int, help="Trial budget for searches")
    parser.add_argument("--out", help="Output file; standard output when missing")
    parser.set_defaults(handler=run_construct_command)


def _emit(data, out):
    if out:
        save_json(data, out)
        logger.info("Wrote %s", out)
    else:
        print(dumps(data))


def _sublines(args):
    triple = subline_triples_search(args.q, args.m)
    data = {
        "format": SCHEMA_VERSION,
        "construction": "subline_triples",
        "q": args.q,
        "m": args.m,
        "found": triple is not None,
        "sublines": [[list(P.coords) for P in b.members] for b in triple] if triple else [],
    }
    _emit(data, args.out)
    return EXIT_OK if triple is not None else EXIT_FAILURE


def run_construct_command(args):
    """Exit 0 when the construction is certified higgledy-piggledy"""
    if args.name == "subline_triples":
        return _sublines(args)
    if args.name == "tetrahedron":
        arr = tetrahedron(ProjSpace(args.N, gf(args.q)), workers=args.workers)
    elif args.name == "seven_planes_spread":
        arr = seven_planes_spread_search(args.q, seed=args.seed, trials=args.trials, workers=args.workers)
        if arr is None:
            logger.error("No seven spread planes of PG(5,%d) within the budget", args.q)
            return EXIT_FAILURE
    else:
        arr = CONSTRUCTIONS[args.name](args.q, seed=args.seed, workers=args.workers)
    _emit(arrangement_to_dict(arr), args.out)
    return EXIT_OK if arr.certificate.is_higgledy_piggledy else EXIT_FAILURE
