"""
codes command: minimality, covering radius, saturation and the bounds table
"""

import logging

from artifacts import arrangement_from_dict, dumps, load_json, save_code
from coding_bridge import (
    bounds_report,
    code_from_parity_points,
    code_from_points,
    covering_radius,
    desk_instances,
    embed_and_check,
    embed_points,
    is_minimal_code,
    is_saturating,
    least_saturation,
)
from models.galois_field import extension
from models.linear_code import LinearCode
from models.projective_space import subspace_index
from settings import get_config
from utils.constants import CODES_SUBCOMMANDS, EXIT_FAILURE, EXIT_OK, SCHEMA_VERSION
from utils.exceptions import ArtifactError
from utils.stats import to_records, to_text

logger = logging.getLogger(__name__)


def add_codes_parser(subparsers, parents=()):
    parser = subparsers.add_parser("codes", help="Coding-theory checks on point sets", parents=list(parents))
    parser.add_argument("subcommand", choices=CODES_SUBCOMMANDS)
    parser.add_argument("--input", help="Arrangement or code JSON file")
    parser.add_argument("--q", type=int, help="Field order for bounds")
    parser.add_argument("--rho", type=int, help="Saturation degree; the least one is computed when missing")
    parser.add_argument("--embed", type=int, default=1,
                        help="Read the points over GF(q^embed) first")
    parser.add_argument("--strong", type=int, metavar="K",
                        help="Treat the input as a strong K-blocking set and check it in PG(N, q^(N-K+1))")
    parser.add_argument("--attach", action="store_true", help="Attach verified instances to the bounds table")
    parser.add_argument("--text", action="store_true", help="Print the bounds table as aligned text")
    parser.add_argument("--out", help="Write the code built from the input here")
    parser.set_defaults(handler=run_codes_command)


def _require_input(args):
    if not args.input:
        raise ArtifactError(f"codes {args.subcommand} needs --input")
    data = load_json(args.input)
    if "elements" in data:
        arr = arrangement_from_dict(data)
        return sorted(arr.point_set(), key=subspace_index), None
    return None, LinearCode.from_dict(data)


def _embedded(points, degree):
    if degree <= 1:
        return points
    return embed_points(points, extension(points[0].space.field, degree))


def _minimality(args):
    points, code = _require_input(args)
    if code is None:
        code = code_from_points(points)
    minimal, witness = is_minimal_code(code)
    if args.out:
        save_code(code, args.out)
    print(dumps({"format": SCHEMA_VERSION, "code": repr(code), "minimal": minimal, "witness": witness}))
    return EXIT_OK if minimal else EXIT_FAILURE


def _covering_radius(args):
    points, code = _require_input(args)
    if code is None:
        code = code_from_parity_points(_embedded(points, args.embed))
    radius = covering_radius(code)
    if args.out:
        save_code(code, args.out)
    print(dumps({"format": SCHEMA_VERSION, "code": repr(code), "n": code.n, "r": code.r,
                 "covering_radius": radius}))
    return EXIT_OK


def _saturating(args):
    points, _ = _require_input(args)
    if points is None:
        raise ArtifactError("codes saturating needs an arrangement file")
    if args.strong is not None:
        result = embed_and_check(points, args.strong)
        print(dumps({"format": SCHEMA_VERSION, **result}))
        return EXIT_OK if result["saturating"] else EXIT_FAILURE
    points = _embedded(points, args.embed)
    if args.rho is None:
        rho = least_saturation(points)
        print(dumps({"format": SCHEMA_VERSION, "space": repr(points[0].space), "least_rho": rho}))
        return EXIT_OK if rho is not None else EXIT_FAILURE
    saturating, witness = is_saturating(points, args.rho)
    print(dumps({"format": SCHEMA_VERSION, "space": repr(points[0].space), "rho": args.rho,
                 "saturating": saturating, "witness": list(witness.coords) if witness is not None else None}))
    return EXIT_OK if saturating else EXIT_FAILURE


def _bounds(args):
    q = args.q or get_config()["report"]["q_list"][0]
    instances = None
    if args.attach and q <= get_config()["report"]["attach_instances_max_q"]:
        instances = desk_instances(q, args.workers)
    table = bounds_report(q, instances)
    if args.text:
        print(to_text(table))
    else:
        print(dumps({"format": SCHEMA_VERSION, "q": q, "bounds": to_records(table)}))
    return EXIT_OK


SUBCOMMANDS = {
    "minimality": _minimality,
    "covering-radius": _covering_radius,
    "saturating": _saturating,
    "bounds": _bounds,
}


def run_codes_command(args):
    return SUBCOMMANDS[args.subcommand](args)
