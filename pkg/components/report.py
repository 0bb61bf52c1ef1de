"""
report command: desk-scale acceptance suite over a list of field orders
"""

import logging
import os
import random
import time
from dataclasses import dataclass, field
from itertools import combinations

from artifacts import arrangement_to_dict, dumps, save_json
from coding_bridge import (
    code_from_parity_points,
    code_from_points,
    covering_radius,
    embed_and_check,
    embed_points,
    is_minimal_code,
)
from constructions import (
    construct_pg3_four_lines,
    construct_pg4_six_lines,
    construct_pg4_six_planes,
    construct_pg5_eight_planes,
    construct_pg5_seven_lines,
    construct_pg5_seven_solids,
    seven_planes_spread_search,
    subline_triples_search,
)
from higgledy_core import find_transversal, is_higgledy_piggledy, lower_bound, lower_bound_lines
from models.arrangement import Arrangement
from models.galois_field import extension, gf
from models.projective_space import ProjSpace, meet, random_subspace, subspace_index
from resolving import resolving_from_lines
from settings import get_config
from utils.constants import DEFAULT_SEED, EXIT_FAILURE, EXIT_OK, SCHEMA_VERSION
from utils.exceptions import HPForgeError
from utils.helpers import elapsed_ms, parse_q_list
from utils.stats import coverage_table, results_table, summarize_results, to_records, to_text

logger = logging.getLogger(__name__)


def add_report_parser(subparsers, parents=()):
    parser = subparsers.add_parser("report", help="Run the acceptance suite and write every artifact",
                                   parents=list(parents))
    parser.add_argument("--q-list", dest="q_list", help="Comma separated field orders, e.g. 2,3")
    parser.add_argument("--out-dir", dest="out_dir", default="report")
    parser.add_argument("--seed", type=int, default=DEFAULT_SEED)
    parser.set_defaults(handler=run_report_command)


@dataclass
class ReportContext:
    out_dir: str
    workers: int = None
    seed: int = DEFAULT_SEED
    arrangements: dict = field(default_factory=dict)

    def keep(self, q, name, arr):
        self.arrangements[(q, name)] = arr
        save_json(arrangement_to_dict(arr), os.path.join(self.out_dir, f"q{q}", f"{name}.json"))
        return arr

    def get(self, q, name, build):
        if (q, name) not in self.arrangements:
            self.keep(q, name, build())
        return self.arrangements[(q, name)]


def _pairwise_disjoint(arr):
    return all(a.is_disjoint(b) for a, b in combinations(arr.elements, 2))


def _meeting_pairs(arr, dim=0):
    return sum(meet(a, b).dim >= dim for a, b in combinations(arr.elements, 2))


def _certified(arr):
    return arr.certificate is not None and arr.certificate.is_higgledy_piggledy


# Checks; each returns (passed, detail)

def check_four_lines(q, ctx):
    arr = ctx.get(q, "pg3_four_lines", lambda: construct_pg3_four_lines(q, workers=ctx.workers))
    coverage = len(arr.point_set())
    return _certified(arr) and _pairwise_disjoint(arr) and coverage == 4 * (q + 1), f"coverage {coverage}"


def check_six_lines(q, ctx):
    arr = ctx.get(q, "pg4_six_lines", lambda: construct_pg4_six_lines(q, seed=ctx.seed, workers=ctx.workers))
    coverage = len(arr.point_set())
    pairs = _meeting_pairs(arr)
    return (_certified(arr) and pairs == 1 and coverage == 6 * q + 5,
            f"coverage {coverage}, {pairs} intersecting pair(s)")


def check_six_planes(q, ctx):
    arr = ctx.get(q, "pg4_six_planes", lambda: construct_pg4_six_planes(q, seed=ctx.seed, workers=ctx.workers))
    sharing = _meeting_pairs(arr, dim=1)
    trial = arr.provenance.get("trial")
    return _certified(arr) and sharing >= 1, f"{sharing} pair(s) sharing a line, trial {trial}"


def check_eight_planes(q, ctx):
    arr = ctx.get(q, "pg5_eight_planes", lambda: construct_pg5_eight_planes(q, seed=ctx.seed, workers=ctx.workers))
    coverage = len(arr.point_set())
    return (_certified(arr) and _pairwise_disjoint(arr) and coverage == 8 * (q * q + q + 1),
            f"coverage {coverage}, {arr.certificate.scanned} candidates scanned")


def check_seven_lines(q, ctx):
    arr = ctx.get(q, "pg5_seven_lines", lambda: construct_pg5_seven_lines(q, seed=ctx.seed, workers=ctx.workers))
    return _certified(arr) and _pairwise_disjoint(arr), f"trial {arr.provenance.get('trial')}"


def check_seven_solids(q, ctx):
    arr = ctx.get(q, "pg5_seven_solids", lambda: construct_pg5_seven_solids(q, seed=ctx.seed, workers=ctx.workers))
    meets = [meet(a, b) for a, b in combinations(arr.elements, 2)]
    lines_disjoint = all(m.dim == 1 for m in meets) and all(a.is_disjoint(b) for a, b in combinations(meets, 2))
    return _certified(arr) and lines_disjoint, f"{len(meets)} pairwise meets, disjoint lines: {lines_disjoint}"


def check_seven_spread_planes(q, ctx):
    arr = seven_planes_spread_search(q, seed=ctx.seed, workers=ctx.workers)
    if arr is None:
        return False, "budget exhausted"
    ctx.keep(q, "seven_planes_spread", arr)
    return _certified(arr) and _pairwise_disjoint(arr), f"trial {arr.provenance.get('trial')}"


def check_subline_triples(q, ctx):
    details = []
    passed = subline_triples_search(q, 2) is not None
    details.append(f"(q,m)=({q},2) found: {passed}")
    if q == 3:
        none = subline_triples_search(3, 3) is None
        details.append(f"(3,3) excluded: {none}")
        passed = passed and none
    return passed, "; ".join(details)


def check_lower_bounds(q, ctx):
    passed = True
    if q >= 6:
        passed = passed and lower_bound(5, 2, q) == 7
    if q >= 4:
        passed = passed and lower_bound_lines(4, q) == 6
    violations = [name for (aq, name), arr in ctx.arrangements.items()
                  if aq == q and len(arr) < lower_bound(arr.N, arr.k, arr.q)]
    return passed and not violations, f"violations: {violations or 'none'}"


def check_minimal_codes(q, ctx):
    details = []
    passed = True
    for name in ("pg3_four_lines", "pg4_six_lines"):
        arr = ctx.arrangements.get((q, name))
        if arr is None:
            continue
        code = code_from_points(sorted(arr.point_set(), key=subspace_index))
        minimal, _ = is_minimal_code(code)
        passed = passed and minimal
        details.append(f"{name} {code!r} minimal={minimal}")
    return passed and bool(details), "; ".join(details) or "no arrangements"


def check_covering_dictionary(q, ctx):
    arr = ctx.get(q, "pg4_six_lines", lambda: construct_pg4_six_lines(q, seed=ctx.seed, workers=ctx.workers))
    points = sorted(arr.point_set(), key=subspace_index)
    saturation = embed_and_check(points, 1)
    code = code_from_parity_points(embed_points(points, extension(arr.space.field, 4)))
    radius = covering_radius(code)
    return (saturation["saturating"] and radius == saturation["rho"] + 1,
            f"{saturation['rho']}-saturating in {saturation['ambient']}: {saturation['saturating']}, "
            f"{code!r} covering radius {radius}")


def check_resolving(q, ctx):
    targets = [("pg3_four_lines", 8 * q)]
    if q == 2:
        targets.append(("pg4_six_lines", 12 * q - 2))
        targets.append(("pg5_seven_lines", 14 * q))
    details = []
    passed = True
    for name, size in targets:
        arr = ctx.arrangements.get((q, name))
        if arr is None:
            continue
        result = resolving_from_lines(arr)
        ok = result.resolving and result.augmentations == 0 and 2 * result.punctured == size
        passed = passed and ok
        details.append(f"{name}: size {2 * result.punctured}/{size}, augmentations {result.augmentations}")
    return passed and bool(details), "; ".join(details)


def _random_lines(space, count, rng):
    lines = []
    while len(lines) < count:
        line = random_subspace(space, 1, rng)
        if line not in lines:
            lines.append(line)
    return Arrangement(space, 1, lines)


def check_oracle_equivalence(q, ctx):
    samples = get_config()["report"]["oracle_samples"]
    spaces = [ProjSpace(3, gf(q))] + ([ProjSpace(4, gf(3))] if q == 3 else [])
    rng = random.Random(ctx.seed)
    agree = forward = tested = 0
    for space in spaces:
        for _ in range(samples):
            arr = _random_lines(space, rng.randint(1, q + 2), rng)
            strong = is_higgledy_piggledy(arr, method="strong", workers=1)
            transversal = find_transversal(arr, workers=1)
            if transversal is None and not strong.is_higgledy_piggledy:
                forward += 1
            if len(arr) <= q:
                tested += 1
                agree += strong.is_higgledy_piggledy == (transversal is None)
    return agree == tested and forward == 0, f"{agree}/{tested} agree, {forward} forward violations"


CHECKS = [
    ("four_lines", lambda q: True, check_four_lines),
    ("six_lines", lambda q: q <= 5, check_six_lines),
    ("six_planes", lambda q: q <= 5 or q == 7, check_six_planes),
    ("eight_planes", lambda q: q <= 3, check_eight_planes),
    ("seven_lines", lambda q: q == 2, check_seven_lines),
    ("seven_solids", lambda q: q == 7, check_seven_solids),
    ("seven_spread_planes", lambda q: q <= 5, check_seven_spread_planes),
    ("subline_triples", lambda q: q in (3, 4), check_subline_triples),
    ("minimal_codes", lambda q: q <= 5, check_minimal_codes),
    ("covering_dictionary", lambda q: q == 2, check_covering_dictionary),
    ("resolving", lambda q: q in (2, 3), check_resolving),
    ("oracle_equivalence", lambda q: q in (2, 3), check_oracle_equivalence),
    ("lower_bounds", lambda q: True, check_lower_bounds),
]


def run_checks(q_list, ctx):
    results = []
    for q in q_list:
        for criterion, applies, check in CHECKS:
            if not applies(q):
                continue
            start = time.perf_counter()
            try:
                passed, detail = check(q, ctx)
            except HPForgeError as e:
                logger.error("Check %s at q=%d raised %s: %s", criterion, q, type(e).__name__, e)
                passed, detail = False, f"{type(e).__name__}: {e}"
            level = logging.INFO if passed else logging.ERROR
            logger.log(level, "Check %s at q=%d: %s (%s)", criterion, q, "passed" if passed else "FAILED", detail)
            results.append({"criterion": criterion, "q": q, "passed": passed, "detail": detail,
                            "elapsed_ms": elapsed_ms(start)})
    return results


def run_report_command(args):
    q_list = parse_q_list(args.q_list) if args.q_list else get_config()["report"]["q_list"]
    ctx = ReportContext(args.out_dir, workers=args.workers, seed=args.seed)
    os.makedirs(args.out_dir, exist_ok=True)
    table = results_table(run_checks(q_list, ctx))
    summary, all_passed = summarize_results(table)
    coverage = coverage_table(ctx.arrangements.values())
    save_json({
        "format": SCHEMA_VERSION,
        "q_list": q_list,
        "passed": all_passed,
        "results": to_records(table),
        "coverage": to_records(coverage),
    }, os.path.join(args.out_dir, "results.json"))
    with open(os.path.join(args.out_dir, "results.txt"), 'w', encoding='utf-8') as f:
        f.write(to_text(table) + "\n\n" + to_text(summary) + "\n\n" + to_text(coverage) + "\n")
    print(dumps({"format": SCHEMA_VERSION, "passed": all_passed, "summary": to_records(summary)}))
    return EXIT_OK if all_passed else EXIT_FAILURE
