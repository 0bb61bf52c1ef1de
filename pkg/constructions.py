"""
Constructions of higgledy-piggledy sets

Classical methods (tetrahedron, projection, dualisation), field reduction and
sublines of PG(1,q^m), and the named sporadic arrangements. Every named
construction returns a certified Arrangement; small fields fall back to the
seeded templates of search_engine.
"""

import logging
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations

from configuration import build_six_lines
from higgledy_core import find_transversal, is_higgledy_piggledy
from models.arrangement import Arrangement
from models.galois_field import extension, gf
from models.projective_space import ProjSpace, chart, dual, enumerate_subspaces, meet, span
from models.spread import SpreadElementMap, field_reduction
from search_engine import run, six_lines_template, six_planes_template, spread_template
from settings import budget
from utils.constants import DEFAULT_SEED, NOT_HIGPIG
from utils.exceptions import (
    ArgumentOutOfRange,
    ConstructionNotCertified,
    DegenerateTriple,
    DimensionOutOfRange,
    NotAnExtensionOverRequestedBase,
    PointInHyperplane,
    PointOnElement,
    SearchBudgetExhausted,
)

logger = logging.getLogger(__name__)

__all__ = [
    "SpreadElementMap",
    "field_reduction",
    "tetrahedron",
    "project",
    "dualize",
    "Subline",
    "subline_through",
    "standard_subline",
    "enumerate_sublines",
    "subline_count",
    "linear_set",
    "in_linear_set_of_rank_at_most",
    "concurrent_sublines",
    "eight_points",
    "construct_pg3_four_lines",
    "construct_pg4_six_lines",
    "construct_pg4_six_planes",
    "construct_pg5_seven_lines",
    "construct_pg5_seven_solids",
    "construct_pg5_eight_planes",
    "subline_triples_search",
    "seven_planes_spread_search",
    "CONSTRUCTIONS",
]


def certify(arr, method="auto", workers=None):
    """Attach a fresh certificate; raises ConstructionNotCertified on a NotHigPig verdict"""
    arr.certificate = is_higgledy_piggledy(arr, method=method, workers=workers)
    if arr.certificate.verdict == NOT_HIGPIG:
        name = arr.provenance.get("construction")
        logger.error("Construction %s produced a set that is not higgledy-piggledy", name)
        raise ConstructionNotCertified(f"{name}: {arr.describe()} is not higgledy-piggledy", arr)
    return arr


def _provenance(name, q, seed=None, choices=None, **extra):
    data = {"construction": name, "q": q, "seed": seed, "choices": list(choices or [])}
    data.update(extra)
    return data


# Classical constructions

def tetrahedron(space, workers=None):
    """Lines joining pairs of the N+1 frame points"""
    if space.N < 2:
        raise DimensionOutOfRange("the tetrahedron needs N >= 2")
    frame = [space.unit_point(i) for i in range(space.n)]
    pairs = list(combinations(range(space.n), 2))
    arr = Arrangement(
        space, 1,
        [span([frame[i], frame[j]]) for i, j in pairs],
        labels=[f"e{i}e{j}" for i, j in pairs],
        provenance=_provenance("tetrahedron", space.q, N=space.N),
    )
    return certify(arr, workers=workers)


def project(arr, sigma, P, check=False, workers=None):
    """Project every element from P into the hyperplane sigma

    Args:
        arr (Arrangement): Higgledy-piggledy set to project
        sigma (Subspace): Target hyperplane
        P (Subspace): Centre, a point off sigma and off every element
        check (bool): Certify the input first instead of trusting it
        workers (int): Worker processes for certification

    Returns:
        Arrangement: Deduplicated shadows, in the chart of sigma as PG(N-1,q)
    """
    if sigma.dim != arr.N - 1:
        raise DimensionOutOfRange("projection needs a hyperplane")
    if sigma.contains(P):
        raise PointInHyperplane(f"centre {P.coords} lies in the hyperplane")
    for i, element in enumerate(arr.elements):
        if element.contains(P):
            raise PointOnElement(f"centre {P.coords} lies on element {i}")
    if check and not is_higgledy_piggledy(arr, workers=workers).is_higgledy_piggledy:
        logger.warning("Projecting a set that failed certification")
    target, to_chart = chart(sigma)
    shadows = []
    for element in arr.elements:
        shadow = to_chart(meet(span([P, element]), sigma))
        if shadow not in shadows:
            shadows.append(shadow)
    if len(shadows) < len(arr):
        logger.info("Projection merged %d elements", len(arr) - len(shadows))
    result = Arrangement(
        target, arr.k, shadows,
        provenance=_provenance("project", arr.q, source=arr.provenance.get("construction"),
                               sigma=sigma.wire(), centre=list(P.coords)),
    )
    return certify(result, workers=workers)


def dualize(arr, workers=None):
    """Element-wise dual, certified from scratch"""
    if len(arr) > arr.q:
        logger.info("Dualizing %d > q=%d elements; the certificate is recomputed", len(arr), arr.q)
    result = Arrangement(
        arr.space, arr.N - arr.k - 1, [dual(e) for e in arr.elements],
        labels=arr.labels,
        provenance=_provenance("dualize", arr.q, source=arr.provenance),
    )
    return certify(result, workers=workers)


# Sublines of PG(1, q^m)

def line_points(space):
    """Points of PG(1,Q) in enumeration order: (1,a) for every a, then (0,1)"""
    if space.N != 1:
        raise DimensionOutOfRange("sublines live on a projective line")
    return list(enumerate_subspaces(space, 0))


@dataclass(frozen=True)
class Subline:
    """The q+1 points of a GF(q)-subline, in the order P1, then P2 + a P1 for a in GF(q)"""
    space: ProjSpace
    triple: tuple
    members: tuple

    @cached_property
    def points(self):
        return frozenset(self.members)

    def __contains__(self, point):
        return point in self.points

    def __len__(self):
        return len(self.members)

    def meet_size(self, other):
        return len(self.points & other.points)


def _subfield_order(space):
    ext = space.field
    if ext.base is None:
        raise NotAnExtensionOverRequestedBase(f"{ext!r} is not built over a subfield")
    return ext.base.order


def subline_through(P1, P2, P3):
    """The unique subline through three distinct points

    The frame (0,1), (1,0), (1,1) is sent to P1, P2, P3 and the standard
    subline {(0,1)} + {(1,a) : a in GF(q)} is carried along.
    """
    space = P1.space
    if len({P1, P2, P3}) < 3:
        raise DegenerateTriple("subline needs three distinct points")
    ext = space.field
    q = _subfield_order(space)
    v1, v2, v3 = P1.coords, P2.coords, P3.coords
    mul, sub, inv = ext.mul_int, ext.sub_int, ext.inv_int
    det = sub(mul(v1[0], v2[1]), mul(v2[0], v1[1]))
    alpha = mul(sub(mul(v3[0], v2[1]), mul(v2[0], v3[1])), inv(det))
    beta = mul(sub(mul(v1[0], v3[1]), mul(v3[0], v1[1])), inv(det))
    c01 = [mul(alpha, x) for x in v1]
    c10 = [mul(beta, x) for x in v2]
    members = [P1]
    for a in range(q):
        members.append(space.point([ext.add_int(y, mul(a, x)) for x, y in zip(c01, c10)]))
    return Subline(space, (P1, P2, P3), tuple(members))


def standard_subline(space):
    frame = (space.point([0, 1]), space.point([1, 0]), space.point([1, 1]))
    return subline_through(*frame)


def enumerate_sublines(space):
    """Every subline of PG(1,q^m) once, in order of first generating triple"""
    seen = set()
    sublines = []
    points = line_points(space)
    for P1, P2, P3 in combinations(points, 3):
        b = subline_through(P1, P2, P3)
        if b.points not in seen:
            seen.add(b.points)
            sublines.append(b)
    return sublines


def subline_count(q, m):
    Q = q ** m
    return (Q ** 3 - Q) // (q ** 3 - q)


# Linear sets

def _reduction_for(space):
    ext = space.field
    q = _subfield_order(space)
    mapping = field_reduction(1, ext.e - 1, q)
    if mapping.small != space:
        raise NotAnExtensionOverRequestedBase(f"{ext!r} is not the standard extension of GF({q})")
    return mapping


def linear_set(space, sub):
    """Points of PG(1,q^m) whose spread elements meet a subspace of PG(2m-1,q)"""
    mapping = _reduction_for(space)
    return [P for P in line_points(space) if meet(mapping.image(P), sub).rank > 0]


def in_linear_set_of_rank_at_most(points, r, workers=None):
    """Witness that the points lie in a GF(q)-linear set of rank at most r

    Args:
        points (iterable): Points of PG(1,q^m)
        r (int): Rank, 1 <= r <= 2m-1
        workers (int): Worker processes for the transversal search

    Returns:
        Subspace: An (r-1)-subspace of PG(2m-1,q) meeting every image, or None
    """
    points = list(dict.fromkeys(points))
    if not points:
        raise ArgumentOutOfRange("no points given")
    space = points[0].space
    mapping = _reduction_for(space)
    m = space.field.e
    if not 1 <= r <= 2 * m - 1:
        raise ArgumentOutOfRange(f"rank {r} outside [1, {2 * m - 1}]")
    arr = Arrangement(mapping.big, m - 1, mapping.images(points))
    return find_transversal(arr, d=r - 1, workers=workers)


# Named constructions

def _search_or_raise(template, workers):
    outcome = run(template, workers)
    if not outcome.found:
        raise SearchBudgetExhausted(f"{template.name} at q={template.q}: no certified set in "
                                    f"{outcome.trials} trials", outcome.trials)
    return outcome.arrangement


def _check_q(q, least=2):
    if q < least:
        raise ArgumentOutOfRange(f"q must be at least {least}, got {q}")


def construct_pg3_four_lines(q, seed=None, workers=None):
    """Four disjoint lines of PG(3,q): three frame points of PG(1,q^2) plus one off their subline"""
    _check_q(q)
    space = ProjSpace(1, extension(gf(q), 2))
    points = line_points(space)
    frame = standard_subline(space)
    index, fourth = next((i, P) for i, P in enumerate(points) if P not in frame)
    chosen = sorted(frame.triple + (fourth,), key=points.index)
    mapping = field_reduction(1, 1, q)
    arr = Arrangement(mapping.big, 1, mapping.images(chosen),
                      provenance=_provenance("pg3_four_lines", q, choices=[index]))
    return certify(arr, workers=workers)


def construct_pg4_six_lines(q, seed=None, workers=None):
    """Six lines of PG(4,q) with exactly one intersecting pair"""
    _check_q(q)
    if q == 2:
        return _search_or_raise(six_lines_template(q, seed=seed or DEFAULT_SEED), workers)
    conf = build_six_lines(q, workers)
    choices = [conf.choices[key] for key in ("l11", "l21", "M3", "l31_point", "l32")]
    arr = Arrangement(conf.space, 1, conf.lines(),
                      labels=["l11", "l12", "l21", "l22", "l31", "l32"],
                      provenance=_provenance("pg4_six_lines", q, choices=choices))
    return certify(arr, workers=workers)


def construct_pg4_six_planes(q, seed=None, workers=None):
    """Six planes of PG(4,q), two of them sharing a line"""
    _check_q(q)
    if q <= 5:
        return _search_or_raise(six_planes_template(q, seed=seed or DEFAULT_SEED), workers)
    arr = dualize(construct_pg4_six_lines(q, workers=workers), workers)
    arr.provenance["construction"] = "pg4_six_planes"
    return arr


def construct_pg5_seven_lines(q, seed=None, workers=None):
    """Seven lines of PG(5,q) drawn from the line spread of PG(2,q^2)"""
    _check_q(q)
    template = spread_template(2, 1, q, 7, seed=seed or DEFAULT_SEED, name="pg5_seven_lines")
    return _search_or_raise(template, workers)


def construct_pg5_seven_solids(q, seed=None, workers=None):
    _check_q(q, least=7)
    arr = dualize(construct_pg5_seven_lines(q, seed, workers), workers)
    arr.provenance["construction"] = "pg5_seven_solids"
    return arr


def concurrent_sublines(space):
    """Three sublines through C pairwise sharing two points, with one more point on each

    Returns:
        tuple: ([C, B12, B13, B23, D1, D2, D3], (b1, b2, b3))
    """
    if _subfield_order(space) < 3:
        raise ArgumentOutOfRange("concurrent sublines need q >= 3")
    points = line_points(space)
    b1 = standard_subline(space)
    C, B12, B13 = b1.triple
    D1 = next(P for P in b1.members if P not in (C, B12, B13))
    B23 = next(P for P in points if P not in b1)
    b2 = subline_through(C, B12, B23)
    D2 = next(P for P in b2.members if P not in (C, B12, B23))
    b3 = subline_through(C, B13, B23)
    D3 = next(P for P in b3.members if P not in (C, B13, B23))
    base = [C, B12, B13, B23, D1, D2, D3]
    logger.debug("Concurrent sublines meet in %d, %d, %d points",
                 b1.meet_size(b2), b1.meet_size(b3), b2.meet_size(b3))
    return base, (b1, b2, b3)


def eight_points(space, workers=None):
    """Concurrent sublines, then the first point Q keeping all eight off every rank-3 linear set"""
    points = line_points(space)
    base, sublines = concurrent_sublines(space)
    for index, Q in enumerate(points):
        if Q in base:
            continue
        if in_linear_set_of_rank_at_most(base + [Q], 3, workers) is None:
            return base + [Q], [points.index(P) for P in base] + [index], sublines
        logger.debug("Point %d lies in the rank-3 linear set", index)
    raise SearchBudgetExhausted("every point lies in the rank-3 linear set")


def construct_pg5_eight_planes(q, seed=None, workers=None):
    """Eight disjoint planes of PG(5,q) from eight points of PG(1,q^3)"""
    _check_q(q)
    if q <= 5:
        template = spread_template(1, 2, q, 8, seed=seed or DEFAULT_SEED, name="pg5_eight_planes")
        return _search_or_raise(template, workers)
    mapping = field_reduction(1, 2, q)
    chosen, choices, _ = eight_points(mapping.small, workers)
    arr = Arrangement(mapping.big, 2, mapping.images(chosen),
                      labels=["C", "B12", "B13", "B23", "D1", "D2", "D3", "Q"],
                      provenance=_provenance("pg5_eight_planes", q, choices=choices))
    return certify(arr, workers=workers)


def subline_triples_search(q, m):
    """Three sublines of PG(1,q^m) pairwise meeting in two points with no common point

    Up to projectivities b1 is the standard subline, b1 and b2 share (0,1)
    and (1,0), and b3 meets b1 in two further points and b2 in two further
    points, so scanning those normal forms is exhaustive.

    Returns:
        tuple: (b1, b2, b3) or None
    """
    if q < 3:
        raise ArgumentOutOfRange("subline triples need q >= 3")
    if q ** m > 2 ** 14:
        raise ArgumentOutOfRange(f"PG(1,{q}^{m}) is beyond the exhaustive search range")
    space = ProjSpace(1, extension(gf(q), m))
    b1 = standard_subline(space)
    P_inf, P_0 = space.point([0, 1]), space.point([1, 0])
    inner1 = [P for P in b1.members if P not in (P_inf, P_0)]
    seen = set()
    checked = 0
    for X in line_points(space):
        if X in b1:
            continue
        b2 = subline_through(P_inf, P_0, X)
        if b2.points in seen:
            continue
        seen.add(b2.points)
        inner2 = [P for P in b2.members if P not in (P_inf, P_0)]
        for U, V in combinations(inner1, 2):
            for W in inner2:
                b3 = subline_through(U, V, W)
                checked += 1
                if b3.meet_size(b1) == 2 and b3.meet_size(b2) == 2:
                    logger.info("Subline triple in PG(1,%d^%d) after %d candidates", q, m, checked)
                    return b1, b2, b3
    logger.info("No subline triple in PG(1,%d^%d) (%d candidates)", q, m, checked)
    return None


def seven_planes_spread_search(q, seed=None, trials=None, workers=None):
    """Seven planes of one Desarguesian spread of PG(5,q), or None within the budget"""
    _check_q(q)
    template = spread_template(1, 2, q, 7, seed=seed or DEFAULT_SEED,
                               budget=trials or budget("search_trials"), name="seven_planes_spread")
    outcome = run(template, workers)
    return outcome.arrangement if outcome.found else None


CONSTRUCTIONS = {
    "pg3_four_lines": construct_pg3_four_lines,
    "pg4_six_lines": construct_pg4_six_lines,
    "pg4_six_planes": construct_pg4_six_planes,
    "pg5_seven_lines": construct_pg5_seven_lines,
    "pg5_seven_solids": construct_pg5_seven_solids,
    "pg5_eight_planes": construct_pg5_eight_planes,
}
