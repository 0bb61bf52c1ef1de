"""
Point sets as linear codes: minimality, covering radius and saturation

Columns of a generator matrix are the points of a strong blocking set when the
code is minimal; columns of a parity-check matrix are the points of a
saturating set, and then the covering radius is the saturation degree plus one.
"""

import logging
import math
import time
from itertools import combinations

import numpy as np

from constructions import construct_pg4_six_lines, construct_pg4_six_planes
from models.galois_field import extension
from models.linear_code import LinearCode, transpose
from models.projective_space import ProjSpace, enumerate_subspaces, gf_matmul, span, subspace_at
from settings import budget
from utils.constants import MATRIX_TABLE_LIMIT
from utils.exceptions import ArgumentOutOfRange, BudgetExceeded, NotSpanning
from utils.helpers import elapsed_ms
from utils.kernels import first_nested_support, mark_spans, syndrome_bfs
from utils.stats import bounds_table

logger = logging.getLogger(__name__)

SUPPORT_BITS = 64


def _point_list(points):
    points = list(points)
    if not points:
        raise ArgumentOutOfRange("empty point set")
    space = points[0].space
    if any(P.space != space or P.rank != 1 for P in points):
        raise ArgumentOutOfRange("expected points of one projective space")
    return points, space


def code_from_points(points):
    """Code whose generator columns are the given points, in input order

    Args:
        points (list): Points of PG(k-1,q) spanning the space

    Returns:
        LinearCode: [len(points), k]_q code
    """
    points, space = _point_list(points)
    if span(points).rank != space.n:
        raise NotSpanning(f"{len(points)} points do not span {space!r}")
    return LinearCode(space.field, generator=transpose([P.coords for P in points]))


def code_from_parity_points(points):
    """Code whose parity-check columns are the given points"""
    points, space = _point_list(points)
    if span(points).rank != space.n:
        raise NotSpanning(f"{len(points)} points do not span {space!r}")
    return LinearCode(space.field, parity=transpose([P.coords for P in points]))


def codeword_classes(code):
    """One codeword per projective class, as an (m, n) index array"""
    if code.k == 0:
        return np.zeros((0, code.n), np.int64)
    if code.k == 1:
        return code.generator_array()
    messages = ProjSpace(code.k - 1, code.field)
    rows = [P.coords for P in enumerate_subspaces(messages, 0)]
    return gf_matmul(code.field, rows, code.generator_array())


def _supports(words):
    weights = np.left_shift(np.uint64(1), np.arange(words.shape[1], dtype=np.uint64))
    return np.bitwise_or.reduce(np.where(words != 0, weights, np.uint64(0)), axis=1).astype(np.uint64)


def is_minimal_code(code):
    """Decide minimality by pairwise support containment

    Returns:
        tuple: (True, None) or (False, {"contained": word, "container": word})
    """
    if code.q ** code.k > budget("minimality_codewords"):
        raise BudgetExceeded(f"{code!r} has more than {budget('minimality_codewords')} codewords")
    if code.n > SUPPORT_BITS:
        raise BudgetExceeded(f"supports wider than {SUPPORT_BITS} coordinates")
    start = time.perf_counter()
    words = codeword_classes(code)
    if len(words) < 2:
        return True, None
    i, j = first_nested_support(_supports(words))
    logger.info("Minimality of %r: %d codeword classes checked in %.1f ms", code, len(words), elapsed_ms(start))
    if i < 0:
        return True, None
    return False, {"contained": words[i].tolist(), "container": words[j].tolist()}


def syndrome_distances(code):
    """Coset leader weight of every syndrome, indexed by little-endian digits

    Returns:
        tuple: (distance array, number of syndromes reached)
    """
    q, r = code.q, code.r
    if q ** r > budget("syndromes"):
        raise BudgetExceeded(f"{q}^{r} syndromes exceed the budget of {budget('syndromes')}")
    tables = code.field.tables
    H = code.parity_array()
    moves = set()
    for j in range(code.n):
        column = H[:, j]
        for a in range(1, q):
            moves.add(tuple(int(tables.mul[a, x]) for x in column))
    moves = np.array(sorted(moves), dtype=np.int64).reshape(-1, r)
    dist = np.full(q ** r, -1, np.int64)
    queue = np.zeros(q ** r, np.int64)
    reached = syndrome_bfs(moves, q, r, tables.add, dist, queue)
    return dist, int(reached)


def covering_radius(code):
    """Exact covering radius by breadth-first search over syndromes"""
    if code.r == 0:
        return 0
    start = time.perf_counter()
    dist, reached = syndrome_distances(code)
    if reached != len(dist):
        raise NotSpanning(f"parity-check columns reach {reached} of {len(dist)} syndromes")
    radius = int(dist.max())
    logger.info("Covering radius of %r is %d (%d syndromes, %.1f ms)", code, radius, reached, elapsed_ms(start))
    return radius


def _point_offsets(n, q):
    offsets = np.zeros(n, np.int64)
    for lead in range(1, n):
        offsets[lead] = offsets[lead - 1] + q ** (n - lead)
    return offsets


def is_saturating(points, rho):
    """Check that every point lies in a subspace of dimension <= rho spanned by the set

    Args:
        points (list): Points of one PG(N,q)
        rho (int): Saturation degree

    Returns:
        tuple: (True, None) or (False, first unsaturated point)
    """
    points, space = _point_list(dict.fromkeys(points))
    if rho < 0:
        raise ArgumentOutOfRange(f"saturation degree must be non-negative, got {rho}")
    q, n = space.q, space.n
    t = min(rho + 1, len(points))
    work = math.comb(len(points), t) * (q ** t - 1) // (q - 1)
    if work > budget("saturation_work") or space.point_count > budget("saturation_work"):
        raise BudgetExceeded(f"saturation check needs {work} span points over {space.point_count} points")
    start = time.perf_counter()
    vectors = np.array([P.coords for P in points], dtype=np.int64)
    subsets = np.array(list(combinations(range(len(points)), t)), dtype=np.int64)
    marks = np.zeros(space.point_count, np.bool_)
    tables = space.field.tables
    mark_spans(vectors, subsets, q, n, tables.add, tables.mul, tables.inv, _point_offsets(n, q), marks)
    missing = np.flatnonzero(~marks)
    logger.info("Saturation of %d points in %r at rho=%d: %d unsaturated (%.1f ms)",
                len(points), space, rho, len(missing), elapsed_ms(start))
    if len(missing):
        return False, subspace_at(space, 0, int(missing[0]))
    return True, None


def least_saturation(points):
    """Least rho for which the points are rho-saturating, or None if they do not span"""
    points, space = _point_list(dict.fromkeys(points))
    rank = span(points).rank
    if rank != space.n:
        return None
    for rho in range(rank):
        if is_saturating(points, rho)[0]:
            return rho
    return rank - 1


def embed_points(points, field):
    """Reinterpret points over a field that extends their own"""
    points, space = _point_list(points)
    if not field.has_subfield(space.field):
        raise ArgumentOutOfRange(f"{field!r} does not extend {space.field!r}")
    ambient = ProjSpace(space.N, field)
    return [ambient.point(P.coords) for P in points]


def embed_and_check(points, k):
    """Check a strong k-blocking set of PG(N,q) as an (N-k)-saturating set of PG(N,q^(N-k+1))

    Returns:
        dict: ambient space, rho, saturating flag and unsaturated witness
    """
    points, space = _point_list(dict.fromkeys(points))
    degree = space.N - k + 1
    if space.q ** degree > MATRIX_TABLE_LIMIT:
        raise BudgetExceeded(f"ambient field of order {space.q}^{degree} is beyond the scan limit")
    field = extension(space.field, degree)
    ambient_points = embed_points(points, field)
    rho = space.N - k
    saturating, witness = is_saturating(ambient_points, rho)
    return {
        "ambient": repr(ambient_points[0].space),
        "points": len(points),
        "rho": rho,
        "saturating": saturating,
        "witness": list(witness.coords) if witness is not None else None,
    }


def _resolving_lower(N, q):
    return 2 * N * q - 2 * N ** (N - 1) / math.factorial(N - 1)


def bound_rows(q):
    """Closed-form length bounds at one q"""
    e = math.e
    rows = [
        ("m(5,q)", "lower", "4q+4", 4 * q + 4, ""),
        ("m(5,q)", "literature", "8q-3", 8 * q - 3, ""),
        ("m(5,q)", "construction", "6q+5", 6 * q + 5, ""),
        ("s_{q^4}(4,3)", "lower", "(4/e)q+3/2", round(4 / e * q + 1.5, 3), "strict"),
        ("s_{q^4}(4,3)", "literature", "8q-3", 8 * q - 3, ""),
        ("s_{q^4}(4,3)", "construction", "6q+5", 6 * q + 5, ""),
        ("l_{q^4}(5,4)", "construction", "6q+5", 6 * q + 5, ""),
        ("s_{q^3}(4,2)", "lower", "(3/e)q^2+1", round(3 / e * q ** 2 + 1, 3), "strict"),
        ("s_{q^3}(4,2)", "literature", "6q^2+3q-6", 6 * q ** 2 + 3 * q - 6, ""),
        ("s_{q^4}(5,3)", "lower", "(4/e)q^2+3/2", round(4 / e * q ** 2 + 1.5, 3), "strict"),
        ("s_{q^4}(5,3)", "literature", "4q^2+4q+4", 4 * q ** 2 + 4 * q + 4, ""),
        ("s_{q^4}(5,3)", "construction", "8q^2+8q+8", 8 * q ** 2 + 8 * q + 8, ""),
        ("s_{q^3}(5,2)", "lower", "(3/e)q^3+1", round(3 / e * q ** 3 + 1, 3), "strict"),
        ("s_{q^3}(5,2)", "literature", "3q^3+1", 3 * q ** 3 + 1, ""),
        ("resolving(3,q)", "construction", "8q", 8 * q, ""),
        ("resolving(4,q)", "construction", "12q-2", 12 * q - 2, ""),
        ("resolving(5,q)", "construction", "14q", 14 * q, ""),
    ]
    if q >= 7:
        rows.append(("m(5,q)", "literature", "7q+7", 7 * q + 7, "q >= 7"))
        rows.append(("s_{q^3}(4,2)", "construction", "6q^2+5q-9", 6 * q ** 2 + 5 * q - 9, "q >= 7"))
        rows.append(("s_{q^3}(5,2)", "construction", "7q^3+7q^2-14q-14",
                     7 * q ** 3 + 7 * q ** 2 - 14 * q - 14, "q >= 7"))
    else:
        rows.append(("s_{q^3}(4,2)", "construction", "6q^2+5q+1", 6 * q ** 2 + 5 * q + 1, "q <= 5"))
    if q == 2:
        rows.append(("m(5,q)", "known", "m(5,2)", 13, "q = 2"))
        rows.append(("s_{q^4}(4,3)", "known", "s_16(4,3)", 13, "q = 2"))
    if q == 3:
        rows.append(("m(5,q)", "known", "m(5,3)", 20, "q = 3, upper"))
        rows.append(("s_{q^4}(4,3)", "known", "s_81(4,3)", 20, "q = 3, upper"))
    for N in (3, 4, 5):
        rows.append((f"resolving({N},q)", "lower", "2Nq-2N^(N-1)/(N-1)!", round(_resolving_lower(N, q), 3),
                     "large q"))
    return [dict(zip(("quantity", "kind", "formula", "value", "condition"), row)) for row in rows]


def desk_instances(q, workers=None):
    """Verified instances attached to the bounds table

    Returns:
        dict: quantity -> short description of what was verified
    """
    instances = {}
    lines = construct_pg4_six_lines(q, workers=workers)
    points = sorted(lines.point_set(), key=lambda P: P.rows)
    code = code_from_points(points)
    minimal, _ = is_minimal_code(code)
    instances["m(5,q)"] = f"{code!r} from six lines, minimal={minimal}"
    if (q ** 4) ** 5 <= budget("syndromes"):
        check = embed_and_check(points, 1)
        instances["s_{q^4}(4,3)"] = f"{check['points']} points {check['rho']}-saturating in {check['ambient']}: " \
                                    f"{check['saturating']}"
        radius = covering_radius(code_from_parity_points(embed_points(points, extension(lines.space.field, 4))))
        instances["l_{q^4}(5,4)"] = f"[{len(points)},{len(points) - 5}]_{q ** 4} code, covering radius {radius}"
    planes = construct_pg4_six_planes(q, workers=workers)
    instances["s_{q^3}(4,2)"] = f"six planes cover {len(planes.point_set())} points"
    return instances


def bounds_report(q, instances=None):
    """Every closed-form bound at q with verified instances attached where present

    Args:
        q (int): Field order
        instances (dict): quantity -> description, e.g. from desk_instances

    Returns:
        DataFrame: Bounds table
    """
    if q < 2:
        raise ArgumentOutOfRange(f"q must be at least 2, got {q}")
    instances = instances or {}
    rows = bound_rows(q)
    for row in rows:
        row["instance"] = instances.get(row["quantity"]) if row["kind"] == "construction" else None
    return bounds_table(rows)
