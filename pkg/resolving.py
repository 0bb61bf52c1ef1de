"""
Resolving sets of the point-hyperplane incidence graph of PG(N,q)

A hyperplane is stored as the point dual to it, so both vertex kinds are
indexed by point enumeration indices. The graph is never built for the
checks themselves; distances follow from incidence alone.
"""

import logging
import time
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Optional

import networkx as nx
import numpy as np

from models.projective_space import ProjSpace, dual, enumerate_subspaces, gf_matmul, subspace_index
from settings import budget
from utils.constants import SCHEMA_VERSION
from utils.exceptions import ArgumentOutOfRange, ArtifactError, BudgetExceeded, InvalidPicks
from utils.helpers import elapsed_ms

logger = logging.getLogger(__name__)

POINT = "point"
HYPERPLANE = "hyperplane"


@dataclass(frozen=True)
class IncidenceVertex:
    kind: str
    subspace: object

    def __post_init__(self):
        if self.kind not in (POINT, HYPERPLANE):
            raise ArgumentOutOfRange(f"unknown vertex kind {self.kind!r}")
        expected = 0 if self.kind == POINT else self.subspace.space.N - 1
        if self.subspace.dim != expected:
            raise ArgumentOutOfRange(f"{self.kind} vertex needs a {expected}-subspace, got dimension {self.subspace.dim}")

    @classmethod
    def point(cls, P):
        return cls(POINT, P)

    @classmethod
    def hyperplane_of(cls, P):
        """Hyperplane dual to a point"""
        return cls(HYPERPLANE, dual(P))

    @property
    def space(self):
        return self.subspace.space

    @property
    def coords(self):
        """Point coordinates, or the coefficients of the hyperplane equation"""
        if self.kind == POINT:
            return self.subspace.coords
        return dual(self.subspace).coords

    def to_dict(self):
        return {"kind": self.kind, "coords": list(self.coords)}

    @classmethod
    def from_dict(cls, data, space):
        try:
            P = space.point(data["coords"])
            return cls.point(P) if data["kind"] == POINT else cls.hyperplane_of(P)
        except (KeyError, TypeError) as e:
            raise ArtifactError(f"malformed vertex {data!r}: {e}") from e


def distance(u, v):
    """Closed-form distance in the incidence graph (N >= 2)"""
    if u.space.N < 2:
        raise ArgumentOutOfRange("the incidence graph is connected for N >= 2 only")
    if u == v:
        return 0
    if u.kind == v.kind:
        return 2
    point, hyperplane = (u, v) if u.kind == POINT else (v, u)
    return 1 if hyperplane.subspace.contains(point.subspace) else 3


# Explicit graph

def _node(vertex):
    index = subspace_index(vertex.subspace if vertex.kind == POINT else dual(vertex.subspace))
    return (vertex.kind, index)


def incidence_graph(space):
    """Point-hyperplane incidence graph; nodes are (kind, point index) pairs"""
    if 2 * space.point_count > budget("resolving_vertices"):
        raise BudgetExceeded(f"{space!r} has more than {budget('resolving_vertices')} vertices")
    points = list(enumerate_subspaces(space, 0))
    graph = nx.Graph()
    graph.add_nodes_from((POINT, i) for i in range(len(points)))
    graph.add_nodes_from((HYPERPLANE, i) for i in range(len(points)))
    incident = _incidence_matrix(space, points, points)
    for i, j in zip(*np.nonzero(incident)):
        graph.add_edge((POINT, int(i)), (HYPERPLANE, int(j)))
    return graph


def bfs_distance(graph, u, v):
    return nx.shortest_path_length(graph, _node(u), _node(v))


# Resolving checks

def _incidence_matrix(space, rows, cols):
    """True where the point of a row lies on the hyperplane dual to the point of a column"""
    if not rows or not cols:
        return np.zeros((len(rows), len(cols)), np.bool_)
    a = [P.coords for P in rows]
    b = np.array([P.coords for P in cols], dtype=np.int64).T
    return gf_matmul(space.field, a, b) == 0


def distance_vectors(space, vertices):
    """Distance vector of every vertex to the given list

    Returns:
        tuple: (points in enumeration order, (2 * point_count, len(vertices)) uint8 array
            with point vertices first, then hyperplanes in the same order)
    """
    if space.N < 2:
        raise ArgumentOutOfRange("the incidence graph is connected for N >= 2 only")
    if 2 * space.point_count > budget("resolving_vertices"):
        raise BudgetExceeded(f"{space!r} has more than {budget('resolving_vertices')} vertices")
    points = list(enumerate_subspaces(space, 0))
    keys = [v.subspace if v.kind == POINT else dual(v.subspace) for v in vertices]
    incident = _incidence_matrix(space, points, keys)
    position = {P: i for i, P in enumerate(points)}
    count = len(points)
    vectors = np.zeros((2 * count, len(vertices)), np.uint8)
    for c, (v, key) in enumerate(zip(vertices, keys)):
        same = np.full(count, 2, np.uint8)
        same[position[key]] = 0
        cross = np.where(incident[:, c], 1, 3).astype(np.uint8)
        if v.kind == POINT:
            vectors[:count, c] = same
            vectors[count:, c] = cross
        else:
            vectors[:count, c] = cross
            vectors[count:, c] = same
    return points, vectors


def _vertex(points, row):
    count = len(points)
    if row < count:
        return IncidenceVertex.point(points[row])
    return IncidenceVertex.hyperplane_of(points[row - count])


def collision_classes(vectors):
    """Rows sharing a distance vector, largest class first"""
    classes = defaultdict(list)
    for row, vector in enumerate(vectors):
        classes[vector.tobytes()].append(row)
    return sorted((rows for rows in classes.values() if len(rows) > 1), key=lambda rows: (-len(rows), rows[0]))


def is_resolving(space, vertices):
    """Check that distance vectors to the given vertices separate the whole graph

    Returns:
        tuple: (True, None) or (False, a colliding vertex pair)
    """
    vertices = list(dict.fromkeys(vertices))
    points, vectors = distance_vectors(space, vertices)
    seen = {}
    for row, vector in enumerate(vectors):
        key = vector.tobytes()
        if key in seen:
            return False, (_vertex(points, seen[key]), _vertex(points, row))
        seen[key] = row
    return True, None


@dataclass
class ResolvingSet:
    space: ProjSpace
    vertices: list
    punctured: int
    augmentations: int = 0
    resolving: bool = False
    collision: Optional[tuple] = None
    picks: list = field(default_factory=list)

    def __len__(self):
        return len(self.vertices)

    def to_dict(self):
        return {
            "format": SCHEMA_VERSION,
            "field": self.space.field.to_dict(),
            "N": self.space.N,
            "vertices": [v.to_dict() for v in self.vertices],
            "augmentations": self.augmentations,
            "punctured": self.punctured,
            "resolving": self.resolving,
            "collision": [v.to_dict() for v in self.collision] if self.collision else None,
        }


def default_picks(arr):
    """First point of each line lying on no other line"""
    picks = []
    for i, line in enumerate(arr.elements):
        others = [e for j, e in enumerate(arr.elements) if j != i]
        pick = next((P for P in line.point_list if not any(e.contains(P) for e in others)), None)
        if pick is None:
            raise InvalidPicks(f"every point of line {i} lies on another line")
        picks.append(pick)
    return picks


def _check_picks(arr, picks):
    if len(picks) != len(arr):
        raise InvalidPicks(f"{len(picks)} picks for {len(arr)} lines")
    for i, (line, P) in enumerate(zip(arr.elements, picks)):
        if P.rank != 1 or P.space != arr.space or not line.contains(P):
            raise InvalidPicks(f"pick {i} is not a point of line {i}")
        if any(e.contains(P) for j, e in enumerate(arr.elements) if j != i):
            raise InvalidPicks(f"pick {i} lies on another line")


def resolving_from_lines(arr, picks=None):
    """Resolving set of size 2m from a higgledy-piggledy line set

    Point vertices are the line points other than the picks; hyperplane vertices
    are the hyperplanes dual to the same points. A failed check is repaired
    greedily, one vertex of the largest collision class at a time.

    Args:
        arr (Arrangement): Line arrangement, certified higgledy-piggledy
        picks (list): One point per line lying on no other line; defaults to default_picks

    Returns:
        ResolvingSet: Vertices, m and the augmentation count
    """
    if arr.k != 1:
        raise InvalidPicks(f"resolving sets are built from lines, got {arr.k}-subspaces")
    if arr.certificate is None or not arr.certificate.is_higgledy_piggledy:
        logger.warning("Building a resolving set from an arrangement without a HigPig certificate")
    picks = list(picks) if picks is not None else default_picks(arr)
    _check_picks(arr, picks)
    start = time.perf_counter()
    punctured = []
    for line, P in zip(arr.elements, picks):
        punctured.extend(X for X in line.point_list if X != P and X not in punctured)
    vertices = [IncidenceVertex.point(X) for X in punctured]
    vertices += [IncidenceVertex.hyperplane_of(X) for X in punctured]

    result = ResolvingSet(arr.space, vertices, len(punctured), picks=picks)
    points, vectors = distance_vectors(arr.space, vertices)
    classes = collision_classes(vectors)
    while classes:
        row = classes[0][0]
        result.vertices.append(_vertex(points, row))
        result.augmentations += 1
        logger.warning("Resolving candidate collides on %d vertices; adding one", len(classes[0]))
        points, vectors = distance_vectors(arr.space, result.vertices)
        classes = collision_classes(vectors)
    result.resolving, result.collision = is_resolving(arr.space, result.vertices)
    logger.info("Resolving set of size %d (m=%d, %d augmentations) in %r, %.1f ms",
                len(result), result.punctured, result.augmentations, arr.space, elapsed_ms(start))
    return result


def load_vertices(data, space):
    return [IncidenceVertex.from_dict(v, space) for v in data]
