from itertools import product

import pytest

from models.arrangement import Arrangement
from models.galois_field import gf
from models.projective_space import ProjSpace, dual, enumerate_subspaces, span
from resolving import (
    HYPERPLANE,
    POINT,
    IncidenceVertex,
    bfs_distance,
    default_picks,
    distance,
    distance_vectors,
    incidence_graph,
    is_resolving,
    load_vertices,
    resolving_from_lines,
)
from utils.constants import SCHEMA_VERSION
from utils.exceptions import ArgumentOutOfRange, InvalidPicks


def all_vertices(space):
    points = list(enumerate_subspaces(space, 0))
    return [IncidenceVertex.point(P) for P in points] + [IncidenceVertex.hyperplane_of(P) for P in points]


def test_vertex_validation(pg22):
    with pytest.raises(ArgumentOutOfRange):
        IncidenceVertex("line", pg22.unit_point(0))
    with pytest.raises(ArgumentOutOfRange):
        IncidenceVertex(HYPERPLANE, pg22.unit_point(0))
    H = IncidenceVertex.hyperplane_of(pg22.unit_point(0))
    assert H.kind == HYPERPLANE
    assert H.subspace.dim == 1
    assert H.coords == (1, 0, 0)


def test_closed_form_distances(pg22):
    P = IncidenceVertex.point(pg22.unit_point(0))
    on = IncidenceVertex.hyperplane_of(pg22.unit_point(1))
    off = IncidenceVertex.hyperplane_of(pg22.unit_point(0))
    assert distance(P, P) == 0
    assert distance(P, on) == 1
    assert distance(on, P) == 1
    assert distance(P, off) == 3
    assert distance(on, off) == 2
    assert distance(P, IncidenceVertex.point(pg22.unit_point(1))) == 2


@pytest.mark.parametrize("fixture", ["pg22", "pg32"])
def test_closed_form_matches_bfs(fixture, request):
    space = request.getfixturevalue(fixture)
    graph = incidence_graph(space)
    vertices = all_vertices(space)
    assert graph.number_of_nodes() == len(vertices)
    for u, v in product(vertices, repeat=2):
        assert distance(u, v) == bfs_distance(graph, u, v)


def test_distance_needs_a_plane():
    line = ProjSpace(1, gf(2))
    P = IncidenceVertex.point(line.unit_point(0))
    with pytest.raises(ArgumentOutOfRange):
        distance(P, P)


def test_distance_vectors_layout(pg22):
    chosen = [IncidenceVertex.point(pg22.unit_point(0))]
    points, vectors = distance_vectors(pg22, chosen)
    assert vectors.shape == (14, 1)
    row = points.index(pg22.unit_point(0))
    assert vectors[row, 0] == 0
    assert sorted(vectors[:7, 0].tolist()) == [0] + [2] * 6
    assert sorted(vectors[7:, 0].tolist()) == [1] * 3 + [3] * 4


def test_empty_set_is_not_resolving(pg22):
    resolving, pair = is_resolving(pg22, [])
    assert not resolving
    assert pair[0] != pair[1]


def test_all_vertices_resolve(pg22):
    assert is_resolving(pg22, all_vertices(pg22)) == (True, None)


def test_single_point_does_not_resolve(pg22):
    resolving, (u, v) = is_resolving(pg22, [IncidenceVertex.point(pg22.unit_point(0))])
    assert not resolving
    assert u.kind == v.kind


def test_four_lines_resolving_set(four_lines_q2):
    result = resolving_from_lines(four_lines_q2)
    assert result.resolving
    assert result.augmentations == 0
    assert result.punctured == 8
    assert len(result) == 16
    assert len({v for v in result.vertices if v.kind == POINT}) == 8
    assert is_resolving(four_lines_q2.space, result.vertices)[0]


def test_resolving_set_dict(four_lines_q2):
    result = resolving_from_lines(four_lines_q2)
    data = result.to_dict()
    assert data["format"] == SCHEMA_VERSION
    assert data["collision"] is None
    assert load_vertices(data["vertices"], four_lines_q2.space) == result.vertices


def test_default_picks(four_lines_q2):
    picks = default_picks(four_lines_q2)
    assert len(picks) == 4
    for line, P in zip(four_lines_q2.elements, picks):
        assert line.contains(P)


def test_invalid_picks(four_lines_q2, pg32):
    picks = default_picks(four_lines_q2)
    with pytest.raises(InvalidPicks):
        resolving_from_lines(four_lines_q2, picks[:3])
    with pytest.raises(InvalidPicks):
        resolving_from_lines(four_lines_q2, [picks[1]] + picks[1:])
    plane = Arrangement(pg32, 2, [dual(pg32.unit_point(0))])
    with pytest.raises(InvalidPicks):
        resolving_from_lines(plane)


def test_picks_on_shared_points(pg32):
    a = span([pg32.unit_point(0), pg32.unit_point(1)])
    b = span([pg32.unit_point(0), pg32.unit_point(2)])
    arr = Arrangement(pg32, 1, [a, b])
    with pytest.raises(InvalidPicks):
        resolving_from_lines(arr, [pg32.unit_point(0), pg32.unit_point(2)])
