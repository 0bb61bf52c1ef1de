from itertools import combinations

import pytest

from constructions import (
    CONSTRUCTIONS,
    concurrent_sublines,
    construct_pg4_six_planes,
    construct_pg5_seven_solids,
    dualize,
    eight_points,
    enumerate_sublines,
    in_linear_set_of_rank_at_most,
    line_points,
    linear_set,
    project,
    standard_subline,
    subline_count,
    subline_through,
    subline_triples_search,
    tetrahedron,
)
from models.arrangement import Arrangement
from models.galois_field import extension, gf
from models.projective_space import ProjSpace, meet, span
from models.spread import field_reduction
from utils.exceptions import (
    ArgumentOutOfRange,
    ConstructionNotCertified,
    DegenerateTriple,
    DimensionOutOfRange,
    PointInHyperplane,
    PointOnElement,
    SearchBudgetExhausted,
)


def pg1(q, m):
    return ProjSpace(1, extension(gf(q), m))


def pairwise_disjoint(arr):
    return all(a.is_disjoint(b) for a, b in combinations(arr.elements, 2))


def test_registry():
    assert set(CONSTRUCTIONS) == {
        "pg3_four_lines", "pg4_six_lines", "pg4_six_planes",
        "pg5_seven_lines", "pg5_seven_solids", "pg5_eight_planes",
    }


def test_four_lines_q2(four_lines_q2):
    assert len(four_lines_q2) == 4
    assert four_lines_q2.space.N == 3
    assert four_lines_q2.certificate.is_higgledy_piggledy
    assert pairwise_disjoint(four_lines_q2)
    assert len(four_lines_q2.point_set()) == 12
    assert four_lines_q2.provenance["construction"] == "pg3_four_lines"


def test_four_lines_q3():
    arr = CONSTRUCTIONS["pg3_four_lines"](3, workers=1)
    assert arr.certificate.is_higgledy_piggledy
    assert len(arr.point_set()) == 16


def test_four_lines_rejects_small_q():
    with pytest.raises(ArgumentOutOfRange):
        CONSTRUCTIONS["pg3_four_lines"](1)


@pytest.mark.parametrize("q", [2, 3])
def test_tetrahedron(q):
    arr = tetrahedron(ProjSpace(3, gf(q)), workers=1)
    assert len(arr) == 6
    assert arr.certificate.is_higgledy_piggledy


def test_tetrahedron_needs_a_plane():
    with pytest.raises(DimensionOutOfRange):
        tetrahedron(ProjSpace(1, gf(2)))


def test_dualize(four_lines_q2):
    dual = dualize(four_lines_q2, workers=1)
    assert dual.k == 1
    assert len(dual) == 4
    assert dual.certificate.is_higgledy_piggledy


def test_project_tetrahedron():
    space = ProjSpace(3, gf(3))
    arr = tetrahedron(space, workers=1)
    sigma = span([space.unit_point(0), space.unit_point(1), space.unit_point(2)])
    centre = space.point([1, 1, 1, 1])
    shadow = project(arr, sigma, centre, workers=1)
    assert shadow.space.N == 2
    assert shadow.k == 1
    assert 1 <= len(shadow) <= 6
    assert shadow.certificate is not None


def test_project_rejects_bad_centres():
    space = ProjSpace(3, gf(3))
    arr = tetrahedron(space, workers=1)
    sigma = span([space.unit_point(0), space.unit_point(1), space.unit_point(2)])
    with pytest.raises(PointInHyperplane):
        project(arr, sigma, space.unit_point(0))
    with pytest.raises(PointOnElement):
        project(arr, span([space.unit_point(1), space.unit_point(2), space.point([1, 0, 0, 1])]),
                space.unit_point(0))
    with pytest.raises(DimensionOutOfRange):
        project(arr, span([space.unit_point(0), space.unit_point(1)]), space.point([1, 1, 1, 1]))


def test_line_points():
    space = pg1(2, 2)
    points = line_points(space)
    assert len(points) == 5
    with pytest.raises(DimensionOutOfRange):
        line_points(ProjSpace(2, gf(4)))


def test_standard_subline():
    space = pg1(3, 2)
    b = standard_subline(space)
    assert len(b) == 4
    assert all(P in b for P in b.triple)
    assert space.point([0, 1]) in b


def test_subline_through_is_unique():
    space = pg1(3, 2)
    b = standard_subline(space)
    P1, P2, P3 = b.triple
    other = [P for P in b.members if P not in b.triple][0]
    assert subline_through(P1, P2, other).points == b.points
    assert subline_through(P3, other, P2).points == b.points


def test_degenerate_triple():
    space = pg1(2, 2)
    P = space.point([1, 0])
    with pytest.raises(DegenerateTriple):
        subline_through(P, P, space.point([0, 1]))


@pytest.mark.parametrize("q,m", [(2, 2), (3, 2), (2, 3)])
def test_subline_count(q, m):
    sublines = enumerate_sublines(pg1(q, m))
    assert len(sublines) == subline_count(q, m)
    assert all(len(b) == q + 1 for b in sublines)


def test_sublines_share_at_most_two_points():
    sublines = enumerate_sublines(pg1(3, 2))
    assert all(a.meet_size(b) <= 2 for a, b in combinations(sublines, 2))


def test_subline_triples_found():
    triple = subline_triples_search(3, 2)
    assert triple is not None
    b1, b2, b3 = triple
    assert b1.meet_size(b2) == 2
    assert b1.meet_size(b3) == 2
    assert b2.meet_size(b3) == 2
    assert not (b1.points & b2.points & b3.points)


def test_subline_triples_range():
    with pytest.raises(ArgumentOutOfRange):
        subline_triples_search(2, 2)


def test_linear_set_of_a_point_is_one_point():
    mapping = field_reduction(1, 1, 3)
    point = mapping.big.unit_point(0)
    assert len(linear_set(mapping.small, point)) == 1


def test_subline_lies_in_rank_two_linear_set():
    b = standard_subline(pg1(2, 2))
    assert in_linear_set_of_rank_at_most(b.members, 2) is not None


def test_four_line_points_avoid_rank_two_linear_sets(four_lines_q2):
    mapping = field_reduction(1, 1, 2)
    points = [P for P in mapping.points() if mapping.image(P) in four_lines_q2.elements]
    assert len(points) == 4
    assert in_linear_set_of_rank_at_most(points, 2) is None


def test_linear_set_rank_range():
    b = standard_subline(pg1(2, 2))
    with pytest.raises(ArgumentOutOfRange):
        in_linear_set_of_rank_at_most(b.members, 4)


def test_dualize_is_an_involution(four_lines_q2, pg32):
    twice = dualize(dualize(four_lines_q2, workers=1), workers=1)
    assert twice.elements == four_lines_q2.elements
    assert twice.k == 1
    frame = Arrangement(pg32, 0, [pg32.unit_point(i) for i in range(4)])
    planes = dualize(frame, workers=1)
    assert planes.k == 2
    assert dualize(planes, workers=1).elements == frame.elements


def test_dualize_of_a_failed_set_raises(pg33):
    lines = Arrangement(pg33, 1, [span([pg33.unit_point(0), pg33.unit_point(i)]) for i in (1, 2)])
    with pytest.raises(ConstructionNotCertified) as excinfo:
        dualize(lines, workers=1)
    assert excinfo.value.arrangement.certificate.verdict == "NotHigPig"


def test_project_merges_coplanar_shadows():
    space = ProjSpace(3, gf(3))
    arr = tetrahedron(space, workers=1)
    sigma = span([space.unit_point(1), space.unit_point(2), space.unit_point(3)])
    shadow = project(arr, sigma, space.point([1, 1, 1, 0]), workers=1)
    assert len(arr) == 6
    assert len(shadow) == 4
    assert len(set(shadow.elements)) == 4
    assert shadow.certificate.is_higgledy_piggledy
    assert shadow.provenance["construction"] == "project"


def test_project_of_a_failed_set_raises(pg33):
    e = [pg33.unit_point(i) for i in range(4)]
    lines = Arrangement(pg33, 1, [span([e[0], e[1]]), span([e[0], e[2]])])
    with pytest.raises(ConstructionNotCertified):
        project(lines, span([e[0], e[1], e[2]]), e[3], workers=1)


@pytest.mark.parametrize("q", [3, 4])
def test_concurrent_sublines(q):
    base, (b1, b2, b3) = concurrent_sublines(pg1(q, 3))
    C, B12, B13, B23, D1, D2, D3 = base
    assert len(set(base)) == 7
    assert b1.meet_size(b2) == b1.meet_size(b3) == b2.meet_size(b3) == 2
    assert b1.points & b2.points & b3.points == {C}
    assert {B12, B13, D1} <= b1.points
    assert {B12, B23, D2} <= b2.points
    assert {B13, B23, D3} <= b3.points


def test_concurrent_sublines_need_q3():
    with pytest.raises(ArgumentOutOfRange):
        concurrent_sublines(pg1(2, 3))


def test_eight_points_skips_rank_three_candidates(monkeypatch):
    space = pg1(3, 3)
    tried = []

    def rank_three_witness(points, r, workers=None):
        assert r == 3
        tried.append(points[-1])
        return None if len(tried) == 3 else "witness"

    monkeypatch.setattr("constructions.in_linear_set_of_rank_at_most", rank_three_witness)
    chosen, choices, _ = eight_points(space)
    points = line_points(space)
    base, _ = concurrent_sublines(space)
    candidates = [P for P in points if P not in base]
    assert tried == candidates[:3]
    assert chosen == base + [candidates[2]]
    assert choices == [points.index(P) for P in chosen]


def test_eight_points_exhausted(monkeypatch):
    monkeypatch.setattr("constructions.in_linear_set_of_rank_at_most", lambda points, r, workers=None: "witness")
    with pytest.raises(SearchBudgetExhausted):
        eight_points(pg1(3, 3))


@pytest.mark.parametrize("q,m", [(3, 3), (4, 3)])
def test_no_subline_triples_for_odd_degree(q, m):
    assert subline_triples_search(q, m) is None


def test_subline_triples_q4():
    b1, b2, b3 = subline_triples_search(4, 2)
    assert b1.meet_size(b2) == b1.meet_size(b3) == b2.meet_size(b3) == 2
    assert not (b1.points & b2.points & b3.points)


def test_six_planes_q2():
    arr = construct_pg4_six_planes(2, workers=1)
    assert (arr.N, arr.k, len(arr)) == (4, 2, 6)
    assert arr.certificate.is_higgledy_piggledy
    assert any(meet(a, b).dim == 1 for a, b in combinations(arr.elements, 2))


def test_seven_solids_need_q7():
    with pytest.raises(ArgumentOutOfRange):
        construct_pg5_seven_solids(5)


@pytest.mark.slow
def test_six_lines_q3(six_lines_q3):
    arr = six_lines_q3
    assert arr.certificate.is_higgledy_piggledy
    meeting = sum(not a.is_disjoint(b) for a, b in combinations(arr.elements, 2))
    assert meeting == 1
    assert len(arr.point_set()) == 6 * 3 + 5


@pytest.mark.slow
def test_six_lines_q2(six_lines_q2):
    assert six_lines_q2.certificate.is_higgledy_piggledy
    assert len(six_lines_q2.point_set()) == 17


@pytest.mark.slow
def test_eight_planes_q2():
    arr = CONSTRUCTIONS["pg5_eight_planes"](2, workers=1)
    assert len(arr) == 8
    assert arr.certificate.is_higgledy_piggledy
    assert pairwise_disjoint(arr)
    assert len(arr.point_set()) == 56


@pytest.mark.slow
def test_seven_lines_q2():
    arr = CONSTRUCTIONS["pg5_seven_lines"](2, workers=1)
    assert len(arr) == 7
    assert arr.certificate.is_higgledy_piggledy
    assert pairwise_disjoint(arr)


@pytest.mark.slow
def test_eight_points_q7():
    mapping = field_reduction(1, 2, 7)
    chosen, choices, (b1, b2, b3) = eight_points(mapping.small, workers=1)
    base, _ = concurrent_sublines(mapping.small)
    assert chosen[:7] == base
    assert len(set(chosen)) == 8
    assert b1.meet_size(b2) == b1.meet_size(b3) == b2.meet_size(b3) == 2
    assert in_linear_set_of_rank_at_most(chosen, 3, workers=1) is None
    assert pairwise_disjoint(Arrangement(mapping.big, 2, mapping.images(chosen)))


@pytest.mark.slow
def test_seven_solids_q7():
    arr = construct_pg5_seven_solids(7, workers=1)
    assert (arr.N, arr.k, len(arr)) == (5, 3, 7)
    assert arr.certificate.is_higgledy_piggledy
    meets = [meet(a, b) for a, b in combinations(arr.elements, 2)]
    assert all(m.dim == 1 for m in meets)
