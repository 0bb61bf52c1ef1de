import pytest

from coding_bridge import (
    bound_rows,
    bounds_report,
    code_from_parity_points,
    code_from_points,
    covering_radius,
    embed_and_check,
    embed_points,
    is_minimal_code,
    is_saturating,
    least_saturation,
    syndrome_distances,
)
from models.galois_field import extension, gf
from models.linear_code import LinearCode
from models.projective_space import ProjSpace, enumerate_subspaces, subspace_index
from utils.exceptions import ArgumentOutOfRange, NotSpanning


def all_points(space):
    return list(enumerate_subspaces(space, 0))


def test_hamming_covering_radius(pg22):
    code = code_from_parity_points(all_points(pg22))
    assert (code.n, code.k) == (7, 4)
    assert covering_radius(code) == 1
    dist, reached = syndrome_distances(code)
    assert reached == 8
    assert sorted(dist.tolist()) == [0] + [1] * 7


def test_full_space_has_radius_zero():
    code = LinearCode(gf(3), generator=((1, 0), (0, 1)))
    assert code.r == 0
    assert covering_radius(code) == 0


def test_repetition_code_radius():
    code = LinearCode(gf(2), generator=((1, 1, 1, 1, 1),))
    assert covering_radius(code) == 2


def test_frame_generator_is_identity(pg22):
    code = code_from_points([pg22.unit_point(i) for i in range(3)])
    assert code.generator == ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    minimal, witness = is_minimal_code(code)
    assert not minimal
    assert set(witness) == {"contained", "container"}


def test_simplex_code_is_minimal(pg22):
    minimal, witness = is_minimal_code(code_from_points(all_points(pg22)))
    assert minimal
    assert witness is None


def test_four_lines_give_a_minimal_code(four_lines_q2):
    points = sorted(four_lines_q2.point_set(), key=subspace_index)
    code = code_from_points(points)
    assert (code.n, code.k) == (12, 4)
    assert is_minimal_code(code)[0]


def test_non_spanning_points(pg22):
    points = [pg22.unit_point(0), pg22.unit_point(1)]
    with pytest.raises(NotSpanning):
        code_from_points(points)
    with pytest.raises(NotSpanning):
        code_from_parity_points(points)
    assert least_saturation(points) is None
    with pytest.raises(ArgumentOutOfRange):
        code_from_points([])


def test_saturation_of_all_points(pg22):
    assert is_saturating(all_points(pg22), 0) == (True, None)
    assert least_saturation(all_points(pg22)) == 0


def test_frame_saturation(pg22):
    frame = [pg22.unit_point(i) for i in range(3)]
    saturating, witness = is_saturating(frame, 1)
    assert not saturating
    assert witness == pg22.point([1, 1, 1])
    assert least_saturation(frame) == 2
    with pytest.raises(ArgumentOutOfRange):
        is_saturating(frame, -1)


def test_saturation_matches_covering_radius(pg32):
    points = [pg32.unit_point(i) for i in range(4)] + [pg32.point([1, 1, 1, 1])]
    rho = least_saturation(points)
    assert covering_radius(code_from_parity_points(points)) == rho + 1


def test_embed_points(pg22):
    ext = extension(gf(2), 2)
    embedded = embed_points([pg22.unit_point(0)], ext)
    assert embedded[0].space == ProjSpace(2, ext)
    assert embedded[0].coords == (1, 0, 0)
    with pytest.raises(ArgumentOutOfRange):
        embed_points([pg22.unit_point(0)], gf(4))


def test_embed_and_check_lines_of_the_plane(pg22):
    check = embed_and_check(all_points(pg22), 1)
    assert check["rho"] == 1
    assert check["saturating"]
    assert check["witness"] is None


def test_bound_rows():
    rows = {(r["quantity"], r["kind"]): r["value"] for r in bound_rows(5)}
    assert rows[("m(5,q)", "construction")] == 35
    assert rows[("m(5,q)", "lower")] == 24
    assert rows[("s_{q^3}(4,2)", "construction")] == 6 * 25 + 25 + 1
    assert ("m(5,q)", "known") not in rows
    rows7 = {(r["quantity"], r["kind"], r["formula"]): r["value"] for r in bound_rows(7)}
    assert rows7[("s_{q^3}(4,2)", "construction", "6q^2+5q-9")] == 320
    assert rows7[("m(5,q)", "literature", "7q+7")] == 56


def test_known_values_at_two():
    known = [r for r in bound_rows(2) if r["kind"] == "known"]
    assert {r["value"] for r in known} == {13}


def test_bounds_report_attaches_instances():
    df = bounds_report(5, {"m(5,q)": "checked"})
    construction = df[(df["quantity"] == "m(5,q)") & (df["kind"] == "construction")]
    assert construction["instance"].tolist() == ["checked"]
    lower = df[(df["quantity"] == "m(5,q)") & (df["kind"] == "lower")]
    assert lower["instance"].tolist() == [""]
    with pytest.raises(ArgumentOutOfRange):
        bounds_report(1)
