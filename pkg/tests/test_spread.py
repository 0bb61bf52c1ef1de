import pytest

from models.projective_space import enumerate_subspaces
from models.spread import field_reduction
from utils.exceptions import ArgumentOutOfRange, SpaceMismatch


@pytest.mark.parametrize("n_small,k,q,size", [(1, 1, 2, 5), (1, 1, 3, 10), (2, 1, 2, 21), (1, 2, 2, 9)])
def test_images_form_a_spread(n_small, k, q, size):
    mapping = field_reduction(n_small, k, q)
    spread = mapping.spread()
    assert len(spread) == size
    assert all(e.dim == k for e in spread)
    assert mapping.is_spread()


def test_spaces():
    mapping = field_reduction(2, 1, 3)
    assert mapping.small.N == 2
    assert mapping.small.q == 9
    assert mapping.big.N == 5
    assert mapping.big.q == 3


def test_image_is_callable():
    mapping = field_reduction(1, 1, 2)
    P = mapping.points()[1]
    assert mapping(P) == mapping.image(P)


def test_every_point_on_one_element():
    mapping = field_reduction(1, 1, 3)
    spread = mapping.spread()
    for point in enumerate_subspaces(mapping.big, 0):
        assert sum(e.contains(point) for e in spread) == 1


def test_rejects_foreign_points():
    mapping = field_reduction(1, 1, 2)
    with pytest.raises(SpaceMismatch):
        mapping.image(mapping.big.unit_point(0))


def test_rejects_bad_parameters():
    with pytest.raises(ArgumentOutOfRange):
        field_reduction(0, 1, 2)
    with pytest.raises(ArgumentOutOfRange):
        field_reduction(1, 0, 2)
