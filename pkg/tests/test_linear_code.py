import pytest

from models.galois_field import gf
from models.linear_code import LinearCode, null_space
from models.projective_space import gf_matmul
from utils.exceptions import ArgumentOutOfRange, ArtifactError, NotSpanning

HAMMING_PARITY = (
    (1, 0, 0, 1, 1, 0, 1),
    (0, 1, 0, 1, 0, 1, 1),
    (0, 0, 1, 0, 1, 1, 1),
)


def test_parity_fills_generator():
    code = LinearCode(gf(2), parity=HAMMING_PARITY)
    assert (code.n, code.k, code.r) == (7, 4, 3)
    assert not gf_matmul(gf(2), code.generator, list(zip(*code.parity))).any()


def test_generator_fills_parity():
    code = LinearCode(gf(3), generator=((1, 0, 1), (0, 1, 2)))
    assert code.r == 1
    assert code.q == 3
    assert not gf_matmul(gf(3), code.generator, list(zip(*code.parity))).any()


def test_rejects_bad_matrices():
    with pytest.raises(ArgumentOutOfRange):
        LinearCode(gf(2))
    with pytest.raises(NotSpanning):
        LinearCode(gf(2), generator=((1, 1, 0), (1, 1, 0)))
    with pytest.raises(ArgumentOutOfRange):
        LinearCode(gf(2), generator=((1, 0, 0),), parity=((1, 0, 0), (0, 1, 0)))
    with pytest.raises(ArgumentOutOfRange):
        LinearCode(gf(2), generator=((1, 0), (0, 1, 0)))


def test_degenerate_coordinate():
    assert LinearCode(gf(2), generator=((1, 0, 0), (0, 1, 0))).is_degenerate()
    assert not LinearCode(gf(2), parity=HAMMING_PARITY).is_degenerate()


def test_null_space():
    rows = null_space(gf(2), [(1, 1, 0)], 3)
    assert len(rows) == 2
    assert all((r[0] + r[1]) % 2 == 0 for r in rows)


def test_dict_round_trip():
    code = LinearCode(gf(2), parity=HAMMING_PARITY)
    again = LinearCode.from_dict(code.to_dict())
    assert again.generator == code.generator
    assert again.parity == code.parity
    with pytest.raises(ArtifactError):
        LinearCode.from_dict(dict(code.to_dict(), format="other"))
