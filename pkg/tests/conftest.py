import os

import pytest

from constructions import construct_pg3_four_lines, construct_pg4_six_lines
from models.galois_field import gf
from models.projective_space import ProjSpace

DATA_DIR = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "data")


@pytest.fixture
def data_dir():
    return DATA_DIR


@pytest.fixture
def pg32():
    return ProjSpace(3, gf(2))


@pytest.fixture
def pg33():
    return ProjSpace(3, gf(3))


@pytest.fixture
def pg22():
    return ProjSpace(2, gf(2))


@pytest.fixture
def pg42():
    return ProjSpace(4, gf(2))


@pytest.fixture(scope="session")
def four_lines_q2():
    return construct_pg3_four_lines(2, workers=1)


@pytest.fixture(scope="session")
def six_lines_q2():
    return construct_pg4_six_lines(2, workers=1)


@pytest.fixture(scope="session")
def six_lines_q3():
    return construct_pg4_six_lines(3, workers=1)
