import pytest

from pg4q.geometry import GeometryIndex
from pg4q.gf import GF


@pytest.fixture(scope="session")
def gf4():
    return GF.of_order(4)


@pytest.fixture(scope="session")
def gf8():
    return GF.of_order(8)


@pytest.fixture(scope="session")
def idx4(gf4):
    return GeometryIndex(gf4)


@pytest.fixture(scope="session")
def idx8(gf8):
    return GeometryIndex(gf8)
