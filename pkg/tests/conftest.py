import pytest

from gammafan.srring import build_ring
from gammafan.triang import PointConfiguration, enumerate_regular, from_simplices

# the running example: six lattice points of a reflexive pentagon at height 1
PENTAGON_A = [
    [1, 1, 1, 1, 1, 1],
    [0, 1, -1, 0, 1, 0],
    [1, 1, 0, 0, 0, -1],
]

# a published kernel basis for the same configuration (rows span the relations)
PENTAGON_B = [
    [1, 0, 0, -2, 0, 1],
    [0, 1, 1, -3, 0, 1],
    [0, 0, 1, -2, 1, 0],
]

# the star triangulation around the interior point and the triangulation
# that splits both long diagonals at it
STAR_SIMPLICES = [(1, 2, 4), (1, 3, 4), (2, 4, 5), (3, 4, 6), (4, 5, 6)]
SPLIT_SIMPLICES = [(1, 2, 5), (1, 3, 4), (1, 4, 5), (3, 4, 6), (4, 5, 6)]


@pytest.fixture(scope="session")
def cfg():
    return PointConfiguration(PENTAGON_A)


@pytest.fixture(scope="session")
def all_triangulations(cfg):
    return enumerate_regular(cfg, seed=0)


@pytest.fixture(scope="session")
def star(cfg, all_triangulations):
    return next(t for t in all_triangulations
                if t.maximal == tuple(sorted(STAR_SIMPLICES)))


@pytest.fixture(scope="session")
def split(cfg, all_triangulations):
    return next(t for t in all_triangulations
                if t.maximal == tuple(sorted(SPLIT_SIMPLICES)))


@pytest.fixture(scope="session")
def star_ring(cfg, star):
    return build_ring(cfg, star)


@pytest.fixture(scope="session")
def split_ring(cfg, split):
    return build_ring(cfg, split)


@pytest.fixture(scope="session")
def segment():
    return PointConfiguration([[1, 1, 1], [0, 1, 2]])
