"""Second configuration: hexagon plus center, seven points at height 1.

Exercises every layer away from the pentagon the other tests lean on:
larger secondary fan, bigger rings, and the degree-six projected fan.
"""

import pytest

from gammafan import gorcone as gc
from gammafan import gseries as gs
from gammafan.errors import PreconditionFailed
from gammafan.srring import build_ring
from gammafan.triang import PointConfiguration, adjacency, enumerate_regular

HEX_A = [
    [1, 1, 1, 1, 1, 1, 1],
    [1, 0, -1, -1, 0, 1, 0],
    [0, 1, 1, 0, -1, -1, 0],
]


@pytest.fixture(scope="module")
def hex_cfg():
    return PointConfiguration(HEX_A)


@pytest.fixture(scope="module")
def hex_tris(hex_cfg):
    return enumerate_regular(hex_cfg, seed=0)


def test_enumeration_and_volume(hex_cfg, hex_tris):
    assert hex_cfg.total_volume() == 6
    assert len(hex_tris) == 32
    for t in hex_tris:
        assert sum(t.volumes()) == 6


def test_adjacency_connected(hex_tris):
    edges = adjacency(hex_tris)
    neigh = {i: set() for i in range(len(hex_tris))}
    for i, j in edges:
        neigh[i].add(j)
        neigh[j].add(i)
    seen, stack = {0}, [0]
    while stack:
        x = stack.pop()
        for y in neigh[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    assert seen == set(range(len(hex_tris)))


def test_rings_and_unique_reflexive_star(hex_cfg, hex_tris):
    qualifying = []
    for t in hex_tris:
        ring = build_ring(hex_cfg, t)
        assert ring.total_dim == len(t.maximal)
        assert ring.poincare_check()[2]
        try:
            gc.check_preconditions(hex_cfg, t)
            qualifying.append(t)
        except PreconditionFailed:
            pass
    assert len(qualifying) == 1
    star = qualifying[0]
    assert star.core() == (7,)
    rep = gc.gorenstein_report(hex_cfg, star)
    assert rep.index == 1 and rep.is_reflexive and rep.is_completely_split
    fan = gc.projected_fan(hex_cfg, star)
    assert fan.complete and fan.smooth and len(fan.maximal_cones) == 6
    # the dual hexagon carries 7 lattice points (12 boundary points split 6/6)
    assert len(rep.boxes[7]) == 7


def test_series_checks_on_the_star(hex_cfg, hex_tris):
    star = next(t for t in hex_tris if t.core() == (7,))
    ring = build_ring(hex_cfg, star)
    beta = tuple(-x for x in hex_cfg.column(7))
    series = gs.build_series(ring, beta, 5)
    for i in (1, 2, 3):
        assert gs.apply_euler(series, i).is_zero
    for row in hex_cfg.B:
        assert gs.apply_box(series, row).interior_zero
    mu = (0, 0, 0, 0, 0, 0, -1)
    assert (series.terms[mu] - ring.core_element()).is_zero()
