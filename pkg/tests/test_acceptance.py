"""Acceptance suite: one test per criterion, each printing a pass/fail line.

Run with `pytest tests/test_acceptance.py -v -s`.  Tolerances are fixed
here; everything not explicitly floating is checked in exact arithmetic.
"""

import math
import time
from fractions import Fraction

import numpy as np

from gammafan import exactla as la
from gammafan import gorcone as gc
from gammafan import gseries as gs
from gammafan.polycone import chamber_sign_vectors
from gammafan.srring import build_ring
from gammafan.triang import PointConfiguration, adjacency, enumerate_regular

from conftest import PENTAGON_A, PENTAGON_B, SPLIT_SIMPLICES, STAR_SIMPLICES
from test_polycone import VERTEX_PATTERNS
from test_triang import shoelace_volume


def report(num, name, ok, detail=""):
    status = "PASS" if ok else "FAIL"
    suffix = f"  ({detail})" if detail else ""
    print(f"[acceptance {num:02d}] {name}: {status}{suffix}")
    assert ok, f"criterion {num} ({name}) failed{suffix}"


def beta_minus_a4(cfg):
    return tuple(-x for x in cfg.column(4))


def test_criterion_01_enumeration(cfg):
    start = time.monotonic()
    tris = enumerate_regular(cfg, seed=0)
    edges = adjacency(tris)
    elapsed = time.monotonic() - start
    nodes = set(range(len(tris)))
    neigh = {i: set() for i in nodes}
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
    ok = len(tris) == 10 and seen == nodes and elapsed < 10.0
    report(1, "enumeration", ok,
           f"{len(tris)} triangulations, connected={seen == nodes}, {elapsed:.2f}s")


def test_criterion_02_chambers(cfg):
    signs = chamber_sign_vectors(cfg.b)
    ok = (len(signs) == 28
          and all(tuple(-s for s in v) in signs for v in signs)
          and all(p in signs for p in VERTEX_PATTERNS)
          and all(tuple(-s for s in p) in signs for p in VERTEX_PATTERNS))
    report(2, "chamber sign vectors", ok, f"{len(signs)} chambers")


def test_criterion_03_ring_dimensions(cfg, all_triangulations):
    # two independent volume oracles: planar shoelace and determinant sums
    vol = shoelace_volume(cfg)
    ok = vol == 5 and cfg.total_volume() == vol
    for t in all_triangulations:
        ring = build_ring(cfg, t)
        _, _, poincare_equal = ring.poincare_check()
        ok = ok and ring.total_dim == len(t.maximal) and poincare_equal
        ok = ok and sum(t.volumes()) == vol
        if t.is_unimodular():
            ok = ok and ring.total_dim == vol
    report(3, "ring dimensions and Poincare identity", ok,
           f"volume oracle {vol}")


def test_criterion_04_ring_presentations(star_ring, split_ring):
    c = [None] + [star_ring.generator(j) for j in range(1, 7)]
    d = [None] + [split_ring.generator(j) for j in range(1, 7)]
    ok = all(x.is_zero() for x in (
        d[1] * d[1], d[2] * d[2], d[5] * d[5], d[1] * d[2], d[2] * d[5]))
    ok = ok and all(x.is_zero() for x in (
        c[1] * c[1] - c[2] * c[2],
        c[1] * c[1] - c[5] * c[5],
        c[1] * c[1] + c[1] * c[2],
        c[1] * c[1] + c[2] * c[5],
        c[1] * c[5],
        c[4] + 2 * c[1] + 3 * c[2] + 2 * c[5],
        c[4] * c[1] - c[4] * c[2],
        c[4] * c[2] - c[4] * c[5],
    ))
    report(4, "ring presentations", ok)


def test_criterion_05_gkz_verification(cfg, star_ring):
    start = time.monotonic()
    ok = True
    detail = []
    for beta in ((0, 0, 0), beta_minus_a4(cfg)):
        series = gs.build_series(star_ring, beta, 8)
        for i in (1, 2, 3):
            ok = ok and gs.apply_euler(series, i).is_zero
        for row in list(cfg.B) + PENTAGON_B:
            ok = ok and gs.apply_box(series, row).interior_zero
        for ell in gs.small_relations(cfg, 4, 5, seed=0):
            ok = ok and gs.apply_box(series, ell).interior_zero
        detail.append(f"beta={list(beta)}: {series.term_count()} terms")
    elapsed = time.monotonic() - start
    ok = ok and elapsed < 60.0
    report(5, "GKZ operator verification", ok,
           "; ".join(detail) + f", {elapsed:.2f}s")


def test_criterion_06_core_ideal(cfg, star_ring):
    series = gs.build_series(star_ring, beta_minus_a4(cfg), 8)
    ideal = star_ring.ideal(star_ring.core_element())
    mat = la.transpose([el.coords for el in ideal])
    ok = all(la.solve(mat, q.coords) is not None for q in series.terms.values())
    mu = (0, 0, 0, -1, 0, 0)
    ok = ok and mu in series.terms and \
        (series.terms[mu] - star_ring.generator(4)).is_zero()
    report(6, "core ideal membership and leading term", ok,
           f"{series.term_count()} coefficients")


def _pochhammer(ring, elem, m):
    out = ring.one()
    for k in range(1, m + 1):
        out = out * (elem + k)
    return out


def test_criterion_07_displayed_series(cfg, star_ring):
    """Coefficients of the published expansion around the star chamber.

    The displayed series is indexed by powers (p, q, r) of the three
    chamber coordinates; its coefficient there is, up to the sign (-1)^q
    and the overall factor c4, a ratio of shifted factorials of the
    linear forms 2c1+3c2+2c5, c1, c2, c2+c5, c5, c1+c2.  This is checked
    in exact ring coordinates against the factorial-product coefficient.
    """
    c = [None] + [star_ring.generator(j) for j in range(1, 7)]
    u = 2 * c[1] + 3 * c[2] + 2 * c[5]  # equals -c4
    ok = (c[4] + u).is_zero()
    for p, q, r in ((0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)):
        m = 2 * p + 3 * q + 2 * r
        num = _pochhammer(star_ring, u, m)
        den = star_ring.one()
        den = den * _pochhammer(star_ring, c[1], p)
        den = den * _pochhammer(star_ring, c[2], q)
        den = den * _pochhammer(star_ring, c[2] + c[5], q + r)
        den = den * _pochhammer(star_ring, c[5], r)
        den = den * _pochhammer(star_ring, c[1] + c[2], p + q)
        displayed = ((-1) ** q) * c[4] * num * star_ring.inverse_unit(den)
        lam = [0, 0, 0, -1, 0, 0]
        for coeff, row in zip((p, q, r), PENTAGON_B):
            lam = la.vec_add(lam, la.vec_scale(coeff, row))
        direct = gs.gamma_coefficient(star_ring, tuple(lam))
        ok = ok and (displayed - direct).is_zero()
    report(7, "displayed series coefficients", ok)


def test_criterion_08_recursion(cfg, star_ring):
    s0 = gs.build_series(star_ring, (0, 0, 0), 8)
    left = gs.differentiate(s0, 4)
    right = gs.build_series(star_ring, beta_minus_a4(cfg), left.l_max)
    ok = left.beta == right.beta and set(left.terms) == set(right.terms)
    for lam in left.terms:
        ok = ok and (left.terms[lam] - right.terms[lam]).is_zero()
    report(8, "differentiation recursion", ok,
           f"{len(left.terms)} common terms")


def test_criterion_09_functional_equations(cfg, star, star_ring):
    series = gs.build_series(star_ring, (0, 0, 0), 10)
    z0 = gs.deep_domain_point(star, factor=2.0)
    base = gs.evaluate(series, z0)
    mu = [2, -1, 0, 1, 0, 3]
    shifted = gs.evaluate(series, [a + b for a, b in zip(z0, mu)])
    zc = [0j] * star_ring.total_dim
    for j in range(6):
        for idx, cval in enumerate(star_ring.gens[j].coords):
            zc[idx] += complex(cval) * (2j * math.pi * mu[j])
    expected = star_ring.mul_coords(star_ring.exp_coords(zc), base.coords)
    scale = max(abs(v) for v in expected)
    mono_err = max(abs(a - b) for a, b in zip(shifted.coords, expected)) / scale
    rho = [0.3 + 0.2j, -0.4, 0.15j]
    m = [sum(rho[i] * cfg.A[i][j] for i in range(3)) for j in range(6)]
    char_shift = gs.evaluate(series, [a + b for a, b in zip(z0, m)])
    phase = np.exp(2j * np.pi * sum(r * b for r, b in zip(rho, series.beta)))
    char_expected = [phase * v for v in base.coords]
    char_scale = max(abs(v) for v in char_expected)
    char_err = max(abs(a - b) for a, b in
                   zip(char_shift.coords, char_expected)) / char_scale
    ok = mono_err <= 1e-9 and char_err <= 1e-9
    report(9, "monodromy and character equations", ok,
           f"monodromy {mono_err:.2e}, character {char_err:.2e}")


def test_criterion_10_solution_count_surrogate(star, star_ring):
    series = gs.build_series(star_ring, (0, 0, 0), 10)
    points = gs.sample_deep_points(star, 5, seed=0)
    mat = np.zeros((5, 5), dtype=complex)
    for b, z in enumerate(points):
        coords = gs.evaluate(series, z).coords
        for a in range(5):
            mat[a, b] = coords[a]
    sv = np.linalg.svd(mat, compute_uv=False)
    ratio = sv[-1] / sv[0]
    report(10, "solution count surrogate", ratio > 1e-6,
           f"sigma_min/sigma_max = {ratio:.2e}")


def test_criterion_11_gorenstein(cfg, star, star_ring):
    rep = gc.gorenstein_report(cfg, star)
    fan = gc.projected_fan(cfg, star)
    ok = (rep.index == 1 and rep.a0 == [1, 0, 0]
          and rep.is_reflexive and rep.a0vee == [1, 0, 0]
          and fan.complete and fan.smooth
          and len(fan.maximal_cones) == 5)
    # graded pieces vanish above n - kappa = 2, by both Poincare routes
    ring_side, simplex_side, _ = star_ring.poincare_check()
    for m in range(cfg.n - rep.index + 1, cfg.n + 1):
        ok = ok and ring_side[m] == 0 and simplex_side[m] == 0
    ok = ok and ring_side[cfg.n - rep.index] != 0
    report(11, "reflexive Gorenstein cone and projected fan", ok,
           f"kappa={rep.index}, cones={len(fan.maximal_cones)}")


def test_criterion_12_coefficient_bounds(cfg, star):
    ok = True
    count = 0
    for beta in ((0, 0, 0), beta_minus_a4(cfg)):
        _, lams = gs.enumerate_support(cfg, star, beta, 6)
        for lam in lams:
            for m, val in gs.qx_expansion(cfg, lam).items():
                ok = ok and 0 <= val <= gs.qx_bound(cfg, lam, m)
                count += 1
    report(12, "expansion coefficient bounds", ok, f"{count} coefficients")
