import math

import numpy as np
import pytest

from gammafan import exactla as la
from gammafan import gseries as gs
from gammafan.errors import NotInLattice, OutsideDomain

from conftest import PENTAGON_B

# zonotope vertices incident to the star chamber (published patterns 1-4)
STAR_VERTEX_PATTERNS = [
    (1, 1, 1, -1, 1, 1),
    (-1, 1, 1, -1, 1, 1),
    (1, -1, 1, -1, 1, 1),
    (1, 1, 1, -1, -1, 1),
]


def beta_minus_a4(cfg):
    return tuple(-x for x in cfg.column(4))


def test_gamma_trivial(star_ring):
    assert gs.gamma_coefficient(star_ring, (0,) * 6) == star_ring.one()
    q = gs.gamma_coefficient(star_ring, (0, 0, 0, -1, 0, 0))
    assert q == star_ring.generator(4)
    # one kernel step away from -e4
    lam = (1, 0, 0, -3, 0, 1)
    q = gs.gamma_coefficient(star_ring, lam)
    assert not q.is_zero()


def test_fast_and_slow_paths_agree(cfg, star_ring):
    _, fiber = gs.enumerate_fiber(cfg, [0, 0, 0], 4)
    assert any(
        not star_ring.tri.is_simplex(
            tuple(j + 1 for j, v in enumerate(lam) if v < 0))
        for lam in fiber)
    for lam in fiber:
        fast = gs.gamma_coefficient(star_ring, lam, fast_path=True)
        slow = gs.gamma_coefficient(star_ring, lam, fast_path=False)
        assert (fast - slow).is_zero()


def test_enumerate_support_trivial(cfg, star):
    gamma0, lams = gs.enumerate_support(cfg, star, [0, 0, 0], 0)
    assert gamma0 == [0] * 6
    assert lams == [(0,) * 6]


def test_support_sign_vectors_touch_star_vertices(cfg, star):
    """Terms of the zero-parameter series sit on zonotope faces at the
    star chamber's vertices."""
    _, lams = gs.enumerate_support(cfg, star, [0, 0, 0], 8)
    for lam in lams:
        sv = tuple(0 if v == 0 else (1 if v > 0 else -1) for v in lam)
        assert any(all(s == 0 or s == v for s, v in zip(sv, pat))
                   for pat in STAR_VERTEX_PATTERNS), (lam, sv)


def test_shifted_support(cfg, star, star_ring):
    beta = beta_minus_a4(cfg)
    s = gs.build_series(star_ring, beta, 8)
    assert (0,) * 6 not in s.terms
    assert (0, 0, 0, -1, 0, 0) in s.terms
    assert list(s.leading_terms()) == [(0, 0, 0, -1, 0, 0)]
    assert s.terms[(0, 0, 0, -1, 0, 0)] == star_ring.generator(4)


def test_series_beta_zero_leading(star_ring):
    s = gs.build_series(star_ring, (0, 0, 0), 6)
    assert s.terms[(0,) * 6] == star_ring.one()
    for lam in s.terms:
        assert la.mat_vec(star_ring.cfg.A, list(lam)) == [0, 0, 0]
        assert la.one_norm(lam) <= 6


def test_euler_residuals_vanish(cfg, all_triangulations):
    from gammafan.srring import build_ring
    for t in all_triangulations:
        ring = build_ring(cfg, t)
        s = gs.build_series(ring, (0, 0, 0), 4)
        for i in (1, 2, 3):
            assert gs.apply_euler(s, i).is_zero


def test_box_residuals_basis(cfg, star_ring):
    s0 = gs.build_series(star_ring, (0, 0, 0), 8)
    s4 = gs.build_series(star_ring, beta_minus_a4(cfg), 8)
    for series in (s0, s4):
        for row in cfg.B:
            res = gs.apply_box(series, row)
            assert res.interior_zero
        for row in PENTAGON_B:
            res = gs.apply_box(series, row)
            assert res.interior_zero


def test_box_residuals_random_relations(cfg, star_ring):
    s0 = gs.build_series(star_ring, (0, 0, 0), 8)
    rels = gs.small_relations(cfg, 4, 5, seed=3)
    assert len(rels) == 5
    for ell in rels:
        assert gs.apply_box(s0, ell).interior_zero


def test_box_zero_relation(star_ring):
    s = gs.build_series(star_ring, (0, 0, 0), 4)
    res = gs.apply_box(s, (0,) * 6)
    assert res.interior_zero and not res.terms


def test_box_rejects_non_relation(star_ring):
    s = gs.build_series(star_ring, (0, 0, 0), 4)
    with pytest.raises(NotInLattice):
        gs.apply_box(s, (1, 0, 0, 0, 0, 0))


def test_differentiate_recursion(cfg, star_ring):
    s0 = gs.build_series(star_ring, (0, 0, 0), 8)
    for i in range(1, 7):
        left = gs.differentiate(s0, i)
        right = gs.build_series(star_ring, left.beta, left.l_max)
        assert set(left.terms) == set(right.terms)
        for lam in left.terms:
            assert (left.terms[lam] - right.terms[lam]).is_zero()
        # degree bookkeeping drops by exactly one derivative
        assert la.dot(cfg.a0vee, left.beta) == la.dot(cfg.a0vee, s0.beta) - 1


def test_differentiate_empty_series(star_ring):
    s = gs.build_series(star_ring, (0, 0, 0), 0)
    d = gs.differentiate(s, 1)
    assert d.terms == {}


def test_gamma_from_qx_cross_check(cfg, star_ring):
    s0 = gs.build_series(star_ring, (0, 0, 0), 6)
    s4 = gs.build_series(star_ring, beta_minus_a4(cfg), 6)
    for lam in list(s0.terms) + list(s4.terms):
        direct = gs.gamma_coefficient(star_ring, lam)
        via_expansion = gs.gamma_from_qx(star_ring, lam)
        assert (direct - via_expansion).is_zero()


def test_qx_coefficients_nonnegative_and_bounded(cfg, star):
    _, lams = gs.enumerate_support(cfg, star, (0, 0, 0), 6)
    for lam in lams:
        for m, val in gs.qx_expansion(cfg, lam).items():
            assert val >= 0
            assert val <= gs.qx_bound(cfg, lam, m)


def test_support_projection_lemma(cfg, star, star_ring):
    s0 = gs.build_series(star_ring, (0, 0, 0), 8)
    s4 = gs.build_series(star_ring, beta_minus_a4(cfg), 8)
    for lam in list(s0.terms) + list(s4.terms):
        assert gs.support_projection_holds(star, lam)


def test_core_ideal_membership(cfg, star_ring):
    for factor in (1, 2):
        beta = tuple(-factor * x for x in cfg.column(4))
        s = gs.build_series(star_ring, beta, 8)
        ideal = star_ring.ideal(star_ring.core_element())
        mat = la.transpose([el.coords for el in ideal])
        for lam, q in s.terms.items():
            assert la.solve(mat, q.coords) is not None


def test_domain_vectors_negative_on_core(cfg, star):
    # dual-cone rays pair nonpositively with the core index
    for ell in gs.domain_test_vectors(star):
        assert ell[3] <= 0


def test_evaluate_monodromy(cfg, star_ring, star):
    s = gs.build_series(star_ring, (0, 0, 0), 8)
    z0 = gs.deep_domain_point(star, factor=2.0)
    base = gs.evaluate(s, z0)
    mu = [1, 0, 2, 0, -1, 3]
    shifted = gs.evaluate(s, [a + b for a, b in zip(z0, mu)])
    zc = [0j] * star_ring.total_dim
    for j in range(6):
        for idx, c in enumerate(star_ring.gens[j].coords):
            zc[idx] += complex(c) * (2j * math.pi * mu[j])
    expected = star_ring.mul_coords(star_ring.exp_coords(zc), base.coords)
    scale = max(abs(v) for v in expected)
    assert max(abs(a - b) for a, b in zip(shifted.coords, expected)) <= 1e-9 * scale


def test_evaluate_character(cfg, star_ring, star):
    import cmath
    s = gs.build_series(star_ring, beta_minus_a4(cfg), 8)
    z0 = gs.deep_domain_point(star, factor=2.0)
    rho = [0.25 + 0.1j, -0.5, 0.125j]
    m = [sum(rho[i] * cfg.A[i][j] for i in range(3)) for j in range(6)]
    shifted = gs.evaluate(s, [a + b for a, b in zip(z0, m)])
    phase = cmath.exp(2j * math.pi * sum(r * b for r, b in zip(rho, s.beta)))
    expected = [phase * v for v in gs.evaluate(s, z0).coords]
    scale = max(abs(v) for v in expected)
    assert max(abs(a - b) for a, b in zip(shifted.coords, expected)) <= 1e-9 * scale


def test_evaluate_deep_limit_is_leading_term(cfg, star_ring, star):
    beta = beta_minus_a4(cfg)
    s = gs.build_series(star_ring, beta, 8)
    z = gs.deep_domain_point(star, factor=12.0)
    val = gs.evaluate(s, z)
    # strip the leading phase and exponential factor: the ratio of the
    # value to the bare leading term tends to 1 in every coordinate
    lead_lam = (0, 0, 0, -1, 0, 0)
    phase = np.exp(2j * np.pi * sum(a * b for a, b in zip(z, lead_lam)))
    zc = [0j] * star_ring.total_dim
    for j in range(6):
        for idx, c in enumerate(star_ring.gens[j].coords):
            zc[idx] += complex(c) * (2j * np.pi * z[j])
    lead = star_ring.mul_coords(
        [complex(c) * phase for c in s.terms[lead_lam].coords],
        star_ring.exp_coords(zc))
    num = max(abs(a - b) for a, b in zip(val.coords, lead))
    den = max(abs(b) for b in lead)
    assert num <= 1e-8 * den
    assert val.tail_estimate < 1e-30


def test_evaluate_outside_domain(star_ring):
    s = gs.build_series(star_ring, (0, 0, 0), 4)
    with pytest.raises(OutsideDomain):
        gs.evaluate(s, [0.0] * 6)
    # bypass flag still computes
    v = gs.evaluate(s, [0.0] * 6, check_domain=False)
    assert len(v.coords) == 5


def test_evaluate_extended_precision(star_ring, star):
    s = gs.build_series(star_ring, (0, 0, 0), 6)
    z = gs.deep_domain_point(star, factor=2.0)
    a = gs.evaluate(s, z, precision=53)
    b = gs.evaluate(s, z, precision=160)
    assert b.precision_bits == 160
    for x, y in zip(a.coords, b.coords):
        assert abs(x - complex(y)) <= 1e-10 * max(1.0, abs(x))


def test_functional_probe_zero(star_ring, star):
    s = gs.build_series(star_ring, (0, 0, 0), 6)
    probe = gs.functional_probe(s, [0] * star_ring.total_dim)
    z = gs.deep_domain_point(star, factor=2.0)
    assert probe(z) == 0


def test_functional_rank_beta_zero(star_ring, star):
    s = gs.build_series(star_ring, (0, 0, 0), 10)
    points = gs.sample_deep_points(star, 5, seed=0)
    probes = [gs.functional_probe(s, [int(i == a) for i in range(5)])
              for a in range(5)]
    mat = np.array([[probes[a](z) for z in points] for a in range(5)])
    sv = np.linalg.svd(mat, compute_uv=False)
    assert sv[-1] / sv[0] > 1e-6


def test_functional_rank_core_ideal(cfg, star_ring, star):
    s = gs.build_series(star_ring, beta_minus_a4(cfg), 10)
    ideal = star_ring.ideal(star_ring.core_element())
    pivots = [next(k for k, c in enumerate(el.coords) if c != 0) for el in ideal]
    points = gs.sample_deep_points(star, len(ideal), seed=0)
    mat = np.zeros((len(ideal), len(ideal)), dtype=complex)
    for b, z in enumerate(points):
        coords = gs.evaluate(s, z).coords
        col = np.array([coords[k] for k in pivots])
        mat[:, b] = col / np.linalg.norm(col)
    sv = np.linalg.svd(mat, compute_uv=False)
    assert sv[-1] / sv[0] > 1e-6


def test_verification_report_all_pass(cfg, star_ring):
    for beta in ((0, 0, 0), beta_minus_a4(cfg)):
        checks = gs.verification_report(star_ring, beta, 4, seed=0)
        assert all(c["pass"] for c in checks), [c for c in checks if not c["pass"]]
    names = {c["name"] for c in gs.verification_report(star_ring, beta_minus_a4(cfg), 4)}
    assert "core_ideal_membership" in names
    assert "core_leading_term" in names
