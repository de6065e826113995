"""Ring-valued Gamma-series for resonant GKZ systems.

Coefficients live in the finite graded algebra of a triangulation: for an
integer vector lam with A lam = beta,

    Q_lam = [ prod_{lam_j<0} prod_{k=0}^{-lam_j-1} (c_j - k) ]
            * [ prod_{lam_j>0} prod_{k=1}^{lam_j} (c_j + k) ]^(-1)

where the inverse exists because each denominator factor is a nonzero
scalar plus a nilpotent.  The coefficient vanishes exactly when the
negative support of lam is not a simplex (the numerator then carries a
Stanley-Reisner-killed monomial); a fast path may skip those lam but the
slow path computes the zero honestly and the two are cross-checked in the
tests.

Truncated series collect all terms with |lam|_1 <= L_max.  The first-order
(Euler) operators annihilate the series identically; the box operators
annihilate it on the interior of the truncation.  Numeric evaluation sums
exp(2 pi i z.lam) phases against the coefficients and multiplies by the
polynomial factor exp(2 pi i z.c); the certified domain test is a
conservative one over the extreme rays of the dual secondary cone plus all
their pairwise sums.
"""

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product

import mpmath

from . import exactla
from .errors import NotInLattice, OutsideDomain


def gamma_coefficient(ring, lam, fast_path=True):
    """The series coefficient Q_lam as an element of the ring.

    With fast_path a lam whose negative support is not a simplex returns
    zero immediately; otherwise the numerator product is expanded and the
    Stanley-Reisner relations produce the same zero.
    """
    cfg = ring.cfg
    if len(lam) != cfg.N:
        raise ValueError("lambda length mismatch")
    neg_support = tuple(j + 1 for j, v in enumerate(lam) if v < 0)
    if fast_path and not ring.tri.is_simplex(neg_support):
        return ring.zero()
    num = ring.one()
    for j, v in enumerate(lam):
        if v < 0:
            cj = ring.generator(j + 1)
            for k in range(-v):
                num = num * (cj - k)
    den = ring.one()
    for j, v in enumerate(lam):
        if v > 0:
            cj = ring.generator(j + 1)
            for k in range(1, v + 1):
                den = den * (cj + k)
    return num * ring.inverse_unit(den)


def _coefficient_box(cfg, gamma0, l_max):
    """Per-coordinate integer bounds for kernel coefficients of candidates."""
    if cfg.rank_L == 0:
        return []
    bt = exactla.transpose(cfg.B)
    gram = exactla.mat_mul(cfg.B, bt)
    inv, _ = exactla.square_inverse(gram)
    g = exactla.mat_mul(inv, cfg.B)  # left inverse of B^t
    slack = Fraction(l_max + exactla.one_norm(gamma0))
    bounds = []
    for row in g:
        m = max(abs(x) for x in row)
        bounds.append(int(m * slack))
    return bounds


def enumerate_fiber(cfg, beta, l_max, gamma0=None):
    """All integer lam with A lam = beta and |lam|_1 <= l_max, unfiltered.

    Candidates are walked as gamma0 + integer combinations of the kernel
    basis over an exact coefficient box.  Returns (gamma0, sorted lams).
    """
    if gamma0 is None:
        gamma0 = exactla.solve_particular(cfg.A, list(beta))
    out = []
    bounds = _coefficient_box(cfg, gamma0, l_max)
    for coeffs in product(*[range(-b, b + 1) for b in bounds]):
        lam = exactla.vec_add(gamma0, cfg.lattice_vector(coeffs))
        if exactla.one_norm(lam) <= l_max:
            out.append(tuple(lam))
    out.sort(key=lambda v: (exactla.one_norm(v), v))
    return list(gamma0), out


def enumerate_support(cfg, tri, beta, l_max, gamma0=None):
    """All lam with A lam = beta, |lam|_1 <= l_max and simplex negative support.

    Returns (gamma0, sorted list of lam tuples).
    """
    gamma0, fiber = enumerate_fiber(cfg, beta, l_max, gamma0=gamma0)
    out = [lam for lam in fiber
           if tri.is_simplex(tuple(j + 1 for j, v in enumerate(lam) if v < 0))]
    return gamma0, out


@dataclass
class TruncatedSeries:
    """A truncated ring-valued Gamma-series."""

    ring: object
    beta: tuple
    gamma0: tuple
    l_max: int
    terms: dict = field(default_factory=dict)  # lam tuple -> AlgebraElement

    @property
    def cfg(self):
        return self.ring.cfg

    @property
    def tri(self):
        return self.ring.tri

    def term_count(self):
        return len(self.terms)

    def leading_terms(self):
        """Terms of minimal 1-norm."""
        if not self.terms:
            return {}
        m = min(exactla.one_norm(l) for l in self.terms)
        return {l: q for l, q in self.terms.items() if exactla.one_norm(l) == m}


def build_series(ring, beta, l_max):
    """Assemble the truncated series: nonzero coefficients over the support."""
    beta = tuple(int(b) for b in beta)
    gamma0, lams = enumerate_support(ring.cfg, ring.tri, beta, l_max)
    terms = {}
    for lam in lams:
        q = gamma_coefficient(ring, lam)
        if not q.is_zero():
            terms[lam] = q
    return TruncatedSeries(ring=ring, beta=beta, gamma0=tuple(gamma0),
                           l_max=l_max, terms=terms)


@dataclass
class Residual:
    """Residual series of a formal operator application."""

    terms: dict
    is_zero: bool


def apply_euler(series, i):
    """Formal application of the i-th Euler operator (1-based row index).

    Each output term is (-beta_i + sum_j a_ij (lam_j + c_j)) * Q_lam; the
    scalar part cancels because A lam = beta and the ring part is the
    i-th linear relation, so the residual must be identically zero.  The
    computation is carried out honestly and returned for inspection.
    """
    ring = series.ring
    cfg = series.cfg
    arow = cfg.A[i - 1]
    out = {}
    for lam, q in series.terms.items():
        scalar = exactla.dot(arow, lam) - series.beta[i - 1]
        elem = ring.zero()
        for j, a in enumerate(arow):
            if a != 0:
                elem = elem + a * ring.generator(j + 1)
        res = (scalar * q) + (elem * q)
        if not res.is_zero():
            out[lam] = res
    return Residual(terms=out, is_zero=not out)


@dataclass
class BoxResidual:
    """Residual of a box operator on a truncated series."""

    terms: dict          # exponent -> AlgebraElement, nonzero entries only
    interior: list       # exponents certified interior to the truncation
    interior_zero: bool  # residual vanished on all interior exponents
    boundary_nonzero: list


def _transport(ring, lam, drops):
    """prod over j of prod_{k=0}^{drops_j - 1} ((lam_j - k) + c_j)."""
    out = ring.one()
    for j, d in enumerate(drops):
        if d > 0:
            cj = ring.generator(j + 1)
            for k in range(d):
                out = out * (cj + (lam[j] - k))
    return out


def apply_box(series, ell):
    """Formal application of the box operator of a lattice relation ell.

    The positive part of ell acts through one derivative chain, the
    negative part through the other; terms whose two preimages both fit
    inside the truncation must cancel exactly, and the certified interior
    is reported along with any boundary leftovers.
    """
    cfg = series.cfg
    ell = list(map(int, ell))
    if len(ell) != cfg.N or not cfg.in_kernel(ell):
        raise NotInLattice("not a relation of the configuration")
    ring = series.ring
    pos = [max(v, 0) for v in ell]
    neg = [max(-v, 0) for v in ell]
    acc = {}
    for drops, sign in ((pos, 1), (neg, -1)):
        for lam, q in series.terms.items():
            target = tuple(a - b for a, b in zip(lam, drops))
            contrib = q * _transport(ring, lam, drops)
            if target in acc:
                acc[target] = acc[target] + sign * contrib
            else:
                acc[target] = sign * contrib
    terms = {t: v for t, v in acc.items() if not v.is_zero()}
    interior = []
    boundary_nonzero = []
    for t in sorted(acc):
        up_pos = exactla.one_norm(exactla.vec_add(list(t), pos))
        up_neg = exactla.one_norm(exactla.vec_add(list(t), neg))
        if up_pos <= series.l_max and up_neg <= series.l_max:
            interior.append(t)
        elif t in terms:
            boundary_nonzero.append(t)
    interior_zero = all(t not in terms for t in interior)
    return BoxResidual(terms=terms, interior=interior,
                       interior_zero=interior_zero,
                       boundary_nonzero=boundary_nonzero)


def differentiate(series, i):
    """Formal d/dv_i; returns the series for beta - a_i at order l_max - 1.

    Term by term this agrees with a fresh build at the shifted beta on the
    common truncation, which is the recursion the tests pin down.
    """
    ring = series.ring
    cfg = series.cfg
    new_beta = tuple(b - a for b, a in
                     zip(series.beta, cfg.column(i)))
    new_gamma0 = tuple(g - int(j == i - 1) for j, g in enumerate(series.gamma0))
    new_lmax = series.l_max - 1
    terms = {}
    for lam, q in series.terms.items():
        new_lam = tuple(v - int(j == i - 1) for j, v in enumerate(lam))
        if exactla.one_norm(new_lam) > new_lmax:
            continue
        coeff = (lam[i - 1] + ring.generator(i)) * q
        if not coeff.is_zero():
            terms[new_lam] = coeff
    return TruncatedSeries(ring=ring, beta=new_beta, gamma0=new_gamma0,
                           l_max=new_lmax, terms=terms)


# numeric evaluation ------------------------------------------------------


def domain_test_vectors(tri):
    """Primitive extreme rays of the dual secondary cone plus pairwise sums.

    Returned as integer vectors in Z^N.  The ray test alone certifies the
    linear inequality on each ray; adding all pairwise sums makes the test
    a conservative over-approximation of the full cone condition, since
    the 1-norm bound is only positively homogeneous, not linear.
    """
    cfg = tri.cfg
    dual = tri.secondary_cone().dual()
    rays = [list(r) for r in dual.rays]
    for v in dual.lineality:
        rays.append(list(v))
        rays.append([-x for x in v])
    vecs = [cfg.lattice_vector(r) for r in rays]
    for a, b in combinations(range(len(rays)), 2):
        vecs.append(cfg.lattice_vector(exactla.vec_add(rays[a], rays[b])))
    return [tuple(v) for v in vecs]


def domain_margin(series, z):
    """min over test vectors of 2 pi Im(z).ell - |ell|_1 log N (None if no rays)."""
    cfg = series.cfg
    vecs = domain_test_vectors(series.tri)
    if not vecs:
        return None
    logn = math.log(cfg.N)
    margin = None
    for ell in vecs:
        im = sum(complex(zz).imag * float(e) for zz, e in zip(z, ell))
        val = 2 * math.pi * im - logn * exactla.one_norm(ell)
        margin = val if margin is None else min(margin, val)
    return margin


@dataclass
class Evaluation:
    """Numeric value of a truncated series at a point."""

    coords: list
    precision_bits: int
    tail_estimate: float
    domain_margin: float


def evaluate(series, z, check_domain=True, precision=53):
    """Numeric ring-valued value at z (length-N complex vector).

    check_domain enforces the conservative ray test and raises
    OutsideDomain on failure.  precision > 53 switches the scalar
    arithmetic to mpmath at that many bits; the exact coefficients are
    converted at the end, never the other way around.
    """
    ring = series.ring
    cfg = series.cfg
    margin = domain_margin(series, z)
    if check_domain and margin is not None and margin <= 0:
        raise OutsideDomain(f"domain margin {margin:.3g} <= 0")
    if precision <= 53:
        zz = [complex(v) for v in z]
        two_pi_i = 2j * math.pi
        expf = cmath.exp
        conv = float
    else:
        mpmath.mp.prec = precision
        zz = [mpmath.mpc(v) for v in z]
        two_pi_i = 2j * mpmath.pi
        expf = mpmath.exp
        conv = lambda q: mpmath.mpf(q.numerator) / q.denominator \
            if isinstance(q, Fraction) else mpmath.mpf(q)
    acc = [0 * zz[0]] * ring.total_dim
    shell = 0.0
    for lam, q in series.terms.items():
        phase = expf(two_pi_i * sum(a * b for a, b in zip(zz, lam)))
        for idx, c in enumerate(q.coords):
            if c != 0:
                acc[idx] = acc[idx] + conv(c) * phase
        if exactla.one_norm(lam) == series.l_max:
            shell += max(abs(complex(conv(c) * phase)) for c in q.coords)
    zc = [0 * zz[0]] * ring.total_dim
    for j in range(cfg.N):
        gj = ring.gens[j]
        for idx, c in enumerate(gj.coords):
            if c != 0:
                zc[idx] = zc[idx] + conv(c) * (two_pi_i * zz[j])
    value = ring.mul_coords(acc, ring.exp_coords(zc))
    tail = _tail_estimate(series, z, shell)
    return Evaluation(coords=value, precision_bits=precision,
                      tail_estimate=tail,
                      domain_margin=margin if margin is not None else math.inf)


def _tail_estimate(series, z, shell_size):
    """Heuristic geometric bound on the truncation tail.

    Uses the N^|ell| growth of the coefficients against the exponential decay of the phases along the dual-cone rays;
    reported for diagnostics, not as a certified bound.
    """
    cfg = series.cfg
    dual = series.tri.secondary_cone().dual()
    rays = [cfg.lattice_vector(list(r)) for r in dual.rays]
    if not rays:
        return 0.0
    rho = 0.0
    for ell in rays:
        im = sum(complex(v).imag * float(e) for v, e in zip(z, ell))
        rho = max(rho, math.exp(-2 * math.pi * im + exactla.one_norm(ell) * math.log(cfg.N)))
    if rho >= 1:
        return math.inf
    return shell_size * rho / (1 - rho)


def deep_domain_point(tri, direction=None, factor=1.5, re_offset=None):
    """A point certified inside the evaluation domain of a triangulation.

    direction is an interior direction of the secondary cone in weight
    coordinates (the stored certificate by default); it is pulled back to
    an imaginary part of z and scaled so every domain test vector clears
    its threshold by the given factor.  re_offset adds a real part.
    """
    cfg = tri.cfg
    if direction is None:
        direction = list(tri.weight)
    if re_offset is None:
        re_offset = [0] * cfg.N
    bt = exactla.transpose(cfg.B)
    gram = exactla.mat_mul(cfg.B, bt)
    inv, _ = exactla.square_inverse(gram)
    y = exactla.mat_vec(bt, exactla.mat_vec(inv, list(direction)))
    logn = math.log(cfg.N)
    depth = 0.0
    for ell in domain_test_vectors(tri):
        pairing = sum(float(a) * b for a, b in zip(y, ell))
        if pairing <= 0:
            raise ValueError("direction is not interior to the secondary cone")
        depth = max(depth, (logn / (2 * math.pi)) * exactla.one_norm(ell) / pairing)
    t = factor * depth if depth > 0 else factor
    return [complex(float(o), t * float(v)) for o, v in zip(re_offset, y)]


def sample_deep_points(tri, count, seed=0):
    """A deterministic spread of deep-domain points.

    Directions mix the certificate with the extreme rays of the secondary
    cone and depths increase gently, which keeps the sampled values
    numerically diverse; real offsets come from a seeded rational stream.
    """
    import random
    rng = random.Random(seed)
    cfg = tri.cfg
    cone = tri.secondary_cone()
    rays = [list(r) for r in cone.rays]
    base = [2 * x for x in tri.weight]
    directions = [list(tri.weight)]
    for r in rays:
        directions.append(exactla.vec_add(base, r))
    out = []
    for b in range(count):
        off = [Fraction(rng.randrange(0, 97), 97) for _ in range(cfg.N)]
        if b == 0:
            off = [Fraction(0)] * cfg.N
        out.append(deep_domain_point(
            tri, direction=directions[b % len(directions)],
            factor=1.02 + 0.08 * b, re_offset=off))
    return out


def functional_probe(series, functional):
    """Compose the series with a linear functional in dual-basis coordinates.

    Returns a callable z -> scalar; accepts the same precision arguments
    as evaluate.
    """
    coeffs = list(functional)
    if len(coeffs) != series.ring.total_dim:
        raise ValueError("functional coordinate length mismatch")

    def probe(z, check_domain=True, precision=53):
        val = evaluate(series, z, check_domain=check_domain, precision=precision)
        return sum(complex(f) * complex(v) if precision <= 53 else f * v
                   for f, v in zip(coeffs, val.coords))

    return probe


def small_relations(cfg, norm_bound, count, seed=0, exclude_basis=True):
    """Seeded sample of nonzero lattice relations with bounded 1-norm."""
    import random
    _, fiber = enumerate_fiber(cfg, [0] * cfg.n, norm_bound)
    basis = {tuple(r) for r in cfg.B}
    pool = [l for l in fiber if any(l)
            and not (exclude_basis and (l in basis or tuple(-x for x in l) in basis))]
    rng = random.Random(seed)
    rng.shuffle(pool)
    return pool[:count]


def verification_report(ring, beta, l_max, seed=0):
    """Run the operator and structure checks on one series; list of results.

    Covers: Euler residuals (exact zero), box residuals on the kernel
    basis plus a seeded sample of small relations (interior zero), the
    differentiation recursion against fresh builds, fast/slow coefficient
    agreement, the support-projection membership, the scalar-expansion
    coefficient bounds, and (when beta is a negative core combination)
    membership of every coefficient in the core ideal with the expected
    leading term.
    """
    cfg = ring.cfg
    tri = ring.tri
    checks = []

    def record(name, ok, detail=""):
        checks.append({"name": name, "pass": bool(ok), "detail": detail})

    series = build_series(ring, beta, l_max)
    record("series_terms", True, f"{series.term_count()} terms at order {l_max}")

    for i in range(1, cfg.n + 1):
        res = apply_euler(series, i)
        record(f"euler_zero_{i}", res.is_zero,
               "" if res.is_zero else f"{len(res.terms)} nonzero residual terms")

    for k, row in enumerate(cfg.B):
        br = apply_box(series, row)
        record(f"box_basis_{k + 1}", br.interior_zero,
               f"{len(br.interior)} interior exponents")
    for k, ell in enumerate(small_relations(cfg, 4, 5, seed=seed)):
        br = apply_box(series, ell)
        record(f"box_random_{k + 1}", br.interior_zero, f"ell={list(ell)}")

    for i in range(1, cfg.N + 1):
        left = differentiate(series, i)
        right = build_series(ring, left.beta, left.l_max)
        same = set(left.terms) == set(right.terms) and all(
            (left.terms[l] - right.terms[l]).is_zero() for l in left.terms)
        record(f"recursion_{i}", same)

    _, fiber = enumerate_fiber(cfg, beta, min(l_max, 4))
    agree = all(
        (gamma_coefficient(ring, lam, fast_path=True)
         - gamma_coefficient(ring, lam, fast_path=False)).is_zero()
        for lam in fiber)
    record("fast_slow_paths", agree, f"{len(fiber)} fiber points")

    proj = all(support_projection_holds(tri, lam) for lam in series.terms)
    record("support_projection", proj)

    bounds_ok = True
    for lam in series.terms:
        for m, val in qx_expansion(cfg, lam).items():
            if val < 0 or val > qx_bound(cfg, lam, m):
                bounds_ok = False
    record("qx_coefficient_bounds", bounds_ok)

    core = tri.core()
    if core:
        coeffs = exactla.solve(cfg.submatrix(core), list(beta))
        if coeffs is not None and all(c.denominator == 1 and c < 0 for c in coeffs):
            ideal = ring.ideal(ring.core_element())
            mat = exactla.transpose([el.coords for el in ideal])
            member = all(exactla.solve(mat, q.coords) is not None
                         for q in series.terms.values())
            record("core_ideal_membership", member)
            mu = [0] * cfg.N
            for i, c in zip(core, coeffs):
                mu[i - 1] = int(c)
            mu = tuple(mu)
            lead = series.terms.get(mu)
            unit = ring.one()
            for i, c in zip(core, coeffs):
                ci = ring.generator(i)
                for k in range(1, -int(c)):
                    unit = unit * (ci - k)
            expected = ring.core_element() * unit
            record("core_leading_term",
                   lead is not None and (lead - expected).is_zero(),
                   f"mu={list(mu)}")
    return checks


# expansion coefficients of the scalar model ------------------------------


def _poly_mul(a, b, cap):
    out = [Fraction(0)] * min(len(a) + len(b) - 1, cap + 1)
    for i, x in enumerate(a):
        if x == 0 or i > cap:
            continue
        for j, y in enumerate(b):
            if i + j > cap:
                break
            out[i + j] += x * y
    return out


def _series_inverse(poly, cap):
    c0 = poly[0]
    inv = [Fraction(0)] * (cap + 1)
    inv[0] = 1 / c0
    for k in range(1, cap + 1):
        s = Fraction(0)
        for j in range(1, min(k, len(poly) - 1) + 1):
            s += poly[j] * inv[k - j]
        inv[k] = -s / c0
    return inv


def qx_expansion(cfg, lam, cap=None):
    """Power-series coefficients K_m of the scalar model of Q_lam.

    Expands prod_{lam_j<0} prod_k (k + x_j) / prod_{lam_j>0} prod_k (k - x_j)
    up to total degree cap (default n - 1).  The expansion factors per
    coordinate, so each K_m is a finite product of univariate
    coefficients.  Returns a dict m-tuple -> Fraction over the support of
    lam.
    """
    if cap is None:
        cap = cfg.n - 1
    per_coord = {}
    for j, v in enumerate(lam):
        if v < 0:
            poly = [Fraction(1)]
            for k in range(-v):
                poly = _poly_mul(poly, [Fraction(k), Fraction(1)], cap)
            per_coord[j] = poly
        elif v > 0:
            poly = [Fraction(1)]
            for k in range(1, v + 1):
                poly = _poly_mul(poly, [Fraction(k), Fraction(-1)], cap)
            per_coord[j] = _series_inverse(poly, cap)
    support = sorted(per_coord)
    out = {}

    def rec(pos, remaining, partial, coeff):
        if pos == len(support):
            m = [0] * cfg.N
            for j, e in partial:
                m[j] = e
            out[tuple(m)] = coeff
            return
        j = support[pos]
        poly = per_coord[j]
        for e in range(0, min(remaining, len(poly) - 1) + 1):
            if poly[e] == 0:
                continue
            rec(pos + 1, remaining - e, partial + [(j, e)], coeff * poly[e])

    rec(0, cap, [], Fraction(1))
    return out


def qx_bound(cfg, lam, m):
    """The integer growth bound that every expansion coefficient K_m obeys."""
    norm_l = exactla.one_norm(lam)
    norm_m = sum(m)
    deg_l = sum(lam)
    n_fact = math.factorial(cfg.N)
    tail_fact = math.factorial(max(1, cfg.N - deg_l))
    return cfg.N ** norm_l * 2 ** (norm_m + cfg.N) * n_fact * tail_fact


def gamma_from_qx(ring, lam):
    """Reconstruct Q_lam from the scalar expansion; a second, independent route.

    Q_lam = (-1)^P sum_m (-1)^|m| K_m c^m with P the total negative depth
    of lam; used to cross-check gamma_coefficient in the tests.
    """
    cfg = ring.cfg
    ks = qx_expansion(cfg, lam)
    p = sum(-v for v in lam if v < 0)
    out = ring.zero()
    for m, coeff in ks.items():
        if coeff == 0:
            continue
        mono = ring.one()
        for j, e in enumerate(m):
            for _ in range(e):
                mono = mono * ring.generator(j + 1)
        out = out + ((-1) ** (p + sum(m))) * coeff * mono
    return out


def support_projection_holds(tri, lam):
    """Whether lam - p_I(lam) lies in the dual secondary cone for some maximal I.

    p_I is the idempotent that solves lam against the columns of I; the
    difference is a rational kernel vector whose membership is tested
    exactly in kernel coordinates.
    """
    cfg = tri.cfg
    dual = tri.secondary_cone().dual()
    target = exactla.mat_vec(cfg.A, list(lam))
    for simp in tri.maximal:
        coeffs = exactla.solve(cfg.submatrix(simp), target)
        proj = [Fraction(0)] * cfg.N
        for i, c in zip(simp, coeffs):
            proj[i - 1] = c
        diff = exactla.vec_sub([Fraction(v) for v in lam], proj)
        coords = exactla.solve(exactla.transpose(cfg.B), diff)
        if coords is not None and dual.contains(tuple(coords)):
            return True
    return False
