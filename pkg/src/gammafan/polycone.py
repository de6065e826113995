"""Exact rational polyhedral cones via the double description method.

A cone is stored with both of its descriptions:

    cone = nonneg span(rays) + span(lineality)
         = {x : g.x >= 0 for g in ineqs} cut with {x : e.x = 0 for e in eqs}

Both sides are minimal: rays are the extreme rays modulo lineality, ineqs
are facet normals, eqs span the orthogonal complement of the cone's linear
hull.  With this convention dualizing is literally the swap
(rays, lineality) <-> (ineqs, eqs), which makes double-dual idempotence a
structural fact rather than a computation.

The double description pass inserts one inequality at a time over exact
rationals.  Adjacency of two rays is decided by a rank test on the
inequalities tight at both, as is standard; there is no floating point
prefilter anywhere.
"""

from fractions import Fraction
from itertools import product

from . import exactla
from .errors import DimensionMismatch


def _dd(constraints, dim):
    """Minimal (lineality, rays) pair for {x : g.x >= 0, g in constraints}."""
    lineality = [[Fraction(int(i == j)) for j in range(dim)] for i in range(dim)]
    rays = []
    processed = []
    for g in constraints:
        g = [Fraction(x) for x in g]
        if all(x == 0 for x in g):
            continue
        pivot_idx = None
        for k, v in enumerate(lineality):
            if exactla.dot(g, v) != 0:
                pivot_idx = k
                break
        if pivot_idx is not None:
            # g cuts the lineality space: one lineality direction becomes a ray
            pivot = lineality.pop(pivot_idx)
            if exactla.dot(g, pivot) < 0:
                pivot = [-x for x in pivot]
            gp = exactla.dot(g, pivot)
            lineality = [exactla.vec_sub(v, exactla.vec_scale(exactla.dot(g, v) / gp, pivot))
                         for v in lineality]
            rays = [exactla.vec_sub(r, exactla.vec_scale(exactla.dot(g, r) / gp, pivot))
                    for r in rays]
            rays.append(pivot)
        else:
            pos = [r for r in rays if exactla.dot(g, r) > 0]
            zero = [r for r in rays if exactla.dot(g, r) == 0]
            neg = [r for r in rays if exactla.dot(g, r) < 0]
            newrays = pos + zero
            target = dim - len(lineality) - 2
            if target >= 0:
                for rp, rn in product(pos, neg):
                    tight = [h for h in processed
                             if exactla.dot(h, rp) == 0 and exactla.dot(h, rn) == 0]
                    tight_rank = exactla.rank(tight) if tight else 0
                    if tight_rank != target:
                        continue
                    comb = exactla.vec_sub(
                        exactla.vec_scale(exactla.dot(g, rp), rn),
                        exactla.vec_scale(exactla.dot(g, rn), rp))
                    if not exactla.is_zero_vec(comb):
                        newrays.append([Fraction(x) for x in exactla.primitive(comb)])
            rays = newrays
        processed.append(g)
    return lineality, rays


class Cone:
    """Rational polyhedral cone with a complete double description."""

    def __init__(self, dim, rays, lineality, ineqs, eqs):
        self.dim = dim
        self.rays = rays
        self.lineality = lineality
        self.ineqs = ineqs
        self.eqs = eqs

    @classmethod
    def from_rays(cls, rays, lineality=(), dim=None):
        rays = [tuple(r) for r in rays]
        lineality = [tuple(v) for v in lineality]
        if dim is None:
            if not rays and not lineality:
                raise DimensionMismatch("need dim for a cone with no generators")
            dim = len((rays + lineality)[0])
        for v in list(rays) + list(lineality):
            if len(v) != dim:
                raise DimensionMismatch("generator length != ambient dim")
        cons = [list(r) for r in rays]
        for v in lineality:
            cons.append(list(v))
            cons.append([-x for x in v])
        eqs, ineqs = _dd(cons, dim)
        cons2 = [list(g) for g in ineqs]
        for e in eqs:
            cons2.append(list(e))
            cons2.append([-x for x in e])
        lin2, rays2 = _dd(cons2, dim)
        return cls(dim, _canon_rays(rays2), _canon_lines(lin2),
                   _canon_rays(ineqs), _canon_lines(eqs))

    @classmethod
    def from_ineqs(cls, ineqs, eqs=(), dim=None):
        ineqs = [tuple(g) for g in ineqs]
        eqs = [tuple(e) for e in eqs]
        if dim is None:
            if not ineqs and not eqs:
                raise DimensionMismatch("need dim for a cone with no constraints")
            dim = len((list(ineqs) + list(eqs))[0])
        for v in list(ineqs) + list(eqs):
            if len(v) != dim:
                raise DimensionMismatch("constraint length != ambient dim")
        cons = [list(g) for g in ineqs]
        for e in eqs:
            cons.append(list(e))
            cons.append([-x for x in e])
        lin, rays = _dd(cons, dim)
        cons2 = [list(r) for r in rays]
        for v in lin:
            cons2.append(list(v))
            cons2.append([-x for x in v])
        eqs2, ineqs2 = _dd(cons2, dim)
        return cls(dim, _canon_rays(rays), _canon_lines(lin),
                   _canon_rays(ineqs2), _canon_lines(eqs2))

    def dual(self):
        """Dual cone; exact swap of the two descriptions."""
        return Cone(self.dim, self.ineqs, self.eqs, self.rays, self.lineality)

    def contains(self, x, strict=False):
        """Membership test against the inequality description.

        With strict=True, demands x in the relative interior (all facet
        inequalities strictly positive, equations still exact).
        """
        if len(x) != self.dim:
            raise DimensionMismatch("point length != ambient dim")
        for e in self.eqs:
            if exactla.dot(e, x) != 0:
                return False
        for g in self.ineqs:
            p = exactla.dot(g, x)
            if p < 0 or (strict and p == 0):
                return False
        return True

    def extreme_rays(self):
        """(rays, lineality): minimal primitive generators plus lineality basis."""
        return list(self.rays), list(self.lineality)

    def dimension(self):
        return self.dim - len(self.eqs)

    def is_pointed(self):
        return not self.lineality

    def is_full_dimensional(self):
        return not self.eqs

    def interior_point(self):
        """A point in the relative interior: the sum of all extreme rays."""
        if not self.rays:
            return tuple(0 for _ in range(self.dim))
        acc = [0] * self.dim
        for r in self.rays:
            acc = exactla.vec_add(acc, list(r))
        return tuple(acc)

    def facet_rays(self, g):
        """Extreme rays of this cone lying on the facet with normal g."""
        return [r for r in self.rays if exactla.dot(g, r) == 0]

    def __eq__(self, other):
        return (isinstance(other, Cone) and self.dim == other.dim
                and set(self.rays) == set(other.rays)
                and set(self.lineality) == set(other.lineality))

    def __repr__(self):
        return (f"Cone(dim={self.dim}, rays={len(self.rays)}, "
                f"lin={len(self.lineality)}, facets={len(self.ineqs)})")


def _canon_rays(vectors):
    out = sorted({tuple(exactla.primitive(v)) for v in vectors
                  if not exactla.is_zero_vec(v)})
    return out


def _canon_lines(vectors):
    out = sorted({tuple(exactla.sign_canonical(v)) for v in vectors
                  if not exactla.is_zero_vec(v)})
    return out


def dualize(cone):
    """Module-level alias for Cone.dual."""
    return cone.dual()


def contains(cone, x):
    return cone.contains(x)


def extreme_rays(cone):
    return cone.extreme_rays()


def chamber_sign_vectors(vectors):
    """Sign vectors of the open chambers of the arrangement {v_j . x = 0}.

    Every candidate pattern in {+1,-1}^N is tested by exact strict
    feasibility: the pattern is realized iff the cone cut out by the
    signed inequalities is full dimensional.  Intended for small N.
    """
    vectors = [tuple(v) for v in vectors]
    if not vectors or any(exactla.is_zero_vec(v) for v in vectors):
        return set()
    dim = len(vectors[0])
    realized = set()
    for signs in product((1, -1), repeat=len(vectors)):
        cone = Cone.from_ineqs(
            [tuple(s * x for x in v) for s, v in zip(signs, vectors)], dim=dim)
        if cone.is_full_dimensional():
            realized.add(signs)
    return realized


def arrangement_chambers(normals, dim):
    """Witness points, one per open chamber of a central hyperplane arrangement.

    Incremental splitting: chambers are carried as sign-constraint cones and
    each new hyperplane splits exactly those chambers it crosses.  Returns a
    list of rational witness points, one in each open chamber.
    """
    normals = [tuple(exactla.primitive(v)) for v in normals if not exactla.is_zero_vec(v)]
    dedup = []
    seen = set()
    for v in normals:
        key = tuple(exactla.sign_canonical(v))
        if key not in seen:
            seen.add(key)
            dedup.append(v)
    chambers = [[]]  # lists of signed inequality rows
    for v in dedup:
        nxt = []
        for ineqs in chambers:
            for s in (1, -1):
                cand = ineqs + [tuple(s * x for x in v)]
                if Cone.from_ineqs(cand, dim=dim).is_full_dimensional():
                    nxt.append(cand)
        chambers = nxt
    return [Cone.from_ineqs(ineqs, dim=dim).interior_point() for ineqs in chambers]


def positive_combination_exists(vectors):
    """Whether 0 is a strictly positive rational combination of the vectors.

    Decided exactly: the coefficient cone {t >= 0 : sum t_j v_j = 0} is
    computed by double description and the sum of its extreme rays must be
    strictly positive in every coordinate.
    """
    vectors = [list(v) for v in vectors]
    k = len(vectors)
    if k == 0:
        return False
    dim = len(vectors[0])
    ineqs = [[Fraction(int(i == j)) for j in range(k)] for i in range(k)]
    eqs = [[Fraction(vectors[j][i]) for j in range(k)] for i in range(dim)]
    cone = Cone.from_ineqs(ineqs, eqs=eqs, dim=k)
    # t >= 0 makes the coefficient cone pointed, so rays generate it
    total = [0] * k
    for r in cone.rays:
        total = exactla.vec_add(total, list(r))
    return all(x > 0 for x in total)
