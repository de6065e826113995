"""Regular triangulations of a point configuration and their secondary fan.

A configuration is an integer n x N matrix whose columns lie on the affine
hyperplane a0vee . x = 1 and span rank n.  Triangulations are encoded by
their maximal index sets (1-based, matching the usual convention for
simplices conv{a_i : i in I}).  Two independent construction routes are
provided: lifting heights d (lower-hull determinant signs) and secondary
weights w (membership in the cones spanned by the kernel projections b_j);
they agree when w = B d^t and the tests lean on that redundancy.
"""

import random
from fractions import Fraction
from itertools import combinations

from . import exactla, polycone
from .errors import (DegenerateHeights, InternalInconsistency, NoDegreeFunctional,
                     WallWeight)


def degree_functional(a):
    """The integer row vector pairing to 1 with every column of a.

    Unique when rank(a) = n.  Raises NoDegreeFunctional if the columns do
    not lie on a common integral affine hyperplane at height 1.
    """
    n = len(a)
    ncols = len(a[0])
    sol = exactla.solve(exactla.transpose(a), [1] * ncols)
    if sol is None:
        raise NoDegreeFunctional("columns not on a common height-1 hyperplane")
    if any(x.denominator != 1 for x in sol):
        raise NoDegreeFunctional("degree functional is not integral")
    return [int(x) for x in sol]


class PointConfiguration:
    """Immutable configuration data: matrix, degree functional, kernel basis."""

    def __init__(self, a, a0vee=None):
        self.A = [list(map(int, row)) for row in a]
        self.n = len(self.A)
        self.N = len(self.A[0]) if self.A else 0
        if exactla.rank(self.A) != self.n:
            raise ValueError("configuration matrix must have full row rank")
        self.a0vee = list(a0vee) if a0vee is not None else degree_functional(self.A)
        for j in range(self.N):
            if exactla.dot(self.a0vee, self.column(j + 1)) != 1:
                raise ValueError(f"a0vee pairs to {exactla.dot(self.a0vee, self.column(j+1))} "
                                 f"with column {j+1}, expected 1")
        self.B = exactla.kernel_basis(self.A)
        self.rank_L = len(self.B)  # = N - n
        # b_j: image of the j-th coordinate functional in the kernel coordinates
        self.b = [tuple(self.B[i][j] for i in range(self.rank_L)) for j in range(self.N)]
        self._vol_total = None

    def column(self, i):
        """Column a_i, 1-based index."""
        return [self.A[r][i - 1] for r in range(self.n)]

    def columns(self, index_set):
        return [self.column(i) for i in index_set]

    def submatrix(self, index_set):
        """The n x |I| matrix with the selected columns."""
        return exactla.transpose(self.columns(index_set))

    def lattice_vector(self, coeffs):
        """Kernel lattice element sum coeffs_k * (row k of B), as a Z^N vector."""
        v = [0] * self.N
        for c, row in zip(coeffs, self.B):
            v = exactla.vec_add(v, exactla.vec_scale(c, row))
        return v

    def in_kernel(self, ell):
        return all(x == 0 for x in exactla.mat_vec(self.A, list(ell)))

    def kernel_coordinates(self, ell):
        """Coordinates of a kernel vector with respect to the rows of B."""
        sol = exactla.solve(exactla.transpose(self.B), list(ell))
        if sol is None:
            raise InternalInconsistency("vector not in the kernel span")
        return sol

    def simplex_volume(self, index_set):
        """Normalized volume |det| of the columns, 0 if dependent."""
        if len(index_set) != self.n:
            raise ValueError("volume is defined for size-n index sets")
        return abs(exactla.bareiss_det(self.submatrix(index_set)))

    def total_volume(self, seed=0):
        """Normalized volume of conv{a_i}, from a seed triangulation.

        Computed once by triangulating at a generic seed weight and summing
        simplex volumes; cached and reused as a cross-check constant for
        every other triangulation of this configuration.
        """
        if self._vol_total is None:
            w = generic_weight(self, seed=seed)
            tri = from_weight(self, w, _validate_volume=False)
            self._vol_total = sum(tri.volumes())
        return self._vol_total

    def __repr__(self):
        return f"PointConfiguration(n={self.n}, N={self.N})"


class Triangulation:
    """A regular triangulation: maximal simplices plus a weight certificate."""

    def __init__(self, cfg, maximal, weight):
        self.cfg = cfg
        self.maximal = tuple(sorted(tuple(sorted(i)) for i in maximal))
        self.weight = tuple(Fraction(x) for x in weight)
        self._cone = None
        self._simplices = None

    def key(self):
        return self.maximal

    def simplices(self, m=None):
        """All simplices, or those with m vertices; the empty simplex counts once."""
        if self._simplices is None:
            out = {()}
            for big in self.maximal:
                for size in range(1, len(big) + 1):
                    out.update(combinations(big, size))
            self._simplices = frozenset(out)
        if m is None:
            return self._simplices
        return sorted(s for s in self._simplices if len(s) == m)

    def is_simplex(self, index_set):
        return tuple(sorted(index_set)) in self.simplices()

    def simplex_counts(self):
        """[#T^0, #T^1, ..., #T^n]."""
        return [len(self.simplices(m)) for m in range(self.cfg.n + 1)]

    def core(self, check=True):
        """Intersection of the maximal simplices.

        With check=True the combinatorial answer is verified against the
        dual-cone characterization (index j is in the core iff ell_j <= 0
        on every ray of the dual secondary cone); a mismatch raises
        InternalInconsistency and would indicate a bug.
        """
        members = set(self.maximal[0]) if self.maximal else set()
        for simp in self.maximal[1:]:
            members &= set(simp)
        result = tuple(sorted(members))
        if check and self.cfg.rank_L > 0:
            dual = self.secondary_cone().dual()
            rays = [list(r) for r in dual.rays] + \
                   [list(v) for v in dual.lineality] + \
                   [[-x for x in v] for v in dual.lineality]
            oracle = tuple(j for j in range(1, self.cfg.N + 1)
                           if all(exactla.dot(self.cfg.b[j - 1], r) <= 0 for r in rays))
            if oracle != result:
                raise InternalInconsistency(
                    f"core mismatch: combinatorial {result} vs dual-cone {oracle}")
        return result

    def volumes(self):
        """Normalized volume of each maximal simplex, in canonical order."""
        return [self.cfg.simplex_volume(i) for i in self.maximal]

    def volume_product(self):
        d = 1
        for v in self.volumes():
            d *= v
        return d

    def is_unimodular(self):
        return all(v == 1 for v in self.volumes())

    def boundary_facets(self):
        """Codimension-1 simplices contained in exactly one maximal simplex."""
        count = {}
        for big in self.maximal:
            for facet in combinations(big, len(big) - 1):
                count[facet] = count.get(facet, 0) + 1
        return sorted(f for f, c in count.items() if c == 1)

    def simplex_in_boundary(self, index_set):
        """Whether the simplex lies in the boundary of conv{a_i}."""
        s = set(index_set)
        return any(s <= set(f) for f in self.boundary_facets())

    def secondary_cone(self):
        """The secondary cone C_T in the kernel-dual coordinates.

        Intersection over maximal I of the simplicial cones spanned by
        {b_j : j not in I}; the stored weight certificate lies strictly
        inside every facet.
        """
        if self._cone is not None:
            return self._cone
        d = self.cfg.rank_L
        if d == 0:
            self._cone = polycone.Cone.from_rays([], dim=0)
            return self._cone
        ineqs = set()
        full = set(range(1, self.cfg.N + 1))
        for simp in self.maximal:
            comp = sorted(full - set(simp))
            mat = [list(self.cfg.b[j - 1]) for j in comp]  # rows: b_j, j in I*
            inv, _ = exactla.square_inverse(exactla.transpose(mat))
            for row in inv:
                ineqs.add(tuple(exactla.primitive(row)))
        cone = polycone.Cone.from_ineqs(sorted(ineqs), dim=d)
        if not cone.contains(self.weight, strict=True):
            raise InternalInconsistency("weight certificate not interior to C_T")
        self._cone = cone
        return cone

    def __eq__(self, other):
        return isinstance(other, Triangulation) and self.maximal == other.maximal

    def __hash__(self):
        return hash(self.maximal)

    def __repr__(self):
        return f"Triangulation({list(self.maximal)})"


def _independent_subsets(cfg):
    """Size-n index sets with linearly independent columns."""
    out = []
    for idx in combinations(range(1, cfg.N + 1), cfg.n):
        if cfg.simplex_volume(idx) != 0:
            out.append(idx)
    return out


def hyperplane_normals(cfg):
    """Primitive normals of the arrangement hyperplanes H_J.

    H_J is the span of an independent set {b_j : j in J} of size N-n-1;
    the normal is computed by cofactor expansion.  Duplicates (distinct J
    spanning the same hyperplane) are collapsed.
    """
    d = cfg.rank_L
    if d == 0:
        return []
    normals = set()
    for subset in combinations(range(1, cfg.N + 1), d - 1):
        rows = [list(cfg.b[j - 1]) for j in subset]
        if exactla.rank(rows) != d - 1:
            continue
        normal = []
        for k in range(d):
            minor = [row[:k] + row[k + 1:] for row in rows]
            normal.append((-1) ** k * exactla.bareiss_det(minor) if minor else (-1) ** k)
        if d == 1:
            normal = [1]
        normals.add(tuple(exactla.sign_canonical(normal)))
    return sorted(normals)


def on_wall(cfg, w, normals=None):
    """Whether w lies on some arrangement hyperplane H_J."""
    if normals is None:
        normals = hyperplane_normals(cfg)
    return any(exactla.dot(h, w) == 0 for h in normals)


def generic_weight(cfg, seed=0):
    """Deterministic seeded weight off every arrangement hyperplane."""
    d = cfg.rank_L
    if d == 0:
        return ()
    rng = random.Random(seed)
    normals = hyperplane_normals(cfg)
    for _ in range(1000):
        w = tuple(Fraction(1) + Fraction(rng.randrange(-10 ** 6, 10 ** 6), 10 ** 7)
                  for _ in range(d))
        if not on_wall(cfg, w, normals):
            return w
    raise InternalInconsistency("could not find a generic weight")


def from_weight(cfg, w, _validate_volume=True):
    """Regular triangulation selected by a secondary-fan weight.

    Maximal simplices are the I whose complementary b-columns are
    independent and whose cone contains w with strictly positive
    coordinates.  Raises WallWeight when w lies on an arrangement
    hyperplane H_J.
    """
    w = tuple(Fraction(x) for x in w)
    if len(w) != cfg.rank_L:
        raise WallWeight(f"weight must have length {cfg.rank_L}")
    if cfg.rank_L == 0:
        full = tuple(range(1, cfg.N + 1))
        return Triangulation(cfg, [full], ())
    if on_wall(cfg, w):
        raise WallWeight("weight lies on an arrangement hyperplane")
    maximal = []
    full = set(range(1, cfg.N + 1))
    for idx in combinations(sorted(full), cfg.n):
        comp = sorted(full - set(idx))
        mat = exactla.transpose([list(cfg.b[j - 1]) for j in comp])
        if exactla.bareiss_det(mat) == 0:
            continue
        coeffs = exactla.solve(mat, list(w))
        if any(c == 0 for c in coeffs):
            raise WallWeight("weight on a cone wall that the arrangement scan missed")
        if all(c > 0 for c in coeffs):
            maximal.append(idx)
    tri = Triangulation(cfg, maximal, w)
    if _validate_volume:
        expected = cfg.total_volume()
        got = sum(tri.volumes())
        if got != expected:
            raise InternalInconsistency(
                f"volume sum {got} != total volume {expected}")
    return tri


def lifting_determinant(cfg, d, index_set, x):
    """The (n+1) x (n+1) determinant cutting out the lifted facet hyperplane.

    Columns are the scaled points a_i / d_i for i in the index set plus the
    test point x, each extended by a final 1.
    """
    cols = []
    for i in index_set:
        di = Fraction(d[i - 1])
        cols.append([Fraction(v) / di for v in cfg.column(i)] + [Fraction(1)])
    cols.append([Fraction(v) for v in x] + [Fraction(1)])
    return exactla.bareiss_det(exactla.transpose(cols))


def from_heights(cfg, d):
    """Regular triangulation from positive lifting heights.

    A size-n independent I is maximal iff the lifted points span a facet
    of conv{0, a_i/d_i} visible in the projection from 0, decided by the
    sign of determinant products.  Raises DegenerateHeights when any test
    determinant vanishes (d on a wall); callers should perturb d.
    """
    d = [Fraction(x) for x in d]
    if len(d) != cfg.N or any(x <= 0 for x in d):
        raise ValueError("heights must be N positive rationals")
    maximal = []
    for idx in _independent_subsets(cfg):
        d0 = lifting_determinant(cfg, d, idx, [0] * cfg.n)
        comp = sorted(set(range(1, cfg.N + 1)) - set(idx))
        keep = True
        for j in comp:
            dj = lifting_determinant(
                cfg, d, idx, [Fraction(v) / d[j - 1] for v in cfg.column(j)])
            if dj == 0:
                raise DegenerateHeights(f"determinant vanishes for I={idx}, j={j}")
            if dj * d0 < 0:
                keep = False
                break
        if keep:
            maximal.append(idx)
    w = exactla.mat_vec(cfg.B, d)
    tri = Triangulation(cfg, maximal, w)
    expected = cfg.total_volume()
    if sum(tri.volumes()) != expected:
        raise InternalInconsistency("height triangulation volume mismatch")
    return tri


def secondary_cone(cfg, tri):
    """Module-level access to the secondary cone of a triangulation."""
    return tri.secondary_cone()


def from_simplices(cfg, maximal, seed=0):
    """Reconstruct a regular triangulation from its maximal simplices.

    Builds the would-be secondary cone, picks a generic interior weight
    and confirms that the weight reproduces exactly the given simplex
    set; raises WallWeight/InternalInconsistency when the set is not a
    regular triangulation of this configuration.
    """
    maximal = sorted(tuple(sorted(s)) for s in maximal)
    if cfg.rank_L == 0:
        tri = from_weight(cfg, ())
        if list(tri.maximal) != maximal:
            raise InternalInconsistency("not the unique triangulation")
        return tri
    full = set(range(1, cfg.N + 1))
    ineqs = set()
    for simp in maximal:
        comp = sorted(full - set(simp))
        mat = [list(cfg.b[j - 1]) for j in comp]
        inv, _ = exactla.square_inverse(exactla.transpose(mat))
        for row in inv:
            ineqs.add(tuple(exactla.primitive(row)))
    cone = polycone.Cone.from_ineqs(sorted(ineqs), dim=cfg.rank_L)
    if not cone.is_full_dimensional() or not cone.rays:
        raise WallWeight("simplex set does not define a full secondary cone")
    base = [Fraction(x) for x in cone.interior_point()]
    rng = random.Random(seed)
    normals = hyperplane_normals(cfg)
    for attempt in range(200):
        scale = Fraction(1, 10 ** (3 + attempt % 7)) * rng.randrange(1, 100)
        w = tuple(x + scale * rng.randrange(-50, 50) for x in base)
        if not cone.contains(w, strict=True) or on_wall(cfg, w, normals):
            continue
        tri = from_weight(cfg, w)
        if list(tri.maximal) == maximal:
            return tri
        raise InternalInconsistency(
            "simplex set is not the triangulation of its own cone interior")
    raise InternalInconsistency("no generic interior weight found")


def _cross_wall(cfg, tri, facet_normal, normals, rng):
    """A generic weight just beyond one facet of the secondary cone.

    Starts from a relative-interior point of the facet and steps across;
    the step and an in-facet jitter shrink until the new weight is off
    every arrangement hyperplane and its chamber has the facet point in
    its closure (which certifies that the landing chamber is the true
    neighbor).
    """
    cone = tri.secondary_cone()
    base = [Fraction(x) for x in _facet_interior(cone, facet_normal)]
    direction = [-Fraction(x) for x in facet_normal]
    facet_rays = cone.facet_rays(facet_normal)
    for attempt in range(40):
        jitter = [Fraction(0)] * len(base)
        if attempt > 0 and facet_rays:
            scale = Fraction(1, 7 ** attempt)
            for r in facet_rays:
                jitter = exactla.vec_add(
                    jitter, exactla.vec_scale(scale * rng.randrange(1, 50), list(r)))
        p = exactla.vec_add(base, jitter)
        eps = Fraction(1, 2)
        for _ in range(60):
            w = tuple(exactla.vec_add(p, exactla.vec_scale(eps, direction)))
            if not on_wall(cfg, w, normals):
                neighbor = from_weight(cfg, w)
                if neighbor.key() != tri.key() and \
                        neighbor.secondary_cone().contains(tuple(base)):
                    return neighbor
            eps /= 4
    raise InternalInconsistency("wall crossing failed to find the adjacent chamber")


def _facet_interior(cone, facet_normal):
    rays = cone.facet_rays(facet_normal)
    acc = [0] * cone.dim
    for r in rays:
        acc = exactla.vec_add(acc, list(r))
    return acc


def enumerate_regular(cfg, seed=0):
    """All regular triangulations, by breadth-first wall crossing.

    Starts at a seeded generic weight and crosses every facet of every
    discovered secondary cone; each crossing is certified to land in the
    adjacent chamber, so the walk closes over the complete secondary fan.
    Output is sorted by the canonical simplex-set key.
    """
    if cfg.rank_L == 0:
        return [from_weight(cfg, ())]
    normals = hyperplane_normals(cfg)
    rng = random.Random(seed + 10 ** 6)
    start = from_weight(cfg, generic_weight(cfg, seed=seed))
    found = {start.key(): start}
    queue = [start]
    while queue:
        tri = queue.pop()
        for g in tri.secondary_cone().ineqs:
            neighbor = _cross_wall(cfg, tri, g, normals, rng)
            if neighbor.key() not in found:
                found[neighbor.key()] = neighbor
                queue.append(neighbor)
    return [found[k] for k in sorted(found)]


def adjacency(triangulations):
    """Pairs (i, j) of list indices whose secondary cones share a facet."""
    edges = []
    for i in range(len(triangulations)):
        ci = triangulations[i].secondary_cone()
        for j in range(i + 1, len(triangulations)):
            cj = triangulations[j].secondary_cone()
            shared = False
            for g in ci.ineqs:
                neg = tuple(-x for x in g)
                if neg in cj.ineqs and \
                        set(ci.facet_rays(g)) == set(cj.facet_rays(neg)):
                    shared = True
                    break
            if shared:
                edges.append((i, j))
    return edges
