"""Reflexive Gorenstein cone analysis for triangulations with a core.

A triangulation qualifies when its core is nonempty (core1), the core is
not contained in the boundary of the polytope (core2), and every maximal
simplex is unimodular (vol1).  Under those conditions the cone spanned by
the configuration columns is reflexive Gorenstein: the dual cone is
generated by the core-indexed rows of the inverses of the maximal column
submatrices, the degree vector a0 is the sum of the core columns, and the
index is the size of the core.  The dual generators split into boxes, one
per core index, whose lattice points biject with the monomials of the
section polynomials; the fan obtained by projecting out the core is
complete and smooth.
"""

from dataclasses import dataclass
from itertools import product

from . import exactla, polycone
from .errors import InternalInconsistency, PreconditionFailed
from .triang import degree_functional


def find_a0vee(cfg):
    """The degree functional of the configuration (already held by cfg)."""
    return degree_functional(cfg.A)


def check_preconditions(cfg, tri):
    """Raise PreconditionFailed naming the first violated condition."""
    core = tri.core()
    if not core:
        raise PreconditionFailed("core1", "core is empty")
    if tri.simplex_in_boundary(core):
        raise PreconditionFailed("core2", "core lies in the boundary of the polytope")
    if not tri.is_unimodular():
        raise PreconditionFailed("vol1", "triangulation is not unimodular")
    return core


def dual_generators(cfg, tri):
    """Integer generators of the dual cone: core rows of the simplex inverses.

    Each generator is verified against the splitting sign pattern (pairs
    nonnegatively with every column, to 1 with its own core column and to
    0 with the other core columns); unimodularity makes integrality
    automatic.  Returns a sorted deduplicated list of tuples.
    """
    core = check_preconditions(cfg, tri)
    gens = set()
    for simp in tri.maximal:
        inv, det = exactla.square_inverse(cfg.submatrix(simp))
        if abs(det) != 1:
            raise PreconditionFailed("vol1", f"simplex {simp} has volume {abs(det)}")
        for i in core:
            row = inv[simp.index(i)]
            if any(x.denominator != 1 for x in row):
                raise InternalInconsistency("non-integral dual generator")
            vec = tuple(int(x) for x in row)
            _verify_splitting(cfg, vec, i, core)
            gens.add(vec)
    return sorted(gens)


def _verify_splitting(cfg, vec, own, core):
    for j in range(1, cfg.N + 1):
        pairing = exactla.dot(vec, cfg.column(j))
        if pairing < 0:
            raise InternalInconsistency(
                f"dual generator pairs to {pairing} < 0 with column {j}")
        if j == own and pairing != 1:
            raise InternalInconsistency("dual generator misses its own column")
        if j in core and j != own and pairing != 0:
            raise InternalInconsistency("dual generator sees a foreign core column")


@dataclass
class GorensteinReport:
    a0vee: list
    a0: list
    index: int
    dual_generators: list
    is_reflexive: bool
    is_completely_split: bool
    boxes: dict  # core index -> sorted list of lattice point tuples


def _box_lattice_points(cfg, core, i, gens_i):
    """Integer points of box i: bounded enumeration plus the sign pattern.

    The candidate box is the coordinate bounding box of the generators;
    inside it the splitting pattern (nonneg on all columns, 1 on column i,
    0 on the other core columns) carves out exactly the box points.
    """
    lo = [min(g[k] for g in gens_i) for k in range(cfg.n)]
    hi = [max(g[k] for g in gens_i) for k in range(cfg.n)]
    points = []
    for cand in product(*[range(a, b + 1) for a, b in zip(lo, hi)]):
        if exactla.dot(cand, cfg.column(i)) != 1:
            continue
        if any(exactla.dot(cand, cfg.column(j)) != 0 for j in core if j != i):
            continue
        if any(exactla.dot(cand, cfg.column(j)) < 0 for j in range(1, cfg.N + 1)):
            continue
        points.append(tuple(cand))
    return sorted(points)


def box_hull_contains(gens_i, point):
    """Exact convex-hull membership via the homogenization cone."""
    dim = len(point)
    cone = polycone.Cone.from_rays([tuple(g) + (1,) for g in gens_i], dim=dim + 1)
    return cone.contains(tuple(point) + (1,))


def gorenstein_report(cfg, tri):
    """Assemble the full reflexive-cone report for a qualifying triangulation."""
    core = check_preconditions(cfg, tri)
    gens = dual_generators(cfg, tri)
    a0 = [0] * cfg.n
    for i in core:
        a0 = exactla.vec_add(a0, cfg.column(i))
    index = exactla.dot(cfg.a0vee, a0)
    if index != len(core):
        raise InternalInconsistency("index differs from core size")
    reflexive = all(exactla.dot(g, a0) == 1 for g in gens)
    boxes = {}
    split = True
    for i in core:
        gens_i = [g for g in gens if exactla.dot(g, cfg.column(i)) == 1]
        pts = _box_lattice_points(cfg, core, i, gens_i)
        boxes[i] = pts
        if not all(box_hull_contains(gens_i, p) for p in pts):
            split = False
        if not all(tuple(g) in pts for g in gens_i):
            split = False
    return GorensteinReport(a0vee=list(cfg.a0vee), a0=a0, index=index,
                            dual_generators=[list(g) for g in gens],
                            is_reflexive=reflexive,
                            is_completely_split=split and reflexive,
                            boxes=boxes)


def lattice_points_of_degree(cfg, gens, k):
    """Integer points of the cone at degree k, by bounded enumeration.

    The degree-k slice is k times the polytope, so the bounding box is k
    times the column bounding box; membership uses the dual-generator
    inequalities, which are valid under the report preconditions.
    """
    lo = [k * min(cfg.A[r]) for r in range(cfg.n)]
    hi = [k * max(cfg.A[r]) for r in range(cfg.n)]
    lo = [min(l, h) for l, h in zip(lo, hi)]
    hi = [max(k * min(cfg.A[r]), k * max(cfg.A[r])) for r in range(cfg.n)]
    out = []
    for cand in product(*[range(a, b + 1) for a, b in zip(lo, hi)]):
        if exactla.dot(cfg.a0vee, cand) != k:
            continue
        pairings = [exactla.dot(g, cand) for g in gens]
        if all(p >= 0 for p in pairings):
            out.append((tuple(cand), all(p > 0 for p in pairings)))
    return out


def interior_identity_check(cfg, tri, degree_bound=3):
    """Graded verification that interior lattice points are a0 + cone points.

    For each degree 1 <= k <= degree_bound compares the set of interior
    lattice points at degree k with a0 + {cone lattice points at degree
    k - index}.  Returns True when every degree matches.
    """
    report = gorenstein_report(cfg, tri)
    gens = [tuple(g) for g in report.dual_generators]
    a0 = report.a0
    kappa = report.index
    for k in range(1, degree_bound + 1):
        interior = {p for p, strict in lattice_points_of_degree(cfg, gens, k) if strict}
        if k < kappa:
            expected = set()
        else:
            shifted = lattice_points_of_degree(cfg, gens, k - kappa)
            expected = {tuple(exactla.vec_add(list(p), a0)) for p, _ in shifted}
        if interior != expected:
            return False
    return True


@dataclass
class FanReport:
    base_simplex: tuple
    core: tuple
    generators: dict   # non-core index -> integer vector in Z^(n - kappa)
    maximal_cones: list
    complete: bool
    smooth: bool
    dimension: int


def projected_fan(cfg, tri, base_simplex=None):
    """The complete smooth fan on the non-core generators.

    Conjugating by a chosen maximal simplex (core columns ordered first)
    turns the non-core columns into vectors in Z^(n - kappa); cones are
    indexed by the simplices avoiding the core.  Completeness is the
    exact positive-combination test on all generators, smoothness asks
    every maximal cone to be a lattice basis.
    """
    core = check_preconditions(cfg, tri)
    if base_simplex is None:
        base_simplex = tri.maximal[0]
    base_simplex = tuple(sorted(base_simplex))
    if base_simplex not in tri.maximal:
        raise ValueError("base simplex is not maximal in the triangulation")
    ordered = [i for i in base_simplex if i in core] + \
              [i for i in base_simplex if i not in core]
    inv, det = exactla.square_inverse(cfg.submatrix(ordered))
    if abs(det) != 1:
        raise PreconditionFailed("vol1", "base simplex is not unimodular")
    kappa = len(core)
    u = exactla.mat_mul(inv, cfg.A)
    generators = {}
    for j in range(1, cfg.N + 1):
        if j in core:
            continue
        col = [u[r][j - 1] for r in range(kappa, cfg.n)]
        if any(x.denominator != 1 for x in col):
            raise InternalInconsistency("non-integral fan generator")
        generators[j] = [int(x) for x in col]
    maximal_cones = sorted(tuple(j for j in simp if j not in core)
                           for simp in tri.maximal)
    complete = polycone.positive_combination_exists(
        [generators[j] for j in sorted(generators)])
    smooth = all(
        abs(exactla.bareiss_det([generators[j] for j in cone])) == 1
        for cone in maximal_cones)
    return FanReport(base_simplex=base_simplex, core=core,
                     generators=generators, maximal_cones=maximal_cones,
                     complete=complete, smooth=smooth,
                     dimension=cfg.n - kappa)
