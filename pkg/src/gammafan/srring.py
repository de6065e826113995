"""The finite graded algebra attached to a regular triangulation.

Generators C_1..C_N are divided by the Stanley-Reisner monomials of the
triangulation (products whose support is not a simplex) and by the n
linear forms given by the rows of the configuration matrix.  Over the
rationals the quotient is finite dimensional of dimension equal to the
number of maximal simplices, with the grading cut off strictly below n.
The quotient is computed degree by degree: spanning monomials are the
simplex-supported exponent vectors, relations are reduced by exact
Gaussian elimination with a fixed monomial order, and the surviving
monomials form the working basis.  Structure constants for multiplication
are tabulated once so that elements with rational, complex or mpmath
coordinates can all be multiplied through the same table.
"""

import random
from fractions import Fraction
from itertools import combinations

from . import exactla
from .errors import DegenerateXi, InternalInconsistency, RankMismatch


def _compositions(total, parts):
    """All tuples of `parts` positive integers summing to `total`."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


class AlgebraElement:
    """Element of a GradedAlgebra, stored as rational coordinates."""

    __slots__ = ("ring", "coords")

    def __init__(self, ring, coords):
        self.ring = ring
        self.coords = [Fraction(c) for c in coords]

    def __add__(self, other):
        other = self.ring.coerce(other)
        return AlgebraElement(self.ring, [a + b for a, b in zip(self.coords, other.coords)])

    __radd__ = __add__

    def __sub__(self, other):
        other = self.ring.coerce(other)
        return AlgebraElement(self.ring, [a - b for a, b in zip(self.coords, other.coords)])

    def __rsub__(self, other):
        return self.ring.coerce(other) - self

    def __neg__(self):
        return AlgebraElement(self.ring, [-a for a in self.coords])

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return AlgebraElement(self.ring,
                                  self.ring.mul_coords(self.coords, other.coords))
        return AlgebraElement(self.ring, [Fraction(other) * a for a in self.coords])

    __rmul__ = __mul__

    def __pow__(self, k):
        out = self.ring.one()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, AlgebraElement):
            return self.coords == other.coords
        return self == self.ring.coerce(other)

    def __hash__(self):
        return hash(tuple(self.coords))

    def is_zero(self):
        return all(c == 0 for c in self.coords)

    def degree_component(self, k):
        out = [Fraction(0)] * len(self.coords)
        for i in self.ring.degree_range(k):
            out[i] = self.coords[i]
        return AlgebraElement(self.ring, out)

    def constant_term(self):
        return self.coords[0]

    def __repr__(self):
        parts = []
        for i, c in enumerate(self.coords):
            if c != 0:
                parts.append(f"{c}*{self.ring.monomial_name(i)}")
        return " + ".join(parts) if parts else "0"


class GradedAlgebra:
    """Per-degree monomial bases with tabulated structure constants."""

    def __init__(self, cfg, tri):
        self.cfg = cfg
        self.tri = tri
        self.n = cfg.n
        self.N = cfg.N
        self._build()

    # construction -------------------------------------------------------

    def _simplex_monomials(self, k):
        if k == 0:
            return [tuple(0 for _ in range(self.N))]
        out = []
        for size in range(1, min(k, self.n) + 1):
            for supp in self.tri.simplices(size):
                for comp in _compositions(k, size):
                    mono = [0] * self.N
                    for idx, e in zip(supp, comp):
                        mono[idx - 1] = e
                    out.append(tuple(mono))
        return sorted(out)

    def _build(self):
        monomials = []   # per degree, the simplex-supported monomials
        bases = []       # per degree, the surviving basis monomials
        nf = {}          # monomial -> coords over its degree basis
        for k in range(self.n + 1):
            mk = self._simplex_monomials(k)
            monomials.append(mk)
            if k == 0:
                bases.append(mk)
                nf[mk[0]] = [Fraction(1)]
                continue
            index = {m: c for c, m in enumerate(mk)}
            rows = []
            for mprev in monomials[k - 1]:
                for i in range(self.n):
                    row = [Fraction(0)] * len(mk)
                    nonzero = False
                    for j in range(self.N):
                        a = self.cfg.A[i][j]
                        if a == 0:
                            continue
                        mono = list(mprev)
                        mono[j] += 1
                        mono = tuple(mono)
                        if mono in index:  # otherwise killed by a non-simplex support
                            row[index[mono]] += a
                            nonzero = True
                    if nonzero:
                        rows.append(row)
            if rows:
                red, pivots = exactla.rref(rows)
            else:
                red, pivots = [], []
            basis_cols = [c for c in range(len(mk)) if c not in pivots]
            bases.append([mk[c] for c in basis_cols])
            col_to_basis = {c: b for b, c in enumerate(basis_cols)}
            for m, c in index.items():
                if c in col_to_basis:
                    v = [Fraction(0)] * len(basis_cols)
                    v[col_to_basis[c]] = Fraction(1)
                    nf[m] = v
            for r, c in enumerate(pivots):
                v = [Fraction(0)] * len(basis_cols)
                for cc in basis_cols:
                    if red[r][cc] != 0:
                        v[col_to_basis[cc]] = -red[r][cc]
                nf[m_at(mk, c)] = v
        if bases[self.n]:
            raise InternalInconsistency(
                f"degree-{self.n} component has dimension {len(bases[self.n])}, expected 0")
        self.bases = bases[: self.n]
        self.dims = [len(b) for b in self.bases]
        self.total_dim = sum(self.dims)
        if self.total_dim != len(self.tri.maximal):
            raise RankMismatch(
                f"dim {self.total_dim} != #maximal simplices {len(self.tri.maximal)}")
        self.nf = nf
        offsets = []
        off = 0
        for d in self.dims:
            offsets.append(off)
            off += d
        self.offsets = offsets
        self.basis_monomials = [m for b in self.bases for m in b]
        self.basis_degree = [k for k, b in enumerate(self.bases) for _ in b]
        self._global_index = {m: i for i, m in enumerate(self.basis_monomials)}
        self._build_struct()
        self.gens = [self._monomial_element(_unit_mono(self.N, j)) for j in range(self.N)]

    def _build_struct(self):
        struct = {}
        for i, mi in enumerate(self.basis_monomials):
            ki = self.basis_degree[i]
            for j in range(i, self.total_dim):
                kj = self.basis_degree[j]
                if ki + kj >= self.n:
                    continue
                prod = tuple(a + b for a, b in zip(mi, self.basis_monomials[j]))
                entry = self._nf_global(prod, ki + kj)
                if entry:
                    struct[(i, j)] = entry
        self.struct = struct

    def _nf_global(self, mono, k):
        """Sparse global coords of a degree-k monomial, {} if it reduces to 0."""
        supp = tuple(i + 1 for i, e in enumerate(mono) if e > 0)
        if not self.tri.is_simplex(supp):
            return {}
        v = self.nf[mono]
        off = self.offsets[k]
        return {off + t: c for t, c in enumerate(v) if c != 0}

    def _monomial_element(self, mono):
        k = sum(mono)
        if k >= self.n:
            return self.zero()
        coords = [Fraction(0)] * self.total_dim
        for idx, c in self._nf_global(mono, k).items():
            coords[idx] = c
        return AlgebraElement(self, coords)

    # basic API ----------------------------------------------------------

    def zero(self):
        return AlgebraElement(self, [Fraction(0)] * self.total_dim)

    def one(self):
        coords = [Fraction(0)] * self.total_dim
        coords[0] = Fraction(1)
        return AlgebraElement(self, coords)

    def scalar(self, q):
        coords = [Fraction(0)] * self.total_dim
        coords[0] = Fraction(q)
        return AlgebraElement(self, coords)

    def coerce(self, x):
        if isinstance(x, AlgebraElement):
            if x.ring is not self:
                raise ValueError("elements from different rings")
            return x
        return self.scalar(x)

    def element(self, coords):
        if len(coords) != self.total_dim:
            raise ValueError("coordinate length mismatch")
        return AlgebraElement(self, coords)

    def generator(self, j):
        """Image of C_j, 1-based."""
        return self.gens[j - 1]

    def degree_range(self, k):
        if k >= len(self.dims):
            return range(0)
        return range(self.offsets[k], self.offsets[k] + self.dims[k])

    def monomial_name(self, i):
        mono = self.basis_monomials[i]
        parts = [f"c{j+1}" + (f"^{e}" if e > 1 else "")
                 for j, e in enumerate(mono) if e > 0]
        return "*".join(parts) if parts else "1"

    def mul_coords(self, xs, ys):
        """Structure-constant product; works for any scalar type."""
        zero = xs[0] * 0
        out = [zero] * self.total_dim
        for i, a in enumerate(xs):
            if a == 0:
                continue
            for j, b in enumerate(ys):
                if b == 0:
                    continue
                key = (i, j) if i <= j else (j, i)
                entry = self.struct.get(key)
                if entry:
                    ab = a * b
                    for t, c in entry.items():
                        out[t] = out[t] + ab * c
        return out

    def exp_coords(self, xs):
        """exp of a nilpotent coordinate vector (zero constant term)."""
        if xs[0] != 0:
            raise ValueError("exp_coords requires a nilpotent element")
        out = list(xs)
        out[0] = out[0] + 1  # degree-0 term of the exponential
        power = list(xs)
        fact = 1
        for k in range(2, self.n):
            power = self.mul_coords(power, xs)
            fact *= k
            out = [o + p / fact for o, p in zip(out, power)]
        return out

    # ring-theoretic operations ------------------------------------------

    def mul(self, x, y):
        return self.coerce(x) * self.coerce(y)

    def exp_element(self, x):
        """Truncated exponential of a nilpotent element."""
        x = self.coerce(x)
        if x.constant_term() != 0:
            raise ValueError("exp_element requires a nilpotent element")
        return self.element(self.exp_coords(x.coords))

    def inverse_unit(self, x):
        """Inverse of u + nilpotent, by a finite geometric series."""
        x = self.coerce(x)
        u = x.constant_term()
        if u == 0:
            raise ValueError("element has no constant term, not invertible")
        nil = x - self.scalar(u)
        out = self.one()
        power = self.one()
        for _ in range(1, self.n):
            power = power * nil * Fraction(-1, 1) * (Fraction(1) / u)
            out = out + power
        return out * (Fraction(1) / u)

    def multiplication_matrix(self, x):
        """Matrix of y -> x*y in the working basis, rows = images of basis."""
        x = self.coerce(x)
        cols = []
        for i in range(self.total_dim):
            unit = [Fraction(0)] * self.total_dim
            unit[i] = Fraction(1)
            cols.append(self.mul_coords(x.coords, unit))
        return exactla.transpose(cols)

    def annihilator(self, x):
        """Basis of {y : x*y = 0} as a list of elements."""
        mat = self.multiplication_matrix(x)
        return [self.element(v) for v in exactla.nullspace(mat)]

    def ideal(self, x):
        """Basis of x*R as a list of elements (reduced echelon rows)."""
        mat = self.multiplication_matrix(x)
        cols = exactla.transpose(mat)
        rows, pivots = exactla.rref(cols)
        return [self.element(rows[r]) for r in range(len(pivots))]

    def core_element(self):
        """Product of the generators indexed by the core (1 if core empty)."""
        out = self.one()
        for i in self.tri.core():
            out = out * self.generator(i)
        return out

    def poincare_check(self):
        """(ring-side coefficients, simplex-side coefficients, equal?).

        Ring side: dimension of each graded piece.  Simplex side: the
        alternating-sum polynomial built from the simplex counts.  Their
        equality is a theorem; this evaluates both sides exactly.
        """
        ring_side = list(self.dims) + [0] * (self.n + 1 - len(self.dims))
        counts = self.tri.simplex_counts()
        simplex_side = [0] * (self.n + 1)
        for m, cnt in enumerate(counts):
            # cnt * tau^m * (1 - tau)^(n - m)
            poly = [0] * (self.n + 1)
            power = self.n - m
            binom = 1
            for t in range(power + 1):
                poly[m + t] += cnt * ((-1) ** t) * binom
                binom = binom * (power - t) // (t + 1)
            simplex_side = [a + b for a, b in zip(simplex_side, poly)]
        return ring_side, simplex_side, ring_side == simplex_side

    def distinguished_basis(self, xi=None, seed=0):
        """The basis {c_I : I maximal} from a generic reference point xi.

        xi is expanded exactly in the columns of each maximal simplex and
        c_I is the product of the generators with negative coefficient.
        xi must avoid the span of every (n-1)-subset of columns; a seeded
        generic point inside the polytope is generated when none is given.
        Verifies linear independence (hence basis, by dimension) and that
        exactly one simplex yields the empty product.
        """
        if xi is None:
            xi = self._generic_xi(seed)
        else:
            xi = [Fraction(x) for x in xi]
            self._check_xi(xi, explicit=True)
        out = {}
        empties = 0
        for simp in self.tri.maximal:
            coeffs = exactla.solve(self.cfg.submatrix(simp), xi)
            if coeffs is None or any(c == 0 for c in coeffs):
                raise DegenerateXi("xi dependent on a column subset")
            neg = [i for i, c in zip(simp, coeffs) if c < 0]
            el = self.one()
            for i in neg:
                el = el * self.generator(i)
            out[simp] = el
            if not neg:
                empties += 1
        if empties != 1:
            raise InternalInconsistency(
                f"{empties} simplices have empty negative part, expected exactly 1")
        mat = [out[s].coords for s in self.tri.maximal]
        if exactla.rank(mat) != self.total_dim:
            raise InternalInconsistency("distinguished elements are dependent")
        return out

    def _check_xi(self, xi, explicit=False):
        for subset in combinations(range(1, self.N + 1), self.n - 1):
            cols = [list(map(Fraction, self.cfg.column(i))) for i in subset]
            if exactla.rank(cols) == self.n - 1 and \
                    exactla.rank(cols + [list(xi)]) == self.n - 1:
                if explicit:
                    raise DegenerateXi(f"xi lies in the span of columns {subset}")
                return False
        return True

    def _generic_xi(self, seed):
        rng = random.Random(seed)
        for _ in range(200):
            weights = [Fraction(rng.randrange(1, 10 ** 6), 1) for _ in range(self.N)]
            total = sum(weights)
            xi = [Fraction(0)] * self.n
            for i in range(1, self.N + 1):
                xi = exactla.vec_add(
                    xi, exactla.vec_scale(weights[i - 1] / total, self.cfg.column(i)))
            if self._check_xi(xi):
                return xi
        raise InternalInconsistency("no generic xi found")

    def reduced_generator_relations(self):
        """Presentation data in the style of a small ring report.

        Returns (reduced_indices, relations) where reduced_indices are the
        1-based generator indices whose degree-1 images form a spanning set
        chosen by echelon reduction of the linear relations, and relations
        lists, per degree >= 2, an echelon basis of the relation space
        among the monomials in the reduced generators, as strings.
        """
        rows, pivots = exactla.rref(self.cfg.A)
        reduced = [j + 1 for j in range(self.N) if j not in pivots]
        relations = []
        for k in range(2, self.n):
            monos = list(combinations_with_replacement_sorted(reduced, k))
            mat = []
            for mono in monos:
                el = self.one()
                for i in mono:
                    el = el * self.generator(i)
                mat.append(el.coords)
            for v in exactla.nullspace(exactla.transpose(mat)):
                scaled = exactla.primitive(v)
                terms = []
                for coeff, mono in zip(scaled, monos):
                    if coeff == 0:
                        continue
                    name = "*".join(f"c{i}" for i in mono)
                    if coeff == 1:
                        terms.append(f"+ {name}")
                    elif coeff == -1:
                        terms.append(f"- {name}")
                    elif coeff > 0:
                        terms.append(f"+ {coeff}*{name}")
                    else:
                        terms.append(f"- {-coeff}*{name}")
                text = " ".join(terms).lstrip("+ ").strip()
                relations.append(text)
        return reduced, relations


def combinations_with_replacement_sorted(items, k):
    from itertools import combinations_with_replacement
    return combinations_with_replacement(sorted(items), k)


def m_at(monomial_list, idx):
    return monomial_list[idx]


def _unit_mono(length, j):
    return tuple(1 if t == j else 0 for t in range(length))


def build_ring(cfg, tri):
    """Construct the graded algebra of a triangulation."""
    return GradedAlgebra(cfg, tri)
