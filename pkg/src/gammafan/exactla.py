"""Exact integer and rational linear algebra.

Matrices are lists of rows; vectors are lists or tuples.  Integer matrices
hold Python ints (arbitrary precision), rational ones hold Fractions in
lowest terms.  Nothing in this module touches floating point.
"""

from fractions import Fraction
from math import gcd

from .errors import NoIntegerSolution, Singular


def identity(k):
    return [[1 if i == j else 0 for j in range(k)] for i in range(k)]


def transpose(m):
    return [list(col) for col in zip(*m)] if m else []


def mat_vec(m, v):
    return [sum(row[j] * v[j] for j in range(len(v))) for row in m]


def vec_mat(v, m):
    return [sum(v[i] * m[i][j] for i in range(len(v))) for j in range(len(m[0]))] if m else []


def mat_mul(a, b):
    bt = transpose(b)
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def dot(u, v):
    return sum(x * y for x, y in zip(u, v))


def vec_add(u, v):
    return [x + y for x, y in zip(u, v)]


def vec_sub(u, v):
    return [x - y for x, y in zip(u, v)]


def vec_scale(c, v):
    return [c * x for x in v]


def one_norm(v):
    return sum(abs(x) for x in v)


def is_zero_vec(v):
    return all(x == 0 for x in v)


def primitive(v):
    """Scale an integer or rational vector to a primitive integer vector.

    Divides out the content; the direction is preserved (no sign flip).
    """
    fracs = [Fraction(x) for x in v]
    den = 1
    for f in fracs:
        den = den * f.denominator // gcd(den, f.denominator)
    ints = [int(f * den) for f in fracs]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    if g > 1:
        ints = [x // g for x in ints]
    return ints


def sign_canonical(v):
    """Primitive integer vector with first nonzero entry positive.

    Only meaningful for vectors that represent a line (equations, lineality).
    """
    p = primitive(v)
    for x in p:
        if x > 0:
            return p
        if x < 0:
            return [-y for y in p]
    return p


def bareiss_det(m):
    """Exact determinant by fraction-free Bareiss elimination.

    Works for integer entries (stays integral) and for Fractions.
    """
    k = len(m)
    if k == 0:
        return 1
    a = [row[:] for row in m]
    sign = 1
    prev = 1
    for i in range(k - 1):
        if a[i][i] == 0:
            for r in range(i + 1, k):
                if a[r][i] != 0:
                    a[i], a[r] = a[r], a[i]
                    sign = -sign
                    break
            else:
                return 0 * a[0][0]
        for r in range(i + 1, k):
            for c in range(i + 1, k):
                num = a[r][c] * a[i][i] - a[r][i] * a[i][c]
                if isinstance(num, Fraction) or isinstance(prev, Fraction):
                    a[r][c] = num / prev
                else:
                    a[r][c] = num // prev
            a[r][i] = 0
        prev = a[i][i]
    return sign * a[k - 1][k - 1]


def rref(m):
    """Reduced row echelon form over the rationals.

    Returns (rows, pivot_columns).  Pivoting is deterministic: for each
    column in order, the first row with a nonzero entry is used.
    """
    rows = [[Fraction(x) for x in row] for row in m]
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, nrows):
            if rows[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = rows[r][c]
        rows[r] = [x / inv for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return rows, pivots


def rank(m):
    if not m or not m[0]:
        return 0
    return len(rref(m)[1])


def solve(m, b):
    """One rational solution of m x = b, or None if inconsistent."""
    if not m:
        return [] if all(x == 0 for x in b) else None
    aug = [list(row) + [bi] for row, bi in zip(m, b)]
    rows, pivots = rref(aug)
    ncols = len(m[0])
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for r, c in enumerate(pivots):
        x[c] = rows[r][-1]
    return x


def nullspace(m):
    """Basis (list of rational rows) of the right kernel of m over Q."""
    if not m:
        return []
    ncols = len(m[0])
    rows, pivots = rref(m)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, c in enumerate(pivots):
            v[c] = -rows[r][f]
        basis.append(v)
    return basis


def _row_sub(m, i, j, q):
    m[i] = [a - q * b for a, b in zip(m[i], m[j])]


def hermite_with_transform(m):
    """Row Hermite form of an integer matrix with unimodular transform.

    Returns (h, u, r) with u @ m = h, u unimodular, h in row echelon form
    with positive pivots, r the rank.
    """
    nrows = len(m)
    h = [list(map(int, row)) for row in m]
    u = identity(nrows)
    r = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        while True:
            nz = [i for i in range(r, nrows) if h[i][c] != 0]
            if len(nz) <= 1:
                break
            nz.sort(key=lambda i: (abs(h[i][c]), i))
            i0 = nz[0]
            for i in nz[1:]:
                q = h[i][c] // h[i0][c]
                _row_sub(h, i, i0, q)
                _row_sub(u, i, i0, q)
        nz = [i for i in range(r, nrows) if h[i][c] != 0]
        if not nz:
            continue
        i0 = nz[0]
        h[r], h[i0] = h[i0], h[r]
        u[r], u[i0] = u[i0], u[r]
        if h[r][c] < 0:
            h[r] = [-x for x in h[r]]
            u[r] = [-x for x in u[r]]
        for i in range(r):
            q = h[i][c] // h[r][c]
            if q != 0:
                _row_sub(h, i, r, q)
                _row_sub(u, i, r, q)
        r += 1
        if r == nrows:
            break
    return h, u, r


def kernel_basis(a):
    """Basis of the saturated integer kernel {x in Z^N : a x = 0}.

    Rows of the result generate ker(a) as a lattice, not merely a
    finite-index sublattice; this is automatic because the transform in
    the Hermite reduction is unimodular.
    """
    ncols = len(a[0]) if a else 0
    if ncols == 0:
        return []
    _, u, r = hermite_with_transform(transpose(a))
    return [u[i] for i in range(r, ncols)]


def smith_with_transforms(a):
    """Smith-style diagonalization p @ a @ q = s with p, q unimodular.

    The diagonal of s is not forced into divisibility order; that is not
    needed for solving linear systems over Z.
    """
    nrows, ncols = len(a), len(a[0]) if a else 0
    s = [list(map(int, row)) for row in a]
    p = identity(nrows)
    q = identity(ncols)

    def col_sub(m, j, k, f):
        for row in m:
            row[j] -= f * row[k]

    t = 0
    while t < min(nrows, ncols):
        # move a nonzero entry of minimal magnitude to the corner
        best = None
        for i in range(t, nrows):
            for j in range(t, ncols):
                if s[i][j] != 0 and (best is None or abs(s[i][j]) < abs(s[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        bi, bj = best
        s[t], s[bi] = s[bi], s[t]
        p[t], p[bi] = p[bi], p[t]
        if bj != t:
            for m in (s, q):
                for row in m:
                    row[t], row[bj] = row[bj], row[t]
        dirty = False
        for i in range(t + 1, nrows):
            if s[i][t] != 0:
                f = s[i][t] // s[t][t]
                _row_sub(s, i, t, f)
                _row_sub(p, i, t, f)
                if s[i][t] != 0:
                    dirty = True
        for j in range(t + 1, ncols):
            if s[t][j] != 0:
                f = s[t][j] // s[t][t]
                col_sub(s, j, t, f)
                col_sub(q, j, t, f)
                if s[t][j] != 0:
                    dirty = True
        if dirty:
            continue
        if s[t][t] < 0:
            s[t] = [-x for x in s[t]]
            p[t] = [-x for x in p[t]]
        t += 1
    return s, p, q


def solve_particular(a, beta):
    """Integer solution of a x = beta, via Smith reduction.

    Raises NoIntegerSolution when beta is outside the column lattice of a.
    """
    nrows, ncols = len(a), len(a[0]) if a else 0
    s, p, q = smith_with_transforms(a)
    pb = mat_vec(p, list(beta))
    y = [0] * ncols
    for i in range(nrows):
        d = s[i][i] if i < ncols else 0
        if d == 0:
            if pb[i] != 0:
                raise NoIntegerSolution(f"component {i} obstructed")
        else:
            if pb[i] % d != 0:
                raise NoIntegerSolution(f"divisibility fails at diagonal {i}")
            y[i] = pb[i] // d
    return mat_vec(q, y)


def square_inverse(m):
    """Exact inverse of a square matrix, together with its determinant.

    Returns (inverse_rows, det) with Fraction entries; det is computed by
    fraction-free elimination and is an int for integer input.  Raises
    Singular when det = 0.  |det| = 1 flags a unimodular column set.
    """
    k = len(m)
    for row in m:
        if len(row) != k:
            raise ValueError("matrix not square")
    det = bareiss_det(m)
    if det == 0:
        raise Singular("determinant is zero")
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(k)]
           for i, row in enumerate(m)]
    rows, pivots = rref(aug)
    inv = [row[k:] for row in rows]
    return inv, det
