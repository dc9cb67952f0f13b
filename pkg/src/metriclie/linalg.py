"""Exact linear algebra over the rationals.

Everything downstream runs on `fractions.Fraction` scalars: matrices,
subspaces kept in reduced row-echelon form, symmetric bilinear forms,
congruent diagonalization, and the minimal-polynomial / coprime-split
machinery behind the splitting-idempotent search.  No floats, no
tolerances — equality everywhere is exact, which is what lets the
decomposition certificates re-verify with zero slack.

Vectors are plain tuples of Fractions.  Subspace bases are canonical
(RREF, no zero rows), so two equal subspaces compare equal as values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

Rat = Fraction


def rat(x) -> Rat:
    """Coerce ints / strings / Fractions; floats are refused on purpose."""
    if isinstance(x, float):
        raise TypeError("floating-point input is not allowed in exact arithmetic")
    return Fraction(x)


def vec(items):
    return tuple(rat(x) for x in items)


def zero_vec(n):
    return (Fraction(0),) * n


def unit_vec(n, i):
    return tuple(Fraction(1 if j == i else 0) for j in range(n))


def vec_add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def vec_sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def vec_scale(k, a):
    return tuple(k * x for x in a)


def vec_is_zero(a):
    return all(x == 0 for x in a)


def dot(a, b):
    assert len(a) == len(b)
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


# ---------------------------------------------------------------------------
# Matrices


@dataclass(frozen=True)
class Mat:
    """Immutable rational matrix; `shape` is explicit so 0-row matrices keep
    their column count."""

    entries: tuple
    shape: tuple

    def __post_init__(self):
        r, c = self.shape
        assert len(self.entries) == r
        for row in self.entries:
            assert len(row) == c

    @staticmethod
    def from_rows(rows, cols=None):
        rows = tuple(vec(r) for r in rows)
        if rows:
            width = len(rows[0])
            assert cols is None or cols == width
            cols = width
        else:
            assert cols is not None, "0-row matrix needs an explicit column count"
        return Mat(rows, (len(rows), cols))

    @staticmethod
    def zeros(r, c):
        return Mat(tuple(zero_vec(c) for _ in range(r)), (r, c))

    @staticmethod
    def identity(n):
        return Mat(tuple(unit_vec(n, i) for i in range(n)), (n, n))

    @property
    def nrows(self):
        return self.shape[0]

    @property
    def ncols(self):
        return self.shape[1]

    @property
    def is_square(self):
        return self.shape[0] == self.shape[1]

    def row(self, i):
        return self.entries[i]

    def col(self, j):
        return tuple(r[j] for r in self.entries)

    def transpose(self):
        return Mat(tuple(self.col(j) for j in range(self.ncols)),
                   (self.ncols, self.nrows))

    def __add__(self, other):
        assert self.shape == other.shape
        return Mat(tuple(vec_add(a, b) for a, b in zip(self.entries, other.entries)),
                   self.shape)

    def __sub__(self, other):
        assert self.shape == other.shape
        return Mat(tuple(vec_sub(a, b) for a, b in zip(self.entries, other.entries)),
                   self.shape)

    def __neg__(self):
        return self.scale(Fraction(-1))

    def scale(self, k):
        k = rat(k)
        return Mat(tuple(vec_scale(k, r) for r in self.entries), self.shape)

    def __matmul__(self, other):
        assert self.ncols == other.nrows, (self.shape, other.shape)
        cols = other.transpose().entries
        out = tuple(tuple(dot(r, c) for c in cols) for r in self.entries)
        return Mat(out, (self.nrows, other.ncols))

    def apply(self, v):
        """Matrix times column vector."""
        assert len(v) == self.ncols
        return tuple(dot(r, v) for r in self.entries)

    def trace(self):
        assert self.is_square
        return sum((self.entries[i][i] for i in range(self.nrows)), Fraction(0))

    def is_zero(self):
        return all(vec_is_zero(r) for r in self.entries)

    def rank(self):
        return len(_echelon(self.entries, self.ncols))

    def inverse(self):
        assert self.is_square
        res = rref(self)
        if res.rank != self.nrows:
            raise ValueError("matrix is singular")
        return res.transform


def row_apply(v, m: Mat):
    """Row vector times matrix."""
    assert len(v) == m.nrows
    return tuple(dot(v, m.col(j)) for j in range(m.ncols))


# ---------------------------------------------------------------------------
# Row reduction
#
# Two paths.  `rref` is the public Fraction Gauss–Jordan and also returns the
# transform (used for inverses and small solves).  The subspace/kernel
# machinery instead goes through an integer-scaled echelon pass — commutant
# computations stack ~2n·n² constraint rows and pure Fraction elimination was
# the bottleneck — and only the final normalization happens over Fraction.


@dataclass(frozen=True)
class RrefResult:
    matrix: Mat
    rank: int
    transform: Mat  # transform @ input == matrix
    pivots: tuple


def rref(m: Mat) -> RrefResult:
    nr, nc = m.shape
    rows = [list(r) for r in m.entries]
    t = [[Fraction(1 if i == j else 0) for j in range(nr)] for i in range(nr)]
    pivots = []
    r = 0
    for c in range(nc):
        if r == nr:
            break
        p = next((i for i in range(r, nr) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        t[r], t[p] = t[p], t[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        t[r] = [x * inv for x in t[r]]
        for i in range(nr):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
                t[i] = [a - f * b for a, b in zip(t[i], t[r])]
        pivots.append(c)
        r += 1
    return RrefResult(Mat.from_rows(rows, nc), r, Mat.from_rows(t, nr), tuple(pivots))


def _int_row(row):
    """Clear denominators and divide by the content; leading entry positive."""
    den = 1
    for x in row:
        den = den * x.denominator // math.gcd(den, x.denominator)
    ints = [int(x * den) for x in row]
    g = 0
    for x in ints:
        g = math.gcd(g, x)
    if g == 0:
        return None
    lead = next(x for x in ints if x)
    if lead < 0:
        g = -g
    return [x // g for x in ints]


def _echelon(rows, ncols):
    """Integer echelon basis of the row space: list of (pivot, int_row),
    sorted by pivot column."""
    basis = []
    for row in rows:
        r = _int_row([rat(x) for x in row])
        if r is None:
            continue
        for pivot, prow in basis:
            x = r[pivot]
            if x:
                b = prow[pivot]
                g = math.gcd(x, b)
                mb, mx = b // g, x // g
                r = [mb * a - mx * c for a, c in zip(r, prow)]
        lead = next((i for i, x in enumerate(r) if x), None)
        if lead is None:
            continue
        g = 0
        for x in r:
            g = math.gcd(g, x)
        if r[lead] < 0:
            g = -g
        r = [x // g for x in r]
        basis.append((lead, r))
        basis.sort(key=lambda pr: pr[0])
    return basis


def _rref_rows(rows, ncols):
    """Canonical RREF rows (Fractions) of the span of `rows`, plus pivots."""
    basis = _echelon(rows, ncols)
    out = [[Fraction(x) for x in r] for _, r in basis]
    pivots = [p for p, _ in basis]
    for i in reversed(range(len(out))):
        p = pivots[i]
        inv = 1 / out[i][p]
        out[i] = [x * inv for x in out[i]]
        for j in range(i):
            f = out[j][p]
            if f != 0:
                out[j] = [a - f * b for a, b in zip(out[j], out[i])]
    return [tuple(r) for r in out], tuple(pivots)


# ---------------------------------------------------------------------------
# Subspaces


@dataclass(frozen=True)
class Subspace:
    """Linear subspace of Q^n with a canonical (RREF) basis, so equal
    subspaces are equal values."""

    ambient_dim: int
    basis: Mat

    @classmethod
    def from_vectors(cls, ambient_dim, vectors):
        vectors = [vec(v) for v in vectors]
        for v in vectors:
            assert len(v) == ambient_dim
        rows, _ = _rref_rows(vectors, ambient_dim)
        return cls(ambient_dim, Mat.from_rows(rows, ambient_dim))

    @classmethod
    def zero(cls, n):
        return cls.from_vectors(n, [])

    @classmethod
    def full(cls, n):
        return cls(n, Mat.identity(n))

    @property
    def dim(self):
        return self.basis.nrows

    @property
    def rows(self):
        return self.basis.entries

    @property
    def pivots(self):
        out = []
        for r in self.rows:
            out.append(next(i for i, x in enumerate(r) if x != 0))
        return tuple(out)

    def reduce(self, v):
        """Return (coords, remainder): v - coords·basis = remainder."""
        v = vec(v)
        assert len(v) == self.ambient_dim
        coords = []
        for row, p in zip(self.rows, self.pivots):
            c = v[p]
            coords.append(c)
            if c != 0:
                v = vec_sub(v, vec_scale(c, row))
        return tuple(coords), v

    def contains(self, v):
        _, rem = self.reduce(v)
        return vec_is_zero(rem)

    def contains_subspace(self, other):
        assert other.ambient_dim == self.ambient_dim
        return all(self.contains(r) for r in other.rows)

    def coords(self, v):
        coords, rem = self.reduce(v)
        if not vec_is_zero(rem):
            raise ValueError("vector is not in the subspace")
        return coords

    def embed(self, coords):
        """Coordinates w.r.t. the canonical basis -> ambient vector."""
        assert len(coords) == self.dim
        out = zero_vec(self.ambient_dim)
        for c, row in zip(coords, self.rows):
            out = vec_add(out, vec_scale(rat(c), row))
        return out

    def transformed(self, m: Mat):
        """Image under the map sending a row vector v to v·m."""
        return Subspace.from_vectors(m.ncols, [row_apply(r, m) for r in self.rows])


def row_space(m: Mat):
    return Subspace.from_vectors(m.ncols, m.entries)


def column_space(m: Mat):
    return row_space(m.transpose())


def kernel(m: Mat):
    """{x : m·x = 0} as a Subspace of Q^ncols."""
    rows, pivots = _rref_rows(m.entries, m.ncols)
    pivset = set(pivots)
    free = [j for j in range(m.ncols) if j not in pivset]
    vecs = []
    for f in free:
        v = [Fraction(0)] * m.ncols
        v[f] = Fraction(1)
        for r, p in zip(rows, pivots):
            v[p] = -r[f]
        vecs.append(v)
    return Subspace.from_vectors(m.ncols, vecs)


def solve(m: Mat, b):
    """One solution x of m·x = b, or None if inconsistent."""
    b = vec(b)
    assert len(b) == m.nrows
    aug = Mat.from_rows([row + (bi,) for row, bi in zip(m.entries, b)],
                        m.ncols + 1)
    rows, pivots = _rref_rows(aug.entries, aug.ncols)
    if m.ncols in pivots:
        return None
    x = [Fraction(0)] * m.ncols
    for r, p in zip(rows, pivots):
        x[p] = r[m.ncols]
    return tuple(x)


def subspace_sum(a: Subspace, b: Subspace):
    assert a.ambient_dim == b.ambient_dim
    return Subspace.from_vectors(a.ambient_dim, list(a.rows) + list(b.rows))


def subspace_intersect(a: Subspace, b: Subspace):
    """Zassenhaus: row-reduce [A | A; B | 0]; rows with zero left half carry
    the intersection in their right half."""
    n = a.ambient_dim
    assert b.ambient_dim == n
    stacked = [list(r) + list(r) for r in a.rows] + \
              [list(r) + [Fraction(0)] * n for r in b.rows]
    rows, _ = _rref_rows(stacked, 2 * n)
    inter = [r[n:] for r in rows if vec_is_zero(r[:n])]
    return Subspace.from_vectors(n, inter)


def subspace_complement(a: Subspace, within: Subspace | None = None):
    """Deterministic complement of `a` inside `within` (default: full space):
    keep the rows of `within`'s canonical basis whose pivot column is not a
    pivot column of `a`.  For `within` the full space this picks exactly the
    standard basis vectors at non-pivot positions."""
    if within is None:
        within = Subspace.full(a.ambient_dim)
    assert within.contains_subspace(a), "complement target does not contain the subspace"
    apiv = set(a.pivots)
    rows = [r for r, p in zip(within.rows, within.pivots) if p not in apiv]
    comp = Subspace.from_vectors(a.ambient_dim, rows)
    assert comp.dim == within.dim - a.dim
    assert subspace_sum(a, comp) == within
    return comp


# ---------------------------------------------------------------------------
# Symmetric bilinear forms


@dataclass(frozen=True)
class SymForm:
    gram: Mat

    def __post_init__(self):
        if not self.gram.is_square:
            raise ValueError("gram matrix must be square")
        if self.gram != self.gram.transpose():
            raise ValueError("gram matrix must be symmetric")

    @property
    def dim(self):
        return self.gram.nrows

    def pair(self, x, y):
        return dot(x, self.gram.apply(vec(y)))

    def is_nondegenerate(self):
        return self.gram.rank() == self.dim

    def restrict(self, sub: Subspace):
        """Gram matrix of the form on the rows of `sub`'s canonical basis."""
        b = sub.basis
        return SymForm(b @ self.gram @ b.transpose())


def orthogonal_complement(h: Subspace, form: SymForm):
    assert h.ambient_dim == form.dim
    if h.dim == 0:
        return Subspace.full(form.dim)
    constraints = Mat.from_rows([row_apply(r, form.gram) for r in h.rows], form.dim)
    return kernel(constraints)


def radical(h: Subspace, form: SymForm):
    """Vectors of h orthogonal to all of h."""
    return subspace_intersect(h, orthogonal_complement(h, form))


@dataclass(frozen=True)
class DiagonalizedForm:
    basis_change: Mat       # rows are the new basis: P · G · Pᵀ is diagonal
    diagonal: tuple
    signature: tuple        # (positive, negative, zero) counts


def congruent_diagonalize(form: SymForm) -> DiagonalizedForm:
    """Symmetric Gaussian elimination over Q (no square roots, so the
    diagonal entries are honest rationals, not unit normalized)."""
    n = form.dim
    g = [list(r) for r in form.gram.entries]
    p = [list(unit_vec(n, i)) for i in range(n)]

    def add_row_col(dst, src, f):
        g[dst] = [a + f * b for a, b in zip(g[dst], g[src])]
        for k in range(n):
            g[k][dst] = g[k][dst] + f * g[k][src]
        p[dst] = [a + f * b for a, b in zip(p[dst], p[src])]

    def swap(i, j):
        g[i], g[j] = g[j], g[i]
        for k in range(n):
            g[k][i], g[k][j] = g[k][j], g[k][i]
        p[i], p[j] = p[j], p[i]

    for i in range(n):
        if g[i][i] == 0:
            j = next((j for j in range(i + 1, n) if g[j][j] != 0), None)
            if j is not None:
                swap(i, j)
            else:
                j = next((j for j in range(i + 1, n) if g[i][j] != 0), None)
                if j is not None:
                    add_row_col(i, j, Fraction(1))
        d = g[i][i]
        if d == 0:
            continue
        for j in range(i + 1, n):
            if g[j][i] != 0:
                add_row_col(j, i, -g[j][i] / d)

    pm = Mat.from_rows(p, n)
    check = pm @ form.gram @ pm.transpose()
    diag = []
    for i in range(n):
        for j in range(n):
            if i != j:
                assert check.entries[i][j] == 0
        diag.append(check.entries[i][i])
    sig = (sum(1 for d in diag if d > 0),
           sum(1 for d in diag if d < 0),
           sum(1 for d in diag if d == 0))
    return DiagonalizedForm(pm, tuple(diag), sig)


def rational_sqrt(r):
    """Exact square root of a nonnegative rational, or None."""
    r = rat(r)
    if r < 0:
        return None
    a, b = math.isqrt(r.numerator), math.isqrt(r.denominator)
    if a * a == r.numerator and b * b == r.denominator:
        return Fraction(a, b)
    return None


# ---------------------------------------------------------------------------
# Polynomials (coefficient tuples, low degree first, no trailing zeros)


def poly(coeffs):
    c = [rat(x) for x in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def poly_deg(p):
    return len(p) - 1


def poly_is_zero(p):
    return len(p) == 0


def poly_add(a, b):
    n = max(len(a), len(b))
    return poly([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)
                 for i in range(n)])


def poly_sub(a, b):
    return poly_add(a, tuple(-x for x in b))


def poly_scale(k, a):
    k = rat(k)
    return poly([k * x for x in a])


def poly_mul(a, b):
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return poly(out)


def poly_monic(a):
    assert a, "zero polynomial has no monic normalization"
    return poly_scale(1 / a[-1], a)


def poly_divmod(a, b):
    assert b, "division by the zero polynomial"
    r = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    inv = 1 / b[-1]
    while len(r) >= len(b) and any(x != 0 for x in r):
        while r and r[-1] == 0:
            r.pop()
        if len(r) < len(b):
            break
        f = r[-1] * inv
        shift = len(r) - len(b)
        q[shift] = f
        for i, x in enumerate(b):
            r[shift + i] -= f * x
        r.pop()
    return poly(q), poly(r)


def poly_divexact(a, b):
    q, r = poly_divmod(a, b)
    assert poly_is_zero(r), "inexact polynomial division"
    return q


def poly_gcd(a, b):
    while not poly_is_zero(b):
        _, r = poly_divmod(a, b)
        a, b = b, r
    return poly_monic(a) if a else ()


def poly_xgcd(a, b):
    """Extended Euclid: returns (g, u, v), g monic, u·a + v·b = g."""
    r0, r1 = poly(a), poly(b)
    u0, u1 = poly([1]), poly([])
    v0, v1 = poly([]), poly([1])
    while not poly_is_zero(r1):
        q, r = poly_divmod(r0, r1)
        r0, r1 = r1, r
        u0, u1 = u1, poly_sub(u0, poly_mul(q, u1))
        v0, v1 = v1, poly_sub(v0, poly_mul(q, v1))
    assert not poly_is_zero(r0)
    lead = r0[-1]
    return poly_monic(r0), poly_scale(1 / lead, u0), poly_scale(1 / lead, v0)


def poly_derivative(a):
    return poly([i * a[i] for i in range(1, len(a))])


def poly_pow(a, k):
    out = poly([1])
    for _ in range(k):
        out = poly_mul(out, a)
    return out


def poly_eval(a, x):
    x = rat(x)
    out = Fraction(0)
    for c in reversed(a):
        out = out * x + c
    return out


def poly_eval_mat(a, m: Mat):
    assert m.is_square
    out = Mat.zeros(m.nrows, m.nrows)
    for c in reversed(a):
        out = out @ m + Mat.identity(m.nrows).scale(c)
    return out


def minimal_polynomial(op: Mat):
    """Monic minimal polynomial via the first linear dependence among the
    flattened powers I, T, T², …"""
    assert op.is_square and op.nrows >= 1
    n = op.nrows

    def flat(m):
        return tuple(x for row in m.entries for x in row)

    powers = [Mat.identity(n)]
    while True:
        target = flat(powers[-1] @ op)
        a = Mat.from_rows([flat(m) for m in powers], n * n).transpose()
        x = solve(a, target)
        if x is not None:
            return poly(tuple(-c for c in x) + (Fraction(1),))
        powers.append(powers[-1] @ op)


def squarefree_decomposition(p):
    """Yun's algorithm: monic p = Π a_i^i with the a_i squarefree, pairwise
    coprime.  Returns [(a_i, i)] skipping trivial a_i."""
    p = poly_monic(p)
    dp = poly_derivative(p)
    a = poly_gcd(p, dp)
    b = poly_divexact(p, a) if a else p
    c = poly_divexact(dp, a) if a else dp
    d = poly_sub(c, poly_derivative(b))
    out = []
    i = 1
    while poly_deg(b) > 0:
        ai = poly_gcd(b, d)
        if poly_deg(ai) > 0:
            out.append((ai, i))
        b = poly_divexact(b, ai)
        c = poly_divexact(d, ai)
        d = poly_sub(c, poly_derivative(b))
        i += 1
    return out


def _divisors(n):
    n = abs(n)
    out = set()
    i = 1
    while i * i <= n:
        if n % i == 0:
            out.add(i)
            out.add(n // i)
        i += 1
    return sorted(out)


def rational_roots(p):
    """All rational roots of a squarefree polynomial, sorted."""
    assert poly_deg(p) >= 1
    den = 1
    for x in p:
        den = den * x.denominator // math.gcd(den, x.denominator)
    ic = [int(x * den) for x in p]
    roots = []
    if ic[0] == 0:
        roots.append(Fraction(0))
        while ic[0] == 0:
            ic = ic[1:]
    if len(ic) > 1:
        for a in _divisors(ic[0]):
            for b in _divisors(ic[-1]):
                for s in (1, -1):
                    r = Fraction(s * a, b)
                    if r not in roots and poly_eval(p, r) == 0:
                        roots.append(r)
    return sorted(roots)


def coprime_split(p):
    """Split monic p into pairwise-coprime monic factors whose product is p:
    one factor (t - r)^i per rational root r of each squarefree part, plus
    the rootless cofactor of each part.  This is not a full factorization —
    pairwise coprimality is all the idempotent construction needs."""
    p = poly_monic(p)
    if poly_deg(p) < 1:
        raise ValueError("constant polynomial cannot be split")
    parts = []
    for a, mult in squarefree_decomposition(p):
        rem = a
        for r in rational_roots(a):
            lin = poly([-r, 1])
            rem = poly_divexact(rem, lin)
            parts.append(poly_pow(lin, mult))
        if poly_deg(rem) > 0:
            parts.append(poly_pow(rem, mult))
    prod = poly([1])
    for q in parts:
        prod = poly_mul(prod, q)
    assert prod == p
    return tuple(parts)
