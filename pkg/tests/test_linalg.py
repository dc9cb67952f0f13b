"""Property tests for the exact linear algebra kernel."""

from fractions import Fraction

from hypothesis import given, settings, strategies as st

from metriclie.linalg import (
    Mat,
    Subspace,
    SymForm,
    congruent_diagonalize,
    coprime_split,
    kernel,
    minimal_polynomial,
    orthogonal_complement,
    poly_deg,
    poly_eval_mat,
    poly_mul,
    poly_xgcd,
    rational_sqrt,
    rref,
    solve,
    subspace_complement,
    subspace_intersect,
    subspace_sum,
)

fractions = st.fractions(min_value=-9, max_value=9, max_denominator=6)


def mats(nmax=4, square=False):
    def build(draw):
        n = draw(st.integers(1, nmax))
        m = n if square else draw(st.integers(1, nmax))
        rows = draw(st.lists(st.lists(fractions, min_size=m, max_size=m),
                             min_size=n, max_size=n))
        return Mat.from_rows(rows, m)
    return st.composite(build)()


def subspaces(n):
    vecs = st.lists(st.lists(fractions, min_size=n, max_size=n),
                    min_size=0, max_size=n + 1)
    return vecs.map(lambda vs: Subspace.from_vectors(n, vs))


@given(mats())
@settings(max_examples=60, deadline=None)
def test_rref_is_idempotent(m):
    r1 = rref(m)
    r2 = rref(r1.matrix)
    assert r1.matrix == r2.matrix
    assert r1.pivots == r2.pivots


@given(mats())
@settings(max_examples=60, deadline=None)
def test_rank_agrees_with_transpose(m):
    assert m.rank() == m.transpose().rank()


@given(st.integers(1, 4).flatmap(lambda n: st.tuples(
    subspaces(n), subspaces(n))))
@settings(max_examples=60, deadline=None)
def test_dimension_formula(pair):
    a, b = pair
    s = subspace_sum(a, b)
    i = subspace_intersect(a, b)
    assert s.dim + i.dim == a.dim + b.dim
    assert s.contains_subspace(a) and s.contains_subspace(b)
    assert a.contains_subspace(i) and b.contains_subspace(i)


@given(st.integers(1, 4).flatmap(lambda n: st.tuples(
    st.just(n), subspaces(n))))
@settings(max_examples=60, deadline=None)
def test_complement_is_direct(pair):
    n, a = pair
    c = subspace_complement(a)
    assert subspace_intersect(a, c).dim == 0
    assert subspace_sum(a, c) == Subspace.full(n)


@st.composite
def nondeg_with_subspace(draw):
    n = draw(st.integers(1, 4))
    # shear the identity: determinant stays 1, so the congruence transform
    # of a +/-1 diagonal is always nondegenerate
    p = [[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]
    for _ in range(draw(st.integers(0, 6))):
        i = draw(st.integers(0, n - 1))
        j = draw(st.integers(0, n - 1))
        c = draw(st.integers(-2, 2))
        if i != j:
            for t in range(n):
                p[i][t] += c * p[j][t]
    pm = Mat.from_rows(p, n)
    signs = draw(st.lists(st.sampled_from([1, -1]), min_size=n, max_size=n))
    d = Mat.from_rows([[Fraction(signs[i] if i == j else 0)
                        for j in range(n)] for i in range(n)], n)
    return SymForm(pm @ d @ pm.transpose()), draw(subspaces(n))


@given(nondeg_with_subspace())
@settings(max_examples=40, deadline=None)
def test_double_orthocomplement(pair):
    form, h = pair
    hpp = orthogonal_complement(orthogonal_complement(h, form), form)
    assert hpp == h
    assert h.dim + orthogonal_complement(h, form).dim == h.ambient_dim


@given(nondeg_with_subspace())
@settings(max_examples=40, deadline=None)
def test_diagonalization_is_congruent(pair):
    form, _ = pair
    dg = congruent_diagonalize(form)
    b = dg.basis_change
    prod = b @ form.gram @ b.transpose()
    n = form.dim
    for i in range(n):
        for j in range(n):
            assert prod.entries[i][j] == (dg.diagonal[i] if i == j else 0)
    pos, neg, zero = dg.signature
    assert pos == sum(1 for d in dg.diagonal if d > 0)
    assert neg == sum(1 for d in dg.diagonal if d < 0)
    assert zero == sum(1 for d in dg.diagonal if d == 0)


@given(mats())
@settings(max_examples=60, deadline=None)
def test_kernel_vectors_annihilate(m):
    k = kernel(m)
    assert k.dim == m.ncols - m.rank()
    for v in k.rows:
        assert all(x == 0 for x in m.apply(v))


@given(mats(), st.lists(fractions, min_size=1, max_size=4))
@settings(max_examples=60, deadline=None)
def test_solve_solutions_check_out(m, b):
    b = tuple(b[:m.nrows]) + (Fraction(0),) * max(0, m.nrows - len(b))
    x = solve(m, b)
    if x is not None:
        assert m.apply(x) == tuple(b)


@given(mats(nmax=4, square=True))
@settings(max_examples=40, deadline=None)
def test_minimal_polynomial_annihilates(m):
    p = minimal_polynomial(m)
    assert poly_deg(p) >= 1
    assert p[-1] == 1  # monic
    z = poly_eval_mat(p, m)
    assert all(x == 0 for row in z.entries for x in row)


@given(mats(nmax=4, square=True))
@settings(max_examples=30, deadline=None)
def test_coprime_split_multiplies_back(m):
    p = minimal_polynomial(m)
    parts = coprime_split(p)
    prod = (Fraction(1),)
    for q in parts:
        prod = poly_mul(prod, q)
    assert prod == p
    for i in range(len(parts)):
        for j in range(i + 1, len(parts)):
            g, _, _ = poly_xgcd(parts[i], parts[j])
            assert poly_deg(g) == 0


@given(fractions)
def test_rational_sqrt_of_squares(q):
    r = rational_sqrt(q * q)
    assert r == abs(q)


def test_rational_sqrt_rejects_nonsquares():
    assert rational_sqrt(Fraction(2)) is None
    assert rational_sqrt(Fraction(-1)) is None
    assert rational_sqrt(Fraction(4, 9)) == Fraction(2, 3)


def test_integer_echelon_matches_generic():
    # the integer fast path and the generic fraction path must agree
    rows = [[Fraction(2), Fraction(4), Fraction(6)],
            [Fraction(1), Fraction(3), Fraction(5)],
            [Fraction(3), Fraction(7), Fraction(11)]]
    m = Mat.from_rows(rows, 3)
    r = rref(m)
    again = rref(Mat.from_rows([[x + Fraction(1, 2) - Fraction(1, 2)
                                 for x in row] for row in rows], 3))
    assert r.matrix == again.matrix
