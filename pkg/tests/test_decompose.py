from fractions import Fraction

import pytest

from metriclie import (
    PreconditionError,
    Unsupported,
    adapted_basis,
    build_strong_isometry,
    commutant,
    compare_decompositions,
    decompose,
    decomposition_from_factors,
    filtration,
    flat_riemannian_structure,
    left_ops,
    nabla_span,
    right_ops,
    verify_decomposition,
)
from metriclie.catalog import catalog_get
from metriclie.decompose import NotApplicable
from metriclie.ideals import ann_r, is_strong_ideal
from metriclie.linalg import (
    Mat,
    Subspace,
    kernel,
    row_space,
    subspace_intersect,
    unit_vec,
)


def test_reverification_accepts_every_catalog_decomposition(loaded, decomposed):
    for name, dec in decomposed.items():
        spec, conn = loaded[name]
        verify_decomposition(spec, conn, dec)   # raises on any defect


def test_decompose_is_deterministic(loaded, decomposed):
    for name, (spec, _) in loaded.items():
        again = decompose(spec)
        assert again == decomposed[name], name


def test_certificate_idempotents(loaded, decomposed):
    for name, dec in decomposed.items():
        spec, conn = loaded[name]
        n = spec.dim
        ops = list(left_ops(conn)) + list(right_ops(conn))
        assert len(ops) == 2 * n
        for lm in dec.certificate.splitting_idempotents:
            e = lm.matrix
            assert e @ e == e, name
            for op in ops:
                assert e @ op == op @ e, name
            image = row_space(e.transpose())
            assert is_strong_ideal(image, conn), name
            assert is_strong_ideal(kernel(e), conn), name


def test_commutant_contains_identity_and_has_expected_size(loaded):
    for name in ("heisenberg3_euclid", "so3_x_so3", "t_star_h3",
                 "n23_quadratic", "so3_killing_neg"):
        spec, conn = loaded[name]
        basis = commutant(conn)
        want = catalog_get(name).expected.get("commutant_dim")
        if want is not None:
            assert len(basis) == want, name
        n = spec.dim
        ident = Mat.from_rows([[Fraction(1 if i == j else 0)
                                for j in range(n)] for i in range(n)], n)
        stacked = Mat.from_rows(
            [sum((list(b.entries[r]) for r in range(n)), []) for b in basis]
            + [sum((list(ident.entries[r]) for r in range(n)), [])], n * n)
        assert stacked.rank() == len(basis), name   # identity is in the span


def test_factors_of_a_split_do_not_interact(loaded, decomposed):
    for name, dec in decomposed.items():
        spec, conn = loaded[name]
        for i, f in enumerate(dec.factors):
            for j, g in enumerate(dec.factors):
                if i == j:
                    continue
                assert nabla_span(conn, f, g).dim == 0, name


def test_supplied_factor_that_splits_is_refused(loaded):
    spec, _ = loaded["so3_x_so3"]
    with pytest.raises(PreconditionError):
        decomposition_from_factors(spec, [Subspace.full(6)])


def test_supplied_non_ideal_is_refused(loaded):
    spec, _ = loaded["heisenberg3_euclid"]
    with pytest.raises(PreconditionError):
        decomposition_from_factors(
            spec, [Subspace.from_vectors(3, [unit_vec(3, 2)]),
                   Subspace.from_vectors(3, [unit_vec(3, 0), unit_vec(3, 1)])])


def test_comparing_a_decomposition_with_itself(loaded, decomposed):
    for name in ("so3_x_so3", "h3_plane", "nonorthogonal8"):
        spec, _ = loaded[name]
        dec = decomposed[name]
        rep = compare_decompositions(spec, dec, dec)
        assert all(by == "equal" for by in rep.matched_by), name
        assert rep.dims_ok and rep.nabla_spaces_ok and rep.cross_vanishing_ok
        assert all(rep.strong_hom_ok) and all(rep.isometric)


def test_adapted_basis_shape_for_an_isotropic_annihilator(loaded):
    spec, conn = loaded["t_star_h3"]
    ab = adapted_basis(spec, conn, Subspace.full(6))
    assert (ab.k, ab.s) == (3, 3)
    assert len(ab.vectors) == 6
    assert ab.diagonal == ()
    # first k vectors span ann_r
    first = Subspace.from_vectors(6, list(ab.vectors[:3]))
    assert first == ann_r(conn)


def test_adapted_basis_diagonal_block(loaded, decomposed):
    spec, conn = loaded["h3_plane"]
    factor = decomposed["h3_plane"].factors[0]
    ab = adapted_basis(spec, conn, factor)
    assert (ab.k, ab.s) == (0, 3)
    assert len(ab.diagonal) == 3
    assert all(d != 0 for d in ab.diagonal)


def test_adapted_basis_requires_a_strong_ideal(loaded):
    spec, conn = loaded["heisenberg3_euclid"]
    with pytest.raises(PreconditionError):
        adapted_basis(spec, conn, Subspace.from_vectors(3, [unit_vec(3, 0)]))


def test_self_isometry_is_the_identity(loaded, decomposed):
    for name in ("h3_plane", "t_star_h3", "n23_quadratic", "abelian_3"):
        spec, _ = loaded[name]
        dec = decomposed[name]
        iso = build_strong_isometry(spec, dec, dec)
        assert not isinstance(iso, Unsupported), name
        n = spec.dim
        for i in range(n):
            for j in range(n):
                assert iso.matrix.entries[i][j] == (1 if i == j else 0), name


def test_isometry_between_line_splittings(loaded, decomposed):
    spec, _ = loaded["abelian_2_lorentz"]
    entry = catalog_get("abelian_2_lorentz")
    alt = decomposition_from_factors(spec, list(entry.alt_subspaces()))
    iso = build_strong_isometry(spec, decomposed["abelian_2_lorentz"], alt)
    assert not isinstance(iso, Unsupported)
    m = iso.matrix
    g = spec.gram
    assert m.transpose() @ g @ m == g
    # factor images land on the alternative lines
    for f, target in zip(decomposed["abelian_2_lorentz"].factors, (0, 1)):
        image = Subspace.from_vectors(2, [m.apply(v) for v in f.rows])
        assert image in alt.factors


def test_isometry_obstruction_is_reported_not_invented(loaded, decomposed):
    spec, _ = loaded["abelian_2_aniso"]
    entry = catalog_get("abelian_2_aniso")
    good = decomposition_from_factors(spec, list(entry.alt_subspaces()))
    res = build_strong_isometry(spec, decomposed["abelian_2_aniso"], good)
    assert not isinstance(res, Unsupported)
    bad = decomposition_from_factors(
        spec, list(entry.alt_subspaces("alt_factors_unsupported")))
    res = build_strong_isometry(spec, decomposed["abelian_2_aniso"], bad)
    assert isinstance(res, Unsupported)
    assert "square-class" in res.reason


def test_isometry_needs_matching_annihilators(loaded, decomposed):
    spec, _ = loaded["nonorthogonal8"]
    dec = decomposed["nonorthogonal8"]
    with pytest.raises(PreconditionError):
        build_strong_isometry(spec, dec, dec)


def test_filtration_chain_shapes(loaded):
    # one-member chains whenever the one-sided annihilator is isotropic
    # (zero included) or everything
    expected = {"abelian_3": [3], "so3_killing_neg": [3],
                "n23_quadratic": [5], "e2_flat": [3, 2], "h3_plane": [5, 3]}
    for name, dims in expected.items():
        spec, _ = loaded[name]
        ch = filtration(spec)
        assert [s.dim for s in ch.chain] == dims, name
        assert len(ch.h_blocks) == len(ch.chain) - 1, name


def test_filtration_steps_absorb_brackets(loaded):
    # each quotient is abelian: [chain[i], chain[i]] lands in chain[i+1]
    for name in ("e2_flat", "h3_plane"):
        spec, _ = loaded[name]
        ch = filtration(spec)
        for cur, nxt in zip(ch.chain, ch.chain[1:]):
            for x in cur.rows:
                for y in cur.rows:
                    assert nxt.contains(spec.bracket_apply(x, y)), name


def test_flat_riemannian_split_dims(loaded):
    spec, _ = loaded["e2_flat"]
    split = flat_riemannian_structure(spec)
    assert not isinstance(split, NotApplicable)
    assert (split.b.dim, split.ann.dim, split.derived.dim) == (1, 0, 2)
    assert subspace_intersect(split.b, split.derived).dim == 0


def test_flat_riemannian_split_on_abelian(loaded):
    spec, _ = loaded["abelian_3"]
    split = flat_riemannian_structure(spec)
    assert not isinstance(split, NotApplicable)
    assert split.b.dim == 0
    assert split.ann == Subspace.full(3)
    assert split.derived.dim == 0


def test_flat_riemannian_split_refusals(loaded):
    # wrong signature
    spec, _ = loaded["t_star_h3"]
    assert isinstance(flat_riemannian_structure(spec), NotApplicable)
    # riemannian but curved
    spec, _ = loaded["heisenberg3_euclid"]
    assert isinstance(flat_riemannian_structure(spec), NotApplicable)


def test_budget_zero_still_finds_structural_idempotents(loaded):
    # basis elements and their sums/differences are inspected before any
    # random combination is drawn
    spec, _ = loaded["so3_x_so3"]
    dec = decompose(spec, budget=0)
    assert len(dec.factors) == 2


def test_seed_changes_do_not_change_the_answer(loaded):
    for name in ("so3_x_so3", "nonorthogonal8", "h3_plane"):
        spec, _ = loaded[name]
        a = decompose(spec, seed=1)
        b = decompose(spec, seed=99)
        assert a.factors == b.factors, name
        assert a.g0 == b.g0, name
