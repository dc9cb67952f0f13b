"""Annihilator subspaces and strong ideals.

Ann_R = {X : ∇_Y X = 0 for all Y} (the joint kernel of the left
multiplication operators), Ann = Ann_R ∩ {X : ∇_X Y = 0 for all Y}.
For a nondegenerate metric, Ann_R = (∇gg)^⊥ — compatibility moves the
left slot across the pairing — and the report asserts that identity as a
self-check.  A strong ideal is a subspace closed under ∇ in both slots;
strong ideals are automatically Lie ideals since the bracket is the
antisymmetrized table.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import AlgebraSpec, ConnectionCoeffs, left_ops, nabla_apply, right_ops
from .linalg import (
    Mat,
    Subspace,
    SymForm,
    kernel,
    orthogonal_complement,
    radical,
    subspace_intersect,
    unit_vec,
)

CASE_ANN_R_FULL = "ANN_R_FULL"
CASE_ANN_R_ZERO = "ANN_R_ZERO"
CASE_ISOTROPIC = "ISOTROPIC"
CASE_ANN_R_EQ_ANN = "ANN_R_EQ_ANN"
CASE_NON_ISOTROPIC = "NON_ISOTROPIC"


def nabla_gg(conn: ConnectionCoeffs) -> Subspace:
    """Span of all values ∇_X Y."""
    n = conn.dim
    return Subspace.from_vectors(n, [conn.gamma[i][j]
                                     for i in range(n) for j in range(n)])


def _joint_kernel(ops, n):
    rows = []
    for op in ops:
        if op.is_zero():
            continue
        rows.extend(op.entries)
    if not rows:
        return Subspace.full(n)
    return kernel(Mat.from_rows(rows, n))


def ann_r(conn: ConnectionCoeffs) -> Subspace:
    return _joint_kernel(left_ops(conn), conn.dim)


def ann(conn: ConnectionCoeffs) -> Subspace:
    return subspace_intersect(ann_r(conn),
                              _joint_kernel(right_ops(conn), conn.dim))


def is_isotropic(h: Subspace, form: SymForm) -> bool:
    return form.restrict(h).gram.is_zero()


def is_strong_ideal(h: Subspace, conn: ConnectionCoeffs) -> bool:
    n = conn.dim
    for v in h.rows:
        for i in range(n):
            e = unit_vec(n, i)
            if not h.contains(nabla_apply(conn, e, v)):
                return False
            if not h.contains(nabla_apply(conn, v, e)):
                return False
    return True


def strong_ideal_closure(s: Subspace, conn: ConnectionCoeffs) -> Subspace:
    """Smallest strong ideal containing s: saturate under both ∇ slots."""
    n = conn.dim
    current = s
    while True:
        new_vectors = list(current.rows)
        for v in current.rows:
            for i in range(n):
                e = unit_vec(n, i)
                new_vectors.append(nabla_apply(conn, e, v))
                new_vectors.append(nabla_apply(conn, v, e))
        nxt = Subspace.from_vectors(n, new_vectors)
        if nxt == current:
            return current
        current = nxt


@dataclass(frozen=True)
class AnnReport:
    ann_r: Subspace
    ann: Subspace
    nabla_gg: Subspace
    ann_r_radical: Subspace
    isotropic: bool          # Ann_R isotropic?
    ann_r_equals_ann: bool
    case: str


def ann_report(spec: AlgebraSpec, conn: ConnectionCoeffs) -> AnnReport:
    n = spec.dim
    a_r = ann_r(conn)
    a = ann(conn)
    ngg = nabla_gg(conn)
    form = spec.metric
    if form.is_nondegenerate():
        assert a_r == orthogonal_complement(ngg, form), \
            "Ann_R must be the orthogonal complement of the nabla span"
    rad = radical(a_r, form)
    iso = is_isotropic(a_r, form)
    eq = a_r == a
    if a_r.dim == n:
        case = CASE_ANN_R_FULL
    elif a_r.dim == 0:
        case = CASE_ANN_R_ZERO
    elif iso:
        case = CASE_ISOTROPIC
    elif eq:
        case = CASE_ANN_R_EQ_ANN
    else:
        case = CASE_NON_ISOTROPIC
    return AnnReport(ann_r=a_r, ann=a, nabla_gg=ngg, ann_r_radical=rad,
                     isotropic=iso, ann_r_equals_ann=eq, case=case)
