"""Lie algebra structures carrying a nondegenerate symmetric bilinear form.

An `AlgebraSpec` holds the structure constants, the Gram matrix, and the
mode.  In "bracket" mode the metric connection is derived from the product
rule ⟨∇_X Y, Z⟩ = ½(⟨[X,Y],Z⟩ − ⟨[Y,Z],X⟩ + ⟨[Z,X],Y⟩); in "connection"
mode the coefficient table is given directly (the induced bracket is its
antisymmetrization) — this is how structures whose bracket table fails the
Jacobi identity are carried around without pretending they are Lie
algebras.  Either way the table is checked against the two defining
identities (zero torsion and metric compatibility) before anything
downstream is allowed to use it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import PreconditionError
from .linalg import (
    Mat,
    Subspace,
    SymForm,
    rat,
    unit_vec,
    vec,
    vec_add,
    vec_is_zero,
    vec_scale,
    vec_sub,
    zero_vec,
)

MODE_BRACKET = "bracket"
MODE_CONNECTION = "connection"


def _coerce_table(table, n):
    t = tuple(tuple(vec(v) for v in row) for row in table)
    assert len(t) == n
    for row in t:
        assert len(row) == n
        for v in row:
            assert len(v) == n
    return t


def zero_table(n):
    return tuple(tuple(zero_vec(n) for _ in range(n)) for _ in range(n))


def antisymmetrize(table):
    n = len(table)
    return tuple(tuple(vec_sub(table[i][j], table[j][i]) for j in range(n))
                 for i in range(n))


@dataclass(frozen=True)
class AlgebraSpec:
    dim: int
    basis_names: tuple
    brackets: tuple          # brackets[i][j] = coordinates of [e_i, e_j]
    metric: SymForm
    mode: str = MODE_BRACKET
    connection_override: tuple | None = None

    def __post_init__(self):
        n = self.dim
        assert n >= 1
        assert len(self.basis_names) == n
        assert len(set(self.basis_names)) == n, "basis names must be distinct"
        object.__setattr__(self, "brackets", _coerce_table(self.brackets, n))
        assert self.metric.dim == n
        if self.mode == MODE_BRACKET:
            assert self.connection_override is None
        elif self.mode == MODE_CONNECTION:
            assert self.connection_override is not None
            object.__setattr__(self, "connection_override",
                               _coerce_table(self.connection_override, n))
            if antisymmetrize(self.connection_override) != self.brackets:
                raise ValueError("bracket table must be the antisymmetrization "
                                 "of the connection table")
        else:
            raise ValueError(f"unknown mode {self.mode!r}")
        for i in range(n):
            for j in range(n):
                if not vec_is_zero(vec_add(self.brackets[i][j],
                                           self.brackets[j][i])):
                    raise ValueError("bracket table is not antisymmetric")

    @classmethod
    def build(cls, names, brackets=None, metric=None, connection=None):
        """Convenience constructor from name-keyed sparse dicts.

        brackets / connection: {(name_a, name_b): {name_c: value}}.
        metric: {(name_a, name_b): value}, symmetric completion implied.
        """
        names = tuple(names)
        n = len(names)
        idx = {name: i for i, name in enumerate(names)}

        def entry_vec(d):
            v = [Fraction(0)] * n
            for name, value in d.items():
                v[idx[name]] = rat(value)
            return tuple(v)

        gram = [[Fraction(0)] * n for _ in range(n)]
        for (a, b), value in (metric or {}).items():
            gram[idx[a]][idx[b]] = rat(value)
            gram[idx[b]][idx[a]] = rat(value)
        form = SymForm(Mat.from_rows(gram, n))

        if connection is not None:
            gamma = [[zero_vec(n) for _ in range(n)] for _ in range(n)]
            for (a, b), d in connection.items():
                gamma[idx[a]][idx[b]] = entry_vec(d)
            gamma = tuple(tuple(row) for row in gamma)
            return cls.from_connection(names, gamma, form)

        table = [[zero_vec(n) for _ in range(n)] for _ in range(n)]
        for (a, b), d in (brackets or {}).items():
            v = entry_vec(d)
            table[idx[a]][idx[b]] = v
            table[idx[b]][idx[a]] = vec_scale(Fraction(-1), v)
        return cls(n, names, tuple(tuple(row) for row in table), form)

    @classmethod
    def from_connection(cls, names, gamma, metric):
        names = tuple(names)
        n = len(names)
        gamma = _coerce_table(gamma, n)
        return cls(n, names, antisymmetrize(gamma), metric,
                   mode=MODE_CONNECTION, connection_override=gamma)

    @property
    def gram(self):
        return self.metric.gram

    def index(self, name):
        return self.basis_names.index(name)

    def bracket(self, i, j):
        return self.brackets[i][j]

    def bracket_apply(self, x, y):
        """Bilinear extension of the bracket table to coordinate vectors."""
        n = self.dim
        out = zero_vec(n)
        for i, xi in enumerate(x):
            if xi == 0:
                continue
            for j, yj in enumerate(y):
                if yj == 0:
                    continue
                out = vec_add(out, vec_scale(xi * yj, self.brackets[i][j]))
        return out


@dataclass(frozen=True)
class ValidationReport:
    mode: str
    antisymmetry_ok: bool
    jacobi_ok: bool
    jacobi_failures: tuple   # ((name_i, name_j, name_k), defect_vector)
    metric_symmetric_ok: bool
    metric_nondegenerate_ok: bool
    connection_ok: bool | None   # None in bracket mode


def validate(spec: AlgebraSpec) -> ValidationReport:
    n = spec.dim
    failures = []
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                d = spec.bracket_apply(spec.brackets[i][j], unit_vec(n, k))
                d = vec_add(d, spec.bracket_apply(spec.brackets[j][k], unit_vec(n, i)))
                d = vec_add(d, spec.bracket_apply(spec.brackets[k][i], unit_vec(n, j)))
                if not vec_is_zero(d):
                    failures.append(((spec.basis_names[i], spec.basis_names[j],
                                      spec.basis_names[k]), d))
    connection_ok = None
    if spec.mode == MODE_CONNECTION:
        ok, _ = check_torsion_and_compatibility(spec.connection_override, spec)
        connection_ok = ok
    return ValidationReport(
        mode=spec.mode,
        antisymmetry_ok=True,   # enforced at construction
        jacobi_ok=not failures,
        jacobi_failures=tuple(failures),
        metric_symmetric_ok=True,   # enforced by SymForm
        metric_nondegenerate_ok=spec.metric.is_nondegenerate(),
        connection_ok=connection_ok,
    )


@dataclass(frozen=True)
class ConnectionCoeffs:
    """gamma[i][j] = coordinates of ∇_{e_i} e_j.  Built only through
    `derive_connection` / `connection_of`, which check the defining
    identities; the raw constructor checks shape only."""

    gamma: tuple

    def __post_init__(self):
        n = len(self.gamma)
        object.__setattr__(self, "gamma", _coerce_table(self.gamma, n))

    @property
    def dim(self):
        return len(self.gamma)

    def nabla(self, i, j):
        return self.gamma[i][j]


def nabla_apply(conn: ConnectionCoeffs, x, y):
    """∇_x y for coordinate vectors x, y."""
    n = conn.dim
    out = zero_vec(n)
    for i, xi in enumerate(x):
        if xi == 0:
            continue
        for j, yj in enumerate(y):
            if yj == 0:
                continue
            out = vec_add(out, vec_scale(xi * yj, conn.gamma[i][j]))
    return out


def left_op(conn: ConnectionCoeffs, i) -> Mat:
    """Matrix of y ↦ ∇_{e_i} y (column action)."""
    n = conn.dim
    return Mat.from_rows([[conn.gamma[i][j][k] for j in range(n)]
                          for k in range(n)], n)


def right_op(conn: ConnectionCoeffs, j) -> Mat:
    """Matrix of x ↦ ∇_x e_j (column action)."""
    n = conn.dim
    return Mat.from_rows([[conn.gamma[i][j][k] for i in range(n)]
                          for k in range(n)], n)


def left_ops(conn):
    return tuple(left_op(conn, i) for i in range(conn.dim))


def right_ops(conn):
    return tuple(right_op(conn, j) for j in range(conn.dim))


def check_torsion_and_compatibility(gamma, spec: AlgebraSpec):
    """Zero torsion: ∇_XY − ∇_YX = [X,Y]; compatibility:
    ⟨∇_XY, Z⟩ + ⟨Y, ∇_XZ⟩ = 0.  Returns (ok, defects)."""
    if isinstance(gamma, ConnectionCoeffs):
        gamma = gamma.gamma
    n = spec.dim
    defects = []
    for i in range(n):
        for j in range(i + 1, n):
            d = vec_sub(vec_sub(gamma[i][j], gamma[j][i]), spec.brackets[i][j])
            if not vec_is_zero(d):
                defects.append(("torsion", (i, j), d))
    form = spec.metric
    for i in range(n):
        for j in range(n):
            for k in range(j, n):
                d = form.pair(gamma[i][j], unit_vec(n, k)) + \
                    form.pair(unit_vec(n, j), gamma[i][k])
                if d != 0:
                    defects.append(("compatibility", (i, j, k), d))
    return (not defects), tuple(defects)


def derive_connection(spec: AlgebraSpec) -> ConnectionCoeffs:
    """Solve the product-rule identity for the unique torsion-free metric
    connection of the bracket table."""
    n = spec.dim
    form = spec.metric
    if not form.is_nondegenerate():
        raise PreconditionError("metric is degenerate; connection is not determined")
    ginv = form.gram.inverse()
    gamma = []
    for i in range(n):
        row = []
        ei = unit_vec(n, i)
        for j in range(n):
            ej = unit_vec(n, j)
            rhs = []
            for k in range(n):
                ek = unit_vec(n, k)
                val = form.pair(spec.brackets[i][j], ek) \
                    - form.pair(spec.bracket_apply(ej, ek), ei) \
                    + form.pair(spec.bracket_apply(ek, ei), ej)
                rhs.append(val / 2)
            # rhs[k] = ⟨∇_i e_j, e_k⟩, so the coordinate vector is rhs·G⁻¹
            row.append(tuple(sum((rhs[m] * ginv.entries[m][k] for m in range(n)),
                                 Fraction(0)) for k in range(n)))
        gamma.append(tuple(row))
    conn = ConnectionCoeffs(tuple(gamma))
    ok, defects = check_torsion_and_compatibility(conn, spec)
    assert ok, f"derived connection fails its defining identities: {defects[:3]}"
    return conn


def connection_of(spec: AlgebraSpec) -> ConnectionCoeffs:
    """The structure's connection table: the override (checked) in
    connection mode, the derived one in bracket mode."""
    if spec.mode == MODE_CONNECTION:
        ok, defects = check_torsion_and_compatibility(spec.connection_override, spec)
        if not ok:
            raise PreconditionError(
                "connection table fails the defining identities: "
                + "; ".join(f"{kind} at {idx}" for kind, idx, _ in defects[:5]))
        return ConnectionCoeffs(spec.connection_override)
    return derive_connection(spec)


def restrict(spec: AlgebraSpec, conn: ConnectionCoeffs, h: Subspace):
    """Restrict the structure to a strong ideal h.  Returns (sub_spec,
    sub_conn).  Basis vectors are the rows of h's canonical basis, named
    after the original basis name at each pivot position plus a prime."""
    n = spec.dim
    assert h.ambient_dim == n
    if h.dim == 0:
        raise PreconditionError("cannot restrict to the zero subspace")
    for v in h.rows:
        for i in range(n):
            e = unit_vec(n, i)
            if not (h.contains(nabla_apply(conn, e, v))
                    and h.contains(nabla_apply(conn, v, e))):
                raise PreconditionError("subspace is not a strong ideal; "
                                        "restriction is undefined")
    sub_form = spec.metric.restrict(h)
    if not sub_form.is_nondegenerate():
        raise PreconditionError("metric restricts degenerately to the subspace")
    names = tuple(spec.basis_names[p] + "'" for p in h.pivots)
    d = h.dim
    gamma = tuple(tuple(h.coords(nabla_apply(conn, h.rows[a], h.rows[b]))
                        for b in range(d)) for a in range(d))
    if spec.mode == MODE_CONNECTION:
        sub_spec = AlgebraSpec.from_connection(names, gamma, sub_form)
    else:
        table = tuple(tuple(h.coords(spec.bracket_apply(h.rows[a], h.rows[b]))
                            for b in range(d)) for a in range(d))
        sub_spec = AlgebraSpec(d, names, table, sub_form)
    return sub_spec, ConnectionCoeffs(gamma)


def transform_spec(spec: AlgebraSpec, p: Mat) -> AlgebraSpec:
    """The same structure written on the basis whose vectors are the rows
    of p (in old coordinates).  p must be invertible."""
    n = spec.dim
    assert p.shape == (n, n)
    pinv = p.inverse()

    def new_coords(v_old):
        return tuple(sum((v_old[a] * pinv.entries[a][b] for a in range(n)),
                         Fraction(0)) for b in range(n))

    gram = SymForm(p @ spec.gram @ p.transpose())
    if spec.mode == MODE_CONNECTION:
        old_conn = ConnectionCoeffs(spec.connection_override)
        gamma = tuple(tuple(new_coords(nabla_apply(old_conn, p.row(i), p.row(j)))
                            for j in range(n)) for i in range(n))
        return AlgebraSpec.from_connection(spec.basis_names, gamma, gram)
    table = tuple(tuple(new_coords(spec.bracket_apply(p.row(i), p.row(j)))
                        for j in range(n)) for i in range(n))
    return AlgebraSpec(n, spec.basis_names, table, gram)
