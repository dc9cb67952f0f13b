"""Built-in catalog of worked structures.

Each entry ships a JSON document under ``metriclie/data`` plus a record of
expected facts that the test suite reproduces.  Every expected value is
tagged with how it was pinned down:

* ``stated`` — the defining data of the construction itself;
* ``oracle`` — reproduced in the tests by an independent computation
  (different formula or method than the library code path);
* ``construction`` — a structural consequence of how the example was
  built, checked directly.

``alt_factors`` (where present) define a second decomposition of the same
structure, used to exercise the comparison and isometry tooling;
``alt_factors_unsupported`` define a decomposition whose factor norms land
in different rational square classes, so no rational isometry can match
them.
"""

from __future__ import annotations

import importlib.resources
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import InputFormatError
from .fileformat import InputDocument, parse_string
from .linalg import Subspace


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    file: str
    description: str
    expected: dict = field(default_factory=dict)
    provenance: dict = field(default_factory=dict)
    alt_factors: tuple | None = None
    alt_factors_unsupported: tuple | None = None

    def load(self) -> InputDocument:
        path = importlib.resources.files("metriclie").joinpath("data", self.file)
        return parse_string(path.read_text(encoding="utf-8"))

    def alt_subspaces(self, which="alt_factors"):
        raw = getattr(self, which)
        if raw is None:
            return None
        dim = self.expected["dim"]
        return tuple(
            Subspace.from_vectors(dim, [[Fraction(x) for x in v] for v in fac])
            for fac in raw)


_E = []


def _add(entry):
    _E.append(entry)
    return entry


_add(CatalogEntry(
    name="abelian_2",
    file="abelian_2.json",
    description="Euclidean plane with zero bracket; every operator vanishes "
                "and the structure splits into coordinate lines.",
    expected={
        "dim": 2, "case": "ANN_R_FULL", "factor_count": 2,
        "factor_dims": [1, 1], "g0_dim": 0, "orthogonal": True,
        "flat": True, "ricci_flat": True, "signature": [2, 0, 0],
        "nilpotency_class": 1,
    },
    provenance={
        "case": "construction", "factor_count": "construction",
        "factor_dims": "construction", "g0_dim": "construction",
        "orthogonal": "construction", "flat": "stated",
        "ricci_flat": "stated", "signature": "stated",
        "nilpotency_class": "stated",
    },
))

_add(CatalogEntry(
    name="abelian_3",
    file="abelian_3.json",
    description="Euclidean 3-space with zero bracket.",
    expected={
        "dim": 3, "case": "ANN_R_FULL", "factor_count": 3,
        "factor_dims": [1, 1, 1], "g0_dim": 0, "orthogonal": True,
        "flat": True, "signature": [3, 0, 0], "nilpotency_class": 1,
    },
    provenance={
        "case": "construction", "factor_count": "construction",
        "factor_dims": "construction", "g0_dim": "construction",
        "orthogonal": "construction", "flat": "stated",
        "signature": "stated", "nilpotency_class": "stated",
    },
))

_add(CatalogEntry(
    name="abelian_2_lorentz",
    file="abelian_2_lorentz.json",
    description="Abelian plane with a Lorentz form; the alternative line "
                "splitting is related to the coordinate one by a rational "
                "isometry.",
    expected={
        "dim": 2, "case": "ANN_R_FULL", "factor_count": 2,
        "factor_dims": [1, 1], "signature": [1, 1, 0],
        "alt_isometry_supported": True,
    },
    provenance={
        "case": "construction", "factor_count": "construction",
        "factor_dims": "construction", "signature": "stated",
        "alt_isometry_supported": "construction",
    },
    alt_factors=((("5", "3"),), (("3", "5"),)),
))

_add(CatalogEntry(
    name="abelian_2_aniso",
    file="abelian_2_aniso.json",
    description="Abelian plane with form diag(1, 4).  One alternative "
                "splitting has norms 25 and 100 (same square classes, so a "
                "rational isometry exists); another has norms 5 and 20, "
                "which no rational isometry can reach from 1 and 4.",
    expected={
        "dim": 2, "case": "ANN_R_FULL", "factor_count": 2,
        "signature": [2, 0, 0],
        "alt_isometry_supported": True,
        "alt_unsupported_isometry": False,
    },
    provenance={
        "case": "construction", "factor_count": "construction",
        "signature": "stated", "alt_isometry_supported": "construction",
        "alt_unsupported_isometry": "construction",
    },
    alt_factors=((("3", "2"),), (("8", "-3"),)),
    alt_factors_unsupported=((("1", "1"),), (("4", "-1"),)),
))

_add(CatalogEntry(
    name="heisenberg3_euclid",
    file="heisenberg3_euclid.json",
    description="Heisenberg algebra [e1,e2]=e3 with the Euclidean form; "
                "indecomposable with a one-dimensional commutant.",
    expected={
        "dim": 3, "case": "ANN_R_ZERO", "factor_count": 1, "g0_dim": 0,
        "ricci_diagonal": ["-1/2", "-1/2", "1/2"],
        "commutant_dim": 1, "flat": False, "ricci_flat": False,
        "signature": [3, 0, 0], "nilpotency_class": 2,
        "evidence": ["COMMUTANT_TRIVIAL"],
    },
    provenance={
        "case": "construction", "factor_count": "construction",
        "g0_dim": "construction", "ricci_diagonal": "oracle",
        "commutant_dim": "oracle", "flat": "oracle", "ricci_flat": "oracle",
        "signature": "stated", "nilpotency_class": "stated",
        "evidence": "construction",
    },
))

_add(CatalogEntry(
    name="h3_plane",
    file="h3_plane.json",
    description="Heisenberg algebra orthogonally padded by a Euclidean "
                "plane of annihilating directions: the inert block is "
                "forced into g0, the Heisenberg factor is unique.",
    expected={
        "dim": 5, "case": "ANN_R_EQ_ANN", "factor_count": 1,
        "factor_dims": [3], "g0_dim": 2, "orthogonal": True,
        "ann_r_dim": 2, "ann_dim": 2,
    },
    provenance={
        "case": "construction", "factor_count": "construction",
        "factor_dims": "construction", "g0_dim": "construction",
        "orthogonal": "construction", "ann_r_dim": "construction",
        "ann_dim": "construction",
    },
))

_add(CatalogEntry(
    name="e2_flat",
    file="e2_flat.json",
    description="Euclidean-motion algebra [b,u1]=u2, [b,u2]=-u1 with the "
                "Euclidean form: flat, with a nondegenerate one-sided "
                "annihilator that is not two-sided — the case no splitting "
                "statement covers, handled by the filtration chain and the "
                "flat Riemannian splitting.",
    expected={
        "dim": 3, "case": "NON_ISOTROPIC", "factor_count": 1,
        "has_note": True, "flat": True, "signature": [3, 0, 0],
        "ann_r_dim": 1, "ann_dim": 0,
        "filtration_dims": [3, 2], "h_block_dims": [1],
        "flat_split": {"b_dim": 1, "ann_dim": 0, "derived_dim": 2},
    },
    provenance={
        "case": "construction", "factor_count": "construction",
        "has_note": "construction", "flat": "oracle",
        "signature": "stated", "ann_r_dim": "construction",
        "ann_dim": "construction", "filtration_dims": "construction",
        "h_block_dims": "construction", "flat_split": "construction",
    },
))

_add(CatalogEntry(
    name="so3_killing_neg",
    file="so3_killing_neg.json",
    description="Compact so(3) with minus its Killing form (= 2·identity): "
                "Einstein with constant 1/4 and bi-invariant.",
    expected={
        "dim": 3, "case": "ANN_R_ZERO", "factor_count": 1,
        "einstein": "1/4", "biinvariant": True, "flat": False,
        "killing_diagonal": ["-2", "-2", "-2"], "signature": [3, 0, 0],
        "commutant_dim": 1, "evidence": ["COMMUTANT_TRIVIAL"],
    },
    provenance={
        "case": "construction", "factor_count": "construction",
        "einstein": "oracle", "biinvariant": "oracle", "flat": "oracle",
        "killing_diagonal": "oracle", "signature": "stated",
        "commutant_dim": "oracle", "evidence": "construction",
    },
))

_add(CatalogEntry(
    name="sl2_killing",
    file="sl2_killing.json",
    description="Split sl(2) with its Killing form: Einstein with constant "
                "-1/4, signature (2,1).",
    expected={
        "dim": 3, "case": "ANN_R_ZERO", "factor_count": 1,
        "einstein": "-1/4", "biinvariant": True,
        "killing_matrix": [["8", "0", "0"], ["0", "0", "4"],
                           ["0", "4", "0"]],
        "signature": [2, 1, 0], "commutant_dim": 1,
    },
    provenance={
        "case": "construction", "factor_count": "construction",
        "einstein": "oracle", "biinvariant": "oracle",
        "killing_matrix": "oracle", "signature": "stated",
        "commutant_dim": "oracle",
    },
))

_add(CatalogEntry(
    name="so3_x_so3",
    file="so3_x_so3.json",
    description="Two orthogonal copies of so(3), each with minus its "
                "Killing form: splits into the two simple blocks.",
    expected={
        "dim": 6, "case": "ANN_R_ZERO", "factor_count": 2,
        "factor_dims": [3, 3], "g0_dim": 0, "orthogonal": True,
        "einstein": "1/4", "commutant_dim": 2,
    },
    provenance={
        "case": "construction", "factor_count": "construction",
        "factor_dims": "construction", "g0_dim": "construction",
        "orthogonal": "construction", "einstein": "oracle",
        "commutant_dim": "oracle",
    },
))

_add(CatalogEntry(
    name="nonorthogonal8",
    file="nonorthogonal8.json",
    description="Eight-dimensional connection-mode structure whose two "
                "4-dimensional factors cannot be chosen orthogonal "
                "(the X- and Y-blocks pair through their top vectors); the "
                "induced bracket even fails the Jacobi identity, yet the "
                "decomposition machinery applies verbatim.",
    expected={
        "dim": 8, "case": "ISOTROPIC", "factor_count": 2,
        "factor_dims": [4, 4], "g0_dim": 0, "orthogonal": False,
        "jacobi_fails": True, "ann_r_dim": 4, "ann_dim": 2,
        "evidence": ["SEARCH_EXHAUSTED", "SEARCH_EXHAUSTED"],
        "koszul_matches_override": True,
    },
    provenance={
        "case": "construction", "factor_count": "construction",
        "factor_dims": "construction", "g0_dim": "construction",
        "orthogonal": "construction", "jacobi_fails": "stated",
        "ann_r_dim": "construction", "ann_dim": "construction",
        "evidence": "construction", "koszul_matches_override": "oracle",
    },
))

_add(CatalogEntry(
    name="nonorthogonal8_alt",
    file="nonorthogonal8_alt.json",
    description="The same eight-dimensional structure with a second, "
                "visibly different pair of factors (the blocks are sheared "
                "into each other); comparison matches them to the block "
                "factors, the matched projections are strong isometries of "
                "the factors, and the images still pair nontrivially "
                "(the decomposition cannot be made orthogonal).  No ambient "
                "isometry is claimed: the annihilators differ, so the "
                "strong-isometry builder refuses this structure.",
    expected={
        "dim": 8, "case": "ISOTROPIC", "factor_count": 2,
        "alt_compare_ok": True, "alt_cross_pairing": "1",
        "isometry_rejected": True,
    },
    provenance={
        "case": "construction", "factor_count": "construction",
        "alt_compare_ok": "construction", "alt_cross_pairing": "stated",
        "isometry_rejected": "construction",
    },
    alt_factors=(
        (("1", "0", "0", "0", "0", "0", "0", "0"),
         ("0", "1", "0", "0", "0", "0", "0", "0"),
         ("0", "0", "1", "0", "0", "1", "0", "0"),
         ("0", "0", "0", "1", "0", "2", "0", "0")),
        (("0", "0", "0", "0", "1", "0", "0", "0"),
         ("0", "0", "0", "0", "0", "1", "0", "0"),
         ("0", "3", "0", "0", "0", "0", "1", "0"),
         ("0", "5", "0", "0", "0", "0", "0", "1")),
    ),
))

_add(CatalogEntry(
    name="t_star_h3",
    file="t_star_h3.json",
    description="Cotangent extension of the Heisenberg algebra with the "
                "canonical pairing: bi-invariant, flat, two-step nilpotent, "
                "neutral signature, and indecomposable despite a "
                "10-dimensional commutant (every non-scalar commutant "
                "element squares to a scalar multiple, so no splitting "
                "idempotent exists).",
    expected={
        "dim": 6, "case": "ISOTROPIC", "factor_count": 1,
        "commutant_dim": 10, "biinvariant": True, "flat": True,
        "ricci_flat": True, "signature": [3, 3, 0],
        "nilpotency_class": 2, "evidence": ["SEARCH_EXHAUSTED"],
        "flat_riemannian": "not_applicable",
    },
    provenance={
        "case": "construction", "factor_count": "construction",
        "commutant_dim": "oracle", "biinvariant": "oracle",
        "flat": "oracle", "ricci_flat": "oracle", "signature": "stated",
        "nilpotency_class": "stated", "evidence": "construction",
        "flat_riemannian": "construction",
    },
))

_add(CatalogEntry(
    name="n23_quadratic",
    file="n23_quadratic.json",
    description="Free 2-step-3 nilpotent quotient [e1,e2]=e3, [e1,e3]=e4, "
                "[e2,e3]=e5 with an invariant pairing of signature (3,2): "
                "bi-invariant, Ricci-flat but not flat, indecomposable.",
    expected={
        "dim": 5, "case": "ISOTROPIC", "factor_count": 1,
        "commutant_dim": 5, "biinvariant": True, "flat": False,
        "ricci_flat": True, "signature": [3, 2, 0],
        "nilpotency_class": 3, "ann_r_dim": 2, "ann_dim": 2,
        "evidence": ["SEARCH_EXHAUSTED"],
    },
    provenance={
        "case": "construction", "factor_count": "construction",
        "commutant_dim": "oracle", "biinvariant": "oracle",
        "flat": "oracle", "ricci_flat": "oracle", "signature": "stated",
        "nilpotency_class": "stated", "ann_r_dim": "construction",
        "ann_dim": "construction", "evidence": "construction",
    },
))

_BY_NAME = {e.name: e for e in _E}


def catalog_list():
    return tuple(e.name for e in _E)


def catalog_get(name: str) -> CatalogEntry:
    try:
        return _BY_NAME[name]
    except KeyError:
        raise InputFormatError(
            f"no catalog entry named {name!r}; "
            f"known entries: {', '.join(catalog_list())}") from None
