"""JSON input format for metric Lie algebra structures.

A document looks like::

    {
      "name": "heisenberg3",
      "dim": 3,
      "basis": ["e1", "e2", "e3"],
      "mode": "bracket",
      "brackets": [
        {"x": "e1", "y": "e2", "value": {"e3": "1"}}
      ],
      "metric": [
        {"x": "e1", "y": "e1", "value": "1"},
        {"x": "e2", "y": "e2", "value": "1"},
        {"x": "e3", "y": "e3", "value": "1"}
      ]
    }

Scalars are exact rationals written as strings ("3", "-5/7"); plain JSON
integers are also accepted.  ``mode`` selects whether the structure is
given by Lie brackets (the connection is then derived from the metric) or
directly by connection coefficients under a key ``connection`` with the
same entry shape as ``brackets``.  Brackets are antisymmetrized and the
metric symmetrized; giving both orientations with inconsistent values is
an error.  Serialization is canonical: one orientation per pair, entries
sorted in basis order, values normalized.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction

from .algebra import MODE_BRACKET, MODE_CONNECTION, AlgebraSpec
from .errors import InputFormatError

_RATIONAL_RE = re.compile(r"^-?(0|[1-9][0-9]*)(/[1-9][0-9]*)?$")

_TOP_KEYS = {"name", "dim", "basis", "mode", "brackets", "connection", "metric"}


@dataclass(frozen=True)
class InputDocument:
    name: str
    spec: AlgebraSpec


def _fail(msg):
    raise InputFormatError(msg)


def parse_rational(value):
    if isinstance(value, bool):
        _fail(f"not a rational scalar: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        if not _RATIONAL_RE.match(value):
            _fail(f"malformed rational {value!r} (want e.g. \"3\" or \"-5/7\")")
        return Fraction(value)
    _fail(f"not a rational scalar: {value!r}")


def _want(obj, key, types, what):
    if key not in obj:
        _fail(f"missing key {key!r}")
    v = obj[key]
    if not isinstance(v, types):
        _fail(f"{what}: bad type for {key!r}")
    return v


def _entry_pair(entry, index, what):
    if not isinstance(entry, dict) or set(entry) != {"x", "y", "value"}:
        _fail(f"{what} entry must be an object with keys x, y, value")
    x, y = entry["x"], entry["y"]
    if not (isinstance(x, str) and isinstance(y, str)):
        _fail(f"{what} entry names must be strings")
    if x not in index or y not in index:
        _fail(f"{what} entry uses unknown basis name {x!r} or {y!r}")
    return index[x], index[y]


def parse_document(obj) -> InputDocument:
    if not isinstance(obj, dict):
        _fail("document must be a JSON object")
    extra = set(obj) - _TOP_KEYS
    if extra:
        _fail(f"unknown keys: {sorted(extra)}")
    name = _want(obj, "name", str, "document")
    dim = _want(obj, "dim", int, "document")
    if isinstance(dim, bool) or dim < 1:
        _fail("dim must be a positive integer")
    basis = _want(obj, "basis", list, "document")
    if len(basis) != dim or not all(isinstance(b, str) and b for b in basis):
        _fail("basis must list exactly dim nonempty names")
    if len(set(basis)) != dim:
        _fail("basis names must be distinct")
    mode = _want(obj, "mode", str, "document")
    if mode not in (MODE_BRACKET, MODE_CONNECTION):
        _fail(f"mode must be {MODE_BRACKET!r} or {MODE_CONNECTION!r}")
    table_key = "brackets" if mode == MODE_BRACKET else "connection"
    other_key = "connection" if mode == MODE_BRACKET else "brackets"
    if other_key in obj:
        _fail(f"mode {mode!r} forbids key {other_key!r}")
    entries = _want(obj, table_key, list, "document")
    metric_entries = _want(obj, "metric", list, "document")

    index = {b: i for i, b in enumerate(basis)}
    n = dim

    table = [[None] * n for _ in range(n)]
    for entry in entries:
        i, j = _entry_pair(entry, index, table_key)
        val = entry["value"]
        if not isinstance(val, dict):
            _fail(f"{table_key} value must map basis names to rationals")
        v = [Fraction(0)] * n
        for cname, cval in val.items():
            if cname not in index:
                _fail(f"{table_key} value uses unknown basis name {cname!r}")
            v[index[cname]] = parse_rational(cval)
        if table[i][j] is not None and table[i][j] != v:
            _fail(f"conflicting {table_key} entries for "
                  f"({basis[i]}, {basis[j]})")
        table[i][j] = v

    if mode == MODE_BRACKET:
        # antisymmetrize, watching for inconsistent double entries
        for i in range(n):
            if table[i][i] is not None and any(x != 0 for x in table[i][i]):
                _fail(f"nonzero bracket of {basis[i]} with itself")
            for j in range(i + 1, n):
                a, b = table[i][j], table[j][i]
                if a is not None and b is not None:
                    if any(x + y != 0 for x, y in zip(a, b)):
                        _fail(f"bracket entries for ({basis[i]}, {basis[j]}) "
                              f"are not antisymmetric")
                elif b is not None:
                    table[i][j] = [-x for x in b]
        filled = [[table[i][j] if table[i][j] is not None else [Fraction(0)] * n
                   for j in range(n)] for i in range(n)]
        for i in range(n):
            for j in range(i):
                filled[i][j] = [-x for x in filled[j][i]]
            filled[i][i] = [Fraction(0)] * n
    else:
        filled = [[table[i][j] if table[i][j] is not None else [Fraction(0)] * n
                   for j in range(n)] for i in range(n)]

    gram = [[None] * n for _ in range(n)]
    for entry in metric_entries:
        i, j = _entry_pair(entry, index, "metric")
        v = parse_rational(entry["value"])
        for a, b in ((i, j), (j, i)):
            if gram[a][b] is not None and gram[a][b] != v:
                _fail(f"conflicting metric entries for "
                      f"({basis[a]}, {basis[b]})")
            gram[a][b] = v
    gram_filled = [[gram[i][j] if gram[i][j] is not None else Fraction(0)
                    for j in range(n)] for i in range(n)]

    metric_dict = {(basis[i], basis[j]): gram_filled[i][j]
                   for i in range(n) for j in range(i, n)
                   if gram_filled[i][j] != 0}
    try:
        if mode == MODE_BRACKET:
            spec = AlgebraSpec.build(
                basis,
                brackets={(basis[i], basis[j]):
                          {basis[c]: filled[i][j][c]
                           for c in range(n) if filled[i][j][c] != 0}
                          for i in range(n) for j in range(i + 1, n)
                          if any(x != 0 for x in filled[i][j])},
                metric=metric_dict,
            )
        else:
            spec = AlgebraSpec.build(
                basis,
                connection={(basis[i], basis[j]):
                            {basis[c]: filled[i][j][c]
                             for c in range(n) if filled[i][j][c] != 0}
                            for i in range(n) for j in range(n)
                            if any(x != 0 for x in filled[i][j])},
                metric=metric_dict,
            )
    except ValueError as exc:
        _fail(str(exc))
    return InputDocument(name=name, spec=spec)


def parse_string(text: str) -> InputDocument:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        _fail(f"invalid JSON: {exc}")
    return parse_document(obj)


def load_path(path) -> InputDocument:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        _fail(f"cannot read {path}: {exc}")
    return parse_string(text)


def _rat_str(x: Fraction) -> str:
    return str(x)


def serialize_document(name: str, spec: AlgebraSpec) -> dict:
    n = spec.dim
    names = list(spec.basis_names)
    doc = {
        "name": name,
        "dim": n,
        "basis": names,
        "mode": spec.mode,
    }
    if spec.mode == MODE_BRACKET:
        entries = []
        for i in range(n):
            for j in range(i + 1, n):
                v = spec.brackets[i][j]
                if any(x != 0 for x in v):
                    entries.append({
                        "x": names[i], "y": names[j],
                        "value": {names[c]: _rat_str(v[c])
                                  for c in range(n) if v[c] != 0},
                    })
        doc["brackets"] = entries
    else:
        entries = []
        gamma = spec.connection_override
        for i in range(n):
            for j in range(n):
                v = gamma[i][j]
                if any(x != 0 for x in v):
                    entries.append({
                        "x": names[i], "y": names[j],
                        "value": {names[c]: _rat_str(v[c])
                                  for c in range(n) if v[c] != 0},
                    })
        doc["connection"] = entries
    doc["metric"] = [
        {"x": names[i], "y": names[j], "value": _rat_str(spec.gram.entries[i][j])}
        for i in range(n) for j in range(i, n)
        if spec.gram.entries[i][j] != 0
    ]
    return doc


def dumps_document(name: str, spec: AlgebraSpec) -> str:
    return json.dumps(serialize_document(name, spec), indent=2) + "\n"
