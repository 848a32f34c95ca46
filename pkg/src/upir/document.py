"""JSON algebra documents.

A document looks like::

    {
      "schema_version": 1,
      "p": 2,
      "basis": ["x", "y"],
      "bracket": [{"left": "x", "right": "y", "value": {"y": 1}}],
      "pmap": {"x": {"x": 1}}
    }

``left`` must precede ``right`` in ``basis``.  Omitted brackets and p-map
entries are zero; coefficients are reduced mod ``p``.
"""

from __future__ import annotations

import json
import re
from typing import Any

import numpy as np

from .errors import AxiomError, CapExceeded, DimensionError, ParseError
from .gfp import MAX_PRIME, PrimeField
from .rla import RestrictedLieAlgebra

SCHEMA_VERSION = 1
MAX_DIM = 16
_IDENT = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


def _coeff_map(obj: Any, index: dict[str, int], p: int, where: str) -> np.ndarray:
    if not isinstance(obj, dict):
        raise ParseError(f"{where}: expected a map name -> integer")
    v = np.zeros(len(index), dtype=np.int64)
    for name, c in obj.items():
        if name not in index:
            raise ParseError(f"{where}: undeclared basis name {name!r}")
        if isinstance(c, bool) or not isinstance(c, int):
            raise ParseError(f"{where}: coefficient of {name!r} is not an integer")
        v[index[name]] = c % p
    return v


def from_dict(doc: Any, max_prime: int = MAX_PRIME, max_dim: int = MAX_DIM, validate: bool = True) -> RestrictedLieAlgebra:
    if not isinstance(doc, dict):
        raise ParseError("document must be a JSON object")
    version = doc.get("schema_version", SCHEMA_VERSION)
    if version != SCHEMA_VERSION:
        raise ParseError(f"schema_version: unsupported value {version!r}")
    unknown = set(doc) - {"schema_version", "p", "basis", "bracket", "pmap"}
    if unknown:
        raise ParseError(f"unknown field {sorted(unknown)[0]!r}")
    p = doc.get("p")
    if isinstance(p, bool) or not isinstance(p, int):
        raise ParseError("p: expected an integer")
    try:
        PrimeField(p, max_prime)
    except DimensionError as exc:
        raise ParseError(f"p: {exc}") from None
    basis = doc.get("basis")
    if not isinstance(basis, list) or not all(isinstance(s, str) for s in basis):
        raise ParseError("basis: expected a list of identifiers")
    for s in basis:
        if not _IDENT.match(s):
            raise ParseError(f"basis: {s!r} is not an identifier")
    if len(set(basis)) != len(basis):
        raise ParseError("basis: names are not distinct")
    if len(basis) > max_dim:
        raise CapExceeded(f"dim={len(basis)} exceeds the supported bound {max_dim}")
    index = {s: i for i, s in enumerate(basis)}
    n = len(basis)

    brackets: dict[tuple[int, int], np.ndarray] = {}
    recs = doc.get("bracket", [])
    if not isinstance(recs, list):
        raise ParseError("bracket: expected a list of records")
    for k, rec in enumerate(recs):
        where = f"bracket[{k}]"
        if not isinstance(rec, dict) or set(rec) != {"left", "right", "value"}:
            raise ParseError(f"{where}: expected a record with fields left, right, value")
        left, right = rec["left"], rec["right"]
        for tag, name in (("left", left), ("right", right)):
            if name not in index:
                raise ParseError(f"{where}.{tag}: undeclared basis name {name!r}")
        i, j = index[left], index[right]
        if i >= j:
            raise ParseError(f"{where}: {left!r} must precede {right!r} in basis order")
        if (i, j) in brackets:
            raise ParseError(f"{where}: duplicate bracket [{left}, {right}]")
        brackets[(i, j)] = _coeff_map(rec["value"], index, p, f"{where}.value")

    pm = doc.get("pmap", {})
    if not isinstance(pm, dict):
        raise ParseError("pmap: expected a map name -> (name -> integer)")
    P = np.zeros((n, n), dtype=np.int64)
    for name, val in pm.items():
        if name not in index:
            raise ParseError(f"pmap: undeclared basis name {name!r}")
        P[index[name]] = _coeff_map(val, index, p, f"pmap.{name}")

    L = RestrictedLieAlgebra(p, brackets, P, basis, dim=n)
    if validate:
        report = L.validate()
        if not report.ok:
            raise AxiomError("axioms violated: " + ", ".join(report.violations), report.violations)
    return L


def parse(text: str, **kwargs) -> RestrictedLieAlgebra:
    """Parse and validate a JSON algebra document."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON: {exc}") from None
    return from_dict(doc, **kwargs)


def load(path, **kwargs) -> RestrictedLieAlgebra:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read(), **kwargs)


def to_dict(L: RestrictedLieAlgebra) -> dict:
    names = L.names

    def cmap(v):
        return {names[k]: int(v[k]) for k in np.flatnonzero(v)}

    return {
        "schema_version": SCHEMA_VERSION,
        "p": L.p,
        "basis": list(names),
        "bracket": [
            {"left": names[i], "right": names[j], "value": cmap(v)}
            for (i, j), v in sorted(L.upper_brackets().items())
        ],
        "pmap": {names[i]: cmap(L.pmap_table[i]) for i in range(L.dim) if L.pmap_table[i].any()},
    }


def emit(L: RestrictedLieAlgebra) -> str:
    return json.dumps(to_dict(L), indent=2) + "\n"
