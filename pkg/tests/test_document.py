import json

import numpy as np
import pytest

from upir import catalog, document
from upir.errors import AxiomError, CapExceeded, ParseError


def doc(**kw):
    base = {"schema_version": 1, "p": 2, "basis": ["x", "y"], "bracket": [], "pmap": {}}
    base.update(kw)
    return json.dumps(base)


def test_torus_document():
    L = document.parse('{"p":2, "basis":["x"], "bracket":[], "pmap":{"x":{"x":1}}}')
    assert L.same_tables(catalog.make("torus", 2, d=1))


def test_nonabelian2_matches_catalog():
    L = document.parse(doc(bracket=[{"left": "x", "right": "y", "value": {"y": 1}}], pmap={"x": {"x": 1}}))
    assert L.same_tables(catalog.make("nonabelian2", 2))


def test_coefficients_reduced():
    L = document.parse(doc(p=3, pmap={"x": {"x": 4, "y": -3}}))
    assert L.pmap_table.tolist() == [[1, 0], [0, 0]]


@pytest.mark.parametrize(
    "text, token",
    [
        (doc(pmap={"z": {"x": 1}}), "'z'"),
        (doc(pmap={"x": {"w": 1}}), "'w'"),
        (doc(bracket=[{"left": "y", "right": "x", "value": {}}]), "precede"),
        (doc(bracket=[{"left": "x", "right": "q", "value": {}}]), "'q'"),
        (doc(bracket=[{"left": "x", "right": "y", "value": {"x": 1}}] * 2), "duplicate"),
        (doc(basis=["x", "x"]), "distinct"),
        (doc(basis=["1x"]), "identifier"),
        (doc(p=4), "not prime"),
        (doc(p="2"), "p:"),
        (doc(pmap={"x": {"x": 1.5}}), "integer"),
        (doc(colour="red"), "unknown field"),
        (doc(schema_version=2), "schema_version"),
        ("{not json", "malformed"),
        ("[1, 2]", "JSON object"),
    ],
)
def test_parse_errors(text, token):
    with pytest.raises(ParseError, match=token):
        document.parse(text)


def test_axiom_error_names_violation():
    with pytest.raises(AxiomError, match=r"restriction\(y\)"):
        document.parse(doc(bracket=[{"left": "x", "right": "y", "value": {"y": 1}}], pmap={"x": {"x": 1}, "y": {"x": 1}}))


def test_caps():
    with pytest.raises(CapExceeded):
        document.parse(doc(p=11))
    with pytest.raises(CapExceeded):
        document.parse(doc(basis=[f"e{i}" for i in range(17)]))


def test_round_trip_catalog():
    for name, L in catalog.small_catalog(primes=(2, 3, 5, 7)):
        M = document.parse(document.emit(L))
        assert M.same_tables(L), name
        assert M.names == L.names
        assert document.to_dict(M) == document.to_dict(L)


def test_emit_is_sparse_and_sorted():
    d = document.to_dict(catalog.make("heisenberg", 3))
    assert d["bracket"] == [{"left": "x", "right": "y", "value": {"z": 1}}]
    assert d["pmap"] == {}
    assert np.array_equal(document.from_dict(d).bracket_table, catalog.make("heisenberg", 3).bracket_table)
