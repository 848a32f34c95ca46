import itertools

import numpy as np
import pytest

from upir import catalog, criterion
from upir.criterion import (
    audit,
    brute_decision,
    enumerate_algebras,
    ordinary_env_decision,
    structural_decision,
    verify_brute_certificate,
    verify_structural_certificate,
)
from upir.errors import CapExceeded, DimensionError
from upir.rla import RestrictedLieAlgebra, direct_sum, zero_algebra
from upir.uenv import build


def nonab():
    return RestrictedLieAlgebra(2, {(0, 1): [0, 1]}, [[1, 0], [0, 0]], ["x", "y"])


def test_structural_examples():
    for d in (1, 2, 3):
        v = structural_decision(catalog.make("torus", 2, d=d))
        assert v.is_pir and v.certificate["torus"].dim == d
        assert not v.certificate["generator"].any()
    v = structural_decision(catalog.make("strongly_abelian", 2, d=2))
    assert not v.is_pir and v.certificate["nil"].dim == 2
    v = structural_decision(nonab())
    assert not v.is_pir and v.certificate["reason"] == "non-abelian"


def test_brute_examples():
    assert brute_decision(catalog.make("nilcyclic", 2, d=1)).is_pir
    assert brute_decision(catalog.make("torus", 2, d=1)).is_pir
    v = brute_decision(catalog.make("strongly_abelian", 2, d=2))
    assert not v.is_pir
    A = build(catalog.make("strongly_abelian", 2, d=2))
    assert verify_brute_certificate(A, v, "right") and verify_brute_certificate(A, v, "left")


def test_brute_cap():
    with pytest.raises(CapExceeded, match="budget exceeded"):
        brute_decision(catalog.make("nilcyclic", 2, d=5))


def test_ordinary_env_decision():
    assert ordinary_env_decision(0) and ordinary_env_decision(1)
    assert not any(ordinary_env_decision(d) for d in range(2, 20))
    with pytest.raises(DimensionError):
        ordinary_env_decision(-1)


def _restriction_oracle(p, C, P):
    n = P.shape[0]

    def ad(v):
        return np.einsum("i,ijk->kj", v, C) % p

    for i in range(n):
        if not np.array_equal(np.linalg.matrix_power(ad(np.eye(n, dtype=np.int64)[i]), p) % p, ad(P[i])):
            return False
    return True


def test_enumeration_counts():
    assert len(list(enumerate_algebras(2, 1))) == 2
    algebras = list(enumerate_algebras(2, 2))
    # every dim-2 bracket satisfies Jacobi, so only the restriction axiom filters
    expected = 0
    for b in itertools.product(range(2), repeat=2):
        C = np.zeros((2, 2, 2), dtype=np.int64)
        C[0, 1], C[1, 0] = b, (-np.array(b)) % 2
        for entries in itertools.product(range(2), repeat=4):
            expected += _restriction_oracle(2, C, np.array(entries).reshape(2, 2))
    assert len(algebras) == expected == 19
    keys = {(L.bracket_table.tobytes(), L.pmap_table.tobytes()) for L in algebras}
    assert len(keys) == 19
    assert all(L.validate().ok for L in algebras)


def test_enumeration_filters_jacobi():
    for L in enumerate_algebras(2, 3, "sampled", sample_size=30, seed=9):
        assert L.validate().ok


def test_enumeration_budget_and_modes():
    with pytest.raises(CapExceeded, match="budget exceeded"):
        next(enumerate_algebras(2, 3))
    with pytest.raises(ValueError):
        next(enumerate_algebras(2, 1, "bogus"))
    a = [L.pmap_table.tolist() for L in enumerate_algebras(3, 2, "sampled", sample_size=10, seed=5)]
    b = [L.pmap_table.tolist() for L in enumerate_algebras(3, 2, "sampled", sample_size=10, seed=5)]
    assert a == b


def test_audit_dim1():
    r = audit(2, 1)
    assert r.count == 2 and r.passed and r.pir_count == 2


def test_certificates_over_dim2_family():
    for L in enumerate_algebras(2, 2):
        s = structural_decision(L)
        b = brute_decision(L)
        assert s.is_pir == b.is_pir
        if s.is_pir:
            assert verify_structural_certificate(L, s)
        else:
            A = build(L)
            assert verify_brute_certificate(A, b, "right")
            assert verify_brute_certificate(A, b, "left")


def test_monotone_sanity():
    for a, b in [(0, 1), (1, 1), (2, 1), (1, 2), (0, 3), (3, 0)]:
        L = catalog.make("mixed", 2, a=a, b=b)
        assert structural_decision(L).is_pir
        assert brute_decision(L).is_pir
        if b:
            L2 = direct_sum(L, catalog.make("nilcyclic", 2, d=1))
            assert not structural_decision(L2).is_pir
            if L2.dim <= 3:
                assert not brute_decision(L2).is_pir


def test_zero_algebra_is_pir():
    Z = zero_algebra(3)
    assert structural_decision(Z).is_pir and brute_decision(Z).is_pir


def test_audit_report_dict():
    r = audit(2, 2)
    d = r.to_dict()
    assert d["count"] == 19 and d["agreements"] == 19 and d["disagreements"] == [] and d["passed"]
    assert "elapsed" not in d
    assert r.pir_count == 15


def test_disagreement_is_recorded(monkeypatch):
    flipped = criterion.structural_decision

    def wrong(L, max_elements=2**16):
        v = flipped(L, max_elements)
        v.is_pir = not v.is_pir
        return v

    monkeypatch.setattr(criterion, "structural_decision", wrong)
    r = audit(2, 1)
    assert not r.passed and len(r.disagreements) == 2
    assert r.disagreements[0]["algebra"]["p"] == 2
