import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from upir import gfp
from upir.errors import CapExceeded, DimensionError

from conftest import all_subspaces, brute_span


def as_set(S):
    return {tuple(int(x) for x in v) for v in S.elements()}


@st.composite
def rows_strategy(draw, p=None, max_n=6, max_rows=5):
    p = p or draw(st.sampled_from([2, 3, 5]))
    n = draw(st.integers(1, max_n))
    k = draw(st.integers(0, max_rows))
    rows = draw(st.lists(st.lists(st.integers(0, p - 1), min_size=n, max_size=n), min_size=k, max_size=k))
    return p, n, rows


def test_field_bounds():
    assert gfp.PrimeField(7).inv(3) == 5
    with pytest.raises(DimensionError):
        gfp.PrimeField(4)
    with pytest.raises(CapExceeded):
        gfp.PrimeField(11)
    with pytest.raises(ZeroDivisionError):
        gfp.PrimeField(3).inv(0)


def test_rref_examples():
    S = gfp.rref([(1, 1), (0, 1)], 2, 2)
    assert S.basis.tolist() == [[1, 0], [0, 1]]
    Z = gfp.rref([], 3, 2)
    assert Z.dim == 0 and Z.basis.shape == (0, 3)
    rows = [(2, 1, 0), (1, 2, 0)]
    S = gfp.rref(rows, 3, 3)
    # 2*(2,1,0) = (1,2,0) mod 3, so the span is a line
    assert S.dim == 1
    assert as_set(S) == brute_span(3, 3, rows)


def test_rref_rejects_ragged():
    with pytest.raises(DimensionError):
        gfp.rref([(1, 0), (1, 0, 1)], 2, 2)


def test_sum_and_intersect_examples():
    S = gfp.span(2, 3, (1, 0, 0))
    T = gfp.span(2, 3, (0, 1, 0))
    U = S + T
    assert U.dim == 2
    assert as_set(U) == {v for v in map(tuple, gfp.all_vectors(2, 3).tolist()) if v[2] == 0}
    assert S + gfp.Subspace.zero(2, 3) == S
    assert S + S == S
    assert (S & gfp.Subspace.full(2, 3)) == S
    assert (gfp.span(2, 2, (1, 0)) & gfp.span(2, 2, (0, 1))).dim == 0


def test_kernel_examples():
    assert gfp.kernel(np.eye(3, dtype=int), 2).dim == 0
    assert gfp.kernel(np.zeros((4, 4), dtype=int), 2) == gfp.Subspace.full(2, 4)
    J = np.array([[0, 1, 0], [0, 0, 1], [0, 0, 0]])
    K = gfp.kernel(J, 3)
    assert K == gfp.span(3, 3, (1, 0, 0))


def test_ambient_mismatch():
    with pytest.raises(DimensionError):
        gfp.span(2, 2, (1, 0)) + gfp.span(2, 3, (1, 0, 0))


@settings(max_examples=150, deadline=None)
@given(rows_strategy())
def test_rref_matches_brute_span(data):
    p, n, rows = data
    if p**n > 800:
        return
    S = gfp.rref(rows, n, p)
    assert as_set(S) == brute_span(p, n, rows)
    assert S == gfp.rref(list(reversed(rows)), n, p)
    piv = S.pivots
    assert piv == sorted(piv) and len(set(piv)) == len(piv)
    for r, c in zip(S.basis, piv):
        assert r[c] == 1 and not r[:c].any()
        assert sum(1 for q in S.basis if q[c]) == 1


def test_dimension_formula_random_pairs(rng):
    checked = 0
    for _ in range(1000):
        p = int(rng.choice([2, 3]))
        n = int(rng.integers(1, 10))
        A = gfp.Subspace(p, n, rng.integers(0, p, size=(int(rng.integers(0, n + 1)), n)))
        B = gfp.Subspace(p, n, rng.integers(0, p, size=(int(rng.integers(0, n + 1)), n)))
        I, S = A & B, A + B
        assert A.dim + B.dim == S.dim + I.dim
        assert I <= A and I <= B and A <= S and B <= S
        checked += 1
    assert checked == 1000


def test_intersection_by_membership(rng):
    for _ in range(50):
        A = gfp.Subspace(2, 6, rng.integers(0, 2, size=(3, 6)))
        B = gfp.Subspace(2, 6, rng.integers(0, 2, size=(3, 6)))
        expected = {v for v in as_set(A) if B.contains(v)}
        assert as_set(A & B) == expected


def test_modular_law_exhaustive_small():
    subs = all_subspaces(2, 3)
    assert len(subs) == 16
    for A in subs:
        for B in subs:
            for C in subs:
                if A <= C:
                    assert (A + (B & C)) == ((A + B) & C)


@settings(max_examples=100, deadline=None)
@given(st.sampled_from([2, 3, 5]), st.integers(1, 5), st.integers(1, 5), st.data())
def test_rank_nullity(p, m, n, data):
    M = np.array(data.draw(st.lists(st.lists(st.integers(0, p - 1), min_size=n, max_size=n), min_size=m, max_size=m)))
    K = gfp.kernel(M, p)
    assert gfp.rank(M, p) + K.dim == n
    for v in K.basis:
        assert not (M @ v % p).any()


def test_solve_and_coordinates(rng):
    for _ in range(100):
        M = rng.integers(0, 3, size=(4, 4))
        x = rng.integers(0, 3, size=4)
        b = M @ x % 3
        y = gfp.solve(M, b, 3)
        assert y is not None and ((M @ y - b) % 3 == 0).all()
    assert gfp.solve(np.zeros((2, 2), dtype=int), np.array([1, 0]), 2) is None
    S = gfp.span(3, 3, (1, 2, 0), (0, 1, 1))
    v = (2 * S.basis[0] + S.basis[1]) % 3
    assert S.coordinates(v).tolist() == [2, 1]


def test_rref_batch_agrees_with_single(rng):
    mats = rng.integers(0, 5, size=(40, 4, 6))
    R, ranks = gfp.rref_batch(mats, 5)
    for M, r, k in zip(mats, R, ranks):
        S = gfp.Subspace(5, 6, M)
        assert S.dim == k
        assert np.array_equal(r[:k], S.basis)
        assert not r[k:].any()


def test_matpow_and_all_vectors():
    J = np.array([[1, 1], [0, 1]])
    assert gfp.matpow(J, 3, 3).tolist() == [[1, 0], [0, 1]]
    V = gfp.all_vectors(3, 2)
    assert V.shape == (9, 2) and V[1].tolist() == [0, 1] and V[-1].tolist() == [2, 2]


def test_image_and_hash():
    S = gfp.span(2, 3, (1, 1, 0))
    M = np.array([[0, 1, 0], [1, 0, 0], [0, 0, 1]])
    assert S.image(M) == S
    assert len({S, gfp.span(2, 3, (1, 1, 0)), gfp.span(2, 3, (1, 0, 0))}) == 2
    assert len(S) == 2
