import itertools

import numpy as np
import pytest

from upir import gfp


def brute_span(p, n, rows):
    """Set of all F_p-combinations of ``rows`` as tuples."""
    rows = [np.asarray(r) for r in rows]
    out = set()
    for coeffs in itertools.product(range(p), repeat=len(rows)):
        v = np.zeros(n, dtype=np.int64)
        for c, r in zip(coeffs, rows):
            v = v + c * r
        out.add(tuple(int(x) for x in v % p))
    return out


def all_subspaces(p, n):
    """Every subspace of F_p^n, grown one vector at a time."""
    seen = {gfp.Subspace.zero(p, n)}
    frontier = list(seen)
    vecs = gfp.all_vectors(p, n)[1:]
    while frontier:
        nxt = []
        for S in frontier:
            for v in vecs:
                if S.contains(v):
                    continue
                T = S + gfp.span(p, n, v)
                if T not in seen:
                    seen.add(T)
                    nxt.append(T)
        frontier = nxt
    return sorted(seen, key=lambda S: (S.dim, S.key))


def restricted_subalgebras(L):
    return [S for S in all_subspaces(L.p, L.dim) if L.is_subalgebra(S) and L.is_restricted(S)]


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)
