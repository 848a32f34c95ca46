"""Exact linear algebra over a prime field F_p.

Vectors and matrices are small ``numpy`` integer arrays with entries in
``[0, p)``.  Subspaces are stored in reduced row echelon form, which makes
them canonical: two :class:`Subspace` objects are equal (and hash equal)
exactly when they span the same set.

Matrices acting on vectors follow the column convention ``M @ v``.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .errors import CapExceeded, DimensionError

MAX_PRIME = 7


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % d for d in range(2, int(n**0.5) + 1))


class PrimeField:
    """The prime field F_p, with ``2 <= p <= max_prime``."""

    __slots__ = ("p",)

    def __init__(self, p: int, max_prime: int = MAX_PRIME):
        p = int(p)
        if not _is_prime(p):
            raise DimensionError(f"p={p} is not prime")
        if p > max_prime:
            raise CapExceeded(f"p={p} exceeds the supported bound {max_prime}")
        self.p = p

    def __repr__(self):
        return f"PrimeField({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("F", self.p))

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return pow(a, self.p - 2, self.p)


@lru_cache(maxsize=None)
def inverse_table(p: int) -> np.ndarray:
    tab = np.zeros(p, dtype=np.int64)
    for a in range(1, p):
        tab[a] = pow(a, p - 2, p)
    return tab


def as_matrix(rows, ncols: int | None = None) -> np.ndarray:
    arr = np.asarray(rows, dtype=np.int64)
    if arr.size == 0:
        if ncols is None:
            ncols = arr.shape[1] if arr.ndim == 2 else 0
        return np.zeros((0, ncols), dtype=np.int64)
    if arr.ndim == 1:
        arr = arr[None, :]
    if arr.ndim != 2:
        raise DimensionError(f"expected a 2-d array, got shape {arr.shape}")
    if ncols is not None and arr.shape[1] != ncols:
        raise DimensionError(f"rows have length {arr.shape[1]}, expected {ncols}")
    return arr


def rref_batch(mats: np.ndarray, p: int) -> tuple[np.ndarray, np.ndarray]:
    """Row-reduce a stack of matrices ``(B, r, n)`` over F_p simultaneously.

    Returns ``(R, ranks)`` where each ``R[b]`` is the reduced row echelon form
    of ``mats[b]`` (zero rows at the bottom) and ``ranks[b]`` its rank.
    """
    A = np.array(mats, dtype=np.int16) % p
    if A.ndim != 3:
        raise DimensionError(f"expected a (B, r, n) stack, got shape {A.shape}")
    B, r, n = A.shape
    rank = np.zeros(B, dtype=np.int64)
    if B == 0 or r == 0:
        return A.astype(np.int64), rank
    inv = inverse_table(p).astype(np.int16)
    rows = np.arange(r)
    for col in range(n):
        cand = (A[:, :, col] != 0) & (rows[None, :] >= rank[:, None])
        has = cand.any(axis=1)
        if not has.any():
            continue
        bidx = np.nonzero(has)[0]
        piv = cand[bidx].argmax(axis=1)
        rk = rank[bidx]
        pivot_rows = A[bidx, piv]
        A[bidx, piv] = A[bidx, rk]
        pivot_rows = pivot_rows * inv[pivot_rows[:, col]][:, None] % p
        A[bidx, rk] = pivot_rows
        if len(bidx) == B:
            factors = A[:, :, col].copy()
            factors[bidx, rk] = 0
            A -= factors[:, :, None] * pivot_rows[:, None, :]
            A %= p
        else:
            sub = A[bidx]
            factors = sub[:, :, col].copy()
            factors[np.arange(len(bidx)), rk] = 0
            sub -= factors[:, :, None] * pivot_rows[:, None, :]
            sub %= p
            A[bidx] = sub
        rank[bidx] += 1
    return A.astype(np.int64), rank


def _rref(mat: np.ndarray, p: int) -> np.ndarray:
    """Nonzero rows of the reduced row echelon form of one matrix."""
    A = np.array(mat, dtype=np.int16) % p
    m, n = A.shape
    if m == 0:
        return A.astype(np.int64)
    inv = inverse_table(p).astype(np.int16)
    r = 0
    for col in range(n):
        if r == m:
            break
        nz = np.flatnonzero(A[r:, col])
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        A[r, col:] = A[r, col:] * inv[A[r, col]] % p
        # only rows with a nonzero in this column change, and only from this column on
        others = np.flatnonzero(A[:, col])
        others = others[others != r]
        if others.size:
            A[others, col:] = (A[others, col:] - np.outer(A[others, col], A[r, col:])) % p
        r += 1
    return A[:r].astype(np.int64)


class Subspace:
    """A subspace of F_p^n held as a canonical reduced row echelon basis.

    ``basis`` has shape ``(dim, ambient_dim)``, strictly increasing pivot
    columns and no zero rows.  Instances are immutable.
    """

    __slots__ = ("p", "ambient_dim", "basis", "_key", "_pivots")

    def __init__(self, p: int, ambient_dim: int, basis: np.ndarray, *, _canonical: bool = False):
        self.p = int(p)
        self.ambient_dim = int(ambient_dim)
        basis = as_matrix(basis, self.ambient_dim) % self.p
        if not _canonical:
            basis = _rref(basis, self.p)
        basis = np.ascontiguousarray(basis, dtype=np.int64)
        basis.setflags(write=False)
        self.basis = basis
        self._key = (self.p, self.ambient_dim, basis.astype(np.uint8).tobytes())
        self._pivots = [int(np.flatnonzero(row)[0]) for row in basis]

    @classmethod
    def zero(cls, p: int, n: int) -> "Subspace":
        return cls(p, n, np.zeros((0, n), dtype=np.int64), _canonical=True)

    @classmethod
    def full(cls, p: int, n: int) -> "Subspace":
        return cls(p, n, np.eye(n, dtype=np.int64), _canonical=True)

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    @property
    def pivots(self) -> list[int]:
        return list(self._pivots)

    @property
    def key(self) -> bytes:
        return self._key[2]

    def __eq__(self, other):
        return isinstance(other, Subspace) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        rows = ", ".join("(" + ",".join(map(str, r)) + ")" for r in self.basis.tolist())
        return f"Subspace(p={self.p}, n={self.ambient_dim}, [{rows}])"

    def __len__(self):
        return self.p**self.dim

    def _check(self, other: "Subspace"):
        if self.p != other.p or self.ambient_dim != other.ambient_dim:
            raise DimensionError(
                f"ambient mismatch: F_{self.p}^{self.ambient_dim} vs F_{other.p}^{other.ambient_dim}"
            )

    def reduce(self, v) -> np.ndarray:
        """Return the canonical representative of ``v`` modulo this subspace."""
        v = np.asarray(v, dtype=np.int64) % self.p
        out = v.copy()
        for row, piv in zip(self.basis, self._pivots):
            c = out[piv]
            if c:
                out = (out - c * row) % self.p
        return out

    def contains(self, v) -> bool:
        return not self.reduce(v).any()

    def __contains__(self, v) -> bool:
        return self.contains(v)

    def coordinates(self, v) -> np.ndarray:
        """Coordinates of ``v`` (which must lie in the subspace) in ``basis``."""
        v = np.asarray(v, dtype=np.int64) % self.p
        coords = v[self._pivots] if self.dim else np.zeros(0, dtype=np.int64)
        if ((coords @ self.basis - v) % self.p).any():
            raise ValueError("vector is not in the subspace")
        return coords

    def issubset(self, other: "Subspace") -> bool:
        self._check(other)
        return all(other.contains(row) for row in self.basis)

    def __le__(self, other):
        return self.issubset(other)

    def sum(self, other: "Subspace") -> "Subspace":
        return subspace_sum(self, other)

    def __add__(self, other):
        return subspace_sum(self, other)

    def intersect(self, other: "Subspace") -> "Subspace":
        return intersect(self, other)

    def __and__(self, other):
        return intersect(self, other)

    def complement_indices(self) -> list[int]:
        """Non-pivot coordinates; their unit vectors span a complement."""
        piv = set(self._pivots)
        return [i for i in range(self.ambient_dim) if i not in piv]

    def elements(self) -> np.ndarray:
        """All ``p**dim`` elements, ordered lexicographically by basis coordinates."""
        return all_vectors(self.p, self.dim) @ self.basis % self.p

    def image(self, M) -> "Subspace":
        """Image of the subspace under the linear map ``v -> M @ v``."""
        M = np.asarray(M, dtype=np.int64)
        return Subspace(self.p, M.shape[0], (M @ self.basis.T).T % self.p)


def rref(rows: Iterable[Sequence[int]], ambient_dim: int, p: int) -> Subspace:
    """Canonical subspace spanned by ``rows``."""
    rows = list(rows) if not isinstance(rows, np.ndarray) else rows
    for r in rows:
        if len(r) != ambient_dim:
            raise DimensionError(f"row {list(r)} has length {len(r)}, expected {ambient_dim}")
    return Subspace(p, ambient_dim, as_matrix(rows, ambient_dim))


def span(p: int, ambient_dim: int, *vectors) -> Subspace:
    return rref(vectors, ambient_dim, p)


def subspace_sum(A: Subspace, B: Subspace) -> Subspace:
    A._check(B)
    if B.dim == 0:
        return A
    if A.dim == 0:
        return B
    return Subspace(A.p, A.ambient_dim, np.vstack([A.basis, B.basis]))


def intersect(A: Subspace, B: Subspace) -> Subspace:
    """Zassenhaus intersection: reduce ``[[A, A], [B, 0]]``."""
    A._check(B)
    n, p = A.ambient_dim, A.p
    if A.dim == 0 or B.dim == 0:
        return Subspace.zero(p, n)
    top = np.hstack([A.basis, A.basis])
    bottom = np.hstack([B.basis, np.zeros_like(B.basis)])
    R = _rref(np.vstack([top, bottom]), p)
    rows = [r[n:] for r in R if not r[:n].any()]
    return Subspace(p, n, as_matrix(rows, n))


def kernel(M, p: int) -> Subspace:
    """Null space ``{v : M @ v = 0}`` of an ``(m, n)`` matrix."""
    M = np.asarray(M, dtype=np.int64)
    if M.ndim != 2:
        raise DimensionError(f"expected a matrix, got shape {M.shape}")
    m, n = M.shape
    R = _rref(M % p, p) if m else np.zeros((0, n), dtype=np.int64)
    pivots = [int(np.flatnonzero(r)[0]) for r in R]
    free = [j for j in range(n) if j not in pivots]
    vecs = []
    for f in free:
        v = np.zeros(n, dtype=np.int64)
        v[f] = 1
        for row, piv in zip(R, pivots):
            v[piv] = (-row[f]) % p
        vecs.append(v)
    return Subspace(p, n, as_matrix(vecs, n))


def rank(M, p: int) -> int:
    M = np.asarray(M, dtype=np.int64)
    if M.size == 0:
        return 0
    return _rref(M % p, p).shape[0]


def matpow(M: np.ndarray, k: int, p: int) -> np.ndarray:
    n = M.shape[0]
    out = np.eye(n, dtype=np.int64)
    base = np.asarray(M, dtype=np.int64) % p
    while k:
        if k & 1:
            out = out @ base % p
        base = base @ base % p
        k >>= 1
    return out


def solve(M, b, p: int) -> np.ndarray | None:
    """One solution ``x`` of ``M @ x = b`` over F_p, or ``None``."""
    M = np.asarray(M, dtype=np.int64) % p
    b = np.asarray(b, dtype=np.int64) % p
    m, n = M.shape
    aug = np.hstack([M, b[:, None]])
    R = _rref(aug, p)
    x = np.zeros(n, dtype=np.int64)
    for row in R:
        piv = int(np.flatnonzero(row)[0])
        if piv == n:
            return None
        x[piv] = row[n]
    return x


def all_vectors(p: int, n: int) -> np.ndarray:
    """Every vector of F_p^n, in lexicographic order, as a ``(p**n, n)`` array."""
    if n == 0:
        return np.zeros((1, 0), dtype=np.int64)
    idx = np.arange(p**n, dtype=np.int64)
    weights = p ** np.arange(n - 1, -1, -1, dtype=np.int64)
    return (idx[:, None] // weights[None, :]) % p
