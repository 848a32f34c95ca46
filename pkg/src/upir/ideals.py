"""Brute-force right/left ideal lattices of a small ``u(L)``.

Every one-sided ideal is the sum of the cyclic ideals ``x A`` of its
elements.  When ``p**dim A`` is within the element budget, every element is
visited, so the lattice obtained by closing the cyclic ideals under sums is
complete, and an ideal is principal exactly when it equals one of them.

All cyclic ideals are computed in one vectorised pass (:func:`gfp.rref_batch`)
and keyed by the bytes of their canonical echelon form.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from . import gfp
from .errors import CapExceeded, InternalCheckFailed
from .gfp import Subspace
from .uenv import EnvAlgebra, _vec

Side = Literal["right", "left"]

DEFAULT_MAX_ELEMENTS = 2**16
DEFAULT_MAX_LATTICE = 2**20
_CHUNK = 4096


@dataclass(frozen=True)
class RightIdeal:
    """A one-sided ideal; ``principal_witness`` generates it when known."""

    carrier: Subspace
    principal_witness: np.ndarray | None = None
    side: Side = "right"

    @property
    def dim(self) -> int:
        return self.carrier.dim


@dataclass
class IdealLattice:
    ideals: dict[Subspace, RightIdeal]
    complete: bool
    side: Side = "right"

    def __len__(self):
        return len(self.ideals)

    def __contains__(self, S):
        return S in self.ideals

    def __iter__(self):
        return iter(self.ideals.values())

    def ordered(self) -> list[RightIdeal]:
        return sorted(self.ideals.values(), key=lambda I: (I.dim, I.carrier.key))


@dataclass
class PirVerdict:
    is_pir: bool
    method: str
    certificate: dict = field(default_factory=dict)
    stats: dict = field(default_factory=dict)


def _generator_tensor(A: EnvAlgebra, side: Side) -> np.ndarray:
    """``M`` with ``x -> einsum('i,ijk->jk', x, M)`` giving rows spanning the cyclic ideal of ``x``."""
    T = A.table()
    if side == "right":
        return np.asarray(T)  # x b_j
    return np.asarray(T).transpose(1, 0, 2)  # b_j x


def _key(R: np.ndarray) -> bytes:
    return R.astype(np.uint8).tobytes()


def _cyclic_batch(A: EnvAlgebra, X: np.ndarray, side: Side) -> tuple[np.ndarray, np.ndarray]:
    M = _generator_tensor(A, side)
    Y = np.einsum("ei,ijk->ejk", X, M) % A.p
    return gfp.rref_batch(Y, A.p)


def cyclic_ideal(A: EnvAlgebra, x, side: Side = "right") -> RightIdeal:
    x = _vec(x) % A.p
    R, ranks = _cyclic_batch(A, x[None], side)
    carrier = Subspace(A.p, A.dim, R[0, : ranks[0]], _canonical=True)
    return RightIdeal(carrier, x, side)


def cyclic_right_ideal(A: EnvAlgebra, x) -> RightIdeal:
    """``x A``, with ``x`` as its witness."""
    return cyclic_ideal(A, x, "right")


def cyclic_left_ideal(A: EnvAlgebra, x) -> RightIdeal:
    return cyclic_ideal(A, x, "left")


def is_one_sided_ideal(A: EnvAlgebra, S: Subspace, side: Side = "right") -> bool:
    """Closure of ``S`` under multiplication by every generator on the given side."""
    if S.dim == 0:
        return True
    T = A.table()
    g = A.generator_indices
    prods = np.einsum("dk,kgl->dgl", S.basis, T[:, g, :]) if side == "right" else np.einsum("dk,gkl->dgl", S.basis, T[g, :, :])
    stacked = np.vstack([S.basis, prods.reshape(-1, A.dim) % A.p])
    return gfp.rank(stacked, A.p) == S.dim


def is_right_ideal(A: EnvAlgebra, S: Subspace) -> bool:
    return is_one_sided_ideal(A, S, "right")


def is_left_ideal(A: EnvAlgebra, S: Subspace) -> bool:
    return is_one_sided_ideal(A, S, "left")


def _normalized_elements(p: int, N: int):
    """Zero, then every vector whose leading nonzero entry is 1, in lexicographic order.

    ``c x`` and ``x`` generate the same one-sided ideal for a unit ``c``, and
    the normalized vector is the lexicographically smallest of its class.
    """
    yield np.zeros((1, N), dtype=np.int64)
    for lead in range(N - 1, -1, -1):
        tail = N - 1 - lead
        count = p**tail
        weights = p ** np.arange(tail - 1, -1, -1, dtype=np.int64)
        for start in range(0, count, _CHUNK):
            idx = np.arange(start, min(count, start + _CHUNK), dtype=np.int64)
            X = np.zeros((len(idx), N), dtype=np.int64)
            X[:, lead] = 1
            if tail:
                X[:, lead + 1 :] = (idx[:, None] // weights[None, :]) % p
            yield X


def cyclic_ideal_table(A: EnvAlgebra, side: Side = "right", max_elements: int = DEFAULT_MAX_ELEMENTS):
    """Map every distinct cyclic ideal key to ``(rref rows padded to dim A, rank, first generator)``.

    Generators are visited in lexicographic order, so the stored one is the
    lexicographically first element generating that ideal.
    """
    p, N = A.p, A.dim
    total = p**N
    if total > max_elements:
        raise CapExceeded(f"budget exceeded: {total} elements > {max_elements}")
    table: dict[bytes, tuple[np.ndarray, int, np.ndarray]] = {}
    for X in _normalized_elements(p, N):
        R, ranks = _cyclic_batch(A, X, side)
        flat = np.ascontiguousarray(R.astype(np.uint8).reshape(len(X), -1))
        keys = flat.view(np.dtype((np.void, flat.shape[1]))).ravel()
        _, first = np.unique(keys, return_index=True)
        for i in np.sort(first):
            k = flat[i].tobytes()
            if k not in table:
                table[k] = (R[i], int(ranks[i]), X[i])
    return table


def _join_irreducible(seeds: list[np.ndarray], ranks: list[int], p: int) -> list[np.ndarray]:
    """Keep the seeds that are not the sum of the seeds strictly inside them.

    Every join-irreducible ideal is cyclic, so when ``seeds`` are all cyclic
    ideals the kept ones still generate the whole lattice under sums.
    """
    M = len(seeds)
    if M <= 1:
        return seeds
    C = np.stack(seeds)
    N = C.shape[1]
    rk = np.asarray(ranks)
    inside = np.zeros((M, M), dtype=bool)
    for i in range(M):
        rows = C[i, : rk[i]]
        piv = [int(np.flatnonzero(r)[0]) for r in rows]
        # D is inside C_i iff D minus its pivot-column combination of C_i vanishes
        resid = (C - np.einsum("mdr,rk->mdk", C[:, :, piv], rows)) % p
        inside[i] = ~resid.reshape(M, -1).any(axis=1) & (rk < rk[i])
    kept = []
    for i in range(M):
        below = C[inside[i]]
        if not len(below) or gfp.rank(below.reshape(-1, N), p) < rk[i]:
            kept.append(seeds[i])
    return kept


def _close_under_sums(A: EnvAlgebra, seeds: list[np.ndarray], max_lattice: int) -> dict[bytes, tuple[np.ndarray, int]]:
    p, N = A.p, A.dim
    zero = np.zeros((N, N), dtype=np.int64)
    lattice = {_key(zero): (zero, 0)}
    if not seeds:
        return lattice
    C = np.stack(seeds)
    queue = [(zero, 0)]
    while queue:
        I, r0 = queue.pop()
        batch = np.concatenate([np.broadcast_to(I, C.shape), C], axis=1)
        R, ranks = gfp.rref_batch(batch, p)
        for b in np.flatnonzero(ranks > r0):
            J = R[b, :N]
            k = _key(J)
            if k not in lattice:
                if len(lattice) >= max_lattice:
                    raise CapExceeded(f"lattice size exceeds {max_lattice}")
                lattice[k] = (J, int(ranks[b]))
                queue.append((J, int(ranks[b])))
    return lattice


def enumerate_ideals(
    A: EnvAlgebra,
    side: Side = "right",
    max_elements: int = DEFAULT_MAX_ELEMENTS,
    max_lattice: int = DEFAULT_MAX_LATTICE,
    exhaustive: bool = True,
) -> IdealLattice:
    """The lattice of one-sided ideals of ``A``.

    With ``exhaustive=True`` (the default) all ``p**dim A`` cyclic ideals seed
    the sum closure and the result is complete; exceeding ``max_elements`` is
    an error.  With ``exhaustive=False`` only cyclic ideals of basis vectors
    of already-found ideals are used and ``complete`` is ``False``.
    """
    p, N = A.p, A.dim
    if exhaustive:
        cyc = cyclic_ideal_table(A, side, max_elements)
        nonzero = [(R, rank) for R, rank, _ in cyc.values() if rank]
        seeds = _join_irreducible([R for R, _ in nonzero], [r for _, r in nonzero], p)
        raw = _close_under_sums(A, seeds, max_lattice)
        witnesses = {k: x for k, (_, _, x) in cyc.items()}
    else:
        seen: dict[bytes, np.ndarray] = {}
        frontier = list(np.eye(N, dtype=np.int64))
        raw = {}
        while frontier:
            X = np.array(frontier)
            R, _ = _cyclic_batch(A, X, side)
            frontier = []
            for i, r in enumerate(R):
                k = _key(r)
                if k not in seen:
                    seen[k] = r
            raw = _close_under_sums(A, [r for r in seen.values() if r.any()], max_lattice)
            for J, rank in raw.values():
                for row in J[:rank]:
                    k = _key(_cyclic_batch(A, row[None], side)[0][0])
                    if k not in seen:
                        frontier.append(row)
        witnesses = {}
    ideals = {}
    for k, (J, rank) in raw.items():
        S = Subspace(p, N, J[:rank], _canonical=True)
        ideals[S] = RightIdeal(S, witnesses.get(k), side)
    lattice = IdealLattice(ideals, complete=exhaustive, side=side)
    bad = [I for I in lattice if not is_one_sided_ideal(A, I.carrier, side)]
    if bad:
        raise InternalCheckFailed(f"sum closure produced a non-ideal: {bad[0].carrier}")
    return lattice


def enumerate_right_ideals(A: EnvAlgebra, **kwargs) -> IdealLattice:
    return enumerate_ideals(A, "right", **kwargs)


def enumerate_left_ideals(A: EnvAlgebra, **kwargs) -> IdealLattice:
    return enumerate_ideals(A, "left", **kwargs)


def is_principal(A: EnvAlgebra, I: RightIdeal | Subspace, side: Side | None = None, max_elements: int = DEFAULT_MAX_ELEMENTS):
    """First element ``x`` of ``I`` (lexicographic in basis coordinates) with ``x A = I``, or ``None``."""
    if isinstance(I, RightIdeal):
        side = side or I.side
        S = I.carrier
    else:
        S = I
    side = side or "right"
    if S.dim == 0:
        return np.zeros(A.dim, dtype=np.int64)
    if len(S) > max_elements:
        raise CapExceeded(f"budget exceeded: {len(S)} elements > {max_elements}")
    target = _key(np.vstack([S.basis, np.zeros((A.dim - S.dim, A.dim), dtype=np.int64)]))
    elems = S.elements()
    for start in range(0, len(elems), _CHUNK):
        X = elems[start : start + _CHUNK]
        R, ranks = _cyclic_batch(A, X, side)
        for i in np.flatnonzero(ranks == S.dim):
            if _key(R[i]) == target:
                return X[i]
    return None


def decide(
    A: EnvAlgebra,
    side: Side = "right",
    max_elements: int = DEFAULT_MAX_ELEMENTS,
    max_lattice: int = DEFAULT_MAX_LATTICE,
) -> PirVerdict:
    """Every one-sided ideal principal?  Exhaustive lattice scan."""
    t0 = time.perf_counter()
    lattice = enumerate_ideals(A, side, max_elements, max_lattice, exhaustive=True)
    principal = 0
    witness = None
    for I in lattice.ordered():
        if I.principal_witness is not None:
            principal += 1
        elif witness is None:
            witness = I
    cert = {}
    if witness is not None:
        cert["non_principal_ideal"] = witness.carrier
    stats = {
        "side": side,
        "ideal_count": len(lattice),
        "principal_count": principal,
        "complete": lattice.complete,
        "elapsed": time.perf_counter() - t0,
    }
    return PirVerdict(is_pir=witness is None, method="brute", certificate=cert, stats=stats)


def decide_pri(A: EnvAlgebra, **kwargs) -> PirVerdict:
    return decide(A, "right", **kwargs)


def decide_pli(A: EnvAlgebra, **kwargs) -> PirVerdict:
    return decide(A, "left", **kwargs)
