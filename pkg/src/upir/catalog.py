"""Named families of small restricted Lie algebras."""

from __future__ import annotations

import numpy as np

from .errors import DimensionError
from .rla import RestrictedLieAlgebra, direct_sum

KINDS = ("torus", "nilcyclic", "strongly_abelian", "nonabelian2", "heisenberg", "mixed")


def _abelian(p: int, pmap: np.ndarray, prefix: str) -> RestrictedLieAlgebra:
    d = pmap.shape[0]
    return RestrictedLieAlgebra(p, {}, pmap, [f"{prefix}{i + 1}" for i in range(d)], dim=d)


def torus(p: int, d: int) -> RestrictedLieAlgebra:
    """Abelian, ``e_i^{[p]} = e_i``."""
    return _abelian(p, np.eye(d, dtype=np.int64), "t")


def nilcyclic(p: int, d: int) -> RestrictedLieAlgebra:
    """Abelian, ``e_i^{[p]} = e_{i+1}`` and ``e_d^{[p]} = 0``: one Jordan block at 0."""
    return _abelian(p, np.eye(d, k=1, dtype=np.int64), "n")


def strongly_abelian(p: int, d: int) -> RestrictedLieAlgebra:
    return _abelian(p, np.zeros((d, d), dtype=np.int64), "s")


def nonabelian2(p: int) -> RestrictedLieAlgebra:
    """``[x, y] = y``, ``x^{[p]} = x``, ``y^{[p]} = 0``."""
    return RestrictedLieAlgebra(p, {(0, 1): [0, 1]}, [[1, 0], [0, 0]], ["x", "y"])


def heisenberg(p: int) -> RestrictedLieAlgebra:
    """``[x, y] = z`` central, zero p-map."""
    return RestrictedLieAlgebra(p, {(0, 1): [0, 0, 1]}, np.zeros((3, 3), dtype=np.int64), ["x", "y", "z"])


def mixed(p: int, a: int, b: int) -> RestrictedLieAlgebra:
    return direct_sum(torus(p, a), nilcyclic(p, b))


def make(kind: str, p: int, d: int | None = None, a: int | None = None, b: int | None = None) -> RestrictedLieAlgebra:
    """Build a catalog algebra.

    ``torus``, ``nilcyclic`` and ``strongly_abelian`` take a dimension ``d``;
    ``mixed`` takes ``a`` (torus part) and ``b`` (nilcyclic part).
    """
    if kind in ("torus", "nilcyclic", "strongly_abelian"):
        if d is None or d < 0:
            raise DimensionError(f"{kind} needs a dimension d >= 0")
        L = {"torus": torus, "nilcyclic": nilcyclic, "strongly_abelian": strongly_abelian}[kind](p, d)
    elif kind == "nonabelian2":
        L = nonabelian2(p)
    elif kind == "heisenberg":
        L = heisenberg(p)
    elif kind == "mixed":
        if a is None or b is None or a < 0 or b < 0:
            raise DimensionError("mixed needs a >= 0 and b >= 0")
        L = mixed(p, a, b)
    else:
        raise DimensionError(f"unknown catalog kind {kind!r}; expected one of {', '.join(KINDS)}")
    return L.validated()


def small_catalog(primes=(2, 3), max_dim: int = 3, max_env_dim: int | None = None):
    """Every catalog algebra with ``dim <= max_dim`` (and ``p**dim <= max_env_dim``), labelled."""
    out = []
    for p in primes:
        out.append((f"zero p={p}", make("torus", p, d=0)))
        for d in range(1, max_dim + 1):
            for kind in ("torus", "nilcyclic", "strongly_abelian"):
                out.append((f"{kind}({d}) p={p}", make(kind, p, d=d)))
            for a in range(1, d):
                out.append((f"mixed({a},{d - a}) p={p}", make("mixed", p, a=a, b=d - a)))
        out.append((f"nonabelian2 p={p}", make("nonabelian2", p)))
        if max_dim >= 3:
            out.append((f"heisenberg p={p}", make("heisenberg", p)))
    if max_env_dim is not None:
        out = [(name, L) for name, L in out if L.p**L.dim <= max_env_dim]
    return out
