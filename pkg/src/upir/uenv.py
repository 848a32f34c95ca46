"""Restricted enveloping algebras ``u(L)`` with a PBW monomial basis.

Monomials ``x_1^{a_1} ... x_n^{a_n}`` (``0 <= a_i < p``) are indexed in
lexicographic order of their exponent tuples, so monomial ``a`` has index
``sum(a_i * p**(n-1-i))``.  Index 0 is the identity and the generator ``e_i``
sits at index ``p**(n-1-i)``.

Multiplication rewrites words with ``x_j x_i = x_i x_j + [x_j, x_i]`` and
``x_i^p = x_i^{[p]}``.  Every rewrite either lowers the degree or removes an
inversion, so it terminates.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Sequence

import numpy as np

from . import gfp
from .errors import CapExceeded, DimensionError, InternalCheckFailed, NotAnIdeal
from .gfp import Subspace
from .rla import RestrictedLieAlgebra

DEFAULT_MAX_ENV_DIM = 3**9
DENSE_TABLE_MAX = 256
# explicit matrices on u(L) (integrals, annihilators, omega powers) above this size are refused
MATRIX_MAX = 512


def _add_scaled(acc: dict, terms: dict, c: int, p: int):
    for k, v in terms.items():
        s = (acc.get(k, 0) + c * v) % p
        if s:
            acc[k] = s
        else:
            acc.pop(k, None)


class EnvAlgebra:
    """The restricted enveloping algebra of a validated restricted Lie algebra."""

    def __init__(self, lie: RestrictedLieAlgebra, max_env_dim: int = DEFAULT_MAX_ENV_DIM):
        self.lie = lie
        self.p = p = lie.p
        self.n = n = lie.dim
        size = p**n
        if size > max_env_dim:
            raise CapExceeded(f"cap exceeded: dim u(L) = {p}^{n} = {size} > {max_env_dim}")
        self.dim = size
        self.exponents = [tuple(int(a) for a in row) for row in gfp.all_vectors(p, n)]
        self.weights = [p ** (n - 1 - i) for i in range(n)]
        self.generator_indices = list(self.weights)
        self._C = lie.bracket_table
        self._P = lie.pmap_table
        self._gen_cache: dict[tuple[int, int], dict[int, int]] = {}
        self._prod_cache: dict[tuple[int, int], dict[int, int]] = {}
        self._table: np.ndarray | None = None
        self._gen_left: dict[int, np.ndarray] = {}
        self._gen_right: dict[int, np.ndarray] = {}

    def __repr__(self):
        return f"EnvAlgebra(p={self.p}, dim L={self.n}, dim u(L)={self.dim})"

    # -- straightening --------------------------------------------------

    def _times_generator(self, m: int, j: int) -> dict[int, int]:
        key = (m, j)
        hit = self._gen_cache.get(key)
        if hit is not None:
            return hit
        p, a = self.p, self.exponents[m]
        support = [k for k in range(self.n) if a[k]]
        last = support[-1] if support else -1
        if last < j:
            out = {m + self.weights[j]: 1}
        elif last == j:
            if a[j] + 1 < p:
                out = {m + self.weights[j]: 1}
            else:
                # x_j^p = x_j^{[p]}
                base = m - (p - 1) * self.weights[j]
                out = {}
                for i in np.flatnonzero(self._P[j]):
                    _add_scaled(out, self._times_generator(base, int(i)), int(self._P[j, i]), p)
        else:
            # m = m' x_last with last > j:  m' x_last x_j = (m' x_j) x_last + m' [x_last, x_j]
            base = m - self.weights[last]
            out = {}
            for mono, c in self._times_generator(base, j).items():
                _add_scaled(out, self._times_generator(mono, last), c, p)
            br = self._C[last, j]
            for i in np.flatnonzero(br):
                _add_scaled(out, self._times_generator(base, int(i)), int(br[i]), p)
        self._gen_cache[key] = out
        return out

    def _times_word(self, terms: dict[int, int], word: Iterable[int]) -> dict[int, int]:
        for j in word:
            nxt: dict[int, int] = {}
            for mono, c in terms.items():
                _add_scaled(nxt, self._times_generator(mono, j), c, self.p)
            terms = nxt
        return terms

    def word_of(self, m: int) -> list[int]:
        return [i for i, a in enumerate(self.exponents[m]) for _ in range(a)]

    def straighten(self, word: Sequence[int]) -> "EnvElement":
        """Normal form of the product of generators ``e_{word[0]} e_{word[1]} ...``."""
        for j in word:
            if not 0 <= j < self.n:
                raise DimensionError(f"generator index {j} out of range")
        return EnvElement(self, self._times_word({0: 1}, word))

    def basis_product(self, m: int, k: int) -> dict[int, int]:
        key = (m, k)
        hit = self._prod_cache.get(key)
        if hit is None:
            hit = self._times_word({m: 1}, self.word_of(k))
            self._prod_cache[key] = hit
        return hit

    def table(self) -> np.ndarray:
        """Dense structure constants ``T[i, j]`` = coordinates of ``b_i b_j``."""
        if self._table is None:
            N = self.dim
            if N > DENSE_TABLE_MAX:
                raise CapExceeded(f"dense multiplication table needs dim u(L) <= {DENSE_TABLE_MAX}, got {N}")
            T = np.zeros((N, N, N), dtype=np.int64)
            for i in range(N):
                for j in range(N):
                    for k, c in self.basis_product(i, j).items():
                        T[i, j, k] = c
            T.setflags(write=False)
            self._table = T
        return self._table

    # -- elements -------------------------------------------------------

    def one(self) -> "EnvElement":
        return EnvElement(self, {0: 1})

    def zero(self) -> "EnvElement":
        return EnvElement(self, {})

    def generator(self, i: int) -> "EnvElement":
        return EnvElement(self, {self.weights[i]: 1})

    def monomial(self, exponents: Sequence[int]) -> "EnvElement":
        if len(exponents) != self.n or any(not 0 <= a < self.p for a in exponents):
            raise DimensionError(f"bad exponent tuple {tuple(exponents)}")
        return EnvElement(self, {sum(a * w for a, w in zip(exponents, self.weights)): 1})

    def element(self, vector) -> "EnvElement":
        v = np.asarray(vector, dtype=np.int64) % self.p
        if v.shape != (self.dim,):
            raise DimensionError(f"vector has length {v.size}, expected {self.dim}")
        return EnvElement(self, {int(i): int(v[i]) for i in np.flatnonzero(v)})

    def lie_embed(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=np.int64) % self.p
        v = np.zeros(self.dim, dtype=np.int64)
        v[self.generator_indices] = x
        return v

    def multiply_vectors(self, u, v) -> np.ndarray:
        u = np.asarray(u, dtype=np.int64) % self.p
        v = np.asarray(v, dtype=np.int64) % self.p
        if self.dim <= DENSE_TABLE_MAX:
            return np.einsum("i,j,ijk->k", u, v, self.table()) % self.p
        return self.multiply(self.element(u), self.element(v)).to_vector()

    def multiply(self, u: "EnvElement", v: "EnvElement") -> "EnvElement":
        if u.parent is not self or v.parent is not self:
            raise DimensionError("elements belong to a different algebra")
        out: dict[int, int] = {}
        for m, c in u.coeffs.items():
            for k, d in v.coeffs.items():
                _add_scaled(out, self.basis_product(m, k), c * d, self.p)
        return EnvElement(self, out)

    def power(self, u, k: int) -> np.ndarray:
        out = np.zeros(self.dim, dtype=np.int64)
        out[0] = 1
        for _ in range(k):
            out = self.multiply_vectors(out, u)
        return out

    def left_matrix(self, u) -> np.ndarray:
        """Matrix of ``v -> u v``."""
        u = np.asarray(u, dtype=np.int64) % self.p
        if self.dim <= DENSE_TABLE_MAX:
            return np.einsum("i,ikl->lk", u, self.table()) % self.p
        self._check_matrix_cap()
        x = self.element(u)
        return np.array([self.multiply(x, self.monomial(self.exponents[k])).to_vector() for k in range(self.dim)]).T

    def right_matrix(self, u) -> np.ndarray:
        """Matrix of ``v -> v u``."""
        u = np.asarray(u, dtype=np.int64) % self.p
        if self.dim <= DENSE_TABLE_MAX:
            return np.einsum("i,kil->lk", u, self.table()) % self.p
        self._check_matrix_cap()
        x = self.element(u)
        return np.array([self.multiply(self.monomial(self.exponents[k]), x).to_vector() for k in range(self.dim)]).T

    def _check_matrix_cap(self):
        if self.dim > MATRIX_MAX:
            raise CapExceeded(f"cap exceeded: linear maps on u(L) need dim u(L) <= {MATRIX_MAX}, got {self.dim}")

    def _sparse_matrix(self, columns) -> np.ndarray:
        self._check_matrix_cap()
        M = np.zeros((self.dim, self.dim), dtype=np.int64)
        for m, terms in enumerate(columns):
            for k, c in terms.items():
                M[k, m] = c
        return M

    def generator_right_matrix(self, j: int) -> np.ndarray:
        """Matrix of ``v -> v e_j``, built without the dense table."""
        if j not in self._gen_right:
            self._gen_right[j] = self._sparse_matrix(self._times_generator(m, j) for m in range(self.dim))
        return self._gen_right[j]

    def generator_left_matrix(self, j: int) -> np.ndarray:
        """Matrix of ``v -> e_j v``, built without the dense table."""
        if j not in self._gen_left:
            g = self.weights[j]
            self._gen_left[j] = self._sparse_matrix(
                self._times_word({g: 1}, self.word_of(m)) for m in range(self.dim)
            )
        return self._gen_left[j]

    def is_commutative(self) -> bool:
        if self.dim > DENSE_TABLE_MAX:
            # generators generate, and they commute exactly when L is abelian
            return self.lie.is_abelian()
        T = self.table()
        return np.array_equal(T, T.transpose(1, 0, 2))

    # -- augmentation ---------------------------------------------------

    @staticmethod
    def epsilon(u) -> int:
        if isinstance(u, EnvElement):
            return u.coeffs.get(0, 0)
        return int(np.asarray(u)[0])

    def omega(self) -> Subspace:
        return Subspace(self.p, self.dim, np.eye(self.dim, dtype=np.int64)[1:], _canonical=True)

    def omega_power(self, n: int) -> Subspace:
        """``omega^n``, built as ``omega^{k+1} = omega^k L``."""
        if n < 1:
            raise ValueError("n must be >= 1")
        cur = self.omega()
        for _ in range(n - 1):
            if cur.dim == 0:
                break
            # omega^k is a right ideal and omega = u(L) L, so omega^{k+1} = omega^k L
            rows = [(self.generator_right_matrix(j) @ cur.basis.T).T for j in range(self.n)]
            cur = Subspace(self.p, self.dim, np.vstack(rows) % self.p)
        return cur

    def lie_subspace(self) -> Subspace:
        G = np.zeros((self.n, self.dim), dtype=np.int64)
        for i, g in enumerate(self.generator_indices):
            G[i, g] = 1
        return Subspace(self.p, self.dim, G)

    def intersect_with_lie(self, S: Subspace) -> Subspace:
        """``L ∩ S`` pulled back to coordinates of ``L``."""
        common = S & self.lie_subspace()
        rows = common.basis[:, self.generator_indices] if common.dim else np.zeros((0, self.n), dtype=np.int64)
        return Subspace(self.p, self.n, rows)

    # -- integrals and annihilators ---------------------------------------

    def _stack(self, mats: list[np.ndarray]) -> np.ndarray:
        return np.vstack(mats) if mats else np.zeros((0, self.dim), dtype=np.int64)

    def integrals(self) -> "IntegralSpace":
        """Left/right integrals, solved from ``x_i t = 0`` (resp. ``t x_i = 0``)."""
        left = gfp.kernel(self._stack([self.generator_left_matrix(j) for j in range(self.n)]), self.p)
        right = gfp.kernel(self._stack([self.generator_right_matrix(j) for j in range(self.n)]), self.p)
        if left.dim != 1 or right.dim != 1:
            raise InternalCheckFailed(f"integral spaces have dimensions {left.dim}, {right.dim}; expected 1, 1")
        return IntegralSpace(left, right)

    def right_annihilator(self, S: Iterable) -> Subspace:
        """``{v : s v = 0 for every s in S}``."""
        mats = [self.left_matrix(_vec(s)) for s in S]
        return gfp.kernel(self._stack(mats), self.p)

    def left_annihilator(self, S: Iterable) -> Subspace:
        mats = [self.right_matrix(_vec(s)) for s in S]
        return gfp.kernel(self._stack(mats), self.p)

    def right_ideal_of(self, u) -> Subspace:
        """``u u(L)``."""
        return Subspace(self.p, self.dim, self.left_matrix(_vec(u)).T)

    # -- subalgebras ----------------------------------------------------

    def embed_subalgebra(self, H: Subspace):
        """Return ``(u(H), E)`` where column ``k`` of ``E`` is the image of PBW monomial ``k`` of ``u(H)``.

        ``u(H)`` is built on the restricted Lie algebra induced on ``H.basis``.
        """
        sub = self.lie.induced(H)
        AH = EnvAlgebra(sub)
        gens = [self.lie_embed(h) for h in H.basis]
        cols = []
        for exps in AH.exponents:
            v = np.zeros(self.dim, dtype=np.int64)
            v[0] = 1
            for g, a in zip(gens, exps):
                for _ in range(a):
                    v = self.multiply_vectors(v, g)
            cols.append(v)
        return AH, np.array(cols, dtype=np.int64).T.reshape(self.dim, AH.dim)

    def free_module_check(self, H: Subspace) -> "FreeModuleResult":
        """Check ``u(L) = ⊕ u(H) w`` over PBW monomials ``w`` in a complement basis."""
        if not self.lie.is_restricted(H):
            raise NotAnIdeal("H is not a restricted subalgebra")
        _, E = self.embed_subalgebra(H)
        comp = H.complement_indices()
        ws = []
        for exps in product(range(self.p), repeat=len(comp)):
            full = [0] * self.n
            for idx, a in zip(comp, exps):
                full[idx] = a
            ws.append(sum(a * w for a, w in zip(full, self.weights)))
        rows = []
        for w in ws:
            R = self.right_matrix(np.eye(self.dim, dtype=np.int64)[w])
            rows.extend((R @ E).T % self.p)
        span_dim = gfp.rank(np.array(rows), self.p) if rows else 0
        return FreeModuleResult(ok=span_dim == self.dim and len(rows) == self.dim, rank=len(ws))

    def subalgebra_integral_ideal(self, H: Subspace) -> Subspace:
        """``∫^l_{u(H)} u(L)``: the embedded left integral of ``u(H)`` times ``u(L)``."""
        AH, E = self.embed_subalgebra(H)
        t = E @ AH.integrals().left.basis[0] % self.p
        return self.right_ideal_of(t)

    def subalgebra_augmentation(self, H: Subspace) -> list[np.ndarray]:
        """Spanning set of ``omega(H)``: embedded non-identity monomials of ``u(H)``."""
        _, E = self.embed_subalgebra(H)
        return [E[:, k] for k in range(1, E.shape[1])]

    def commutative_radical(self) -> Subspace:
        """Nilradical of a commutative ``u(L)``: the stable kernel of ``v -> v^p``."""
        if not self.is_commutative():
            raise NotAnIdeal("non-commutative input")
        N = self.dim
        F = np.array([self.power(np.eye(N, dtype=np.int64)[k], self.p) for k in range(N)], dtype=np.int64).T
        return gfp.kernel(gfp.matpow(F, N, self.p), self.p)


def _vec(u) -> np.ndarray:
    if isinstance(u, EnvElement):
        return u.to_vector()
    return np.asarray(u, dtype=np.int64)


@dataclass(frozen=True)
class IntegralSpace:
    left: Subspace
    right: Subspace


@dataclass(frozen=True)
class FreeModuleResult:
    ok: bool
    rank: int

    def __bool__(self):
        return self.ok


class EnvElement:
    """Sparse element of ``u(L)``: ``{monomial index: nonzero coefficient}``."""

    __slots__ = ("parent", "coeffs")

    def __init__(self, parent: EnvAlgebra, coeffs: dict[int, int]):
        p = parent.p
        self.parent = parent
        self.coeffs = {int(k): int(v) % p for k, v in coeffs.items() if int(v) % p}

    def to_vector(self) -> np.ndarray:
        v = np.zeros(self.parent.dim, dtype=np.int64)
        for k, c in self.coeffs.items():
            v[k] = c
        return v

    def _coerce(self, other):
        if isinstance(other, EnvElement):
            if other.parent is not self.parent:
                raise DimensionError("elements belong to a different algebra")
            return other
        if isinstance(other, (int, np.integer)):
            return EnvElement(self.parent, {0: int(other)})
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.coeffs)
        _add_scaled(out, other.coeffs, 1, self.parent.p)
        return EnvElement(self.parent, out)

    __radd__ = __add__

    def __neg__(self):
        return EnvElement(self.parent, {k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, np.integer)):
            return EnvElement(self.parent, {k: v * int(other) for k, v in self.coeffs.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.parent.multiply(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, np.integer)):
            return self * other
        return NotImplemented

    def __pow__(self, k: int):
        out = self.parent.one()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, np.integer)):
            other = EnvElement(self.parent, {0: int(other)})
        return isinstance(other, EnvElement) and other.parent is self.parent and other.coeffs == self.coeffs

    def __hash__(self):
        return hash(tuple(sorted(self.coeffs.items())))

    def epsilon(self) -> int:
        return self.coeffs.get(0, 0)

    def __repr__(self):
        if not self.coeffs:
            return "0"
        names = self.parent.lie.names
        parts = []
        for k in sorted(self.coeffs):
            exps = self.parent.exponents[k]
            mono = "*".join(
                names[i] if a == 1 else f"{names[i]}^{a}" for i, a in enumerate(exps) if a
            ) or "1"
            c = self.coeffs[k]
            parts.append(mono if c == 1 else f"{c}*{mono}")
        return " + ".join(parts)


def build(lie: RestrictedLieAlgebra, max_env_dim: int = DEFAULT_MAX_ENV_DIM) -> EnvAlgebra:
    return EnvAlgebra(lie, max_env_dim)
