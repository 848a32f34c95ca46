"""Finite-dimensional restricted Lie algebras over F_p.

An algebra is given by structure constants on a basis ``e_0, ..., e_{n-1}``:
``bracket[i, j]`` holds the coordinates of ``[e_i, e_j]`` and ``pmap[i]`` the
coordinates of ``e_i^{[p]}``.  Elements are plain coordinate vectors.

Over a prime field the p-map is F_p-semilinear with trivial twist, so on any
abelian subalgebra it is an honest linear map.  That is what makes the
Fitting decomposition and the cyclicity test plain linear algebra.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import gfp
from .errors import AxiomError, CapExceeded, DimensionError, NotAnIdeal
from .gfp import PrimeField, Subspace

DEFAULT_MAX_ELEMENTS = 2**16


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    violations: list[str] = field(default_factory=list)
    malformed: list[str] = field(default_factory=list)

    def __bool__(self):
        return self.ok


@dataclass(frozen=True)
class SubalgebraReport:
    carrier: Subspace
    is_ideal: bool
    is_restricted: bool


@dataclass(frozen=True)
class FittingDecomposition:
    torus: Subspace
    nil: Subspace

    def __iter__(self):
        return iter((self.torus, self.nil))


def check_tables(p: int, dim: int, bracket, pmap) -> list[str]:
    """Describe shape problems in raw tables; an empty list means well formed."""
    problems = []
    b = np.asarray(bracket)
    if b.shape != (dim, dim, dim):
        problems.append(f"bracket table has shape {b.shape}, expected {(dim, dim, dim)}")
    P = np.asarray(pmap)
    if P.shape != (dim, dim) and not (dim == 0 and P.size == 0):
        problems.append(f"p-map table has shape {P.shape}, expected {(dim, dim)}")
    return problems


class RestrictedLieAlgebra:
    """A restricted Lie algebra with structure constants over F_p.

    Parameters
    ----------
    p : prime
    bracket : ``(n, n, n)`` array or mapping ``{(i, j): coords}`` with ``i < j``.
        Only the strict upper triangle is read; the rest is implied by
        antisymmetry.  A full array whose lower triangle disagrees is rejected.
    pmap : ``(n, n)`` array, row ``i`` giving ``e_i^{[p]}``.
    names : basis identifiers, defaults to ``e1, ..., en``.

    Construction checks shapes only.  Use :meth:`validate` for the axioms.
    """

    def __init__(self, p: int, bracket, pmap, names: Sequence[str] | None = None, *, dim: int | None = None):
        self.field = PrimeField(p)
        p = self.field.p
        if dim is None:
            if names is not None:
                dim = len(names)
            elif isinstance(bracket, Mapping):
                dim = len(pmap)
            else:
                dim = np.asarray(pmap).shape[0] if np.asarray(pmap).size else 0
        self.dim = n = int(dim)
        if names is None:
            names = [f"e{i + 1}" for i in range(n)]
        names = [str(s) for s in names]
        if len(names) != n or len(set(names)) != n:
            raise DimensionError(f"basis names {names} are not {n} distinct identifiers")
        self.names = tuple(names)

        C = np.zeros((n, n, n), dtype=np.int64)
        if isinstance(bracket, Mapping):
            for (i, j), v in bracket.items():
                if not (0 <= i < j < n):
                    raise DimensionError(f"bracket entry ({i}, {j}) is not a strict upper-triangular index")
                v = np.asarray(v, dtype=np.int64)
                if v.shape != (n,):
                    raise DimensionError(f"bracket value for ({i}, {j}) has length {v.size}, expected {n}")
                C[i, j] = v % p
        else:
            raw = np.asarray(bracket, dtype=np.int64) if n else np.zeros((0, 0, 0), dtype=np.int64)
            if raw.shape != (n, n, n):
                raise DimensionError(f"bracket table has shape {raw.shape}, expected {(n, n, n)}")
            raw = raw % p
            iu = np.triu_indices(n, 1)
            C[iu] = raw[iu]
            full = C - C.transpose(1, 0, 2)
            if ((raw - full) % p).any():
                raise DimensionError("bracket table is not antisymmetric")
        C = (C - C.transpose(1, 0, 2)) % p
        P = np.asarray(pmap, dtype=np.int64) if n else np.zeros((0, 0), dtype=np.int64)
        if P.shape != (n, n):
            raise DimensionError(f"p-map table has shape {P.shape}, expected {(n, n)}")
        self._C = C
        self._P = P % p
        self._C.setflags(write=False)
        self._P.setflags(write=False)
        self._gamma_cache: dict[int, Subspace] = {}

    # -- basic data -----------------------------------------------------

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def bracket_table(self) -> np.ndarray:
        return self._C

    @property
    def pmap_table(self) -> np.ndarray:
        return self._P

    def upper_brackets(self) -> dict[tuple[int, int], np.ndarray]:
        return {(i, j): self._C[i, j].copy() for i, j in combinations(range(self.dim), 2) if self._C[i, j].any()}

    def __repr__(self):
        return f"RestrictedLieAlgebra(p={self.p}, dim={self.dim}, names={list(self.names)})"

    def same_tables(self, other: "RestrictedLieAlgebra") -> bool:
        return (
            self.p == other.p
            and self.dim == other.dim
            and np.array_equal(self._C, other._C)
            and np.array_equal(self._P, other._P)
        )

    def basis_vector(self, i: int) -> np.ndarray:
        v = np.zeros(self.dim, dtype=np.int64)
        v[i] = 1
        return v

    def full(self) -> Subspace:
        return Subspace.full(self.p, self.dim)

    def zero(self) -> Subspace:
        return Subspace.zero(self.p, self.dim)

    def span(self, vectors) -> Subspace:
        return gfp.rref([np.asarray(v) for v in vectors], self.dim, self.p)

    # -- products -------------------------------------------------------

    def bracket(self, x, y) -> np.ndarray:
        x = np.asarray(x, dtype=np.int64)
        y = np.asarray(y, dtype=np.int64)
        return np.einsum("i,j,ijk->k", x, y, self._C) % self.p

    def ad(self, x) -> np.ndarray:
        """Matrix of ``y -> [x, y]`` (column ``j`` is ``[x, e_j]``)."""
        x = np.asarray(x, dtype=np.int64)
        return np.einsum("i,ijk->kj", x, self._C) % self.p

    def is_abelian(self) -> bool:
        return not self._C.any()

    def is_abelian_subspace(self, S: Subspace) -> bool:
        return all(not self.bracket(a, b).any() for a, b in combinations(S.basis, 2))

    def _s_terms(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        """``sum_i s_i(x, y)`` from the Jacobson formula.

        ``i * s_i`` is the coefficient of ``t^(i-1)`` in ``ad(t x + y)^(p-1)(x)``.
        """
        p = self.p
        adx, ady = self.ad(x), self.ad(y)
        coeffs = [x % p]
        for _ in range(p - 1):
            nxt = [np.zeros(self.dim, dtype=np.int64) for _ in range(len(coeffs) + 1)]
            for k, v in enumerate(coeffs):
                nxt[k] = (nxt[k] + ady @ v) % p
                nxt[k + 1] = (nxt[k + 1] + adx @ v) % p
            coeffs = nxt
        total = np.zeros(self.dim, dtype=np.int64)
        for i in range(1, p):
            total = (total + coeffs[i - 1] * self.field.inv(i)) % p
        return total

    def pth_power(self, x) -> np.ndarray:
        """``x^{[p]}``, extending the basis p-map by the Jacobson formula.

        Terms of ``x = sum a_i e_i`` are folded in left to right, using
        ``(a e_i)^{[p]} = a^p e_i^{[p]} = a e_i^{[p]}`` over F_p.
        """
        p = self.p
        x = np.asarray(x, dtype=np.int64) % p
        if x.shape != (self.dim,):
            raise DimensionError(f"element has length {x.size}, expected {self.dim}")
        acc = np.zeros(self.dim, dtype=np.int64)
        acc_p = np.zeros(self.dim, dtype=np.int64)
        for i in np.flatnonzero(x):
            a = int(x[i])
            y = a * self.basis_vector(i) % p
            y_p = a * self._P[i] % p
            if acc.any():
                acc_p = (acc_p + y_p + self._s_terms(acc, y)) % p
            else:
                acc_p = y_p
            acc = (acc + y) % p
        return acc_p

    def pth_power_iter(self, x, n: int) -> np.ndarray:
        for _ in range(n):
            x = self.pth_power(x)
        return np.asarray(x, dtype=np.int64) % self.p

    def pmap_matrix(self) -> np.ndarray:
        """Matrix of the p-map as a linear map; only meaningful on abelian algebras."""
        return self._P.T.copy()

    # -- axioms ---------------------------------------------------------

    def validate(self) -> ValidationReport:
        """Check Jacobi on basis triples and ``ad(e_i^{[p]}) = (ad e_i)^p``."""
        p, n = self.p, self.dim
        violations = []
        for i, j, k in combinations(range(n), 3):
            ei, ej, ek = (self.basis_vector(t) for t in (i, j, k))
            jac = (
                self.bracket(ei, self.bracket(ej, ek))
                + self.bracket(ej, self.bracket(ek, ei))
                + self.bracket(ek, self.bracket(ei, ej))
            ) % p
            if jac.any():
                violations.append(f"jacobi({self.names[i]},{self.names[j]},{self.names[k]})")
        for i in range(n):
            lhs = self.ad(self._P[i])
            rhs = gfp.matpow(self.ad(self.basis_vector(i)), p, p)
            if not np.array_equal(lhs, rhs):
                violations.append(f"restriction({self.names[i]})")
        return ValidationReport(ok=not violations, violations=violations)

    def validated(self) -> "RestrictedLieAlgebra":
        report = self.validate()
        if not report.ok:
            raise AxiomError("axioms violated: " + ", ".join(report.violations), report.violations)
        return self

    # -- subalgebras ----------------------------------------------------

    def is_subalgebra(self, S: Subspace) -> bool:
        return all(S.contains(self.bracket(a, b)) for a, b in combinations(S.basis, 2))

    def is_ideal(self, S: Subspace) -> bool:
        return all(S.contains(self.bracket(a, self.basis_vector(j))) for a in S.basis for j in range(self.dim))

    def is_restricted(self, S: Subspace) -> bool:
        """Closed under bracket and the p-map (checking a basis suffices once bracket-closed)."""
        return self.is_subalgebra(S) and all(S.contains(self.pth_power(a)) for a in S.basis)

    def ideal_witness(self, S: Subspace):
        """An element showing ``S`` is not a restricted ideal, or ``None``."""
        for a in S.basis:
            for j in range(self.dim):
                v = self.bracket(a, self.basis_vector(j))
                if not S.contains(v):
                    return v
            v = self.pth_power(a)
            if not S.contains(v):
                return v
        return None

    def restricted_closure(self, S: Iterable | Subspace) -> SubalgebraReport:
        """``<S>_p``: the smallest restricted subalgebra containing ``S``."""
        if isinstance(S, Subspace):
            cur = S
        else:
            cur = self.span(list(S))
        while True:
            new = [self.bracket(a, b) for a, b in combinations(cur.basis, 2)]
            new += [self.pth_power(a) for a in cur.basis]
            nxt = cur + self.span(new) if new else cur
            if nxt == cur:
                break
            cur = nxt
        return SubalgebraReport(carrier=cur, is_ideal=self.is_ideal(cur), is_restricted=True)

    def closure(self, *vectors) -> Subspace:
        return self.restricted_closure(vectors).carrier

    def gamma(self, i: int) -> Subspace:
        """Lower central series term: ``gamma_1 = L``, ``gamma_{i+1} = [gamma_i, L]``."""
        if i < 1:
            raise ValueError("gamma index starts at 1")
        if i in self._gamma_cache:
            return self._gamma_cache[i]
        if i == 1:
            g = self.full()
        else:
            prev = self.gamma(i - 1)
            g = self.span([self.bracket(a, self.basis_vector(j)) for a in prev.basis for j in range(self.dim)])
        self._gamma_cache[i] = g
        return g

    def pth_subalgebra(self, S: Subspace, n: int, max_elements: int = DEFAULT_MAX_ELEMENTS) -> Subspace:
        """Restricted subalgebra generated by ``x^{[p]^n}`` for all ``x`` in ``S``.

        On an abelian ``S`` the iterated p-map is additive, so a basis is
        enough; otherwise every element of ``S`` is visited.
        """
        if n == 0:
            return self.restricted_closure(S).carrier
        if self.is_abelian_subspace(S):
            gens = [self.pth_power_iter(a, n) for a in S.basis]
        else:
            if len(S) > max_elements:
                raise CapExceeded(f"budget exceeded: {len(S)} elements > {max_elements}")
            gens = [self.pth_power_iter(x, n) for x in S.elements()]
        return self.restricted_closure(gens).carrier

    def dn(self, n: int, max_elements: int = DEFAULT_MAX_ELEMENTS) -> Subspace:
        """Dimension subalgebra: sum of ``gamma_i^{[p]^j}`` over ``i p^j >= n``.

        For fixed ``i`` larger ``j`` only shrinks the term, so the smallest
        admissible ``j`` is taken; terms with ``i > n`` lie inside ``gamma_n``.
        """
        if n < 1:
            raise ValueError("n must be >= 1")
        total = self.zero()
        for i in range(1, n + 1):
            j = 0
            while i * self.p**j < n:
                j += 1
            total = total + self.pth_subalgebra(self.gamma(i), j, max_elements)
        return total

    def center(self) -> Subspace:
        if self.dim == 0:
            return self.zero()
        M = np.vstack([self.ad(self.basis_vector(i)) for i in range(self.dim)])
        return gfp.kernel(M, self.p)

    def centralizer(self, x) -> Subspace:
        return gfp.kernel(self.ad(x), self.p)

    def derived(self) -> Subspace:
        return self.gamma(2)

    def frattini(self) -> Subspace:
        return self.dn(2)

    def fitting(self) -> FittingDecomposition:
        """Split an abelian algebra into the p-map's bijective and nilpotent parts."""
        if not self.is_abelian():
            raise NotAnIdeal("non-abelian input: Fitting decomposition of the p-map needs an abelian algebra")
        K = gfp.matpow(self.pmap_matrix(), self.dim, self.p)
        torus = self.span(list(K.T)) if self.dim else self.zero()
        nil = gfp.kernel(K, self.p) if self.dim else self.zero()
        return FittingDecomposition(torus, nil)

    def is_torus(self, S: Subspace | None = None) -> bool:
        """Abelian with the p-map bijective on ``S`` (default: the whole algebra)."""
        S = self.full() if S is None else S
        if not self.is_abelian_subspace(S):
            return False
        images = [self.pth_power(a) for a in S.basis]
        return all(S.contains(v) for v in images) and self.span(images) == S

    def _krylov(self, x) -> Subspace:
        vecs, cur = [], np.asarray(x, dtype=np.int64) % self.p
        for _ in range(self.dim + 1):
            vecs.append(cur)
            cur = self.pth_power(cur)
        return self.span(vecs)

    def minimal_polynomial_degree(self) -> int:
        """Degree of the minimal polynomial of the (linear) p-map of an abelian algebra."""
        M = self.pmap_matrix()
        powers = []
        cur = np.eye(self.dim, dtype=np.int64)
        for k in range(self.dim + 1):
            flat = cur.reshape(-1)
            if powers and gfp.rank(np.vstack(powers + [flat]), self.p) == len(powers):
                return k
            powers.append(flat)
            cur = M @ cur % self.p
        return self.dim

    def is_cyclic(self, max_elements: int = DEFAULT_MAX_ELEMENTS):
        """Return ``(cyclic, generator)``; the generator is ``None`` when not cyclic.

        Abelian case: cyclic iff the p-map's minimal polynomial has degree
        ``dim`` (a cyclic vector exists); the generator is the first such
        vector in lexicographic order.  Non-abelian case: exhaustive search.
        """
        if self.dim == 0:
            return True, np.zeros(0, dtype=np.int64)
        if self.is_abelian():
            if self.minimal_polynomial_degree() < self.dim:
                return False, None
            full = self.full()
            for x in self._iter_elements(max_elements):
                if self._krylov(x) == full:
                    return True, x
            raise AssertionError("minimal polynomial says cyclic but no generator was found")
        full = self.full()
        for x in self._iter_elements(max_elements):
            if self.closure(x) == full:
                return True, x
        return False, None

    def is_p_nilpotent_element(self, x) -> bool:
        return not self.pth_power_iter(x, self.dim).any()

    def is_nilcyclic(self, max_elements: int = DEFAULT_MAX_ELEMENTS):
        if self.dim == 0:
            return True, np.zeros(0, dtype=np.int64)
        if self.is_abelian():
            ok, gen = self.is_cyclic(max_elements)
            if ok and not gfp.matpow(self.pmap_matrix(), self.dim, self.p).any():
                return True, gen
            return False, None
        full = self.full()
        for x in self._iter_elements(max_elements):
            if self.is_p_nilpotent_element(x) and self.closure(x) == full:
                return True, x
        return False, None

    def _iter_elements(self, max_elements: int):
        total = self.p**self.dim
        if total > max_elements:
            raise CapExceeded(f"budget exceeded: {total} elements > {max_elements}")
        return iter(gfp.all_vectors(self.p, self.dim))

    # -- constructions --------------------------------------------------

    def quotient(self, I: Subspace) -> "RestrictedLieAlgebra":
        return self.quotient_map(I)[0]

    def quotient_map(self, I: Subspace):
        """``(L/I, projection matrix)`` for a restricted ideal ``I``.

        The quotient basis is the images of the unit vectors at the non-pivot
        coordinates of ``I``.
        """
        w = self.ideal_witness(I)
        if w is not None:
            raise NotAnIdeal(f"not a restricted ideal: {w.tolist()} escapes", witness=w)
        keep = I.complement_indices()
        m = len(keep)

        def proj(v):
            return I.reduce(v)[keep]

        C = np.zeros((m, m, m), dtype=np.int64)
        P = np.zeros((m, m), dtype=np.int64)
        for a, ia in enumerate(keep):
            P[a] = proj(self._P[ia])
            for b, ib in enumerate(keep):
                C[a, b] = proj(self._C[ia, ib])
        Q = RestrictedLieAlgebra(self.p, C, P, [self.names[i] for i in keep], dim=m)
        proj_matrix = np.array([proj(self.basis_vector(j)) for j in range(self.dim)], dtype=np.int64).T
        return Q, proj_matrix.reshape(m, self.dim)

    def induced(self, S: Subspace) -> "RestrictedLieAlgebra":
        """``S`` as a restricted Lie algebra in its own right, on the basis ``S.basis``."""
        if not self.is_restricted(S):
            raise NotAnIdeal("subspace is not a restricted subalgebra")
        m = S.dim
        C = np.zeros((m, m, m), dtype=np.int64)
        P = np.zeros((m, m), dtype=np.int64)
        for a in range(m):
            P[a] = S.coordinates(self.pth_power(S.basis[a]))
            for b in range(m):
                C[a, b] = S.coordinates(self.bracket(S.basis[a], S.basis[b]))
        return RestrictedLieAlgebra(self.p, C, P, [f"h{a + 1}" for a in range(m)], dim=m)

    def direct_sum(self, other: "RestrictedLieAlgebra") -> "RestrictedLieAlgebra":
        return direct_sum(self, other)


def direct_sum(L1: RestrictedLieAlgebra, L2: RestrictedLieAlgebra) -> RestrictedLieAlgebra:
    if L1.p != L2.p:
        raise DimensionError("direct sum needs a common field")
    n1, n2 = L1.dim, L2.dim
    n = n1 + n2
    C = np.zeros((n, n, n), dtype=np.int64)
    P = np.zeros((n, n), dtype=np.int64)
    C[:n1, :n1, :n1] = L1.bracket_table
    C[n1:, n1:, n1:] = L2.bracket_table
    P[:n1, :n1] = L1.pmap_table
    P[n1:, n1:] = L2.pmap_table
    names = list(L1.names)
    for s in L2.names:
        cand, k = s, 1
        while cand in names:
            cand = f"{s}_{k}"
            k += 1
        names.append(cand)
    return RestrictedLieAlgebra(L1.p, C, P, names, dim=n)


def zero_algebra(p: int) -> RestrictedLieAlgebra:
    return RestrictedLieAlgebra(p, np.zeros((0, 0, 0)), np.zeros((0, 0)), [], dim=0)
