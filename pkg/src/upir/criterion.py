"""Deciding whether ``u(L)`` is a principal ideal ring.

Two independent routes:

* :func:`structural_decision` uses the torus-by-cyclic characterisation.  For
  finite-dimensional ``L`` over F_p it reduces to: ``L`` is abelian and the
  nilpotent Fitting component ``N`` of the p-map is nilcyclic.  The torus
  ideal in the certificate is the Fitting torus part ``T``.

  Why this reduction holds: any torus ideal of an abelian ``L`` consists of
  semisimple elements, hence lies in ``T``; and a quotient of a cyclic
  algebra is cyclic.  So some torus ideal has a cyclic quotient iff
  ``L/T ≅ N`` is cyclic, and ``N`` being p-nilpotent makes that nilcyclic.
  The argument is not taken on trust: :func:`audit` compares it against the
  brute-force route.

* :func:`brute_decision` builds ``u(L)`` and enumerates every right and left
  ideal (see :mod:`upir.ideals`).
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Iterator

import numpy as np

from . import document, gfp
from .errors import CapExceeded, DimensionError, InternalCheckFailed
from .ideals import (
    DEFAULT_MAX_ELEMENTS,
    DEFAULT_MAX_LATTICE,
    PirVerdict,
    decide_pli,
    decide_pri,
    is_left_ideal,
    is_principal,
    is_right_ideal,
)
from .rla import DEFAULT_MAX_ELEMENTS as RLA_MAX_ELEMENTS
from .rla import RestrictedLieAlgebra
from .uenv import DEFAULT_MAX_ENV_DIM, EnvAlgebra

DEFAULT_MAX_CANDIDATES = 2**16


def structural_decision(L: RestrictedLieAlgebra, max_elements: int = RLA_MAX_ELEMENTS) -> PirVerdict:
    t0 = time.perf_counter()
    if not L.is_abelian():
        return PirVerdict(
            False,
            "structural",
            {"reason": "non-abelian"},
            {"elapsed": time.perf_counter() - t0},
        )
    T, N = L.fitting()
    nil_part = L.induced(N)
    ok, gen = nil_part.is_nilcyclic(max_elements)
    stats = {"torus_dim": T.dim, "nil_dim": N.dim, "elapsed": time.perf_counter() - t0}
    if not ok:
        return PirVerdict(False, "structural", {"reason": "nil part not cyclic", "torus": T, "nil": N}, stats)
    lifted = gen @ N.basis % L.p if N.dim else np.zeros(L.dim, dtype=np.int64)
    return PirVerdict(True, "structural", {"torus": T, "generator": lifted}, stats)


def verify_structural_certificate(L: RestrictedLieAlgebra, verdict: PirVerdict) -> bool:
    """Re-check a yes-certificate: ``T`` is a torus ideal and ``g`` generates ``L/T``."""
    if not verdict.is_pir:
        return False
    T, g = verdict.certificate["torus"], verdict.certificate["generator"]
    if not (L.is_restricted(T) and L.is_ideal(T) and L.is_torus(T)):
        return False
    Q, proj = L.quotient_map(T)
    return Q.closure(proj @ g % L.p) == Q.full()


def verify_brute_certificate(A: EnvAlgebra, verdict: PirVerdict, side: str = "right") -> bool:
    """Re-check a no-certificate: the witness is an ideal with no generator."""
    cert = verdict.certificate.get(side, verdict.certificate)
    I = cert.get("non_principal_ideal")
    if I is None:
        return False
    closed = is_right_ideal(A, I) if side == "right" else is_left_ideal(A, I)
    return closed and is_principal(A, I, side) is None


def brute_decision(
    L: RestrictedLieAlgebra,
    max_env_dim: int = DEFAULT_MAX_ENV_DIM,
    max_elements: int = DEFAULT_MAX_ELEMENTS,
    max_lattice: int = DEFAULT_MAX_LATTICE,
) -> PirVerdict:
    """Enumerate all right and left ideals of ``u(L)``; both sides must agree."""
    t0 = time.perf_counter()
    A = EnvAlgebra(L, max_env_dim)
    if A.p**A.dim > max_elements:
        raise CapExceeded(f"budget exceeded: {A.p}^{A.dim} elements > {max_elements}")
    pri = decide_pri(A, max_elements=max_elements, max_lattice=max_lattice)
    pli = decide_pli(A, max_elements=max_elements, max_lattice=max_lattice)
    if pri.is_pir != pli.is_pir:
        raise InternalCheckFailed("pri and pli verdicts differ on an enveloping algebra")
    return PirVerdict(
        pri.is_pir and pli.is_pir,
        "brute",
        {"right": pri.certificate, "left": pli.certificate},
        {"right": pri.stats, "left": pli.stats, "elapsed": time.perf_counter() - t0},
    )


def ordinary_env_decision(dim_L: int, is_zero_bracket_irrelevant=None) -> bool:
    """Whether the ordinary enveloping algebra of a ``dim_L``-dimensional Lie algebra is a PIR."""
    if dim_L < 0:
        raise DimensionError("dimension must be >= 0")
    return dim_L <= 1


# -- enumeration and audit ----------------------------------------------------


def _bracket_from_values(n: int, p: int, values) -> np.ndarray:
    C = np.zeros((n, n, n), dtype=np.int64)
    for (i, j), v in zip(combinations(range(n), 2), values):
        C[i, j] = v
        C[j, i] = (-np.asarray(v)) % p
    return C


def _jacobi_ok(L: RestrictedLieAlgebra) -> bool:
    return not any(v.startswith("jacobi") for v in L.validate().violations)


def enumerate_algebras(
    p: int,
    dim: int,
    mode: str = "exhaustive",
    sample_size: int = 100,
    seed: int = 0,
    max_candidates: int = DEFAULT_MAX_CANDIDATES,
) -> Iterator[RestrictedLieAlgebra]:
    """Yield valid restricted Lie algebras with the given ``p`` and ``dim``.

    ``exhaustive``: every (bracket, p-map) table pair that validates, once
    each, brackets outer and p-maps inner, both in lexicographic order.
    ``sampled``: table pairs drawn uniformly with ``numpy.random.default_rng(seed)``,
    kept when they validate, until ``sample_size`` have been yielded.
    """
    n = dim
    npairs = n * (n - 1) // 2
    vecs = gfp.all_vectors(p, n)
    names = [f"e{i + 1}" for i in range(n)]
    if mode == "exhaustive":
        total = p ** (n * npairs + n * n)
        if total > max_candidates:
            raise CapExceeded(f"budget exceeded: {total} candidate tables > {max_candidates}")
        for bvals in product(range(len(vecs)), repeat=npairs):
            C = _bracket_from_values(n, p, [vecs[k] for k in bvals])
            probe = RestrictedLieAlgebra(p, C, np.zeros((n, n), dtype=np.int64), names, dim=n)
            if not _jacobi_ok(probe):
                continue
            for pvals in product(range(len(vecs)), repeat=n):
                P = np.array([vecs[k] for k in pvals], dtype=np.int64).reshape(n, n)
                L = RestrictedLieAlgebra(p, C, P, names, dim=n)
                if L.validate().ok:
                    yield L
    elif mode == "sampled":
        rng = np.random.default_rng(seed)
        produced = attempts = 0
        limit = 10_000 * max(sample_size, 1)
        while produced < sample_size:
            attempts += 1
            if attempts > limit:
                raise CapExceeded(f"budget exceeded: {limit} draws yielded only {produced} valid algebras")
            bvals = rng.integers(0, p, size=(npairs, n))
            P = rng.integers(0, p, size=(n, n))
            L = RestrictedLieAlgebra(p, _bracket_from_values(n, p, bvals), P, names, dim=n)
            if L.validate().ok:
                produced += 1
                yield L
    else:
        raise ValueError(f"unknown mode {mode!r}")


@dataclass
class AuditReport:
    p: int
    dim: int
    mode: str
    count: int = 0
    agreements: int = 0
    disagreements: list[dict] = field(default_factory=list)
    pir_count: int = 0
    elapsed: float = 0.0
    sample_size: int | None = None
    seed: int | None = None

    @property
    def passed(self) -> bool:
        return not self.disagreements

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "dim": self.dim,
            "mode": self.mode,
            "sample_size": self.sample_size,
            "seed": self.seed,
            "count": self.count,
            "agreements": self.agreements,
            "disagreements": self.disagreements,
            "pir_count": self.pir_count,
            "passed": self.passed,
        }


def audit(
    p: int,
    dim: int,
    mode: str = "exhaustive",
    sample_size: int = 100,
    seed: int = 0,
    max_candidates: int = DEFAULT_MAX_CANDIDATES,
    max_env_dim: int = DEFAULT_MAX_ENV_DIM,
    max_elements: int = DEFAULT_MAX_ELEMENTS,
    max_lattice: int = DEFAULT_MAX_LATTICE,
) -> AuditReport:
    """Compare the structural and brute deciders on every enumerated algebra.

    Each disagreement is stored as a complete algebra document plus both verdicts.
    """
    t0 = time.perf_counter()
    report = AuditReport(p, dim, mode, sample_size=sample_size if mode == "sampled" else None,
                         seed=seed if mode == "sampled" else None)
    for L in enumerate_algebras(p, dim, mode, sample_size, seed, max_candidates):
        s = structural_decision(L, max_elements)
        b = brute_decision(L, max_env_dim, max_elements, max_lattice)
        report.count += 1
        if s.is_pir == b.is_pir:
            report.agreements += 1
            report.pir_count += int(s.is_pir)
        else:
            report.disagreements.append(
                {"algebra": document.to_dict(L), "structural": s.is_pir, "brute": b.is_pir}
            )
    report.elapsed = time.perf_counter() - t0
    return report
