"""Restricted Lie algebras over F_p, their restricted enveloping algebras,
and two independent deciders for the principal-ideal-ring property."""

from .catalog import make
from .criterion import audit, brute_decision, ordinary_env_decision, structural_decision
from .document import emit, parse
from .errors import AxiomError, CapExceeded, DimensionError, InternalCheckFailed, NotAnIdeal, ParseError
from .gfp import PrimeField, Subspace
from .rla import RestrictedLieAlgebra, direct_sum
from .uenv import EnvAlgebra, EnvElement

__all__ = [
    "AxiomError",
    "CapExceeded",
    "DimensionError",
    "EnvAlgebra",
    "EnvElement",
    "InternalCheckFailed",
    "NotAnIdeal",
    "ParseError",
    "PrimeField",
    "RestrictedLieAlgebra",
    "Subspace",
    "audit",
    "brute_decision",
    "direct_sum",
    "emit",
    "make",
    "ordinary_env_decision",
    "parse",
    "structural_decision",
]
