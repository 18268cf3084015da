"""Exact arithmetic in p-adic, profinite and adelic rings over Z[1/S],
character pairings, and canonical decomposition of symbolic locally
compact modules."""

from .adele import Adele, FiniteAdele, idempotent
from .duality import (
    Character,
    CircleValue,
    SubgroupDescriptor,
    annihilator,
    antidiagonal_discreteness_check,
    antidiagonal_embed,
    orthogonal,
)
from .errors import AdelicsError
from .exprgrammar import format_expr, parse_expr
from .localization import PrimeSet, SRational, normalize_primeset
from .padic import PadicNumber, PadicSubgroup, compact_open_of_power_space
from .profinite import ProfiniteInt, SigmaAdicInt
from .structure import (
    CanonicalDecomposition,
    ClassificationReport,
    ModuleAtom,
    ModuleExpr,
    classify,
    classify_q_vector_space,
    decompose_first,
    decompose_second,
    decompose_third,
    dual,
    validate,
)

__all__ = [
    "Adele", "AdelicsError", "CanonicalDecomposition", "Character",
    "CircleValue", "ClassificationReport", "FiniteAdele", "ModuleAtom",
    "ModuleExpr", "PadicNumber", "PadicSubgroup", "PrimeSet", "ProfiniteInt",
    "SRational", "SigmaAdicInt", "SubgroupDescriptor", "annihilator",
    "antidiagonal_discreteness_check", "antidiagonal_embed", "classify",
    "classify_q_vector_space", "compact_open_of_power_space",
    "decompose_first", "decompose_second", "decompose_third", "dual",
    "format_expr", "idempotent", "normalize_primeset", "orthogonal",
    "parse_expr", "validate",
]

__version__ = "0.1.0"
