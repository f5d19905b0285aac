"""Exact stable commutator length in free products of two cyclic groups."""

from .chains import Chain, FactorSpec, Word, homological_check, normalize, parse_chain, render
from .arcs import ArcSystem, build_arc_system
from .config import Limits, ResourceLimitError, default_limits
from .engine import (
    SclResult,
    compute_scl,
    formula_commutator,
    formula_product,
    formula_self_product,
    walker_reference,
)

__all__ = [
    "ArcSystem",
    "Chain",
    "FactorSpec",
    "Limits",
    "ResourceLimitError",
    "SclResult",
    "Word",
    "build_arc_system",
    "compute_scl",
    "default_limits",
    "formula_commutator",
    "formula_product",
    "formula_self_product",
    "homological_check",
    "normalize",
    "parse_chain",
    "render",
    "walker_reference",
]
