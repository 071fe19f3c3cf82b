"""Exact rational lattice sequences, deferred densities, and convergence checks."""

from ._latconv import (
    DeferredPair,
    IndexSet,
    LatconvError,
    OrderRelation,
    Rational,
    Vector,
    compare,
    density,
    join,
    leq,
    meet,
    modulus,
    negative_part,
    positive_part,
    run_spec,
    theorem_report,
    validate_spec,
)

__all__ = [
    "DeferredPair",
    "IndexSet",
    "LatconvError",
    "OrderRelation",
    "Rational",
    "Vector",
    "compare",
    "density",
    "join",
    "leq",
    "meet",
    "modulus",
    "negative_part",
    "positive_part",
    "run_spec",
    "theorem_report",
    "validate_spec",
]
