"""Deutsch CTC simulation: fixed points, state discrimination and superposition."""

from ._core import (
    Condition2Exhausted,
    DegenerateSuperposition,
    Error,
    NoFixedPointNumerical,
    NonUniqueFixedPoint,
    ProtocolError,
    PurityLoss,
    ValidationError,
    build_distinguisher,
    build_u_prime,
    ctc_map,
    distinguish,
    fixed_point,
    gamma,
    output_state,
    superoperator_matrix,
    superpose,
)

__all__ = [name for name in dir() if not name.startswith("_")]
