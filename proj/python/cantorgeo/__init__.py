"""Generalized Cantor sets, hyperbolic length bounds and condition checks."""

from ._core import (  # noqa: F401
    Error,
    DomainError,
    SaturationError,
    UnsupportedOperation,
    OutOfRange,
    SpecViolation,
    ModeUnavailable,
    NoPentagon,
    UnsupportedKind,
    ParseError,
    LogScalar,
    OmegaSpec,
    parse_spec_text,
    parse_spec,
    q_at,
    two_adic,
    closed_interval_length,
    closed_interval_length_exact,
    gap_length,
    gap_length_exact,
    gap_ratio,
    level,
    U,
    L,
    collar_eta,
    annulus_core_length,
    pentagon_d,
    pentagon_b,
    upper_bound_geodesic,
    lower_bound_geodesic,
    omega_delta_i,
    N_estimate,
    classify_qc,
    check_condition_I,
    check_condition_II,
    block_sum_eta,
    witness_ratio,
    pants_ratio_bound,
    theorem_criterion_report,
    run,
)

__all__ = [name for name in dir() if not name.startswith("_")]
