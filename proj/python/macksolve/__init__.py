"""Inviscid compressible boundary-layer modes."""

from ._macksolve import (
    BaseFlow,
    DispersionContext,
    DispersionRoot,
    DomainError,
    FloorError,
    MeanFlow,
    NumericalError,
    TurningData,
    admissible_intervals,
    baseflow_from_json,
    blasius,
    find_eigenvalue,
    growth_rate_fit,
    j_integral,
    residual_check,
    select_unstable_subsequence,
    supersonic_weight,
    tanh_profile,
    turning_point,
)

__all__ = [name for name in dir() if not name.startswith("_")]
