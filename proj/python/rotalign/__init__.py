"""Laser-driven rotational alignment and orientation of linear molecules."""

from ._core import (
    ConfigError,
    DomainError,
    Error,
    ExperimentConfig,
    MoleculeParams,
    NumericalError,
    PulseSpec,
    StructuralError,
    __version__,
    build_ensemble,
    cos_matrix_element,
    cos_operators,
    cycle_averaged_coefficients,
    envelope,
    hbr_preset,
    instantaneous_field,
    load_config,
    parse_config,
    preset,
    preset_names,
    rotational_period_ps,
    run_single,
    run_sweep,
    write_outputs,
)

__all__ = [name for name in dir() if not name.startswith("_")]
