"""Dirac-equation partial solutions in electromagnetic space-time crystals."""

from estc._core import (
    CrystalConfig,
    ConfigError,
    NumericError,
    StencilError,
    dirac_basis_names,
    estc1,
    estc2,
    field_map,
    find_lines,
    free_basis,
    free_projectors,
    q40,
    region_size,
    scan,
    validate,
    zero_crystal,
    zero_model,
)

__all__ = [
    "CrystalConfig",
    "ConfigError",
    "NumericError",
    "StencilError",
    "dirac_basis_names",
    "estc1",
    "estc2",
    "field_map",
    "find_lines",
    "free_basis",
    "free_projectors",
    "q40",
    "region_size",
    "scan",
    "validate",
    "zero_crystal",
    "zero_model",
]
