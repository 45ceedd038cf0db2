"""NKZE landscapes and Standard / StealthL / StructC firm-adaptation simulations."""

from ._core import (
    ConfigError,
    Landscape,
    compositions,
    pack_index,
    run_config,
    run_preset,
    t_quantile,
    verify,
)

__all__ = [
    "ConfigError",
    "Landscape",
    "compositions",
    "pack_index",
    "run_config",
    "run_preset",
    "t_quantile",
    "verify",
]
