"""Integrable maps, periodicity varieties and recurrence elimination."""

from ._ivpp import (
    Error,
    PoleError,
    derive_gamma,
    eliminate,
    iterate,
    list_maps,
    map_info,
    recurrence_F,
    sample_on_variety,
    variety,
    verify_period,
)

__all__ = [
    "Error",
    "PoleError",
    "derive_gamma",
    "eliminate",
    "iterate",
    "list_maps",
    "map_info",
    "recurrence_F",
    "sample_on_variety",
    "variety",
    "verify_period",
]
