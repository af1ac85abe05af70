"""Concrete potentials: coupling series, leading order, map counts."""

from .evaluate import (
    SeriesBackend,
    cross_mode_check,
    evaluate,
    f0_series,
    free_energy_series,
    leading_order_series,
    map_count,
    series_genus_table,
)
from .potential import Potential
from .series import CouplingSeries, monomial, series_sum

__all__ = [
    "CouplingSeries",
    "Potential",
    "SeriesBackend",
    "cross_mode_check",
    "evaluate",
    "f0_series",
    "free_energy_series",
    "leading_order_series",
    "map_count",
    "monomial",
    "series_genus_table",
]
