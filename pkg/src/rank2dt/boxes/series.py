"""Chart-level generating functions of weighted double box configurations."""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Optional, Tuple

from ..algebra.qseries import QSeries
from ..toric import ChartToricData
from .config import DoubleBoxConfig
from .enumerate import base_cylinder, enumerate_box_configs
from .squares import DoubleSquareConfig

_CACHE: Dict = {}


def comb_series(
    chart: ChartToricData,
    legs: Tuple[Optional[DoubleSquareConfig], ...] = (None, None, None),
    order: int = 0,
) -> QSeries:
    """Sum of omega * q^size over configurations with the given asymptotics.

    The exponent is the renormalized size sum; with legs the base size can be
    nonzero, so the series need not start at q^0.
    """
    key = (chart, tuple(leg.key() if leg else None for leg in legs), order)
    cached = _CACHE.get(key)
    if cached is not None:
        return cached
    base = base_cylinder(chart, legs)
    base_size = base.quotient_size()
    max_count = order - base_size
    coeffs: Dict[int, Fraction] = {}
    if max_count >= 0:
        by_count = enumerate_box_configs(chart, legs, max_count)
        for count, configs in by_count.items():
            exponent = base_size + count
            if exponent > order:
                continue
            total = sum(cfg.weight_omega() for cfg in configs)
            if total:
                coeffs[exponent] = Fraction(total)
    series = QSeries(coeffs, order)
    _CACHE[key] = series
    return series


def enumerate_with_sizes(
    chart: ChartToricData,
    legs: Tuple[Optional[DoubleSquareConfig], ...] = (None, None, None),
    max_size: int = 0,
):
    """(size, config) pairs for all configurations of size <= max_size."""
    base = base_cylinder(chart, legs)
    base_size = base.quotient_size()
    out = []
    max_count = max_size - base_size
    if max_count < 0:
        return out
    for count, configs in enumerate_box_configs(chart, legs, max_count).items():
        for cfg in configs:
            out.append((base_size + count, cfg))
    return out
