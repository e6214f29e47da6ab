"""Equivariant characters of quotients, with moduli tags.

The character of a quotient assigns multiplicity 2 to boxes removed from all
constituents, 1 to other removed boxes, and a tautological O(1) tag on the
matching P^1 factor to boxes of an exactly-two component carrying moduli.
Characters with legs are exact fractions: a finite part below a window plus
cylinder tails over the edge cross-sections.
"""

from __future__ import annotations

from typing import Dict, Optional, Tuple

from ..algebra.kclass import KClass, KFraction, make_tag
from ..boxes.config import AXIS_CROSS, DoubleBoxConfig, project
from ..boxes.squares import DoubleSquareConfig


def config_factor_map(config: DoubleBoxConfig) -> Dict[int, int]:
    """Component index -> P^1 factor index, for components with moduli."""
    out = {}
    factor = 0
    for ci, comp in enumerate(config.components()):
        if comp.has_moduli:
            out[ci] = factor
            factor += 1
    return out


def square_character(
    leg: DoubleSquareConfig,
    cross_axes: Tuple[int, int],
    factor_count: int = 0,
    component_factors: Optional[Dict[int, int]] = None,
) -> KClass:
    """Character of the cross-section quotient as a 3-variable K-class.

    cross_axes names the two torus directions the 2D coordinates map to; the
    edge direction exponent stays zero. component_factors tags the cells of
    2D components carrying moduli.
    """
    component_factors = component_factors or {}
    terms = {}
    for (a, b), mult in leg.cells:
        w = [0, 0, 0]
        w[cross_axes[0]] = a
        w[cross_axes[1]] = b
        tag = ()
        if mult == 1 and leg.flag.chi_R((a, b)) == 2:
            ci = leg.component_of((a, b))
            if ci in component_factors:
                tag = make_tag({component_factors[ci]: 1})
        key = (tag, tuple(w))
        terms[key] = terms.get(key, 0) + mult
    return KClass(terms, factor_count)


def quotient_character(
    config: DoubleBoxConfig,
    factor_count: Optional[int] = None,
    factor_map: Optional[Dict[int, int]] = None,
) -> KFraction:
    """Exact character of the chart quotient, tails included.

    factor_map sends chart component indices to P^1 factor indices; the
    default indexes the chart's own moduli components.
    """
    if factor_map is None:
        factor_map = config_factor_map(config)
    if factor_count is None:
        factor_count = (max(factor_map.values()) + 1) if factor_map else 0
    window = config.window(margin=2)
    cell_factor: Dict[Tuple[int, int, int], int] = {}
    for ci, comp in enumerate(config.components()):
        if ci in factor_map:
            for cell in comp.cells:
                cell_factor[cell] = factor_map[ci]
    terms = {}
    for cell in config._support(window):
        if any(cell[i] > window[i] for i in range(3)):
            continue
        mult = config.delta(cell)
        if not mult:
            continue
        tag = ()
        if cell in cell_factor:
            tag = make_tag({cell_factor[cell]: 1})
        key = (tag, tuple(cell))
        terms[key] = terms.get(key, 0) + mult
    finite = KFraction(KClass(terms, factor_count))
    total = finite
    for axis, leg in enumerate(config.legs):
        if leg is None or not leg.cells:
            continue
        # tags for 2D components continued by chart components with moduli
        comp2_factors = {}
        for ci, comp in enumerate(config.components()):
            if ci in factor_map:
                for (t_axis, t_ci) in comp.tails:
                    if t_axis == axis:
                        comp2_factors[t_ci] = factor_map[ci]
        cross = square_character(leg, AXIS_CROSS[axis], factor_count, comp2_factors)
        start = window[axis] + 1
        shift = [0, 0, 0]
        shift[axis] = start
        den = [0, 0, 0]
        den[axis] = 1
        total = total + KFraction(cross.twist(tuple(shift)), tuple(den))
    return total
