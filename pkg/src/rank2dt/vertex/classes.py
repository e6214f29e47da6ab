"""Redistributed vertex and edge K-classes of the DT obstruction theory.

The raw chart contribution Q Pbar - Qbar P / t1t2t3 + Q Qbar prod(1-t_i)/t1t2t3
has formal geometric-series denominators; adding the redistribution terms
G / (1 - t_i) clears them exactly, and a nonzero remainder signals malformed
input. Serre duality pairs each term with its dual, which both checks the
computation and produces the plus/minus splitting for sign bookkeeping.
"""

from __future__ import annotations

from typing import Dict, Optional, Tuple

from ..algebra.kclass import KClass, KFraction, NotPolynomial, make_tag
from ..algebra.laurent import LaurentPoly3
from ..boxes.config import AXIS_CROSS, DoubleBoxConfig, edge_flag_of_chart
from ..boxes.squares import DoubleSquareConfig, EdgeFlag
from .characters import config_factor_map, quotient_character, square_character

TAU = (1, 1, 1)


class DualityViolated(Exception):
    pass


def reflexive_kclass(chart, factor_count: int = 0) -> KClass:
    return KClass.from_laurent(chart.reflexive_character(), factor_count)


def edge_reflexive_kclass(flag: EdgeFlag, cross_axes: Tuple[int, int], factor_count: int = 0) -> KClass:
    """Cross-section character of the hull along an edge (rank 2 at t = 1)."""
    (w1, _), (w2, _) = flag.summands()
    terms = {}
    for w in (w1, w2):
        full = [0, 0, 0]
        full[cross_axes[0]] = w[0]
        full[cross_axes[1]] = w[1]
        key = ((), tuple(full))
        terms[key] = terms.get(key, 0) + 1
    return KClass(terms, factor_count)


def _one_minus_t(axis: int, n: int) -> KClass:
    w = [0, 0, 0]
    w[axis] = 1
    return KClass({((), (0, 0, 0)): 1, ((), tuple(w)): -1}, n)


def edge_g_class(
    q2: KClass, p2: KClass, cross_axes: Tuple[int, int], factor_count: int = 0
) -> KClass:
    """G = -Q Pbar - Qbar P / (t' t'') + Q Qbar (1-t')(1-t'') / (t' t'')."""
    n = factor_count
    tau2 = [0, 0, 0]
    for a in cross_axes:
        tau2[a] = -1
    inv = tuple(tau2)
    term1 = -(q2 * p2.bar())
    term2 = -(q2.bar() * p2).twist(inv)
    term3 = (q2 * q2.bar() * _one_minus_t(cross_axes[0], n) * _one_minus_t(cross_axes[1], n)).twist(inv)
    return term1 + term2 + term3


def edge_g_plus_class(
    q2: KClass, p2: KClass, cross_axes: Tuple[int, int], factor_count: int = 0
) -> KClass:
    """G+ = -Q Pbar - Q Qbar (1 - t') / t' (the half used for sign bookkeeping)."""
    n = factor_count
    shift = [0, 0, 0]
    shift[cross_axes[0]] = -1
    term1 = -(q2 * p2.bar())
    term2 = -(q2 * q2.bar() * _one_minus_t(cross_axes[0], n)).twist(tuple(shift))
    return term1 + term2


def _edge_substitution(axis: int, m: int, mp: int):
    """Exponent images of (t1, t2, t3) under t' -> t' t_axis^-m, t'' -> t'' t_axis^-mp."""
    c1, c2 = AXIS_CROSS[axis]
    images = [None, None, None]
    e_axis = [0, 0, 0]
    e_axis[axis] = 1
    images[axis] = tuple(e_axis)
    w1 = [0, 0, 0]
    w1[c1] = 1
    w1[axis] = -m
    images[c1] = tuple(w1)
    w2 = [0, 0, 0]
    w2[c2] = 1
    w2[axis] = -mp
    images[c2] = tuple(w2)
    return tuple(images)


def edge_class_from_g(g: KClass, axis: int, m: int, mp: int) -> KClass:
    """E = [ -G + t_axis G(t' t_axis^-m, t'' t_axis^-mp) ] / (1 - t_axis)."""
    shift = [0, 0, 0]
    shift[axis] = 1
    substituted = g.substitute_monomials(_edge_substitution(axis, m, mp))
    numerator = -g + substituted.twist(tuple(shift))
    den = [0, 0, 0]
    den[axis] = 1
    return KFraction(numerator, tuple(den)).divide_out()


def edge_class(
    config0: DoubleBoxConfig,
    axis: int,
    m: int,
    mp: int,
    factor_count: int = 0,
    component2_factors: Optional[Dict[int, int]] = None,
) -> KClass:
    """Redistributed edge class along a chart axis, in that chart's frame."""
    leg = config0.legs[axis]
    if leg is None or not leg.cells:
        return KClass.zero(factor_count)
    cross_axes = AXIS_CROSS[axis]
    q2 = square_character(leg, cross_axes, factor_count, component2_factors)
    p2 = edge_reflexive_kclass(leg.flag, cross_axes, factor_count)
    g = edge_g_class(q2, p2, cross_axes, factor_count)
    return edge_class_from_g(g, axis, m, mp)


def vertex_class(
    config: DoubleBoxConfig,
    factor_count: Optional[int] = None,
    factor_map: Optional[Dict[int, int]] = None,
) -> KClass:
    """Redistributed vertex class: a finite K-class, tags on moduli factors."""
    if factor_map is None:
        factor_map = config_factor_map(config)
    if factor_count is None:
        factor_count = (max(factor_map.values()) + 1) if factor_map else 0
    n = factor_count
    q = quotient_character(config, n, factor_map)
    p = KFraction(reflexive_kclass(config.chart, n))
    inv_tau = (-1, -1, -1)
    prod = KFraction(
        _one_minus_t(0, n) * _one_minus_t(1, n) * _one_minus_t(2, n)
    )
    tr1 = q * p.bar() + (-(q.bar() * p)).twist(inv_tau) + (q * q.bar() * prod).twist(inv_tau)
    total = tr1
    for axis, leg in enumerate(config.legs):
        if leg is None or not leg.cells:
            continue
        comp2_factors = {}
        for ci, comp in enumerate(config.components()):
            if ci in factor_map:
                for (t_axis, t_ci) in comp.tails:
                    if t_axis == axis:
                        comp2_factors[t_ci] = factor_map[ci]
        cross_axes = AXIS_CROSS[axis]
        q2 = square_character(leg, cross_axes, n, comp2_factors)
        p2 = edge_reflexive_kclass(leg.flag, cross_axes, n)
        g = edge_g_class(q2, p2, cross_axes, n)
        den = [0, 0, 0]
        den[axis] = 1
        total = total + KFraction(g, tuple(den))
    return total.divide_out()


def serre_dual_check(k: KClass) -> bool:
    """k = -bar(k) / (t1 t2 t3) termwise."""
    return k == (-k.bar()).twist((-1, -1, -1))


def dual_term_key(key):
    tag, w = key
    return (tuple((f, -d) for f, d in tag), (-w[0] - 1, -w[1] - 1, -w[2] - 1))


def plus_minus_split(k: KClass) -> Tuple[KClass, KClass]:
    """Split k = k+ + k- with k- = -bar(k+)/(t1 t2 t3).

    Any two such splittings agree mod 2 at t = 1, so terms are paired with
    their Serre duals and the lexicographically larger key goes into k+.
    Raises DualityViolated when k is not self-dual.
    """
    remaining = dict(k.terms)
    plus = {}
    minus = {}
    for key in sorted(remaining):
        if key not in remaining:
            continue
        mult = remaining.pop(key)
        partner = dual_term_key(key)
        if partner == key:
            raise DualityViolated(f"self-dual term {key}")
        pmult = remaining.pop(partner, 0)
        if pmult != -mult:
            raise DualityViolated(f"term {key} (x{mult}) unpaired: partner has {pmult}")
        if key > partner:
            plus[key] = mult
            minus[partner] = pmult
        else:
            plus[partner] = pmult
            minus[key] = mult
    return KClass(plus, k.factor_count), KClass(minus, k.factor_count)


def edge_plus_minus(
    config0: DoubleBoxConfig,
    axis: int,
    m: int,
    mp: int,
    factor_count: int = 0,
    component2_factors: Optional[Dict[int, int]] = None,
) -> Tuple[KClass, KClass]:
    """(E+, E-) from the G+ construction; asserts the duality exactly."""
    leg = config0.legs[axis]
    if leg is None or not leg.cells:
        zero = KClass.zero(factor_count)
        return zero, zero
    cross_axes = AXIS_CROSS[axis]
    q2 = square_character(leg, cross_axes, factor_count, component2_factors)
    p2 = edge_reflexive_kclass(leg.flag, cross_axes, factor_count)
    e_total = edge_class_from_g(
        edge_g_class(q2, p2, cross_axes, factor_count), axis, m, mp
    )
    e_plus = edge_class_from_g(
        edge_g_plus_class(q2, p2, cross_axes, factor_count), axis, m, mp
    )
    e_minus = e_total - e_plus
    expected = (-e_plus.bar()).twist((-1, -1, -1))
    if e_minus != expected:
        raise DualityViolated("edge splitting does not satisfy the duality")
    return e_plus, e_minus


def sign_exponent(k_plus: KClass) -> int:
    """Rank of the plus part mod 2 (t = 1, tags trivialized)."""
    return k_plus.rank() % 2
