"""Equivariant DT vertex and conifold measures by localization.

The weight of a fixed component is the integral over its product of P^1's of
the equivariant Euler class of (tangent - obstruction theory class); the
Calabi-Yau specialization s1+s2+s3 = 0 of the result is a rational number.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from ..algebra.cohomology import euler_class, localization_integral
from ..algebra.kclass import KClass, make_tag
from ..algebra.qseries import QSeries
from ..algebra.rational import constant_value, specialize_cy
from ..boxes.chi import GlobalConfig, chi_formula, leg_corrections
from ..boxes.config import DoubleBoxConfig
from ..boxes.series import enumerate_with_sizes
from ..toric import ChartToricData
from .characters import config_factor_map
from .classes import vertex_class, edge_class

DEFAULT_SEED = 0


def tangent_class(factor_count: int) -> KClass:
    """Tangent of (P^1)^N in K-theory: sum of 2 [O(1)_i] - 1."""
    total = KClass.zero(factor_count)
    for f in range(factor_count):
        total = total + KClass.term(2, make_tag({f: 1}), (0, 0, 0), factor_count)
        total = total + KClass.term(-1, (), (0, 0, 0), factor_count)
    return total


def weight_of_kclass(obstruction: KClass, factor_count: int, seed: int = DEFAULT_SEED) -> Fraction:
    """Integral of e(tangent - obstruction) with CY specialization."""
    integrand = tangent_class(factor_count) - obstruction
    e = euler_class(integrand)
    if e is None:
        return Fraction(0)
    integral = localization_integral(e, factor_count)
    if integral.is_zero():
        return Fraction(0)
    return constant_value(specialize_cy(integral), seed=seed)


def dt_vertex_weight(config: DoubleBoxConfig, seed: int = DEFAULT_SEED) -> Fraction:
    """Rank-2 equivariant vertex measure of a no-leg configuration."""
    if any(leg is not None and leg.cells for leg in config.legs):
        raise ValueError("dt_vertex_weight expects a configuration without legs")
    factor_map = config_factor_map(config)
    n = len(factor_map)
    v = vertex_class(config, n, factor_map)
    return weight_of_kclass(v, n, seed)


def conifold_obstruction(gc: GlobalConfig) -> Tuple[KClass, int]:
    """V0 + V1 + E of a two-chart one-edge configuration, in chart-0's frame.

    Returns the total class and the global moduli factor count; tags refer to
    the glued P^1 factors.
    """
    if len(gc.fold.vertices) != 2 or len(gc.fold.edges) != 1:
        raise ValueError("conifold obstruction needs exactly two charts and one edge")
    edge = gc.fold.edges[0]
    classes = gc.component_classes()
    factor_of_class: Dict[int, int] = {}
    n = 0
    for idx, entry in enumerate(classes):
        if not entry["forced"]:
            factor_of_class[idx] = n
            n += 1
    chart_maps: List[Dict[int, int]] = [{}, {}]
    edge2_factors: Dict[int, int] = {}
    for idx, entry in enumerate(classes):
        if idx not in factor_of_class:
            continue
        for (vi, ci) in entry["members"]:
            chart_maps[vi][ci] = factor_of_class[idx]
        for (ei, e_ci) in entry["edges"]:
            edge2_factors[e_ci] = factor_of_class[idx]

    v0 = vertex_class(gc.configs[0], n, chart_maps[0])
    v1_own = vertex_class(gc.configs[1], n, chart_maps[1])
    # express chart 1 weights in chart 0 coordinates
    axis0 = gc.fold.edge_axis(edge, 0)
    axis1 = gc.fold.edge_axis(edge, 1)
    ca0 = gc.fold.cross_axes(edge, 0)
    ca1 = gc.fold.cross_axes(edge, 1)
    m, mp = edge.m
    images = [None, None, None]
    for k in range(2):
        w = [0, 0, 0]
        w[ca0[k]] = 1
        w[axis0] = -edge.m[k]
        images[ca1[k]] = tuple(w)
    w_axis = [0, 0, 0]
    w_axis[axis0] = -1
    images[axis1] = tuple(w_axis)
    v1 = v1_own.substitute_monomials(tuple(images))

    # edge class in chart 0 coordinates, cross variables in the chart-0 frame
    leg0 = gc.configs[0].legs[axis0]
    if leg0 is None or not leg0.cells:
        e_class = KClass.zero(n)
    else:
        # normal degrees paired with the chart-frame cross order
        if ca0[0] < ca0[1]:
            m_chart = (edge.m[0], edge.m[1])
        else:
            m_chart = (edge.m[1], edge.m[0])
        comp2 = _chart_frame_edge_factors(gc, 0, axis0, edge2_factors)
        e_class = edge_class(
            gc.configs[0], axis0, m_chart[0], m_chart[1], n, comp2
        )
    return v0 + v1 + e_class, n


def _chart_frame_edge_factors(gc: GlobalConfig, end: int, axis: int, edge2_factors):
    """Translate edge-frame 2D component factors to the chart frame leg."""
    edge = gc.fold.edges[0]
    chart_leg = gc.configs[edge.ends[end]].legs[axis]
    edge_leg = gc.edge_leg(0)
    ca = gc.fold.cross_axes(edge, end)
    out = {}
    for ci, comp in enumerate(chart_leg.components()):
        cells = comp.cells
        if ca[0] > ca[1]:
            cells = frozenset((b, a) for (a, b) in cells)
        e_ci = edge_leg.component_of(min(cells))
        if e_ci in edge2_factors:
            out[ci] = edge2_factors[e_ci]
    return out


def dt_conifold_weight(gc: GlobalConfig, seed: int = DEFAULT_SEED) -> Fraction:
    """Rank-2 equivariant resolved conifold measure of a glued configuration."""
    total, n = conifold_obstruction(gc)
    return weight_of_kclass(total, n, seed)


def w_series(
    chart: ChartToricData, order: int, seed: int = DEFAULT_SEED
) -> QSeries:
    """Generating function of vertex measures: sum w(pi) q^|pi| (no legs)."""
    coeffs: Dict[int, Fraction] = {}
    for size, cfg in enumerate_with_sizes(chart, max_size=order):
        w = dt_vertex_weight(cfg, seed)
        if w:
            coeffs[size] = coeffs.get(size, Fraction(0)) + w
    return QSeries(coeffs, order)


def weight_report_entry(config: DoubleBoxConfig, size: int, seed: int = DEFAULT_SEED) -> dict:
    from .classes import vertex_class

    factor_map = config_factor_map(config)
    n = len(factor_map)
    v = vertex_class(config, n, factor_map)
    w = weight_of_kclass(v, n, seed)
    return {
        "key": repr(config.key()),
        "size": size,
        "omega": config.weight_omega(),
        "weight": str(w),
        "vFingerprint": v.fingerprint(),
    }


def buddy_groups(
    chart: ChartToricData, max_size: int, seed: int = DEFAULT_SEED
) -> List[dict]:
    """Group same-size classes whose weights deviate from omega by the moving
    part of their vertex class; report the weight-sum law per group.

    The grouping heuristic is conjectural; a failing group is reported with
    matched = False, never hidden.
    """
    buckets: Dict[Tuple[int, str], List[dict]] = {}
    for size, cfg in enumerate_with_sizes(chart, max_size=max_size):
        factor_map = config_factor_map(cfg)
        n = len(factor_map)
        v = vertex_class(cfg, n, factor_map)
        w = weight_of_kclass(v, n, seed)
        omega = cfg.weight_omega()
        if w == omega:
            continue
        key = (size, v.t0_moving_part().fingerprint())
        buckets.setdefault(key, []).append(
            {"config": cfg, "omega": omega, "weight": w, "size": size}
        )
    groups = []
    for (size, fp), members in sorted(buckets.items(), key=lambda kv: (kv[0][0], kv[0][1])):
        w_sum = sum(m["weight"] for m in members)
        o_sum = sum(m["omega"] for m in members)
        groups.append(
            {
                "size": size,
                "members": len(members),
                "weightSum": w_sum,
                "omegaSum": o_sum,
                "matched": w_sum == o_sum,
            }
        )
    return groups
