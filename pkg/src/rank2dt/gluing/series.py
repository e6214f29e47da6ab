"""Euler-characteristic generating functions over compact toric 3-folds and
the desk-scale conjecture cross-checks.

Series are computed in the variable x = q^-2 with explicit affine exponent
maps into q, since the global generating functions are Laurent series in
q^-1. All arithmetic is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from ..algebra.qseries import QSeries, boxed_partition_product, geometric, macmahon_power
from ..boxes.chi import (
    GlobalConfig,
    chart_frame_leg,
    chi_formula,
    edge_flag_in_edge_frame,
    leg_corrections,
)
from ..boxes.config import DoubleBoxConfig
from ..boxes.enumerate import base_cylinder, enumerate_box_configs
from ..boxes.series import comb_series, enumerate_with_sizes
from ..boxes.squares import DoubleSquareConfig, enumerate_square_configs
from ..toric import GlobalToricData, ToricThreefold, UnsupportedPreset, p3_threefold
from ..vertex.weights import dt_conifold_weight, dt_vertex_weight, w_series
from .hulls import Hull, enumerate_hulls

QExponents = Dict[int, Fraction]


def _accumulate(target: QExponents, exponent: int, value: Fraction):
    if value:
        target[exponent] = target.get(exponent, Fraction(0)) + value


def _series_into(target: QExponents, series: QSeries, scale: int, offset: int):
    """Add series(x) with q-exponent = offset + scale * x-exponent."""
    for e, c in series.coeffs.items():
        _accumulate(target, offset + scale * e, c)


def hull_chart_series(hull: Hull, fold: ToricThreefold, order: int) -> QSeries:
    """Product over charts of the no-leg configuration series, in x."""
    total = QSeries.one(order)
    for faces in fold.vertices:
        total = total * comb_series(hull.data.chart(faces), order=order)
    return total


def euler_series_c2_1(lo: int, hi: int) -> QExponents:
    """Direct-gluing generating function for (P^3, c1=-1, c2=1).

    q-exponent c3 = c3' - 2 chi; coefficients exact for exponents in [lo, hi].
    """
    fold = p3_threefold()
    out: QExponents = {}
    for hull in enumerate_hulls("p3", -1, 1):
        order = max(0, (hull.c3_prime - lo) // 2)
        series = hull_chart_series(hull, fold, order)
        _series_into(out, series, scale=-2, offset=hull.c3_prime)
    return {e: c for e, c in out.items() if lo <= e <= hi}


def _legged_chi_series(
    hull: Hull,
    fold: ToricThreefold,
    edge_index: int,
    leg: DoubleSquareConfig,
    chi_max: int,
) -> QSeries:
    """Glued series for one legged edge, graded by chi, in x.

    Computed as a product of chart series shifted by f + g. Valid whenever
    every 2D component of the leg is forced, so no edge moduli can survive or
    be created one-sidedly; asserted here.
    """
    if any(comp.has_moduli for comp in leg.components()):
        raise NotImplementedError("legs with unforced components need full gluing")
    edge = fold.edges[edge_index]
    chart_legs: List[Tuple[Optional[DoubleSquareConfig], ...]] = []
    for vi in range(len(fold.vertices)):
        cl = [None, None, None]
        for end in (0, 1):
            if edge.ends[end] == vi:
                axis = fold.edge_axis(edge, end)
                cl[axis] = chart_frame_leg(fold, edge, end, leg)
        chart_legs.append(tuple(cl))
    base_configs = tuple(
        base_cylinder(hull.data.chart(fold.vertices[vi]), chart_legs[vi])
        for vi in range(len(fold.vertices))
    )
    gc = GlobalConfig(hull.data, fold, base_configs)
    f, g = leg_corrections(gc, edge_index)
    order = chi_max - (f + g)
    if order < 0:
        return QSeries.zero(chi_max)
    total = QSeries.one(order)
    for vi, faces in enumerate(fold.vertices):
        total = total * comb_series(hull.data.chart(faces), chart_legs[vi], order)
    return total.shift(f + g)


def euler_series_c2_2(lo: int, hi: int) -> QExponents:
    """Generating function for (P^3, c1=-1, c2=2).

    Types (i) and (ii) glue 0-dimensional quotients over the 24 hulls with
    c2' = 2; type (iii) adds one-leg quotients of multiplicity one over the
    four c2' = 1 hulls, edge by edge. q-exponents: c3 = c3' - 2 chi for the
    0-dimensional families and c3' + |lambda| (c1(X).C + c1(R).C) - 2 chi
    with legs.
    """
    fold = p3_threefold()
    out: QExponents = {}
    for hull in enumerate_hulls("p3", -1, 2):
        if not hull.leg_bearing:
            order = max(0, (hull.c3_prime - lo) // 2)
            series = hull_chart_series(hull, fold, order)
            _series_into(out, series, scale=-2, offset=hull.c3_prime)
            continue
        # one-dimensional quotients of multiplicity 1 along each edge
        for ei, edge in enumerate(fold.edges):
            flag = edge_flag_in_edge_frame(hull.data, edge)
            for leg in enumerate_square_configs(flag, 1)[1]:
                c1r = -sum(
                    (2 * hull.data.u[fc] + hull.data.v[fc]) * edge.D_dot_C(fc)
                    for fc in hull.data.faces
                )
                offset0 = hull.c3_prime + leg.size * (edge.c1X_dot_C + c1r)
                chi_max = (offset0 - lo) // 2
                if chi_max < 0:
                    continue
                series = _legged_chi_series(hull, fold, ei, leg, chi_max)
                _series_into(out, series, scale=-2, offset=offset0)
    return {e: c for e, c in out.items() if lo <= e <= hi}


def euler_series_global(preset: str, c2: int, lo: int, hi: int) -> QExponents:
    if preset != "p3":
        raise UnsupportedPreset(f"no global series for preset {preset!r}")
    if c2 == 1:
        return euler_series_c2_1(lo, hi)
    if c2 == 2:
        return euler_series_c2_2(lo, hi)
    raise UnsupportedPreset(f"c2 = {c2} is not supported")


def min_c2_formula(preset: str, lo: int, hi: int) -> QExponents:
    """Minimal-c2 product formula: M(x)^(2 e(X)) times boxed-partition factors."""
    if preset != "p3":
        raise UnsupportedPreset(f"no minimal-c2 formula for preset {preset!r}")
    fold = p3_threefold()
    hulls = enumerate_hulls("p3", -1, 1)
    out: QExponents = {}
    for hull in hulls:
        order = max(0, (hull.c3_prime - lo) // 2)
        series = macmahon_power(2 * fold.euler_characteristic, order)
        for faces in fold.vertices:
            chart = hull.data.chart(faces)
            singular, _length = chart.singularity_data()
            if singular:
                series = series * boxed_partition_product(*chart.v, order)
        _series_into(out, series, scale=-2, offset=hull.c3_prime)
    return {e: c for e, c in out.items() if lo <= e <= hi}


# ---------------------------------------------------------------------------
# Reference series for Theorem B
# ---------------------------------------------------------------------------


def theorem_b_reference(c2: int, lo: int, hi: int) -> QExponents:
    out: QExponents = {}
    if c2 == 1:
        order = max(0, (1 - lo) // 2)
        m8 = macmahon_power(8, order)
        _series_into(out, m8 * 4, scale=-2, offset=1)
        _series_into(out, m8 * 4, scale=-2, offset=-1)
    elif c2 == 2:
        order = max(0, (8 - lo) // 2)
        m8 = macmahon_power(8, order)
        core = m8 * geometric(1, order) * geometric(1, order) * 12
        for exp_q, coeff in ((-4, 2), (-2, -1), (0, 1), (2, -4), (4, 3), (8, 5)):
            _series_into(out, core * coeff, scale=-2, offset=exp_q - 4)
    else:
        raise UnsupportedPreset(f"no Theorem B reference for c2 = {c2}")
    return {e: c for e, c in out.items() if lo <= e <= hi}


# ---------------------------------------------------------------------------
# Conifold gluing and the conjecture checks
# ---------------------------------------------------------------------------


def conifold_hull(v3: int = 1, v_legs: Tuple[int, int] = (1, 1)) -> GlobalToricData:
    """Standard conifold hull data: v = (v1, v2, v3, 0) with distinct lines."""
    points = ((1, 0), (0, 1), (1, 1))
    return GlobalToricData.from_dict(
        {
            "rho1": {"u": 0, "v": v_legs[0], "p": list(points[0]) if v_legs[0] else None},
            "rho2": {"u": 0, "v": v_legs[1], "p": list(points[1]) if v_legs[1] else None},
            "rho3": {"u": 0, "v": v3, "p": list(points[2]) if v3 else None},
            "rho4": {"u": 0, "v": 0},
        }
    )


def conifold_glued_pairs(
    data: GlobalToricData,
    fold: ToricThreefold,
    leg: DoubleSquareConfig,
    max_chi: int,
):
    """All glued two-chart configurations with the given compact-edge leg.

    Yields (chi, GlobalConfig); enumeration depth is bounded by max_chi.
    """
    edge = fold.edges[0]
    chart_legs = []
    for end in (0, 1):
        axis = fold.edge_axis(edge, end)
        cl = [None, None, None]
        cl[axis] = chart_frame_leg(fold, edge, end, leg)
        chart_legs.append(tuple(cl))
    charts = [data.chart(vf) for vf in fold.vertices]
    base0 = base_cylinder(charts[0], chart_legs[0])
    base1 = base_cylinder(charts[1], chart_legs[1])
    gc_base = GlobalConfig(data, fold, (base0, base1))
    chi_base = chi_formula(gc_base)
    budget = max_chi - chi_base
    if budget < 0:
        return
    lists = [
        enumerate_box_configs(charts[0], chart_legs[0], budget),
        enumerate_box_configs(charts[1], chart_legs[1], budget),
    ]
    for n0, cfgs0 in lists[0].items():
        for n1, cfgs1 in lists[1].items():
            if n0 + n1 > budget:
                continue
            for c0 in cfgs0:
                for c1 in cfgs1:
                    gc = GlobalConfig(data, fold, (c0, c1))
                    yield chi_base + n0 + n1, gc


def conifold_sign(data: GlobalToricData, fold: ToricThreefold, leg_size: int) -> int:
    """(-1)^(|lambda| (m (v1 + v2 + 1) + v3 + v4)) for the compact edge."""
    edge = fold.edges[0]
    m = edge.m[0]
    v1 = data.v[edge.cross_faces[0]]
    v2 = data.v[edge.cross_faces[1]]
    v3 = data.v[edge.end_faces[0]]
    v4 = data.v[edge.end_faces[1]]
    return -1 if (leg_size * (m * (v1 + v2 + 1) + v3 + v4)) % 2 else 1


@dataclass
class ConjectureReport:
    name: str
    coefficients: List[dict]

    @property
    def all_match(self) -> bool:
        return all(entry["match"] for entry in self.coefficients)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "allMatch": self.all_match,
            "coefficients": self.coefficients,
        }


def conjecture_c_check(chart, order: int, seed: int = 0) -> ConjectureReport:
    """wSeries against combSeries through the given order."""
    lhs = w_series(chart, order, seed)
    rhs = comb_series(chart, order=order)
    rows = []
    for e in range(0, order + 1):
        a, b = lhs.coefficient(e), rhs.coefficient(e)
        rows.append({"exponent": e, "lhs": str(a), "rhs": str(b), "match": a == b})
    return ConjectureReport("conjecture-c", rows)


def conifold_conjecture_check(
    data: GlobalToricData,
    fold: ToricThreefold,
    leg_sizes: Tuple[int, ...] = (1,),
    max_chi: int = 3,
    seed: int = 0,
) -> ConjectureReport:
    """Main Conjecture on the resolved conifold, graded by chi per leg class.

    For each double square configuration of the listed sizes on the compact
    edge, compares sum w q^chi against sign * sum omega q^chi coefficientwise.
    """
    edge = fold.edges[0]
    flag = edge_flag_in_edge_frame(data, edge)
    rows = []
    for size in leg_sizes:
        legs = enumerate_square_configs(flag, size)[size]
        for leg in legs:
            lhs: Dict[int, Fraction] = {}
            rhs: Dict[int, Fraction] = {}
            for chi, gc in conifold_glued_pairs(data, fold, leg, max_chi):
                _accumulate(rhs, chi, Fraction(gc.weight_omega()))
                _accumulate(lhs, chi, dt_conifold_weight(gc, seed))
            sign = conifold_sign(data, fold, leg.size)
            for chi in sorted(set(lhs) | set(rhs)):
                a = lhs.get(chi, Fraction(0))
                b = sign * rhs.get(chi, Fraction(0))
                rows.append(
                    {
                        "leg": repr(dict(leg.cells)),
                        "exponent": chi,
                        "lhs": str(a),
                        "rhs": str(b),
                        "match": a == b,
                    }
                )
    return ConjectureReport("main-conjecture-conifold", rows)
