"""Equivariant K-theory of the DT obstruction theory on fixed components."""

from .characters import config_factor_map, quotient_character, square_character
from .classes import (
    DualityViolated,
    edge_class,
    edge_plus_minus,
    plus_minus_split,
    serre_dual_check,
    sign_exponent,
    vertex_class,
)
from .weights import (
    buddy_groups,
    conifold_obstruction,
    dt_conifold_weight,
    dt_vertex_weight,
    tangent_class,
    w_series,
    weight_of_kclass,
    weight_report_entry,
)

__all__ = [
    "config_factor_map",
    "quotient_character",
    "square_character",
    "DualityViolated",
    "edge_class",
    "edge_plus_minus",
    "plus_minus_split",
    "serre_dual_check",
    "sign_exponent",
    "vertex_class",
    "buddy_groups",
    "conifold_obstruction",
    "dt_conifold_weight",
    "dt_vertex_weight",
    "tangent_class",
    "w_series",
    "weight_of_kclass",
    "weight_report_entry",
]
