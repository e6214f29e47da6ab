"""Double square / double box combinatorics and generating functions."""

from .squares import (
    DoubleSquareConfig,
    EdgeFlag,
    NotADoubleSquare,
    enumerate_square_configs,
    square_config_from_pair,
    square_config_from_triple,
)
from .config import DoubleBoxConfig, NotADoubleBox, edge_flag_of_chart
from .enumerate import base_cylinder, canonicalize, enumerate_box_configs
from .chi import (
    GlobalConfig,
    c3_quotient,
    cech_chi,
    chi_formula,
    edge_frame_leg,
    chart_frame_leg,
    edge_flag_in_edge_frame,
    leg_corrections,
    leg_corrections_paper,
    leg_multiplicity_total,
)
from .series import comb_series, enumerate_with_sizes

__all__ = [
    "DoubleSquareConfig",
    "EdgeFlag",
    "NotADoubleSquare",
    "enumerate_square_configs",
    "square_config_from_pair",
    "square_config_from_triple",
    "DoubleBoxConfig",
    "NotADoubleBox",
    "edge_flag_of_chart",
    "base_cylinder",
    "canonicalize",
    "enumerate_box_configs",
    "GlobalConfig",
    "c3_quotient",
    "cech_chi",
    "chi_formula",
    "edge_frame_leg",
    "chart_frame_leg",
    "edge_flag_in_edge_frame",
    "leg_corrections",
    "leg_corrections_paper",
    "leg_multiplicity_total",
    "comb_series",
    "enumerate_with_sizes",
]
