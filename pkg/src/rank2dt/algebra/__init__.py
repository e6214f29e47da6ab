"""Exact algebra kernel: Laurent polynomials, K-classes, rational functions,
nilpotent cohomology of (P^1)^N and truncated q-series."""

from .laurent import LaurentPoly3
from .kclass import KClass, KFraction, NotPolynomial, bar_involution, make_tag
from .rational import (
    NotConstant,
    PoleOnCYLocus,
    Poly,
    RationalFn,
    constant_value,
    specialize_cy,
)
from .cohomology import CohClass, IllDefinedEuler, euler_class, localization_integral
from .qseries import (
    QSeries,
    boxed_partition_product,
    geometric,
    macmahon_power,
    macmahon_squared,
)

__all__ = [
    "LaurentPoly3",
    "KClass",
    "KFraction",
    "NotPolynomial",
    "bar_involution",
    "make_tag",
    "Poly",
    "RationalFn",
    "NotConstant",
    "PoleOnCYLocus",
    "constant_value",
    "specialize_cy",
    "CohClass",
    "IllDefinedEuler",
    "euler_class",
    "localization_integral",
    "QSeries",
    "boxed_partition_product",
    "geometric",
    "macmahon_power",
    "macmahon_squared",
]
