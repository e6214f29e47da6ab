"""Cohomology of (P^1)^N with rational-function coefficients.

Classes live in H*((P^1)^N) tensor Q(s1,s2,s3): each h_i squares to zero, so
a class is a map from squarefree h-monomials (frozensets of factor indices)
to RationalFn. Equivariant Euler classes of K-classes land here, and the
localization integral extracts the top h-monomial coefficient.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, FrozenSet, Optional

from .kclass import KClass, TRIVIAL_TAG
from .rational import Poly, RationalFn

HKey = FrozenSet[int]


class IllDefinedEuler(Exception):
    """Euler class requires inverting a zero (or nilpotent) factor."""


class CohClass:
    __slots__ = ("coeffs", "factor_count")

    def __init__(self, coeffs: Dict[HKey, RationalFn] | None = None, factor_count: int = 0):
        cleaned = {}
        if coeffs:
            for key, value in coeffs.items():
                if not value.is_zero():
                    cleaned[frozenset(key)] = value
        object.__setattr__(self, "coeffs", cleaned)
        object.__setattr__(self, "factor_count", factor_count)

    def __setattr__(self, *a):
        raise AttributeError("CohClass is immutable")

    @classmethod
    def scalar(cls, value: RationalFn, factor_count: int = 0) -> "CohClass":
        return cls({frozenset(): value}, factor_count)

    def __add__(self, other: "CohClass") -> "CohClass":
        coeffs = dict(self.coeffs)
        for key, value in other.coeffs.items():
            coeffs[key] = coeffs.get(key, RationalFn.zero()) + value
        return CohClass(coeffs, max(self.factor_count, other.factor_count))

    def __mul__(self, other) -> "CohClass":
        if isinstance(other, RationalFn):
            other = CohClass.scalar(other, self.factor_count)
        coeffs: Dict[HKey, RationalFn] = {}
        for k1, v1 in self.coeffs.items():
            for k2, v2 in other.coeffs.items():
                if k1 & k2:
                    continue  # h_i^2 = 0
                key = k1 | k2
                term = v1 * v2
                coeffs[key] = coeffs.get(key, RationalFn.zero()) + term
        return CohClass(coeffs, max(self.factor_count, other.factor_count))

    __rmul__ = __mul__

    def coefficient(self, key) -> RationalFn:
        return self.coeffs.get(frozenset(key), RationalFn.zero())

    def __eq__(self, other):
        if not isinstance(other, CohClass):
            return NotImplemented
        keys = set(self.coeffs) | set(other.coeffs)
        return all(self.coefficient(k) == other.coefficient(k) for k in keys)

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for key in sorted(self.coeffs, key=sorted):
            mono = "*".join(f"h{i+1}" for i in sorted(key)) or "1"
            parts.append(f"({self.coeffs[key]})*{mono}")
        return " + ".join(parts)


def _binomial_fraction(m: int, k: int):
    """Generalized binomial coefficient binom(m, k) for integer m, k >= 0."""
    num = 1
    for j in range(k):
        num *= m - j
    den = 1
    for j in range(1, k + 1):
        den *= j
    return num, den


def euler_class(k: KClass) -> Optional[CohClass]:
    """Equivariant Euler class of a K-class; None encodes the exact zero.

    Each term (m, tag, w) contributes (sum d_i h_i + w.s)^m. A positive-
    multiplicity term with trivial tag and zero weight forces the class to 0;
    a negative-multiplicity one is an ill-defined 1/0.
    """
    n = k.factor_count
    zero_mult = k.terms.get((TRIVIAL_TAG, (0, 0, 0)), 0)
    if zero_mult < 0:
        raise IllDefinedEuler("negative multiplicity at trivial tag, zero weight")
    if zero_mult > 0:
        return None

    scalar = RationalFn.const(1)
    result = CohClass.scalar(RationalFn.const(1), n)
    for (tag, w), mult in sorted(k.terms.items()):
        linear = Poly.linear(*w)
        if not tag:
            scalar = scalar * RationalFn.from_poly(linear) ** mult
            continue
        if not linear:
            if mult < 0:
                raise IllDefinedEuler("cannot invert a purely nilpotent factor")
            nil = CohClass(
                {frozenset([f]): RationalFn.const(d) for f, d in tag}, n
            )
            for _ in range(mult):
                result = result * nil
            continue
        # (L + nil)^mult = L^mult * sum_k binom(mult, k) (nil/L)^k
        scalar = scalar * RationalFn.from_poly(linear) ** mult
        l_inv = RationalFn.from_poly(linear).inverse()
        nil_over_l = CohClass(
            {frozenset([f]): RationalFn.const(d) * l_inv for f, d in tag}, n
        )
        expansion = CohClass.scalar(RationalFn.const(1), n)
        power = CohClass.scalar(RationalFn.const(1), n)
        for j in range(1, len(tag) + 1):
            power = power * nil_over_l
            if not power.coeffs:
                break
            bn, bd = _binomial_fraction(mult, j)
            coeff = RationalFn.const(Fraction(bn, bd))
            expansion = expansion + power * coeff
        result = result * expansion
    return result * scalar


def localization_integral(c: Optional[CohClass], factor_count: int | None = None) -> RationalFn:
    """Integrate over (P^1)^N: the coefficient of h_1 ... h_N (scalar if N=0)."""
    if c is None:
        return RationalFn.zero()
    n = c.factor_count if factor_count is None else factor_count
    return c.coefficient(frozenset(range(n)))
