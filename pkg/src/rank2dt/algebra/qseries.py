"""Truncated series in one formal variable with exact rational coefficients.

The variable is abstract: callers may read it as q, q^-1 or q^-2. A series
knows its lowest exponent and the truncation order up to which coefficients
are exact; binary operations take the minimum of the two orders so precision
is never silently overstated.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict


class QSeries:
    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs: Dict[int, Fraction] | None = None, order: int = 0):
        cleaned = {}
        if coeffs:
            for exp, c in coeffs.items():
                c = Fraction(c)
                if c and exp <= order:
                    cleaned[exp] = c
        object.__setattr__(self, "coeffs", cleaned)
        object.__setattr__(self, "order", order)

    def __setattr__(self, *a):
        raise AttributeError("QSeries is immutable")

    @classmethod
    def zero(cls, order: int) -> "QSeries":
        return cls({}, order)

    @classmethod
    def one(cls, order: int) -> "QSeries":
        return cls({0: Fraction(1)}, order)

    @classmethod
    def monomial(cls, exp: int, coeff=1, order: int = 0) -> "QSeries":
        return cls({exp: Fraction(coeff)}, max(order, exp))

    @property
    def lowest(self) -> int:
        return min(self.coeffs) if self.coeffs else 0

    def coefficient(self, exp: int) -> Fraction:
        if exp > self.order:
            raise ValueError(f"coefficient of exponent {exp} beyond truncation order {self.order}")
        return self.coeffs.get(exp, Fraction(0))

    def __add__(self, other) -> "QSeries":
        other = self._coerce(other)
        order = min(self.order, other.order)
        coeffs = {e: c for e, c in self.coeffs.items() if e <= order}
        for e, c in other.coeffs.items():
            if e <= order:
                coeffs[e] = coeffs.get(e, Fraction(0)) + c
        return QSeries(coeffs, order)

    __radd__ = __add__

    def __neg__(self):
        return QSeries({e: -c for e, c in self.coeffs.items()}, self.order)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __mul__(self, other) -> "QSeries":
        if isinstance(other, (int, Fraction)):
            return QSeries({e: c * other for e, c in self.coeffs.items()}, self.order)
        other = self._coerce(other)
        # Truncation of a product: exponents above min(orders) + the partner's
        # lowest exponent cannot be trusted.
        order = min(self.order + other.lowest, other.order + self.lowest)
        coeffs: Dict[int, Fraction] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = e1 + e2
                if e <= order:
                    coeffs[e] = coeffs.get(e, Fraction(0)) + c1 * c2
        return QSeries(coeffs, order)

    __rmul__ = __mul__

    def shift(self, delta: int) -> "QSeries":
        """Multiply by the monomial of exponent delta."""
        return QSeries({e + delta: c for e, c in self.coeffs.items()}, self.order + delta)

    def regrade(self, scale: int, offset: int = 0) -> "QSeries":
        """Map each exponent e to scale*e + offset (scale may be negative).

        Used to reread a series in x as a series in q = x^scale-style
        conventions. With negative scale the truncation order becomes a bound
        in the other direction, so the caller supplies the resulting order
        implicitly: coefficients are exact exactly for source exponents within
        the original order.
        """
        coeffs = {scale * e + offset: c for e, c in self.coeffs.items()}
        if scale >= 0:
            order = scale * self.order + offset
        else:
            order = scale * self.lowest + offset
        return QSeries(coeffs, order)

    def truncate(self, order: int) -> "QSeries":
        if order > self.order:
            raise ValueError("cannot extend truncation order")
        return QSeries({e: c for e, c in self.coeffs.items() if e <= order}, order)

    def __pow__(self, n: int) -> "QSeries":
        if n < 0:
            raise ValueError("negative powers not supported; invert explicitly")
        result = QSeries.one(self.order)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def agrees_with(self, other: "QSeries", lo: int | None = None, hi: int | None = None) -> bool:
        """Coefficientwise equality over the overlap of exact ranges."""
        hi = min(self.order, other.order) if hi is None else hi
        lo = min(self.lowest, other.lowest) if lo is None else lo
        return all(self.coefficient(e) == other.coefficient(e) for e in range(lo, hi + 1))

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.order, frozenset(self.coeffs.items())))

    def text_lines(self) -> str:
        """One "exponent<TAB>coefficient" line per term, sorted by exponent."""
        return "\n".join(f"{e}\t{c}" for e, c in sorted(self.coeffs.items()))

    def __repr__(self):
        body = " + ".join(f"{c}*q^{e}" for e, c in sorted(self.coeffs.items())) or "0"
        return f"{body} (order {self.order})"

    def _coerce(self, value) -> "QSeries":
        if isinstance(value, QSeries):
            return value
        if isinstance(value, (int, Fraction)):
            return QSeries({0: Fraction(value)}, self.order)
        raise TypeError(f"cannot coerce {type(value)!r} to QSeries")


def geometric(step: int, order: int) -> QSeries:
    """1/(1 - x^step) truncated at the given order (step > 0)."""
    if step <= 0:
        raise ValueError("step must be positive")
    return QSeries({e: Fraction(1) for e in range(0, order + 1, step)}, order)


def one_minus_power(step: int, order: int) -> QSeries:
    """1 - x^step as an exact truncated series."""
    return QSeries({0: Fraction(1), step: Fraction(-1)}, order)


def macmahon_squared(order: int) -> QSeries:
    """M(x)^2 = prod_{k>0} (1 - x^k)^(-2k) truncated at the given order."""
    result = QSeries.one(order)
    for k in range(1, order + 1):
        factor = geometric(k, order) ** (2 * k)
        result = result * factor
    return result


def macmahon_power(power: int, order: int) -> QSeries:
    """M(x)^power truncated at the given order (power >= 0)."""
    result = QSeries.one(order)
    for k in range(1, order + 1):
        result = result * geometric(k, order) ** (power * k)
    return result


def boxed_partition_product(v1: int, v2: int, v3: int, order: int | None = None) -> QSeries:
    """Generating polynomial of 3D partitions inside a v1 x v2 x v3 box.

    prod_{i<=v1, j<=v2, k<=v3} (1 - x^(i+j+k-1)) / (1 - x^(i+j+k-2)),
    a polynomial of degree v1*v2*v3.
    """
    if min(v1, v2, v3) <= 0:
        raise ValueError("box lengths must be positive")
    degree = v1 * v2 * v3
    if order is None:
        order = degree
    work = max(order, degree)
    result = QSeries.one(work)
    for i in range(1, v1 + 1):
        for j in range(1, v2 + 1):
            for k in range(1, v3 + 1):
                result = result * one_minus_power(i + j + k - 1, work)
                result = result * geometric(i + j + k - 2, work)
    return result.truncate(order) if order < work else result
