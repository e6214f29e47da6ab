"""Exact rational functions in the equivariant parameters s1, s2, s3.

Polynomials carry integer coefficients; rational functions keep a Fraction
prefactor and *factored* numerator/denominator lists, which is the shape
equivariant Euler classes arrive in. Denominators are only expanded when an
addition forces it, and cancellation against the Calabi-Yau locus
s1 + s2 + s3 = 0 is done by exact polynomial division.
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import gcd
from typing import Dict, Optional, Tuple

Monomial = Tuple[int, int, int]


class PoleOnCYLocus(Exception):
    """Denominator vanishes identically on s1+s2+s3 = 0 with no cancellation."""


class NotConstant(Exception):
    """Probe evaluations of a supposedly constant function disagree."""


class Poly:
    """Integer-coefficient polynomial in s1, s2, s3 (exponents >= 0)."""

    __slots__ = ("terms",)

    def __init__(self, terms: Dict[Monomial, int] | None = None):
        cleaned = {}
        if terms:
            for exp, c in terms.items():
                if c:
                    cleaned[tuple(exp)] = c
        object.__setattr__(self, "terms", cleaned)

    def __setattr__(self, *a):
        raise AttributeError("Poly is immutable")

    @classmethod
    def zero(cls) -> "Poly":
        return cls()

    @classmethod
    def const(cls, c: int) -> "Poly":
        return cls({(0, 0, 0): c})

    @classmethod
    def linear(cls, c1: int, c2: int, c3: int) -> "Poly":
        return cls({(1, 0, 0): c1, (0, 1, 0): c2, (0, 0, 1): c3})

    @classmethod
    def variable(cls, axis: int) -> "Poly":
        exp = [0, 0, 0]
        exp[axis] = 1
        return cls({tuple(exp): 1})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, Poly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "Poly") -> "Poly":
        terms = dict(self.terms)
        for e, c in other.terms.items():
            new = terms.get(e, 0) + c
            if new:
                terms[e] = new
            else:
                terms.pop(e, None)
        return Poly(terms)

    def __neg__(self):
        return Poly({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other) -> "Poly":
        if isinstance(other, int):
            return Poly({e: c * other for e, c in self.terms.items()})
        terms: Dict[Monomial, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2])
                new = terms.get(e, 0) + c1 * c2
                if new:
                    terms[e] = new
                else:
                    terms.pop(e, None)
        return Poly(terms)

    __rmul__ = __mul__

    def content(self) -> int:
        g = 0
        for c in self.terms.values():
            g = gcd(g, abs(c))
        return g

    def leading_monomial(self) -> Monomial:
        return max(self.terms)

    def primitive(self) -> Tuple["Poly", Fraction]:
        """Return (primitive canonical poly, scalar) with self = scalar * poly.

        Canonical: content 1, lex-leading coefficient positive.
        """
        if not self.terms:
            return self, Fraction(0)
        g = self.content()
        sign = 1 if self.terms[self.leading_monomial()] > 0 else -1
        div = g * sign
        return Poly({e: c // div for e, c in self.terms.items()}), Fraction(div)

    def exact_divide(self, divisor: "Poly") -> Optional["Poly"]:
        """Quotient self/divisor when the division is exact, else None."""
        if not divisor:
            raise ZeroDivisionError("division by zero polynomial")
        if not self.terms:
            return Poly()
        rem = dict(self.terms)
        lead = divisor.leading_monomial()
        lead_c = divisor.terms[lead]
        out: Dict[Monomial, int] = {}
        while rem:
            e = max(rem)
            c = rem[e]
            q_exp = (e[0] - lead[0], e[1] - lead[1], e[2] - lead[2])
            if min(q_exp) < 0 or c % lead_c:
                return None
            q_c = c // lead_c
            out[q_exp] = q_c
            for de, dc in divisor.terms.items():
                key = (q_exp[0] + de[0], q_exp[1] + de[1], q_exp[2] + de[2])
                new = rem.get(key, 0) - q_c * dc
                if new:
                    rem[key] = new
                else:
                    rem.pop(key, None)
        return Poly(out)

    def substitute_cy(self) -> "Poly":
        """Substitute s3 = -s1 - s2."""
        terms: Dict[Monomial, int] = {}
        for (a, b, c), coeff in self.terms.items():
            # (-s1 - s2)^c expanded by binomials
            sign = -1 if c % 2 else 1
            binom = 1
            for j in range(c + 1):
                e = (a + c - j, b + j, 0)
                new = terms.get(e, 0) + sign * binom * coeff
                if new:
                    terms[e] = new
                else:
                    terms.pop(e, None)
                binom = binom * (c - j) // (j + 1)
        return Poly(terms)

    def evaluate(self, point: Tuple[Fraction, Fraction, Fraction]) -> Fraction:
        total = Fraction(0)
        for (a, b, c), coeff in self.terms.items():
            total += coeff * point[0] ** a * point[1] ** b * point[2] ** c
        return total

    def degree(self) -> int:
        return max(sum(e) for e in self.terms) if self.terms else -1

    def is_homogeneous(self) -> bool:
        degrees = {sum(e) for e in self.terms}
        return len(degrees) <= 1

    def __repr__(self):
        if not self.terms:
            return "0"
        names = ("s1", "s2", "s3")
        parts = []
        for e, c in sorted(self.terms.items(), reverse=True):
            mono = "*".join(
                f"{names[i]}^{p}" if p > 1 else names[i] for i, p in enumerate(e) if p
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


S_SUM = Poly.linear(1, 1, 1)


def _split_cy_power(poly: Poly) -> Tuple[int, Poly]:
    """Write poly = (s1+s2+s3)^j * rest with rest not divisible; return (j, rest)."""
    j = 0
    current = poly
    while True:
        quotient = current.exact_divide(S_SUM)
        if quotient is None:
            return j, current
        j += 1
        current = quotient


class RationalFn:
    """scalar * prod(num_factors) / prod(den_factors), factors primitive."""

    __slots__ = ("scalar", "num_factors", "den_factors")

    def __init__(self, scalar: Fraction, num_factors=(), den_factors=()):
        scalar = Fraction(scalar)
        num: Dict[Poly, int] = {}
        den: Dict[Poly, int] = {}
        if scalar != 0:
            for f, p in num_factors:
                if p == 0:
                    continue
                prim, s = f.primitive()
                if s == 0:
                    scalar = Fraction(0)
                    break
                scalar *= s ** p
                if prim.terms != {(0, 0, 0): 1}:
                    num[prim] = num.get(prim, 0) + p
        if scalar != 0:
            for f, p in den_factors:
                if p == 0:
                    continue
                prim, s = f.primitive()
                if s == 0:
                    raise ZeroDivisionError("zero polynomial in denominator")
                scalar /= s ** p
                if prim.terms != {(0, 0, 0): 1}:
                    den[prim] = den.get(prim, 0) + p
        if scalar == 0:
            num, den = {}, {}
        else:
            # cancel identical factors; migrate negative powers across the bar
            for f in list(num):
                if f in den:
                    common = min(num[f], den[f])
                    num[f] -= common
                    den[f] -= common
            num = {f: p for f, p in num.items() if p}
            den = {f: p for f, p in den.items() if p}
            for f, p in list(num.items()):
                if p < 0:
                    den[f] = den.get(f, 0) - p
                    del num[f]
            for f, p in list(den.items()):
                if p < 0:
                    num[f] = num.get(f, 0) - p
                    del den[f]
        object.__setattr__(self, "scalar", scalar)
        object.__setattr__(self, "num_factors", tuple(sorted(num.items(), key=_factor_key)))
        object.__setattr__(self, "den_factors", tuple(sorted(den.items(), key=_factor_key)))

    def __setattr__(self, *a):
        raise AttributeError("RationalFn is immutable")

    # -- constructors ----------------------------------------------------

    @classmethod
    def zero(cls) -> "RationalFn":
        return cls(Fraction(0))

    @classmethod
    def const(cls, value) -> "RationalFn":
        return cls(Fraction(value))

    @classmethod
    def from_poly(cls, poly: Poly) -> "RationalFn":
        return cls(Fraction(1), ((poly, 1),))

    @classmethod
    def from_fraction_of_polys(cls, num: Poly, den: Poly) -> "RationalFn":
        return cls(Fraction(1), ((num, 1),), ((den, 1),))

    # -- arithmetic --------------------------------------------------------

    def is_zero(self) -> bool:
        return self.scalar == 0

    def __mul__(self, other) -> "RationalFn":
        other = _coerce(other)
        if self.is_zero() or other.is_zero():
            return RationalFn.zero()
        return RationalFn(
            self.scalar * other.scalar,
            self.num_factors + other.num_factors,
            self.den_factors + other.den_factors,
        )

    __rmul__ = __mul__

    def inverse(self) -> "RationalFn":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return RationalFn(1 / self.scalar, self.den_factors, self.num_factors)

    def __truediv__(self, other):
        return self * _coerce(other).inverse()

    def __neg__(self):
        return RationalFn(-self.scalar, self.num_factors, self.den_factors)

    def __pow__(self, n: int) -> "RationalFn":
        if n == 0:
            return RationalFn.const(1)
        base = self if n > 0 else self.inverse()
        n = abs(n)
        return RationalFn(
            base.scalar ** n,
            tuple((f, p * n) for f, p in base.num_factors),
            tuple((f, p * n) for f, p in base.den_factors),
        )

    def numerator_poly(self) -> Poly:
        out = Poly.const(1)
        for f, p in self.num_factors:
            for _ in range(p):
                out = out * f
        return out

    def denominator_poly(self) -> Poly:
        out = Poly.const(1)
        for f, p in self.den_factors:
            for _ in range(p):
                out = out * f
        return out

    def __add__(self, other) -> "RationalFn":
        other = _coerce(other)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        den: Dict[Poly, int] = dict(self.den_factors)
        for f, p in other.den_factors:
            den[f] = max(den.get(f, 0), p)
        num1 = self.numerator_poly()
        num2 = other.numerator_poly()
        for f, p in den.items():
            extra1 = p - dict(self.den_factors).get(f, 0)
            extra2 = p - dict(other.den_factors).get(f, 0)
            for _ in range(extra1):
                num1 = num1 * f
            for _ in range(extra2):
                num2 = num2 * f
        a, b = self.scalar, other.scalar
        q = a.denominator * b.denominator
        combined = num1 * (a.numerator * b.denominator) + num2 * (b.numerator * a.denominator)
        return RationalFn(Fraction(1, q), ((combined, 1),), tuple(den.items()))

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __eq__(self, other):
        try:
            other = _coerce(other)
        except TypeError:
            return NotImplemented
        diff = self - other
        return diff.is_zero()

    def __hash__(self):
        return hash((self.scalar, self.num_factors, self.den_factors))

    # -- structure ---------------------------------------------------------

    def degree(self) -> int:
        """Homogeneity degree (numerator minus denominator)."""
        if self.is_zero():
            return 0
        d = 0
        for f, p in self.num_factors:
            if not f.is_homogeneous():
                raise ValueError("inhomogeneous factor")
            d += f.degree() * p
        for f, p in self.den_factors:
            if not f.is_homogeneous():
                raise ValueError("inhomogeneous factor")
            d -= f.degree() * p
        return d

    def is_homogeneous(self) -> bool:
        return all(f.is_homogeneous() for f, _ in self.num_factors + self.den_factors)

    def evaluate(self, point) -> Fraction:
        if self.is_zero():
            return Fraction(0)
        value = self.scalar
        for f, p in self.num_factors:
            value *= f.evaluate(point) ** p
        for f, p in self.den_factors:
            v = f.evaluate(point)
            if v == 0:
                raise ZeroDivisionError("denominator factor vanishes at probe point")
            value /= v ** p
        return value

    def __repr__(self):
        if self.is_zero():
            return "0"
        bits = [str(self.scalar)]
        for f, p in self.num_factors:
            bits.append(f"({f})^{p}" if p != 1 else f"({f})")
        out = " * ".join(bits)
        if self.den_factors:
            out += " / [" + " * ".join(
                f"({f})^{p}" if p != 1 else f"({f})" for f, p in self.den_factors
            ) + "]"
        return out


def _factor_key(item):
    poly, power = item
    return (sorted(poly.terms.items()), power)


def _coerce(value) -> RationalFn:
    if isinstance(value, RationalFn):
        return value
    if isinstance(value, (int, Fraction)):
        return RationalFn.const(value)
    if isinstance(value, Poly):
        return RationalFn.from_poly(value)
    raise TypeError(f"cannot coerce {type(value)!r} to RationalFn")


def specialize_cy(r: RationalFn) -> RationalFn:
    """Substitute s3 = -s1 - s2, cancelling (s1+s2+s3)-factors exactly first.

    Raises PoleOnCYLocus when the denominator vanishes identically on the
    locus after all possible cancellation.
    """
    if r.is_zero():
        return r
    k_num = 0
    num_rest = []
    for f, p in r.num_factors:
        j, rest = _split_cy_power(f)
        k_num += j * p
        if rest.terms != {(0, 0, 0): 1}:
            num_rest.append((rest, p))
    k_den = 0
    den_rest = []
    for f, p in r.den_factors:
        j, rest = _split_cy_power(f)
        k_den += j * p
        if rest.terms != {(0, 0, 0): 1}:
            den_rest.append((rest, p))
    deficit = k_den - k_num
    if deficit < 0:
        # surviving (s1+s2+s3) numerator factors vanish on the locus
        return RationalFn.zero()
    if deficit > 0:
        # expand the numerator and pull out the remaining CY powers
        expanded = Poly.const(1)
        for f, p in num_rest:
            for _ in range(p):
                expanded = expanded * f
        for _ in range(deficit):
            quotient = expanded.exact_divide(S_SUM)
            if quotient is None:
                raise PoleOnCYLocus(
                    f"(s1+s2+s3)^{deficit} in denominator does not cancel"
                )
            expanded = quotient
        num_rest = [(expanded, 1)]
    sub_num = [(f.substitute_cy(), p) for f, p in num_rest]
    sub_den = [(f.substitute_cy(), p) for f, p in den_rest]
    for f, _ in sub_den:
        if not f:
            raise PoleOnCYLocus("denominator factor vanished unexpectedly")
    return RationalFn(r.scalar, tuple(sub_num), tuple(sub_den))


def constant_value(r: RationalFn, seed: int = 0, probes: int = 3) -> Fraction:
    """Extract the numeric value of a degree-0 homogeneous rational function.

    Evaluates at seeded random rational points with pairwise-distinct ratios,
    avoiding denominator zeros; raises NotConstant when values disagree or the
    function is not homogeneous of degree 0.
    """
    if r.is_zero():
        return Fraction(0)
    if not r.is_homogeneous() or r.degree() != 0:
        raise NotConstant(f"not homogeneous of degree 0 (degree {r.degree()})")
    rng = random.Random(seed)
    values = []
    ratios = set()
    attempts = 0
    while len(values) < probes:
        attempts += 1
        if attempts > 1000:
            raise NotConstant("could not find enough probe points")
        s1 = Fraction(rng.randint(1, 10 ** 6))
        s2 = Fraction(rng.randint(1, 10 ** 6))
        if s2 == 0 or (s1 / s2) in ratios:
            continue
        point = (s1, s2, -s1 - s2)
        try:
            values.append(r.evaluate(point))
        except ZeroDivisionError:
            continue
        ratios.add(s1 / s2)
    if len(set(values)) != 1:
        raise NotConstant(f"probe values disagree: {sorted(set(values))}")
    return values[0]
