"""Exact Laurent polynomials in the three torus characters t1, t2, t3."""

from __future__ import annotations

from typing import Dict, Iterable, Tuple

Exponent = Tuple[int, int, int]


class LaurentPoly3:
    """Integer-coefficient Laurent polynomial in t1, t2, t3.

    Stored as a map from exponent triples to nonzero integer coefficients.
    Instances are immutable; all operations return new objects.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Dict[Exponent, int] | None = None):
        cleaned = {}
        if terms:
            for exp, coeff in terms.items():
                if coeff:
                    cleaned[tuple(exp)] = coeff
        object.__setattr__(self, "terms", cleaned)

    def __setattr__(self, *a):
        raise AttributeError("LaurentPoly3 is immutable")

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls) -> "LaurentPoly3":
        return cls()

    @classmethod
    def one(cls) -> "LaurentPoly3":
        return cls({(0, 0, 0): 1})

    @classmethod
    def monomial(cls, exp: Iterable[int], coeff: int = 1) -> "LaurentPoly3":
        return cls({tuple(exp): coeff})

    @classmethod
    def t(cls, axis: int, power: int = 1) -> "LaurentPoly3":
        exp = [0, 0, 0]
        exp[axis] = power
        return cls({tuple(exp): 1})

    # -- ring operations ----------------------------------------------

    def __add__(self, other) -> "LaurentPoly3":
        other = _coerce(other)
        terms = dict(self.terms)
        for exp, coeff in other.terms.items():
            new = terms.get(exp, 0) + coeff
            if new:
                terms[exp] = new
            else:
                terms.pop(exp, None)
        return LaurentPoly3(terms)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly3":
        return LaurentPoly3({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) + (-self)

    def __mul__(self, other) -> "LaurentPoly3":
        if isinstance(other, int):
            return LaurentPoly3({e: c * other for e, c in self.terms.items()})
        other = _coerce(other)
        terms: Dict[Exponent, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exp = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2])
                new = terms.get(exp, 0) + c1 * c2
                if new:
                    terms[exp] = new
                else:
                    terms.pop(exp, None)
        return LaurentPoly3(terms)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        try:
            other = _coerce(other)
        except TypeError:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # -- queries and transforms ----------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def bar(self) -> "LaurentPoly3":
        """Character inversion: t^w -> t^(-w)."""
        return LaurentPoly3({(-a, -b, -c): v for (a, b, c), v in self.terms.items()})

    def evaluate_at_one(self) -> int:
        """Sum of coefficients, i.e. the rank of the corresponding class."""
        return sum(self.terms.values())

    def substitute_monomials(self, images: Tuple[Exponent, Exponent, Exponent]) -> "LaurentPoly3":
        """Map t_i to the monomial with exponent triple images[i]."""
        terms: Dict[Exponent, int] = {}
        for (a, b, c), coeff in self.terms.items():
            exp = tuple(
                a * images[0][k] + b * images[1][k] + c * images[2][k] for k in range(3)
            )
            new = terms.get(exp, 0) + coeff
            if new:
                terms[exp] = new
            else:
                terms.pop(exp, None)
        return LaurentPoly3(terms)

    def sorted_terms(self):
        return sorted(self.terms.items())

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for exp, coeff in self.sorted_terms():
            mono = "*".join(
                f"t{i+1}^{e}" if e != 1 else f"t{i+1}" for i, e in enumerate(exp) if e
            )
            if not mono:
                parts.append(str(coeff))
            elif coeff == 1:
                parts.append(mono)
            elif coeff == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{coeff}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def _coerce(value) -> LaurentPoly3:
    if isinstance(value, LaurentPoly3):
        return value
    if isinstance(value, int):
        return LaurentPoly3({(0, 0, 0): value}) if value else LaurentPoly3()
    raise TypeError(f"cannot coerce {type(value)!r} to LaurentPoly3")
