"""K-theory classes over products of P^1 with torus weights.

A KClass is a finite sum of terms m * [tag] * t^w where m is an integer
multiplicity, tag records line-bundle degrees on the P^1 factors of the base
(h_i nilpotent, so only degrees matter) and w is a weight in Z^3. KFraction
adjoins formal denominators (1-t1)^a (1-t2)^b (1-t3)^c, with exact division
back to a KClass when the numerator allows it.
"""

from __future__ import annotations

from typing import Dict, Iterable, Tuple

Weight = Tuple[int, int, int]
# tag: sorted tuple of (factor index, nonzero degree)
Tag = Tuple[Tuple[int, int], ...]

TRIVIAL_TAG: Tag = ()


class NotPolynomial(Exception):
    """Redistribution left a residual (1 - t_i) denominator."""


def make_tag(degrees: Dict[int, int] | Iterable[Tuple[int, int]]) -> Tag:
    items = degrees.items() if isinstance(degrees, dict) else degrees
    return tuple(sorted((f, d) for f, d in items if d))


def tag_mul(a: Tag, b: Tag) -> Tag:
    if not a:
        return b
    if not b:
        return a
    deg = dict(a)
    for f, d in b:
        deg[f] = deg.get(f, 0) + d
    return make_tag(deg)


def tag_neg(a: Tag) -> Tag:
    return tuple((f, -d) for f, d in a)


class KClass:
    """Finite multiset of (multiplicity, tag, weight) terms."""

    __slots__ = ("terms", "factor_count")

    def __init__(self, terms: Dict[Tuple[Tag, Weight], int] | None = None, factor_count: int = 0):
        cleaned = {}
        if terms:
            for key, mult in terms.items():
                if mult:
                    cleaned[key] = mult
        for tag, _ in cleaned:
            for f, _d in tag:
                if not (0 <= f < factor_count):
                    raise ValueError(f"tag factor {f} outside 0..{factor_count - 1}")
        object.__setattr__(self, "terms", cleaned)
        object.__setattr__(self, "factor_count", factor_count)

    def __setattr__(self, *a):
        raise AttributeError("KClass is immutable")

    @classmethod
    def zero(cls, factor_count: int = 0) -> "KClass":
        return cls({}, factor_count)

    @classmethod
    def term(cls, mult: int, tag: Tag, weight: Iterable[int], factor_count: int = 0) -> "KClass":
        return cls({(tag, tuple(weight)): mult}, factor_count)

    @classmethod
    def from_laurent(cls, poly, factor_count: int = 0) -> "KClass":
        return cls({(TRIVIAL_TAG, exp): c for exp, c in poly.terms.items()}, factor_count)

    def with_factor_count(self, n: int) -> "KClass":
        return KClass(dict(self.terms), n)

    # -- ring structure -------------------------------------------------

    def __add__(self, other) -> "KClass":
        other = self._coerce(other)
        n = max(self.factor_count, other.factor_count)
        terms = dict(self.terms)
        for key, mult in other.terms.items():
            new = terms.get(key, 0) + mult
            if new:
                terms[key] = new
            else:
                terms.pop(key, None)
        return KClass(terms, n)

    __radd__ = __add__

    def __neg__(self):
        return KClass({k: -m for k, m in self.terms.items()}, self.factor_count)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def __mul__(self, other) -> "KClass":
        if isinstance(other, int):
            return KClass({k: m * other for k, m in self.terms.items()}, self.factor_count)
        other = self._coerce(other)
        n = max(self.factor_count, other.factor_count)
        terms: Dict[Tuple[Tag, Weight], int] = {}
        for (tag1, w1), m1 in self.terms.items():
            for (tag2, w2), m2 in other.terms.items():
                key = (tag_mul(tag1, tag2), (w1[0] + w2[0], w1[1] + w2[1], w1[2] + w2[2]))
                new = terms.get(key, 0) + m1 * m2
                if new:
                    terms[key] = new
                else:
                    terms.pop(key, None)
        return KClass(terms, n)

    __rmul__ = __mul__

    def __eq__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # -- involutions and queries ----------------------------------------

    def bar(self) -> "KClass":
        """Derived dual: negate all tag degrees and all weights."""
        return KClass(
            {(tag_neg(tag), (-w[0], -w[1], -w[2])): m for (tag, w), m in self.terms.items()},
            self.factor_count,
        )

    def rank(self) -> int:
        return sum(self.terms.values())

    def is_zero(self) -> bool:
        return not self.terms

    def twist(self, weight: Weight) -> "KClass":
        """Multiply by the character t^weight."""
        return KClass(
            {(tag, (w[0] + weight[0], w[1] + weight[1], w[2] + weight[2])): m
             for (tag, w), m in self.terms.items()},
            self.factor_count,
        )

    def t0_fixed_part(self) -> "KClass":
        """Terms trivial on the Calabi-Yau subtorus: weight a multiple of (1,1,1)."""
        return KClass(
            {k: m for k, m in self.terms.items() if k[1][0] == k[1][1] == k[1][2]},
            self.factor_count,
        )

    def t0_moving_part(self) -> "KClass":
        return KClass(
            {k: m for k, m in self.terms.items() if not k[1][0] == k[1][1] == k[1][2]},
            self.factor_count,
        )

    def t_fixed_part(self) -> "KClass":
        return KClass({k: m for k, m in self.terms.items() if k[1] == (0, 0, 0)}, self.factor_count)

    def substitute_monomials(self, images: Tuple[Weight, Weight, Weight]) -> "KClass":
        """Map t_i to the monomial t^images[i]; tags are untouched."""
        terms: Dict[Tuple[Tag, Weight], int] = {}
        for (tag, (a, b, c)), m in self.terms.items():
            w = tuple(a * images[0][k] + b * images[1][k] + c * images[2][k] for k in range(3))
            key = (tag, w)
            new = terms.get(key, 0) + m
            if new:
                terms[key] = new
            else:
                terms.pop(key, None)
        return KClass(terms, self.factor_count)

    def evaluate_at_one(self) -> int:
        """Rank; tags set trivial, all t_i = 1."""
        return sum(self.terms.values())

    def sorted_terms(self):
        return sorted(self.terms.items())

    def fingerprint(self) -> str:
        import hashlib

        payload = repr(self.sorted_terms()).encode()
        return hashlib.sha256(payload).hexdigest()[:16]

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for (tag, w), m in self.sorted_terms():
            bits = []
            if m != 1:
                bits.append(str(m) if m != -1 else "-")
            if tag:
                bits.append("[" + ",".join(f"O({d})@{f}" for f, d in tag) + "]")
            mono = "*".join(f"t{i+1}^{e}" if e != 1 else f"t{i+1}" for i, e in enumerate(w) if e)
            if mono:
                bits.append(mono)
            if not bits or bits == ["-"]:
                bits.append("1")
            parts.append("".join(b if b == "-" else (b + "*") for b in bits).rstrip("*"))
        return " + ".join(parts).replace("+ -", "- ")

    def _coerce(self, value) -> "KClass":
        if isinstance(value, KClass):
            return value
        if isinstance(value, int):
            return KClass({(TRIVIAL_TAG, (0, 0, 0)): value} if value else {}, self.factor_count)
        raise TypeError(f"cannot coerce {type(value)!r} to KClass")


def bar_involution(k: KClass) -> KClass:
    return k.bar()


class KFraction:
    """KClass numerator over (1-t1)^a (1-t2)^b (1-t3)^c."""

    __slots__ = ("num", "den")

    def __init__(self, num: KClass, den: Tuple[int, int, int] = (0, 0, 0)):
        if min(den) < 0:
            raise ValueError("denominator exponents must be nonnegative")
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", tuple(den))

    def __setattr__(self, *a):
        raise AttributeError("KFraction is immutable")

    @classmethod
    def from_kclass(cls, k: KClass) -> "KFraction":
        return cls(k)

    def _match(self, other: "KFraction"):
        den = tuple(max(a, b) for a, b in zip(self.den, other.den))
        num1 = _scale_to(self.num, self.den, den)
        num2 = _scale_to(other.num, other.den, den)
        return num1, num2, den

    def __add__(self, other) -> "KFraction":
        other = _coerce_fraction(other, self.num.factor_count)
        num1, num2, den = self._match(other)
        return KFraction(num1 + num2, den)

    __radd__ = __add__

    def __neg__(self):
        return KFraction(-self.num, self.den)

    def __sub__(self, other):
        return self + (-_coerce_fraction(other, self.num.factor_count))

    def __mul__(self, other) -> "KFraction":
        other = _coerce_fraction(other, self.num.factor_count)
        return KFraction(self.num * other.num, tuple(a + b for a, b in zip(self.den, other.den)))

    __rmul__ = __mul__

    def twist(self, weight: Weight) -> "KFraction":
        return KFraction(self.num.twist(weight), self.den)

    def bar(self) -> "KFraction":
        """bar(1/(1-t_i)) = 1/(1-1/t_i) = -t_i/(1-t_i), applied per factor."""
        num = self.num.bar()
        sign = 1
        twist = [0, 0, 0]
        for axis, power in enumerate(self.den):
            if power % 2:
                sign = -sign
            twist[axis] = power
        num = num.twist(tuple(twist)) * sign
        return KFraction(num, self.den)

    def divide_out(self) -> KClass:
        """Clear every (1 - t_i) factor exactly; NotPolynomial on remainder."""
        num = self.num
        for axis in range(3):
            for _ in range(self.den[axis]):
                num = _divide_one_minus_t(num, axis)
        return num


def _scale_to(num: KClass, den: Tuple[int, int, int], target: Tuple[int, int, int]) -> KClass:
    for axis in range(3):
        for _ in range(target[axis] - den[axis]):
            num = num * _one_minus_t(axis, num.factor_count)
    return num


def _one_minus_t(axis: int, factor_count: int) -> KClass:
    w = [0, 0, 0]
    w[axis] = 1
    return KClass({(TRIVIAL_TAG, (0, 0, 0)): 1, (TRIVIAL_TAG, tuple(w)): -1}, factor_count)


def _divide_one_minus_t(num: KClass, axis: int) -> KClass:
    """Exact division of a KClass by (1 - t_axis).

    Grouping terms by (tag, other-axis weights), each group is a univariate
    Laurent polynomial in t_axis; division by (1 - t) is a partial-sum scan
    whose total must vanish for exactness.
    """
    groups: Dict[tuple, Dict[int, int]] = {}
    for (tag, w), m in num.terms.items():
        other = (tag, tuple(w[i] for i in range(3) if i != axis))
        groups.setdefault(other, {})[w[axis]] = m
    terms: Dict[Tuple[Tag, Weight], int] = {}
    for (tag, other), column in groups.items():
        lo, hi = min(column), max(column)
        running = 0
        for e in range(lo, hi + 1):
            running += column.get(e, 0)
            if e == hi:
                if running != 0:
                    raise NotPolynomial(
                        f"residual (1-t{axis+1}) denominator: group {tag}, {other} sums to {running}"
                    )
                break
            if running:
                w = list(other)
                w.insert(axis, e)
                terms[(tag, tuple(w))] = running
    return KClass(terms, num.factor_count)


def _coerce_fraction(value, factor_count: int) -> KFraction:
    if isinstance(value, KFraction):
        return value
    if isinstance(value, KClass):
        return KFraction(value)
    if isinstance(value, int):
        return KFraction(KClass({(TRIVIAL_TAG, (0, 0, 0)): value} if value else {}, factor_count))
    raise TypeError(f"cannot coerce {type(value)!r} to KFraction")
