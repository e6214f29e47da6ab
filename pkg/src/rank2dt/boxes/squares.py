"""Double square configurations: torus-fixed subsheaf combinatorics on an
edge cross-section.

A configuration is stored canonically as the difference delta = chi_hull - chi
of characteristic functions, a finite map from 2D lattice cells to {1, 2}.
Equivalence classes of the defining partition triples (or pairs, in the
degenerate case) correspond exactly to these delta functions, so equality of
classes is equality of stored data.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

Cell2 = Tuple[int, int]
Label = Optional[Tuple[int, int]]


class NotADoubleSquare(Exception):
    pass


@dataclass(frozen=True)
class EdgeFlag:
    """Rank-2 flag data on an edge cross-section: (u_i, v_i, p_i) for i=0,1."""

    u: Tuple[int, int]
    v: Tuple[int, int]
    p: Tuple[Label, Label]

    def __post_init__(self):
        for i in range(2):
            if (self.v[i] > 0) != (self.p[i] is not None):
                raise ValueError("p present iff v > 0")

    @property
    def is_triple(self) -> bool:
        """Both jumps nontrivial with distinct lines: the non-degenerate shape."""
        return self.v[0] > 0 and self.v[1] > 0 and self.p[0] != self.p[1]

    def summands(self):
        """Splitting into two line summands: ((w, line), (w, line)), ordered."""
        active = [i for i in range(2) if self.v[i] > 0]
        lines = sorted({self.p[i] for i in active})
        if not lines:
            w = tuple(self.u)
            return ((w, None), (w, None))
        if len(lines) == 1:
            q = lines[0]
            return (
                (tuple(self.u), q),
                (tuple(self.u[i] + self.v[i] for i in range(2)), None),
            )
        qa, qb = lines
        wa = tuple(self.u[i] + (0 if self.p[i] == qa else self.v[i]) for i in range(2))
        wb = tuple(self.u[i] + (0 if self.p[i] == qb else self.v[i]) for i in range(2))
        return tuple(sorted([(wa, qa), (wb, qb)]))

    def chi_R(self, cell: Cell2) -> int:
        lines = []
        for i in range(2):
            if cell[i] < self.u[i]:
                return 0
            if cell[i] < self.u[i] + self.v[i]:
                lines.append(self.p[i])
        if not lines:
            return 2
        return 1 if all(q == lines[0] for q in lines) else 0

    def hull_line(self, cell: Cell2) -> Label:
        lines = []
        for i in range(2):
            if cell[i] < self.u[i]:
                return None
            if cell[i] < self.u[i] + self.v[i]:
                lines.append(self.p[i])
        if lines and all(q == lines[0] for q in lines):
            return lines[0]
        return None

    # triple constituent bases, defined for the non-degenerate shape
    def triple_bases(self) -> Tuple[Cell2, Cell2, Cell2]:
        u, v = self.u, self.v
        return (
            (u[0], u[1] + v[1]),
            (u[0] + v[0], u[1]),
            (u[0] + v[0], u[1] + v[1]),
        )

    def d_corner(self) -> Cell2:
        return (self.u[0] + self.v[0], self.u[1] + self.v[1])


@dataclass(frozen=True)
class Component2D:
    cells: FrozenSet[Cell2]
    forced: FrozenSet[Tuple[int, int]]   # lines the kept subspace must equal

    @property
    def has_moduli(self) -> bool:
        return not self.forced

    @property
    def is_valid(self) -> bool:
        return len(self.forced) <= 1


class DoubleSquareConfig:
    """Canonical double square configuration over a fixed edge flag."""

    __slots__ = ("flag", "cells", "_components")

    def __init__(self, flag: EdgeFlag, cells: Dict[Cell2, int]):
        cleaned = {tuple(c): int(m) for c, m in cells.items() if m}
        object.__setattr__(self, "flag", flag)
        object.__setattr__(self, "cells", tuple(sorted(cleaned.items())))
        object.__setattr__(self, "_components", None)

    def __setattr__(self, *a):
        raise AttributeError("DoubleSquareConfig is immutable")

    @classmethod
    def empty(cls, flag: EdgeFlag) -> "DoubleSquareConfig":
        return cls(flag, {})

    def delta(self, cell: Cell2) -> int:
        return dict(self.cells).get(cell, 0)

    def delta_map(self) -> Dict[Cell2, int]:
        return dict(self.cells)

    def chi(self, cell: Cell2) -> int:
        return self.flag.chi_R(cell) - self.delta(cell)

    @property
    def size(self) -> int:
        """|lambda| = total delta mass (length of the cross-section quotient)."""
        return sum(m for _, m in self.cells)

    def key(self):
        return (self.flag, self.cells)

    def __eq__(self, other):
        return isinstance(other, DoubleSquareConfig) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"DoubleSquareConfig({dict(self.cells)})"

    # -- validity -------------------------------------------------------

    def violations(self) -> List[str]:
        problems = []
        delta = dict(self.cells)
        for cell, m in delta.items():
            chi_r = self.flag.chi_R(cell)
            if m < 0 or m > chi_r:
                problems.append(f"delta {m} out of range at {cell}")
        for cell, m in delta.items():
            chi = self.flag.chi_R(cell) - m
            for axis in range(2):
                below = list(cell)
                below[axis] -= 1
                below = tuple(below)
                chi_below = self.flag.chi_R(below) - delta.get(below, 0)
                if chi_below > chi:
                    problems.append(f"monotonicity fails at {cell} direction {axis}")
        for comp in self.components():
            if not comp.is_valid:
                problems.append(f"component {sorted(comp.cells)} forced to two lines")
        return problems

    def is_valid(self) -> bool:
        return not self.violations()

    # -- components -------------------------------------------------------

    def components(self) -> List[Component2D]:
        """Connected components of chi = 1 cells inside the chi_R = 2 region."""
        cached = object.__getattribute__(self, "_components")
        if cached is not None:
            return cached
        delta = dict(self.cells)
        kappa = {c for c, m in delta.items() if m == 1 and self.flag.chi_R(c) == 2}
        seen = set()
        comps = []
        for start in sorted(kappa):
            if start in seen:
                continue
            stack, cells = [start], set()
            while stack:
                c = stack.pop()
                if c in cells:
                    continue
                cells.add(c)
                seen.add(c)
                for dx, dy in ((1, 0), (-1, 0), (0, 1), (0, -1)):
                    n = (c[0] + dx, c[1] + dy)
                    if n in kappa and n not in cells:
                        stack.append(n)
            forced = set()
            for c in cells:
                for dx, dy in ((1, 0), (-1, 0), (0, 1), (0, -1)):
                    n = (c[0] + dx, c[1] + dy)
                    if self.flag.chi_R(n) == 1 and self.flag.chi_R(n) - delta.get(n, 0) == 1:
                        forced.add(self.flag.hull_line(n))
            comps.append(Component2D(frozenset(cells), frozenset(forced)))
        object.__setattr__(self, "_components", comps)
        return comps

    def component_of(self, cell: Cell2) -> Optional[int]:
        for i, comp in enumerate(self.components()):
            if cell in comp.cells:
                return i
        return None

    # -- constituent decompositions -----------------------------------------

    def triple_joinable(self, comp: Component2D) -> FrozenSet[int]:
        """Constituent indices {0,1,2} the component may be assigned to.

        Index 0 is the constituent owning the first strip, 1 the second, 2 the
        one based at the corner of the doubled region (always joinable).
        """
        if not self.flag.is_triple:
            raise NotADoubleSquare("triple decomposition needs the non-degenerate flag")
        joinable = {2}
        if self.flag.p[0] not in comp.forced:
            joinable.add(0)
        if self.flag.p[1] not in comp.forced:
            joinable.add(1)
        return frozenset(joinable)

    def canonical_triple_assignment(self) -> Dict[int, Tuple[int, int]]:
        """Component index -> pair of constituent indices, lowest pair first."""
        out = {}
        for i, comp in enumerate(self.components()):
            joinable = sorted(self.triple_joinable(comp))
            if len(joinable) < 2:
                raise NotADoubleSquare("component joinable to fewer than two constituents")
            out[i] = (joinable[0], joinable[1])
        return out

    def triple_parts(self, assignment: Dict[int, Tuple[int, int]] | None = None):
        """Cell sets (lambda1, lambda2, lambda3) of a representative triple."""
        if assignment is None:
            assignment = self.canonical_triple_assignment()
        delta = dict(self.cells)
        parts = [set(), set(), set()]
        corner = self.flag.d_corner()
        for cell, m in delta.items():
            in_d = cell[0] >= corner[0] and cell[1] >= corner[1]
            if not in_d:
                # strip cell: belongs to the strip's own constituent
                parts[0 if cell[0] < corner[0] else 1].add(cell)
            elif m == 2:
                for part in parts:
                    part.add(cell)
            else:
                ci = self.component_of(cell)
                for slot in assignment[ci]:
                    parts[slot].add(cell)
        return tuple(frozenset(s) for s in parts)

    def pair_alive_summand(self, cell: Cell2) -> int:
        """Index of the unique summand alive at a chi_R = 1 cell."""
        for s, (w, _line) in enumerate(self.flag.summands()):
            if cell[0] >= w[0] and cell[1] >= w[1]:
                other = self.flag.summands()[1 - s][0]
                if not (cell[0] >= other[0] and cell[1] >= other[1]):
                    return s
        raise ValueError(f"cell {cell} is not a chi_R = 1 cell")

    def pair_assignment_for(self, comp: Component2D) -> Optional[int]:
        """Summand a forced component must be removed from (None when free)."""
        if not comp.forced:
            return None
        kept = next(iter(comp.forced))
        summands = self.flag.summands()
        for s, (_w, line) in enumerate(summands):
            if line is not None and line != kept:
                return s
        # kept line matches one summand; remove the other
        for s, (_w, line) in enumerate(summands):
            if line != kept:
                return s
        raise NotADoubleSquare("no summand to remove")

    def pair_parts(self, assignment: Dict[int, int] | None = None):
        """Cell sets (mu1, mu2) of a representative pair of 2D partitions."""
        if assignment is None:
            assignment = {}
            for i, comp in enumerate(self.components()):
                forced = self.pair_assignment_for(comp)
                assignment[i] = 0 if forced is None else forced
        delta = dict(self.cells)
        parts = [set(), set()]
        for cell, m in delta.items():
            chi_r = self.flag.chi_R(cell)
            if m == 2:
                parts[0].add(cell)
                parts[1].add(cell)
            elif chi_r == 1:
                parts[self.pair_alive_summand(cell)].add(cell)
            else:
                parts[assignment[self.component_of(cell)]].add(cell)
        return tuple(frozenset(s) for s in parts)

    def to_json(self) -> dict:
        return {"cells": [[c[0], c[1], m] for c, m in self.cells]}


def square_config_from_triple(
    flag: EdgeFlag,
    triple: Sequence[Sequence[Cell2]],
) -> DoubleSquareConfig:
    """Canonicalize a raw triple of finite 2D partitions (non-degenerate flag).

    Validates the partition shapes, the exactly-two condition, and returns the
    class representative; raises NotADoubleSquare otherwise.
    """
    if not flag.is_triple:
        raise NotADoubleSquare("raw triples require the non-degenerate flag")
    bases = flag.triple_bases()
    sets = [frozenset(map(tuple, part)) for part in triple]
    for part, base in zip(sets, bases):
        _check_partition_2d(part, base)
    corner = flag.d_corner()
    delta: Dict[Cell2, int] = {}
    for cell in sets[0] | sets[1] | sets[2]:
        count = sum(cell in s for s in sets)
        in_d = cell[0] >= corner[0] and cell[1] >= corner[1]
        if in_d:
            if count == 1:
                raise NotADoubleSquare(f"cell {cell} lies in exactly one partition")
            delta[cell] = count - 1
        else:
            if count != 1:
                raise NotADoubleSquare(f"strip cell {cell} lies in {count} partitions")
            delta[cell] = 1
    config = DoubleSquareConfig(flag, delta)
    problems = config.violations()
    if problems:
        raise NotADoubleSquare("; ".join(problems))
    return config


def square_config_from_pair(
    flag: EdgeFlag,
    pair: Sequence[Sequence[Cell2]],
) -> DoubleSquareConfig:
    """Canonicalize a raw pair of 2D partitions over the summand corners."""
    summands = flag.summands()
    sets = [frozenset(map(tuple, part)) for part in pair]
    matched = _match_pair_to_summands(sets, [w for w, _ in summands])
    delta: Dict[Cell2, int] = {}
    for part in matched:
        for cell in part:
            delta[cell] = delta.get(cell, 0) + 1
    config = DoubleSquareConfig(flag, delta)
    problems = config.violations()
    if problems:
        raise NotADoubleSquare("; ".join(problems))
    return config


def _match_pair_to_summands(sets, bases):
    for order in ((0, 1), (1, 0)):
        try:
            for idx, base in zip(order, bases):
                _check_partition_2d(sets[idx], base)
            return [sets[order[0]], sets[order[1]]]
        except NotADoubleSquare:
            continue
    raise NotADoubleSquare("pair does not match the summand corners")


def _check_partition_2d(cells: FrozenSet[Cell2], base: Cell2):
    for (a, b) in cells:
        if a < base[0] or b < base[1]:
            raise NotADoubleSquare(f"cell {(a, b)} below base {base}")
        if a > base[0] and (a - 1, b) not in cells:
            raise NotADoubleSquare(f"not downward closed at {(a, b)}")
        if b > base[1] and (a, b - 1) not in cells:
            raise NotADoubleSquare(f"not downward closed at {(a, b)}")


def enumerate_square_configs(flag: EdgeFlag, max_size: int) -> Dict[int, List[DoubleSquareConfig]]:
    """All double square configurations of size <= max_size, grouped by size.

    Breadth-first over single-cell additions from the empty configuration;
    canonical storage dedupes equivalent raw data at generation time.
    """
    lo = (min(flag.u[0], flag.u[0]), min(flag.u[1], flag.u[1]))
    span = (flag.v[0], flag.v[1])
    hi = (flag.u[0] + span[0] + max_size + 1, flag.u[1] + span[1] + max_size + 1)
    window = [
        (a, b)
        for a in range(flag.u[0], hi[0] + 1)
        for b in range(flag.u[1], hi[1] + 1)
        if flag.chi_R((a, b)) > 0
    ]
    start = DoubleSquareConfig.empty(flag)
    by_size: Dict[int, List[DoubleSquareConfig]] = {0: [start]}
    frontier = {start}
    for size in range(1, max_size + 1):
        next_frontier = {}
        for config in frontier:
            delta = config.delta_map()
            for cell in window:
                new = _try_add(flag, delta, cell)
                if new is not None:
                    next_frontier[new.cells] = new
        frontier = set(next_frontier.values())
        by_size[size] = sorted(frontier, key=lambda c: c.cells)
    return by_size


def _try_add(flag: EdgeFlag, delta: Dict[Cell2, int], cell: Cell2):
    m = delta.get(cell, 0)
    chi = flag.chi_R(cell) - m
    if chi <= 0:
        return None
    for axis in range(2):
        below = list(cell)
        below[axis] -= 1
        below = tuple(below)
        chi_below = flag.chi_R(below) - delta.get(below, 0)
        if chi - 1 < chi_below:
            return None
    new_delta = dict(delta)
    new_delta[cell] = m + 1
    config = DoubleSquareConfig(flag, new_delta)
    if any(not comp.is_valid for comp in config.components()):
        return None
    return config
