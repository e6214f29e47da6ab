"""Double box configurations on a chart, stored canonically.

A configuration is the difference delta = chi_hull - chi of characteristic
functions: values in {1, 2}, supported on finitely many cells beyond the pure
leg cylinders determined by the asymptotic double square configurations. Two
raw triples of 3D partitions are equivalent exactly when they produce the
same delta, so classes are equality of stored data.

Connected components of chi = 1 cells inside the chi_hull = 2 region carry a
choice of line in C^2. Adjacent surviving 1-dimensional hull cells force that
line; a component forced to two distinct lines is unrealizable (the
exactly-two condition fails), one forced line pins the component, and no
forcing leaves a free P^1 of moduli.
"""

from __future__ import annotations

from typing import Dict, FrozenSet, List, Optional, Sequence, Set, Tuple

from ..toric import ChartToricData
from .squares import DoubleSquareConfig, EdgeFlag

Cell = Tuple[int, int, int]

AXIS_CROSS = {0: (1, 2), 1: (0, 2), 2: (0, 1)}


class NotADoubleBox(Exception):
    pass


def project(cell: Cell, axis: int) -> Tuple[int, int]:
    a, b = AXIS_CROSS[axis]
    return (cell[a], cell[b])


def edge_flag_of_chart(chart: ChartToricData, axis: int) -> EdgeFlag:
    a, b = AXIS_CROSS[axis]
    return EdgeFlag(
        u=(chart.u[a], chart.u[b]),
        v=(chart.v[a], chart.v[b]),
        p=(chart.p[a], chart.p[b]),
    )


def slot_count(chart: ChartToricData) -> int:
    return 3 if chart.is_singular else 2


def slot_base(chart: ChartToricData, slot: int) -> Cell:
    """Corner the slot's 3D partition is based at."""
    if chart.is_singular:
        return tuple(
            chart.u[i] + (0 if i == slot else chart.v[i]) for i in range(3)
        )
    return chart.summands()[slot][0]


def triple_index_for_slot(axis: int, slot: int) -> int:
    """2D triple-constituent index carried by a 3D slot along an edge axis."""
    a, b = AXIS_CROSS[axis]
    if slot == a:
        return 0
    if slot == b:
        return 1
    return 2


def slot_for_triple_index(axis: int, index: int) -> int:
    a, b = AXIS_CROSS[axis]
    return (a, b, axis)[index]


def lines_compatible(a, b) -> bool:
    """An unconstrained summand line matches anything."""
    return a is None or b is None or a == b


def pair_slot_map(chart: ChartToricData, axis: int) -> Dict[int, int]:
    """2D summand index -> 3D summand slot, matched by projected weight and line."""
    flag = edge_flag_of_chart(chart, axis)
    flag_summands = flag.summands()
    chart_summands = chart.summands()
    mapping = {}
    used = set()
    for i2, (w2, line2) in enumerate(flag_summands):
        for s3, (w3, line3) in enumerate(chart_summands):
            if s3 in used:
                continue
            if project(w3, axis) == tuple(w2) and lines_compatible(line2, line3):
                mapping[i2] = s3
                used.add(s3)
                break
        else:
            raise NotADoubleBox("edge summands do not match chart summands")
    return mapping


class Component:
    """Connected component of exactly-two cells, with its forcing data."""

    __slots__ = ("cells", "forced", "tails")

    def __init__(self, cells: FrozenSet[Cell], forced: FrozenSet, tails: FrozenSet):
        self.cells = cells
        self.forced = forced          # hull lines pinning the component
        self.tails = tails            # (axis, 2d component index) pairs

    @property
    def has_moduli(self) -> bool:
        return not self.forced

    @property
    def is_valid(self) -> bool:
        return len(self.forced) <= 1

    @property
    def is_edge(self) -> bool:
        return bool(self.tails)

    def joinable_slots(self, chart: ChartToricData) -> FrozenSet[int]:
        if chart.is_singular:
            return frozenset(
                s for s in range(3) if chart.p[s] not in self.forced
            )
        summands = chart.summands()
        if not self.forced:
            return frozenset(range(2))
        kept = next(iter(self.forced))
        out = set()
        for s, (_w, line) in enumerate(summands):
            if line != kept:
                out.add(s)
        if not out:
            # both summand lines equal the kept one: either may be removed
            out = {0, 1}
        return frozenset(out)


class DoubleBoxConfig:
    """Canonical double box configuration over a chart with fixed legs."""

    __slots__ = ("chart", "legs", "dev", "_cache")

    def __init__(
        self,
        chart: ChartToricData,
        legs: Tuple[Optional[DoubleSquareConfig], ...],
        dev: Dict[Cell, int],
    ):
        legs = tuple(legs)
        if len(legs) != 3:
            raise ValueError("legs must have one entry per axis")
        for axis, leg in enumerate(legs):
            if leg is not None and leg.flag != edge_flag_of_chart(chart, axis):
                raise NotADoubleBox(f"leg flag along axis {axis} does not match chart data")
        object.__setattr__(self, "chart", chart)
        object.__setattr__(self, "legs", legs)
        object.__setattr__(self, "dev", tuple(sorted((tuple(c), int(m)) for c, m in dev.items())))
        object.__setattr__(self, "_cache", {})

    def __setattr__(self, *a):
        raise AttributeError("DoubleBoxConfig is immutable")

    # -- identity ---------------------------------------------------------

    def key(self):
        return (self.chart, tuple(leg.cells if leg else None for leg in self.legs), self.dev)

    def __eq__(self, other):
        return isinstance(other, DoubleBoxConfig) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"DoubleBoxConfig(dev={dict(self.dev)}, legs={[bool(l) for l in self.legs]})"

    # -- windows and the cylinder baseline ---------------------------------

    def window(self, margin: int = 2) -> Tuple[int, int, int]:
        """Per-axis upper cutoffs beyond which delta equals the leg cylinder."""
        hi = [self.chart.u[i] + self.chart.v[i] + margin for i in range(3)]
        for axis, leg in enumerate(self.legs):
            if leg is None:
                continue
            a, b = AXIS_CROSS[axis]
            for (c0, c1), _m in leg.cells:
                hi[a] = max(hi[a], c0 + margin)
                hi[b] = max(hi[b], c1 + margin)
        for (cell, _m) in self.dev:
            for i in range(3):
                hi[i] = max(hi[i], cell[i] + margin)
        return tuple(hi)

    def leg_column_slots(self) -> Dict[int, Dict[Tuple[int, int], FrozenSet[int]]]:
        """Per axis: cross cell -> the 3D slots whose cylinder contains it.

        Built from the canonical constituent decomposition of each leg.
        """
        cached = self._cache.get("columns")
        if cached is not None:
            return cached
        out: Dict[int, Dict[Tuple[int, int], FrozenSet[int]]] = {}
        for axis, leg in enumerate(self.legs):
            if leg is None:
                continue
            columns: Dict[Tuple[int, int], Set[int]] = {}
            if self.chart.is_singular:
                parts = leg.triple_parts()
                for index, part in enumerate(parts):
                    slot = slot_for_triple_index(axis, index)
                    for c in part:
                        columns.setdefault(c, set()).add(slot)
            else:
                mapping = pair_slot_map(self.chart, axis)
                parts = leg.pair_parts()
                for index, part in enumerate(parts):
                    for c in part:
                        columns.setdefault(c, set()).add(mapping[index])
            out[axis] = {c: frozenset(s) for c, s in columns.items()}
        self._cache["columns"] = out
        return out

    def cylinder_memberships(self, cell: Cell) -> FrozenSet[int]:
        members: Set[int] = set()
        for axis, columns in self.leg_column_slots().items():
            cross = project(cell, axis)
            slots = columns.get(cross)
            if not slots:
                continue
            for slot in slots:
                if cell[axis] >= slot_base(self.chart, slot)[axis]:
                    members.add(slot)
        return frozenset(members)

    def cylinder_delta(self, cell: Cell) -> int:
        m = len(self.cylinder_memberships(cell))
        if m == 0:
            return 0
        if self.chart.is_singular and self.chart.chi_R(cell) == 2:
            return m - 1
        return m

    def delta(self, cell: Cell) -> int:
        dev = self._cache.get("dev_map")
        if dev is None:
            dev = dict(self.dev)
            self._cache["dev_map"] = dev
        if cell in dev:
            return dev[cell]
        return self.cylinder_delta(cell)

    def chi(self, cell: Cell) -> int:
        return self.chart.chi_R(cell) - self.delta(cell)

    def delta_mass_above_cylinder(self) -> int:
        return sum(m - self.cylinder_delta(c) for c, m in self.dev)

    # -- validity ------------------------------------------------------------

    def violations(self) -> List[str]:
        problems = []
        w = self.window()
        lo = tuple(self.chart.u[i] - 1 for i in range(3))
        for cell, m in self.dev:
            if m < 0 or m > self.chart.chi_R(cell):
                problems.append(f"delta {m} out of range at {cell}")
            if m == self.cylinder_delta(cell):
                problems.append(f"redundant deviation entry at {cell}")
        for cell in self._support(w):
            chi = self.chi(cell)
            if chi < 0:
                problems.append(f"chi negative at {cell}")
            for axis in range(3):
                below = list(cell)
                below[axis] -= 1
                below = tuple(below)
                if below[axis] < lo[axis]:
                    continue
                if self.chi(below) > chi:
                    problems.append(f"monotonicity fails at {cell} axis {axis}")
        for comp in self.components():
            if not comp.is_valid:
                problems.append(f"component forced to {sorted(comp.forced)}")
        return problems

    def is_valid(self) -> bool:
        return not self.violations()

    def _support(self, w) -> List[Cell]:
        cells = set(c for c, m in self.dev if m)
        for axis, columns in self.leg_column_slots().items():
            a, b = AXIS_CROSS[axis]
            for cross, slots in columns.items():
                base = min(slot_base(self.chart, s)[axis] for s in slots)
                for k in range(base, w[axis] + 1):
                    cell = [0, 0, 0]
                    cell[axis] = k
                    cell[a], cell[b] = cross
                    cells.add(tuple(cell))
        return sorted(cells)

    # -- components ------------------------------------------------------------

    def components(self) -> List[Component]:
        cached = self._cache.get("components")
        if cached is not None:
            return cached
        w = self.window()
        kappa: Dict[Cell, int] = {}
        for cell in self._support(w):
            if self.chart.chi_R(cell) == 2 and self.delta(cell) == 1:
                kappa[cell] = -1
        # union-find over kappa cells plus per-(axis, 2d component) tail nodes
        parent: Dict = {}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(x, y):
            rx, ry = find(x), find(y)
            if rx != ry:
                parent[rx] = ry

        for cell in kappa:
            parent[cell] = cell
        tail_nodes = {}
        for axis, leg in enumerate(self.legs):
            if leg is None:
                continue
            for i, comp2 in enumerate(leg.components()):
                node = ("tail", axis, i)
                parent[node] = node
                tail_nodes[(axis, i)] = comp2
        for cell in kappa:
            for axis in range(3):
                for d in (-1, 1):
                    n = list(cell)
                    n[axis] += d
                    n = tuple(n)
                    if n in kappa:
                        union(cell, n)
            # boundary cells continue into their leg cylinder
            for axis, leg in enumerate(self.legs):
                if leg is None:
                    continue
                if cell[axis] == w[axis]:
                    ci = leg.component_of(project(cell, axis))
                    if ci is not None:
                        union(cell, ("tail", axis, ci))
        groups: Dict = {}
        for cell in kappa:
            groups.setdefault(find(cell), {"cells": set(), "tails": set()})["cells"].add(cell)
        for (axis, i) in tail_nodes:
            root = find(("tail", axis, i))
            if root in groups:
                groups[root]["tails"].add((axis, i))
            # a 2D kappa component always meets the window boundary layer,
            # so its root owns in-window cells
        comps = []
        for root in sorted(groups, key=lambda r: min(groups[r]["cells"])):
            cells = groups[root]["cells"]
            tails = groups[root]["tails"]
            forced = set()
            for cell in cells:
                for axis in range(3):
                    for d in (-1, 1):
                        n = list(cell)
                        n[axis] += d
                        n = tuple(n)
                        if self.chart.chi_R(n) == 1 and self.chi(n) == 1:
                            forced.add(self.chart.hull_line(n))
            comps.append(Component(frozenset(cells), frozenset(forced), frozenset(tails)))
        self._cache["components"] = comps
        return comps

    def moduli_components(self) -> List[Component]:
        return [c for c in self.components() if c.has_moduli]

    def weight_omega(self) -> int:
        return 2 ** len(self.moduli_components())

    # -- canonical slot assignment and sizes -------------------------------------

    def canonical_assignment(self) -> Dict[int, Tuple[int, ...]]:
        """Component index -> slots its boxes are removed from.

        Singular charts assign each component to the least valid pair of
        joinable slots, preferring pairs avoiding the axis slots of its tails
        only through the natural order; free charts assign one summand.
        """
        out = {}
        for i, comp in enumerate(self.components()):
            joinable = sorted(comp.joinable_slots(self.chart))
            if self.chart.is_singular:
                if len(joinable) < 2:
                    raise NotADoubleBox("component joinable to fewer than two partitions")
                out[i] = (joinable[0], joinable[1])
            else:
                if not joinable:
                    raise NotADoubleBox("component joinable to no summand")
                out[i] = (joinable[0],)
        return out

    def slot_memberships(
        self, assignment: Dict[int, Tuple[int, ...]] | None = None
    ) -> Dict[Cell, FrozenSet[int]]:
        """Representative reconstruction: which slots contain each removed box."""
        if assignment is None:
            assignment = self.canonical_assignment()
        w = self.window()
        comp_of: Dict[Cell, int] = {}
        for i, comp in enumerate(self.components()):
            for cell in comp.cells:
                comp_of[cell] = i
        members: Dict[Cell, FrozenSet[int]] = {}
        nslots = slot_count(self.chart)
        for cell in self._support(w):
            m = self.delta(cell)
            if m == 0:
                continue
            chi_r = self.chart.chi_R(cell)
            if self.chart.is_singular:
                if chi_r == 1:
                    members[cell] = frozenset([self._slab_slot(cell)])
                elif m == 2:
                    members[cell] = frozenset(range(3))
                else:
                    members[cell] = frozenset(assignment[comp_of[cell]])
            else:
                if chi_r == 1:
                    members[cell] = frozenset([self._alive_summand(cell)])
                elif m == 2:
                    members[cell] = frozenset(range(2))
                else:
                    members[cell] = frozenset(assignment[comp_of[cell]])
            expected = m + 1 if (self.chart.is_singular and chi_r == 2) else m
            if len(members[cell]) != expected:
                raise NotADoubleBox(f"membership mismatch at {cell}")
        return members

    def _slab_slot(self, cell: Cell) -> int:
        for i in range(3):
            if self.chart.u[i] <= cell[i] < self.chart.u[i] + self.chart.v[i]:
                return i
        raise ValueError(f"{cell} is not a slab cell")

    def _alive_summand(self, cell: Cell) -> int:
        summands = self.chart.summands()
        alive = [
            s
            for s, (w, _line) in enumerate(summands)
            if all(cell[i] >= w[i] for i in range(3))
        ]
        if len(alive) != 1:
            raise ValueError(f"{cell} is not a chi_R = 1 cell")
        return alive[0]

    def slot_leg_cross_sections(
        self, assignment: Dict[int, Tuple[int, ...]] | None = None
    ) -> Dict[int, Dict[int, FrozenSet[Tuple[int, int]]]]:
        """slot -> axis -> asymptotic 2D cross-section of the slot's partition."""
        if assignment is None:
            assignment = self.canonical_assignment()
        out: Dict[int, Dict[int, Set[Tuple[int, int]]]] = {}
        comp_assign_2d = self.induced_2d_assignments(assignment)
        for axis, leg in enumerate(self.legs):
            if leg is None:
                continue
            if self.chart.is_singular:
                parts = leg.triple_parts(comp_assign_2d.get(axis))
                for index, part in enumerate(parts):
                    slot = slot_for_triple_index(axis, index)
                    out.setdefault(slot, {})[axis] = frozenset(part)
            else:
                mapping = pair_slot_map(self.chart, axis)
                parts = leg.pair_parts(comp_assign_2d.get(axis))
                for index, part in enumerate(parts):
                    out.setdefault(mapping[index], {})[axis] = frozenset(part)
        return out

    def induced_2d_assignments(
        self, assignment: Dict[int, Tuple[int, ...]] | None = None
    ) -> Dict[int, Dict[int, Tuple]]:
        """Per axis: 2D component index -> constituent assignment induced by 3D."""
        if assignment is None:
            assignment = self.canonical_assignment()
        out: Dict[int, Dict[int, Tuple]] = {}
        for i, comp in enumerate(self.components()):
            for (axis, ci) in comp.tails:
                slots = assignment[i]
                if self.chart.is_singular:
                    pair = tuple(sorted(triple_index_for_slot(axis, s) for s in slots))
                else:
                    mapping = pair_slot_map(self.chart, axis)
                    inverse = {v: k for k, v in mapping.items()}
                    pair = inverse[slots[0]]
                out.setdefault(axis, {})[ci] = pair
        # components of the leg untouched by 3D data keep the canonical choice
        for axis, leg in enumerate(self.legs):
            if leg is None:
                continue
            table = out.setdefault(axis, {})
            if self.chart.is_singular:
                canonical = leg.canonical_triple_assignment()
            else:
                canonical = {}
                for ci, comp2 in enumerate(leg.components()):
                    forced = leg.pair_assignment_for(comp2)
                    canonical[ci] = 0 if forced is None else forced
            for ci, value in canonical.items():
                table.setdefault(ci, value)
        return out

    def size(self, assignment: Dict[int, Tuple[int, ...]] | None = None) -> int:
        """Renormalized size: sum of constituent volumes minus the out part."""
        members = self.slot_memberships(assignment)
        crosses = self.slot_leg_cross_sections(assignment)
        total = 0
        for cell, slots in members.items():
            for slot in slots:
                legs = 0
                for axis in crosses.get(slot, {}):
                    if project(cell, axis) in crosses[slot][axis]:
                        legs += 1
                total += 1 - legs
        if self.chart.is_singular:
            out_cross: Dict[int, FrozenSet] = {}
            for axis, leg in enumerate(self.legs):
                if leg is None:
                    continue
                corner = leg.flag.d_corner()
                out_cross[axis] = frozenset(
                    c for c, m in leg.cells if c[0] >= corner[0] and c[1] >= corner[1]
                )
            corner3 = tuple(self.chart.u[i] + self.chart.v[i] for i in range(3))
            for cell in members:
                if all(cell[i] >= corner3[i] for i in range(3)):
                    legs = 0
                    for axis, cross in out_cross.items():
                        if project(cell, axis) in cross:
                            legs += 1
                    total -= 1 - legs
        return total

    def quotient_size(self) -> int:
        """Cached renormalized size via the canonical representative."""
        cached = self._cache.get("size")
        if cached is None:
            cached = self.size()
            self._cache["size"] = cached
        return cached

    def to_json(self) -> dict:
        return {
            "chart": {
                "u": list(self.chart.u),
                "v": list(self.chart.v),
                "p": [list(q) if q else None for q in self.chart.p],
            },
            "legs": [leg.to_json() if leg else None for leg in self.legs],
            "cells": [[c[0], c[1], c[2], m] for c, m in self.dev],
        }
