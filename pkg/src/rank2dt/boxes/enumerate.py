"""Breadth-first enumeration of double box configurations by size.

States are canonical delta functions; a step adds one removed box wherever
monotonicity of the characteristic function survives, and a state is kept
only when every exactly-two component is still assignable to at least two
partitions. Memoized frontiers deduplicate equivalent classes at generation
time, and the composition-series structure of submodules guarantees every
class is reached.
"""

from __future__ import annotations

from typing import Dict, List, Optional, Tuple

from ..toric import ChartToricData
from .config import AXIS_CROSS, DoubleBoxConfig, NotADoubleBox
from .squares import DoubleSquareConfig

Cell = Tuple[int, int, int]


def base_cylinder(
    chart: ChartToricData,
    legs: Tuple[Optional[DoubleSquareConfig], ...] = (None, None, None),
) -> DoubleBoxConfig:
    """The minimal configuration with the given asymptotics (pure cylinders)."""
    config = DoubleBoxConfig(chart, legs, {})
    problems = config.violations()
    if problems:
        raise NotADoubleBox("; ".join(problems))
    return config


def enumerate_box_configs(
    chart: ChartToricData,
    legs: Tuple[Optional[DoubleSquareConfig], ...] = (None, None, None),
    max_size: int = 0,
) -> Dict[int, List[DoubleBoxConfig]]:
    """All configurations with at most max_size boxes beyond the cylinder.

    Keys are the box counts above the base; the renormalized size of each
    configuration is base.quotient_size() + key.
    """
    start = base_cylinder(chart, legs)
    window = start.window(margin=2)
    hi = tuple(window[i] + max_size for i in range(3))
    candidates = [
        (a, b, c)
        for a in range(chart.u[0], hi[0] + 1)
        for b in range(chart.u[1], hi[1] + 1)
        for c in range(chart.u[2], hi[2] + 1)
        if chart.chi_R((a, b, c)) > 0
    ]
    by_count: Dict[int, List[DoubleBoxConfig]] = {0: [start]}
    frontier = [start]
    for count in range(1, max_size + 1):
        seen = {}
        for config in frontier:
            for cell in candidates:
                child = _try_add(config, cell)
                if child is not None:
                    seen.setdefault(child.dev, child)
        frontier = [seen[k] for k in sorted(seen)]
        by_count[count] = frontier
    return by_count


def _try_add(config: DoubleBoxConfig, cell: Cell) -> Optional[DoubleBoxConfig]:
    chart = config.chart
    m = config.delta(cell)
    chi = chart.chi_R(cell) - m
    if chi <= 0:
        return None
    for axis in range(3):
        below = list(cell)
        below[axis] -= 1
        below = tuple(below)
        if config.chi(below) > chi - 1:
            return None
    dev = dict(config.dev)
    cyl = config.cylinder_delta(cell)
    if m + 1 == cyl:
        dev.pop(cell, None)
    else:
        dev[cell] = m + 1
    child = DoubleBoxConfig(chart, config.legs, dev)
    if any(not comp.is_valid for comp in child.components()):
        return None
    return child


def canonicalize(
    chart: ChartToricData,
    triple,
    legs: Tuple[Optional[DoubleSquareConfig], ...] = (None, None, None),
) -> DoubleBoxConfig:
    """Canonical class of a raw triple (or pair) of finite 3D partition parts.

    Each entry lists the finite set of boxes of one constituent partition
    beyond its leg cylinders. Validates partition shape, the exactly-two
    condition and the asymptotics; raises NotADoubleBox otherwise.
    """
    from .config import slot_base, slot_count

    nslots = slot_count(chart)
    if len(triple) != nslots:
        raise NotADoubleBox(f"expected {nslots} partitions, got {len(triple)}")
    base = base_cylinder(chart, legs)
    members: Dict[Cell, set] = {}
    for slot, boxes in enumerate(triple):
        for cell in map(tuple, boxes):
            members.setdefault(cell, set()).add(slot)
    # add the cylinder memberships
    window = [0, 0, 0]
    for cell in members:
        for i in range(3):
            window[i] = max(window[i], cell[i] + 2)
    w = tuple(max(a, b) for a, b in zip(window, base.window()))
    for cell in base._support(w):
        cyl = base.cylinder_memberships(cell)
        if cyl:
            members.setdefault(cell, set()).update(cyl)
    # partition shape: downward closure of each slot within its cone
    for cell, slots in sorted(members.items()):
        for slot in slots:
            origin = slot_base(chart, slot)
            for axis in range(3):
                if cell[axis] > origin[axis]:
                    below = list(cell)
                    below[axis] -= 1
                    below = tuple(below)
                    if slot not in members.get(below, set()):
                        raise NotADoubleBox(
                            f"partition {slot} not downward closed at {cell}"
                        )
                elif cell[axis] < origin[axis]:
                    raise NotADoubleBox(f"box {cell} below base of partition {slot}")
    delta: Dict[Cell, int] = {}
    corner = tuple(chart.u[i] + chart.v[i] for i in range(3))
    for cell, slots in members.items():
        count = len(slots)
        if chart.is_singular:
            in_d = all(cell[i] >= corner[i] for i in range(3))
            if in_d:
                if count == 1:
                    raise NotADoubleBox(f"box {cell} lies in exactly one partition")
                delta[cell] = count - 1
            else:
                if count != 1:
                    raise NotADoubleBox(f"slab box {cell} lies in {count} partitions")
                delta[cell] = 1
        else:
            delta[cell] = count
    dev = {}
    for cell, m in delta.items():
        if base.cylinder_delta(cell) != m:
            dev[cell] = m
    config = DoubleBoxConfig(chart, legs, dev)
    problems = config.violations()
    if problems:
        raise NotADoubleBox("; ".join(problems))
    return config
