"""Global configurations on a toric 3-fold: gluing, weights, chi and c3.

A global configuration is one double box configuration per vertex with
matching asymptotics along every edge. The holomorphic Euler characteristic
of the quotient is chi = sum of renormalized sizes plus per-edge corrections
(f, g); an independent truncated Cech character count recomputes it directly
from weight spaces, giving the oracle the formula is tested against.

Sizes and the g correction both depend on how exactly-two components are
assigned to constituent partitions; each chart uses its own canonical
assignment for both, and the combination chi is assignment-independent.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from ..toric import Edge, GlobalToricData, GluingMismatch, ToricThreefold
from .config import DoubleBoxConfig, NotADoubleBox, lines_compatible, pair_slot_map
from .squares import DoubleSquareConfig, EdgeFlag


def edge_flag_in_edge_frame(g: GlobalToricData, edge: Edge) -> EdgeFlag:
    f0, f1 = edge.cross_faces
    return EdgeFlag(
        u=(g.u[f0], g.u[f1]),
        v=(g.v[f0], g.v[f1]),
        p=(g.p[f0], g.p[f1]),
    )


def swap_square_config(config: DoubleSquareConfig) -> DoubleSquareConfig:
    flag = config.flag
    swapped = EdgeFlag(u=(flag.u[1], flag.u[0]), v=(flag.v[1], flag.v[0]), p=(flag.p[1], flag.p[0]))
    return DoubleSquareConfig(swapped, {(b, a): m for (a, b), m in config.cells})


def chart_frame_leg(
    fold: ToricThreefold, edge: Edge, end: int,
    edge_leg: Optional[DoubleSquareConfig],
) -> Optional[DoubleSquareConfig]:
    """Convert an edge-frame double square configuration to the chart frame."""
    if edge_leg is None:
        return None
    ca = fold.cross_axes(edge, end)
    if ca[0] < ca[1]:
        return edge_leg
    return swap_square_config(edge_leg)


def edge_frame_leg(
    fold: ToricThreefold, edge: Edge, end: int, chart_leg: DoubleSquareConfig
) -> DoubleSquareConfig:
    ca = fold.cross_axes(edge, end)
    if ca[0] < ca[1]:
        return chart_leg
    return swap_square_config(chart_leg)


@dataclass(frozen=True)
class GlobalConfig:
    data: GlobalToricData
    fold: ToricThreefold
    configs: Tuple[DoubleBoxConfig, ...]

    def __post_init__(self):
        if len(self.configs) != len(self.fold.vertices):
            raise GluingMismatch("one configuration per vertex required")
        for cfg, faces in zip(self.configs, self.fold.vertices):
            expected = self.data.chart(faces)
            if cfg.chart != expected:
                raise GluingMismatch(f"chart data mismatch at vertex {faces}")
        for ei, edge in enumerate(self.fold.edges):
            legs = [self.edge_leg(ei, end) for end in (0, 1)]
            if (legs[0] is None) != (legs[1] is None) or (
                legs[0] is not None and legs[0] != legs[1]
            ):
                raise GluingMismatch(f"asymptotics differ along edge {ei}")
            if legs[0] is not None and legs[0].size and not edge.compact:
                raise GluingMismatch(f"leg on non-compact edge {ei}")

    def edge_leg(self, edge_index: int, end: int = 0) -> Optional[DoubleSquareConfig]:
        edge = self.fold.edges[edge_index]
        cfg = self.configs[edge.ends[end]]
        axis = self.fold.edge_axis(edge, end)
        leg = cfg.legs[axis]
        if leg is None:
            return None
        return edge_frame_leg(self.fold, edge, end, leg)

    # -- global component classes -----------------------------------------

    def component_classes(self) -> List[dict]:
        """Local exactly-two components glued along edges.

        Each class records members (vertex, component index), the union of
        their forced lines, and the per-edge 2D components it runs along.
        """
        parent = {}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(a, b):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb

        local = {}
        for vi, cfg in enumerate(self.configs):
            for ci, comp in enumerate(cfg.components()):
                node = (vi, ci)
                parent[node] = node
                local[node] = comp
        edge_runs: Dict[Tuple[int, int], List] = {}
        for node, comp in local.items():
            vi = node[0]
            cfg = self.configs[vi]
            for (axis, t_ci) in comp.tails:
                located = self._locate_tail(vi, axis, t_ci)
                if located is None:
                    continue
                edge_runs.setdefault(located, []).append(node)
        for nodes in edge_runs.values():
            for other in nodes[1:]:
                union(nodes[0], other)
        classes: Dict = {}
        for node, comp in local.items():
            root = find(node)
            entry = classes.setdefault(root, {"members": [], "forced": set(), "edges": set()})
            entry["members"].append(node)
            entry["forced"] |= set(comp.forced)
        for (ei, e_ci), nodes in edge_runs.items():
            classes[find(nodes[0])]["edges"].add((ei, e_ci))
        out = []
        for root in sorted(classes, key=lambda r: min(classes[r]["members"])):
            entry = classes[root]
            entry["members"].sort()
            out.append(entry)
        return out

    def _locate_tail(self, vi: int, axis: int, t_ci: int) -> Optional[Tuple[int, int]]:
        """(edge index, edge-frame 2D component index) a chart tail runs along."""
        for ei, edge in enumerate(self.fold.edges):
            for end in (0, 1):
                if edge.ends[end] != vi or self.fold.edge_axis(edge, end) != axis:
                    continue
                edge_leg = self.edge_leg(ei)
                if edge_leg is None:
                    return None
                chart_leg = self.configs[vi].legs[axis]
                cells = chart_leg.components()[t_ci].cells
                ca = self.fold.cross_axes(edge, end)
                if ca[0] > ca[1]:
                    cells = frozenset((b, a) for (a, b) in cells)
                return (ei, edge_leg.component_of(min(cells)))
        return None

    def is_valid(self) -> bool:
        return all(len(c["forced"]) <= 1 for c in self.component_classes())

    def moduli_factor_count(self) -> int:
        return sum(1 for c in self.component_classes() if not c["forced"])

    def weight_omega(self) -> int:
        """e of the glued fixed component: 2 per surviving P^1 factor."""
        return 2 ** self.moduli_factor_count()


# ---------------------------------------------------------------------------
# Leg corrections and the chi formula
# ---------------------------------------------------------------------------


def leg_corrections_paper(m: int, mp: int, leg: DoubleSquareConfig,
                          u: int, up: int, v: int, vp: int) -> Tuple[int, int]:
    """(f, g) in closed form for an edge with non-degenerate flag data.

    Uses the canonical representative of the configuration; (u, v) belong to
    the transverse face at one end, (u', v') at the other.
    """
    f = sum(mult * (1 - m * c[0] - mp * c[1]) for c, mult in leg.cells)
    parts = leg.triple_parts()
    n3 = len(parts[2])
    g = -leg.size * (u + up + v + vp) + n3 * (v + vp)
    return f, g


def edge_f(edge: Edge, edge_leg: DoubleSquareConfig) -> int:
    m, mp = edge.m
    return sum(mult * (1 - m * c[0] - mp * c[1]) for c, mult in edge_leg.cells)


def edge_g(gc: GlobalConfig, edge_index: int) -> int:
    """Constituent column-base correction, summed over the two ends.

    Triple ends subtract the constituent bases (u+v, u+v, u along the edge
    axis) and add back the out columns at u+v; degenerate ends subtract each
    summand's jump along the edge axis. Per-end canonical assignments are the
    same ones the chart sizes use, so chi is assignment-independent.
    """
    edge = gc.fold.edges[edge_index]
    total = 0
    for end in (0, 1):
        vi = edge.ends[end]
        cfg = gc.configs[vi]
        axis = gc.fold.edge_axis(edge, end)
        leg = cfg.legs[axis]
        if leg is None or not leg.cells:
            continue
        table = cfg.induced_2d_assignments().get(axis)
        u_e = gc.data.u[edge.end_faces[end]]
        v_e = gc.data.v[edge.end_faces[end]]
        if cfg.chart.is_singular:
            parts = leg.triple_parts(table)
            n1, n2, n3 = (len(p) for p in parts)
            corner = leg.flag.d_corner()
            out = sum(
                1 for c, _mult in leg.cells if c[0] >= corner[0] and c[1] >= corner[1]
            )
            total += -(n1 + n2) * (u_e + v_e) - n3 * u_e + out * (u_e + v_e)
        else:
            parts = leg.pair_parts(table)
            mapping = pair_slot_map(cfg.chart, axis)
            summands = cfg.chart.summands()
            for index, part in enumerate(parts):
                base = summands[mapping[index]][0][axis]
                total += -len(part) * base
    return total


def leg_corrections(gc: GlobalConfig, edge_index: int) -> Tuple[int, int]:
    edge_leg = gc.edge_leg(edge_index)
    if edge_leg is None or not edge_leg.cells:
        return 0, 0
    return edge_f(gc.fold.edges[edge_index], edge_leg), edge_g(gc, edge_index)


def chi_formula(gc: GlobalConfig) -> int:
    """chi of the quotient: renormalized sizes plus per-edge (f + g)."""
    total = 0
    for cfg in gc.configs:
        total += cfg.quotient_size()
    for ei in range(len(gc.fold.edges)):
        f, g = leg_corrections(gc, ei)
        total += f + g
    return total


def leg_multiplicity_total(gc: GlobalConfig) -> int:
    """Sum of |lambda| over edges: the curve degree of the quotient support."""
    total = 0
    for ei in range(len(gc.fold.edges)):
        leg = gc.edge_leg(ei)
        if leg is not None:
            total += leg.size
    return total


def c3_quotient(gc: GlobalConfig, chi: int | None = None) -> int:
    """c3(Q) = 2 chi(Q) - sum_edges |lambda| (c1(X) . C)."""
    if chi is None:
        chi = chi_formula(gc)
    correction = 0
    for ei, edge in enumerate(gc.fold.edges):
        leg = gc.edge_leg(ei)
        if leg is not None:
            correction += leg.size * edge.c1X_dot_C
    return 2 * chi - correction


def c1R_dot_C(gc: GlobalConfig, edge_index: int) -> int:
    """Degree of the hull's determinant on the toric line C."""
    edge = gc.fold.edges[edge_index]
    total = 0
    for f in gc.data.faces:
        total += (2 * gc.data.u[f] + gc.data.v[f]) * edge.D_dot_C(f)
    return -total


def cech_chi(gc: GlobalConfig, slack: int = 3) -> int:
    """Direct truncated character count of the quotient at t = (1,1,1).

    Sums per-chart weight multiplicities up to a common cutoff K along every
    axis and subtracts, per edge cross-section cell, the full-line count
    2K + 1 + m k2 + m' k3. Exact once K clears all deviations.
    """
    k_cut = 0
    for cfg in gc.configs:
        k_cut = max(k_cut, max(cfg.window(margin=2)))
    k_cut += slack
    total = 0
    for cfg in gc.configs:
        for cell in cfg._support((k_cut, k_cut, k_cut)):
            if all(cell[i] <= k_cut for i in range(3)):
                total += cfg.delta(cell)
    for ei, edge in enumerate(gc.fold.edges):
        leg = gc.edge_leg(ei)
        if leg is None:
            continue
        m, mp = edge.m
        for c, mult in leg.cells:
            total -= mult * (2 * k_cut + 1 + m * c[0] + mp * c[1])
    return total
