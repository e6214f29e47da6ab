"""Toric data of rank-2 reflexive sheaves and threefold presets.

A chart carries Klyachko flag data (u, v, p) per coordinate axis; points of
P^1 are stored as primitive integer pairs and only their incidence pattern
matters. Threefolds record vertices (ordered face triples), edges with
normal-bundle degrees and intersection numbers, and a polarization.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Dict, Optional, Tuple

from .algebra.laurent import LaurentPoly3

Point = Tuple[int, int]


class NotTetrahedron(Exception):
    pass


class GluingMismatch(Exception):
    pass


class UnsupportedPreset(Exception):
    pass


def normalize_point(p) -> Point:
    """Primitive representative of a P^1 point, first nonzero entry positive."""
    a, b = int(p[0]), int(p[1])
    if a == 0 and b == 0:
        raise ValueError("(0,0) is not a point of P^1")
    g = gcd(abs(a), abs(b))
    a, b = a // g, b // g
    lead = a if a != 0 else b
    if lead < 0:
        a, b = -a, -b
    return (a, b)


@dataclass(frozen=True)
class ChartToricData:
    """Flag data (u_i, v_i, p_i) of a rank-2 reflexive sheaf on one C^3 chart."""

    u: Tuple[int, int, int]
    v: Tuple[int, int, int]
    p: Tuple[Optional[Point], Optional[Point], Optional[Point]]

    def __post_init__(self):
        for i in range(3):
            if self.v[i] < 0:
                raise ValueError("jump lengths must be nonnegative")
            if (self.v[i] > 0) != (self.p[i] is not None):
                raise ValueError("p_i must be present exactly when v_i > 0")
        object.__setattr__(
            self, "p", tuple(normalize_point(q) if q is not None else None for q in self.p)
        )

    # -- incidence and singularity ------------------------------------

    def delta(self, i: int, j: int) -> int:
        if self.p[i] is None or self.p[j] is None:
            return 0
        return 1 if self.p[i] == self.p[j] else 0

    @property
    def is_singular(self) -> bool:
        return (
            all(vi > 0 for vi in self.v)
            and self.p[0] != self.p[1]
            and self.p[0] != self.p[2]
            and self.p[1] != self.p[2]
        )

    def singularity_data(self) -> Tuple[bool, int]:
        if self.is_singular:
            return True, self.v[0] * self.v[1] * self.v[2]
        return False, 0

    # -- weight-space geometry -----------------------------------------

    def chi_R(self, cell: Tuple[int, int, int]) -> int:
        """Dimension of the hull's weight space at a lattice point."""
        lines = []
        for i in range(3):
            k = cell[i]
            if k < self.u[i]:
                return 0
            if k < self.u[i] + self.v[i]:
                lines.append(self.p[i])
        if not lines:
            return 2
        first = lines[0]
        return 1 if all(q == first for q in lines) else 0

    def hull_line(self, cell: Tuple[int, int, int]) -> Optional[Point]:
        """The line spanning a 1-dimensional weight space (None otherwise)."""
        lines = []
        for i in range(3):
            k = cell[i]
            if k < self.u[i]:
                return None
            if k < self.u[i] + self.v[i]:
                lines.append(self.p[i])
        if not lines:
            return None
        first = lines[0]
        return first if all(q == first for q in lines) else None

    def summands(self):
        """Equivariant splitting of a locally free chart.

        Returns ((w1, line1), (w2, line2)) with w in Z^3 and line a P^1 point
        label or None when the summand line is unconstrained. Ordered by
        weight then label so the choice is deterministic.
        """
        if self.is_singular:
            raise ValueError("singular charts do not split")
        active = [i for i in range(3) if self.v[i] > 0]
        lines = sorted({self.p[i] for i in active})
        if not lines:
            w = tuple(self.u)
            return ((w, None), (w, None))
        if len(lines) == 1:
            q = lines[0]
            w1 = tuple(self.u)
            w2 = tuple(self.u[i] + self.v[i] for i in range(3))
            return ((w1, q), (w2, None))
        qa, qb = lines
        wa = tuple(self.u[i] + (0 if self.p[i] == qa else self.v[i]) for i in range(3))
        wb = tuple(self.u[i] + (0 if self.p[i] == qb else self.v[i]) for i in range(3))
        pairs = sorted([(wa, qa), (wb, qb)])
        return (pairs[0], pairs[1])

    def reflexive_character(self) -> LaurentPoly3:
        """Generating polynomial of the hull: char H^0 = P / prod(1 - t_i)."""
        u, v = self.u, self.v
        if self.is_singular:
            return (
                LaurentPoly3.monomial((u[0], u[1] + v[1], u[2] + v[2]))
                + LaurentPoly3.monomial((u[0] + v[0], u[1], u[2] + v[2]))
                + LaurentPoly3.monomial((u[0] + v[0], u[1] + v[1], u[2]))
                - LaurentPoly3.monomial((u[0] + v[0], u[1] + v[1], u[2] + v[2]))
            )
        (w1, _), (w2, _) = self.summands()
        return LaurentPoly3.monomial(w1) + LaurentPoly3.monomial(w2)

    def corner_base(self) -> Tuple[int, int, int]:
        return tuple(self.u)


# ---------------------------------------------------------------------------
# Global data: one (u, v, p) per face of the polyhedron.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GlobalToricData:
    faces: Tuple[str, ...]
    u: Dict[str, int]
    v: Dict[str, int]
    p: Dict[str, Optional[Point]]

    @classmethod
    def from_dict(cls, data: Dict[str, dict]) -> "GlobalToricData":
        faces = tuple(sorted(data))
        u = {f: int(data[f]["u"]) for f in faces}
        v = {f: int(data[f].get("v", 0)) for f in faces}
        p = {}
        for f in faces:
            pt = data[f].get("p")
            p[f] = normalize_point(pt) if pt is not None else None
            if (v[f] > 0) != (p[f] is not None):
                raise ValueError(f"face {f}: p present iff v > 0")
        return cls(faces, u, v, p)

    def to_dict(self) -> Dict[str, dict]:
        out = {}
        for f in self.faces:
            entry = {"u": self.u[f], "v": self.v[f]}
            if self.p[f] is not None:
                entry["p"] = list(self.p[f])
            out[f] = entry
        return out

    def chart(self, face_triple: Tuple[str, str, str]) -> ChartToricData:
        return ChartToricData(
            u=tuple(self.u[f] for f in face_triple),
            v=tuple(self.v[f] for f in face_triple),
            p=tuple(self.p[f] for f in face_triple),
        )


@dataclass(frozen=True)
class Edge:
    ends: Tuple[int, int]              # vertex indices
    cross_faces: Tuple[str, str]       # faces containing the line (canonical frame order)
    end_faces: Tuple[str, str]         # transverse faces, end_faces[i] at ends[i]
    m: Tuple[int, int]                 # normal degree paired with each cross face
    compact: bool = True               # lies in the open Calabi-Yau subset

    @property
    def c1X_dot_C(self) -> int:
        return 2 + self.m[0] + self.m[1]

    def D_dot_C(self, face: str) -> int:
        if face in self.cross_faces:
            return self.m[self.cross_faces.index(face)]
        if face in self.end_faces:
            return 1
        return 0


@dataclass(frozen=True)
class ToricThreefold:
    name: str
    faces: Tuple[str, ...]
    vertices: Tuple[Tuple[str, str, str], ...]   # chart axis i <-> vertex[i]
    edges: Tuple[Edge, ...]
    polarization: Dict[str, int]                 # D_rho H^2
    y_vertices: Tuple[int, ...] = ()             # charts inside the open CY subset
    base_vertex: int = 0                         # slice normalization chart

    @property
    def euler_characteristic(self) -> int:
        return len(self.vertices)

    def edge_axis(self, edge: Edge, end: int) -> int:
        """Chart axis along the edge at the given endpoint (0 or 1)."""
        return self.vertices[edge.ends[end]].index(edge.end_faces[end])

    def cross_axes(self, edge: Edge, end: int) -> Tuple[int, int]:
        chart_faces = self.vertices[edge.ends[end]]
        return tuple(chart_faces.index(f) for f in edge.cross_faces)

    def validate(self):
        for e in self.edges:
            for end in (0, 1):
                chart_faces = set(self.vertices[e.ends[end]])
                if not set(e.cross_faces) <= chart_faces:
                    raise GluingMismatch(f"edge {e} cross faces not in chart {e.ends[end]}")
                if e.end_faces[end] not in chart_faces:
                    raise GluingMismatch(f"edge {e} end face not in chart {e.ends[end]}")

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "faces": list(self.faces),
            "vertices": [list(vf) for vf in self.vertices],
            "edges": [
                {
                    "ends": list(e.ends),
                    "crossFaces": list(e.cross_faces),
                    "endFaces": list(e.end_faces),
                    "m": e.m[0],
                    "mPrime": e.m[1],
                    "c1dotC": e.c1X_dot_C,
                    "compact": e.compact,
                }
                for e in self.edges
            ],
            "polarization": dict(self.polarization),
            "yVertices": list(self.y_vertices),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ToricThreefold":
        edges = tuple(
            Edge(
                ends=tuple(e["ends"]),
                cross_faces=tuple(e["crossFaces"]),
                end_faces=tuple(e["endFaces"]),
                m=(int(e["m"]), int(e["mPrime"])),
                compact=bool(e.get("compact", True)),
            )
            for e in data["edges"]
        )
        fold = cls(
            name=data.get("name", "custom"),
            faces=tuple(data["faces"]),
            vertices=tuple(tuple(vf) for vf in data["vertices"]),
            edges=edges,
            polarization={f: int(w) for f, w in data["polarization"].items()},
            y_vertices=tuple(data.get("yVertices", range(len(data["vertices"])))),
        )
        fold.validate()
        return fold


# ---------------------------------------------------------------------------
# Presets
# ---------------------------------------------------------------------------


def p3_threefold() -> ToricThreefold:
    """Projective 3-space: tetrahedron with faces rho1..rho4.

    Vertex k is the chart missing face k; all edge normal bundles are
    O(1) + O(1) and every D_rho H^2 = 1 for H the hyperplane class.
    """
    faces = ("rho1", "rho2", "rho3", "rho4")
    vertices = []
    for missing in range(4):
        vertices.append(tuple(f for i, f in enumerate(faces) if i != missing))
    edges = []
    for a in range(4):
        for b in range(a + 1, 4):
            cross = (faces[a], faces[b])
            ends = []
            end_faces = []
            for vi, vf in enumerate(vertices):
                if set(cross) <= set(vf):
                    ends.append(vi)
                    end_faces.append(next(f for f in vf if f not in cross))
            edges.append(Edge(tuple(ends), cross, tuple(end_faces), (1, 1)))
    fold = ToricThreefold(
        name="p3",
        faces=faces,
        vertices=tuple(vertices),
        edges=tuple(edges),
        polarization={f: 1 for f in faces},
        y_vertices=tuple(range(4)),
        base_vertex=3,  # the chart on rho1, rho2, rho3: slice sets their u to 0
    )
    fold.validate()
    return fold


def c3_threefold(weights: Tuple[int, int, int] = (1, 1, 1)) -> ToricThreefold:
    """(P^1)^3 compactification of one C^3 chart.

    Faces: axis i at 0 or infinity. The distinguished chart 0 is the C^3 at
    the origin corner; all edges have trivial normal bundle. The polarization
    H = sum a_i D_i gives D_{i,side} H^2 = 2 a_j a_k.
    """
    a1, a2, a3 = weights
    faces = ("x1_0", "x2_0", "x3_0", "x1_inf", "x2_inf", "x3_inf")
    corners = [(s1, s2, s3) for s1 in (0, 1) for s2 in (0, 1) for s3 in (0, 1)]
    vertices = tuple(
        tuple(faces[i + 3 * s] for i, s in enumerate(corner)) for corner in corners
    )
    edges = []
    for ci, corner in enumerate(corners):
        for axis in range(3):
            if corner[axis] == 0:
                other = list(corner)
                other[axis] = 1
                cj = corners.index(tuple(other))
                cross = tuple(
                    faces[i + 3 * corner[i]] for i in range(3) if i != axis
                )
                end_faces = (faces[axis], faces[axis + 3])
                edges.append(Edge((ci, cj), cross, end_faces, (0, 0)))
    weights_of = {
        "x1_0": 2 * a2 * a3, "x1_inf": 2 * a2 * a3,
        "x2_0": 2 * a1 * a3, "x2_inf": 2 * a1 * a3,
        "x3_0": 2 * a1 * a2, "x3_inf": 2 * a1 * a2,
    }
    fold = ToricThreefold(
        name="c3",
        faces=faces,
        vertices=vertices,
        edges=tuple(edges),
        polarization=weights_of,
        y_vertices=(0,),
    )
    fold.validate()
    return fold


def conifold_threefold() -> ToricThreefold:
    """Resolved conifold Tot(O(-1) + O(-1)) with its compact edge.

    Only the two charts meeting the zero section and their compact edge are
    modelled; rho1, rho2 contain the edge, rho3 meets chart 0 and rho4 meets
    chart 1. Edge normal degrees are (-1, -1). Polarization weights follow the
    compactification used for stability checks.
    """
    faces = ("rho1", "rho2", "rho3", "rho4")
    vertices = (("rho1", "rho2", "rho3"), ("rho1", "rho2", "rho4"))
    edges = (Edge((0, 1), ("rho1", "rho2"), ("rho3", "rho4"), (-1, -1)),)
    fold = ToricThreefold(
        name="conifold",
        faces=faces,
        vertices=vertices,
        edges=edges,
        polarization={"rho1": 2, "rho2": 2, "rho3": 1, "rho4": 1},
        y_vertices=(0, 1),
    )
    fold.validate()
    return fold


PRESETS = {
    "p3": p3_threefold,
    "c3": c3_threefold,
    "conifold": conifold_threefold,
}


def threefold_preset(name: str, **kwargs) -> ToricThreefold:
    if name not in PRESETS:
        raise UnsupportedPreset(f"unknown threefold preset {name!r}")
    return PRESETS[name](**kwargs)


# ---------------------------------------------------------------------------
# Global operations
# ---------------------------------------------------------------------------


def chern_classes_p3(g: GlobalToricData) -> Tuple[int, int, int]:
    """(c1, c2, c3) of a rank-2 reflexive sheaf on P^3 in units of h, h^2, h^3."""
    if len(g.faces) != 4:
        raise NotTetrahedron(f"expected 4 faces, got {len(g.faces)}")
    faces = list(g.faces)
    u = [g.u[f] for f in faces]
    v = [g.v[f] for f in faces]

    def dd(i, j):
        if g.p[faces[i]] is None or g.p[faces[j]] is None:
            return 0
        return 1 if g.p[faces[i]] == g.p[faces[j]] else 0

    def ddd(i, j, k):
        return dd(i, j) * dd(i, k)

    c1 = -(2 * sum(u) + sum(v))
    c2 = Fraction(c1 * c1, 4)
    for i in range(4):
        for j in range(i + 1, 4):
            c2 += Fraction(1, 2) * (1 - 2 * dd(i, j)) * v[i] * v[j]
    c2 -= Fraction(1, 4) * sum(vi * vi for vi in v)
    c3 = 0
    for i in range(4):
        for j in range(i + 1, 4):
            for k in range(j + 1, 4):
                c3 += v[i] * v[j] * v[k] * (1 - dd(i, j) - dd(i, k) - dd(j, k) + 2 * ddd(i, j, k))
    if c2.denominator != 1:
        raise ValueError(f"non-integral c2 = {c2}")
    return c1, int(c2), c3


def mu_stable(g: GlobalToricData, fold: ToricThreefold) -> bool:
    """Slope stability from the flag data and polarization weights."""
    total = sum(fold.polarization[f] * g.v[f] for f in g.faces)
    if total <= 0:
        return False
    candidates = {g.p[f] for f in g.faces if g.p[f] is not None}
    for q in candidates:
        lhs = sum(
            fold.polarization[f] * g.v[f]
            for f in g.faces
            if g.p[f] == q
        )
        if 2 * lhs >= total:
            return False
    return True


def satisfies_slice(g: GlobalToricData, fold: ToricThreefold) -> bool:
    base = fold.vertices[fold.base_vertex]
    return all(g.u[f] == 0 for f in base)


def c3_prime(g: GlobalToricData, fold: ToricThreefold) -> int:
    """Sum of singularity lengths over the charts."""
    total = 0
    for vf in fold.vertices:
        singular, length = g.chart(vf).singularity_data()
        if singular:
            total += length
    return total


def edge_restriction_data(g: GlobalToricData, fold: ToricThreefold, edge: Edge):
    """Limiting flag data of the hull along an edge, in the canonical frame.

    Returns (u_pair, v_pair, p_pair) for the two cross faces; raises
    GluingMismatch when the two endpoint charts disagree (only possible for
    malformed threefold data, but checked regardless).
    """
    views = []
    for end in (0, 1):
        chart_faces = fold.vertices[edge.ends[end]]
        if not set(edge.cross_faces) <= set(chart_faces):
            raise GluingMismatch("edge cross faces missing from endpoint chart")
        views.append(
            (
                tuple(g.u[f] for f in edge.cross_faces),
                tuple(g.v[f] for f in edge.cross_faces),
                tuple(g.p[f] for f in edge.cross_faces),
            )
        )
    if views[0] != views[1]:
        raise GluingMismatch(f"endpoint charts disagree along {edge}")
    return views[0]


def load_toric_document(text: str) -> Tuple[GlobalToricData, ToricThreefold]:
    doc = json.loads(text)
    if isinstance(doc.get("threefold"), str):
        fold = threefold_preset(doc["threefold"])
    else:
        fold = ToricThreefold.from_dict(doc["threefold"])
    data = GlobalToricData.from_dict(doc["faces"])
    if set(data.faces) != set(fold.faces):
        raise GluingMismatch("face names do not match the threefold")
    return data, fold


def dump_toric_document(g: GlobalToricData, fold: ToricThreefold) -> str:
    return json.dumps(
        {"faces": g.to_dict(), "threefold": fold.to_dict()},
        indent=2,
        sort_keys=True,
    )
