"""Classified reflexive hulls on P^3 for low second Chern class.

The lists follow the torus-fixed classification for c1 = -1: four hulls with
a single length-1 singularity for c2 = 1, and the two families of twelve
0-dimensional-quotient hulls for c2 = 2, plus the c2' = 1 hulls reached by
one-dimensional quotients. Every returned hull is verified against the Chern
class formulas, slope stability and the slice normalization.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import List, Tuple

from ..toric import (
    GlobalToricData,
    ToricThreefold,
    UnsupportedPreset,
    chern_classes_p3,
    mu_stable,
    p3_threefold,
    satisfies_slice,
)

# three mutually distinct points of P^1; only incidence matters
P_DISTINCT = ((1, 0), (0, 1), (1, 1))
P_EXTRA = (1, 2)


@dataclass(frozen=True)
class Hull:
    data: GlobalToricData
    c2_prime: int
    c3_prime: int
    leg_bearing: bool = False     # reached only through 1-dimensional quotients

    @property
    def faces(self):
        return self.data.faces


def _mk(u: dict, v: dict, p: dict) -> GlobalToricData:
    faces = ("rho1", "rho2", "rho3", "rho4")
    return GlobalToricData(
        faces=faces,
        u={f: u.get(f, 0) for f in faces},
        v={f: v.get(f, 0) for f in faces},
        p={f: p.get(f) for f in faces},
    )


def hulls_c2_1() -> List[Hull]:
    """Four hulls: v = 1 on three faces with distinct lines, one v = 0."""
    faces = ("rho1", "rho2", "rho3", "rho4")
    out = []
    for zero in range(4):
        active = [f for i, f in enumerate(faces) if i != zero]
        u = {"rho4": -1}
        v = {f: 1 for f in active}
        p = {f: P_DISTINCT[i] for i, f in enumerate(active)}
        out.append(Hull(_mk(u, v, p), c2_prime=1, c3_prime=1))
    return out


def hulls_c2_2() -> List[Hull]:
    """Type (i) and (ii) hulls (12 each) with c2' = 2 and 0-dimensional cokernels."""
    faces = ("rho1", "rho2", "rho3", "rho4")
    out = []
    # type (i): v = 1,1,1,2 with the two small-v faces i, j sharing a line
    for l in range(4):
        rest = [f for k, f in enumerate(faces) if k != l]
        for (i, j) in ((0, 1), (0, 2), (1, 2)):
            k = next(m for m in range(3) if m not in (i, j))
            u = {"rho4": -2}
            v = {faces[l]: 2, rest[0]: 1, rest[1]: 1, rest[2]: 1}
            p = {
                rest[i]: P_DISTINCT[0],
                rest[j]: P_DISTINCT[0],
                rest[k]: P_DISTINCT[1],
                faces[l]: P_DISTINCT[2],
            }
            out.append(Hull(_mk(u, v, p), c2_prime=2, c3_prime=4))
    # type (ii): v = 0, 1, 2, 2 with distinct lines on the active faces
    for zero in range(4):
        rest = [f for k, f in enumerate(faces) if k != zero]
        for one in range(3):
            u = {"rho4": -2}
            v = {rest[one]: 1}
            for m in range(3):
                if m != one:
                    v[rest[m]] = 2
            p = {rest[m]: P_DISTINCT[m] for m in range(3)}
            out.append(Hull(_mk(u, v, p), c2_prime=2, c3_prime=4))
    return out


def verify_hull(hull: Hull, fold: ToricThreefold, c1: int) -> None:
    got_c1, got_c2, got_c3 = chern_classes_p3(hull.data)
    if got_c1 != c1 or got_c2 != hull.c2_prime or got_c3 != hull.c3_prime:
        raise ValueError(
            f"hull Chern classes ({got_c1}, {got_c2}, {got_c3}) do not match "
            f"({c1}, {hull.c2_prime}, {hull.c3_prime})"
        )
    if not mu_stable(hull.data, fold):
        raise ValueError("hull is not slope stable")
    if not satisfies_slice(hull.data, fold):
        raise ValueError("hull violates the slice normalization")


def enumerate_hulls(preset: str, c1: int, c2: int) -> List[Hull]:
    """Classified hull list for the supported (P^3, -1, c2) presets.

    c2 = 2 includes both the 24 hulls with c2' = 2 and the 4 hulls with
    c2' = 1 whose torsion-free sheaves have one-dimensional cokernels.
    """
    if preset != "p3" or c1 != -1:
        raise UnsupportedPreset(f"no hull classification for ({preset}, {c1}, {c2})")
    fold = p3_threefold()
    if c2 == 1:
        hulls = hulls_c2_1()
    elif c2 == 2:
        hulls = hulls_c2_2() + [
            Hull(h.data, h.c2_prime, h.c3_prime, leg_bearing=True) for h in hulls_c2_1()
        ]
    else:
        raise UnsupportedPreset(f"c2 = {c2} is not classified")
    for hull in hulls:
        verify_hull(hull, fold, c1)
    return hulls
