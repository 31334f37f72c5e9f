"""Link diagrams of loop pairs on the planes Sigma_1, Sigma_2, Sigma_3 and the hyperlinking number."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import predicates as pr
from .geometry import PLANE_COORDS, Hyperlink, PLLoop


class DegenerateDiagram(ValueError):
    """The projection is not generic enough to read off crossings; perturb the input."""

    def __init__(self, msg, witness=None):
        super().__init__(msg)
        self.witness = witness


@dataclass(frozen=True)
class Crossing:
    plane: int
    s: float
    t: float
    point: tuple
    orientation: int
    height: int
    time_lag: int
    segments: tuple = (None, None)

    @property
    def product(self) -> int:
        return self.orientation * self.height * self.time_lag


def _eps_for(a, b, eps):
    return Hyperlink((a, b)).default_eps() if eps is None else eps


def _candidates(A0, A1, B0, B1):
    lo_a, hi_a = np.minimum(A0, A1), np.maximum(A0, A1)
    lo_b, hi_b = np.minimum(B0, B1), np.maximum(B0, B1)
    ok = np.all((lo_a[:, None, :] <= hi_b[None, :, :]) & (lo_b[None, :, :] <= hi_a[:, None, :]),
                axis=2)
    return zip(*np.nonzero(ok))


def find_crossings(a: PLLoop, b: PLLoop, plane: int, eps: Optional[float] = None) -> list:
    """All transverse crossings of a and b projected onto Sigma_plane, sorted by (s, t).

    orientation is the sign of the plane-normal component of the 3-D cross
    product of the two spatial tangents (for plane 2 that is not the 2-D cross
    product in (x1, x3) order).
    """
    if plane not in PLANE_COORDS:
        raise ValueError("plane must be 1, 2 or 3")
    eps = _eps_for(a, b, eps)
    c = list(PLANE_COORDS[plane])
    A0, A1 = a.vertices[:, c], a.ends[:, c]
    B0, B1 = b.vertices[:, c], b.ends[:, c]
    out = []
    for i, j in _candidates(A0, A1, B0, B1):
        kind = pr.classify_segments(A0[i], A1[i], B0[j], B1[j])
        if kind == pr.DISJOINT:
            continue
        if kind != pr.PROPER:
            raise DegenerateDiagram(
                f"segments {i} and {j} touch or overlap in Sigma_{plane}",
                witness=(plane, int(i), int(j)))
        u, v = pr.intersection_params(A0[i], A1[i], B0[j], B1[j])
        la = float(np.linalg.norm(A1[i] - A0[i]))
        lb = float(np.linalg.norm(B1[j] - B0[j]))
        if min(u, 1 - u) * la <= eps or min(v, 1 - v) * lb <= eps:
            raise DegenerateDiagram(f"crossing in Sigma_{plane} lies at a segment endpoint",
                                    witness=(plane, int(i), int(j)))
        pa = a.vertices[i] + u * a.vectors[i]
        pb = b.vertices[j] + v * b.vectors[j]
        cross = float(np.cross(a.vectors[i, 1:], b.vectors[j, 1:])[plane - 1])
        if abs(cross) / max(la, lb) <= eps:
            raise DegenerateDiagram(f"near-tangent crossing in Sigma_{plane}",
                                    witness=(plane, int(i), int(j)))
        dh = pa[plane] - pb[plane]
        dt = pb[0] - pa[0]
        if abs(dh) <= eps or abs(dt) <= eps:
            raise DegenerateDiagram(
                f"crossing in Sigma_{plane} has vanishing height or time separation",
                witness=(plane, int(i), int(j)))
        out.append(Crossing(plane, a.param(i, u), b.param(j, v), tuple(float(x) for x in pa[c]),
                            int(np.sign(cross)), int(np.sign(dh)), int(np.sign(dt)),
                            (int(i), int(j))))
    out.sort(key=lambda x: (x.s, x.t))
    return out


def all_crossings(a: PLLoop, b: PLLoop, eps: Optional[float] = None) -> list:
    return [x for k in (1, 2, 3) for x in find_crossings(a, b, k, eps)]


def hyperlinking_number(a: PLLoop, b: PLLoop, eps: Optional[float] = None) -> int:
    """sk(a, b): orientation * height * time-lag summed over the crossings of all three planes."""
    return sum(x.product for x in all_crossings(a, b, eps))


def sk_loop_vs_hyperlink(a: PLLoop, L: Hyperlink, eps: Optional[float] = None) -> int:
    return sum(hyperlinking_number(a, b, eps) for b in L)


def crossing_clearance(a: PLLoop, b: PLLoop) -> float:
    """How far the diagram of (a, b) is from changing combinatorially.

    Minimum over the three planes of: distances between non-crossing projected
    segment pairs, crossing-to-endpoint distances (scaled by the crossing
    angle), and height / time separations at crossings.  Moving every vertex
    by less than a tenth of this keeps sk fixed.
    """
    best = np.inf
    for k, c in PLANE_COORDS.items():
        c = list(c)
        A0, A1 = a.vertices[:, c], a.ends[:, c]
        B0, B1 = b.vertices[:, c], b.ends[:, c]
        for i in range(a.n_segments):
            for j in range(b.n_segments):
                kind = pr.classify_segments(A0[i], A1[i], B0[j], B1[j])
                if kind == pr.DISJOINT:
                    d, _, _ = pr.segment_segment_closest(A0[i], A1[i], B0[j], B1[j])
                    best = min(best, d)
                    continue
                if kind != pr.PROPER:
                    return 0.0
                u, v = pr.intersection_params(A0[i], A1[i], B0[j], B1[j])
                da, db = A1[i] - A0[i], B1[j] - B0[j]
                la, lb = np.linalg.norm(da), np.linalg.norm(db)
                sin = abs(da[0] * db[1] - da[1] * db[0]) / (la * lb)
                pa = a.vertices[i] + u * a.vectors[i]
                pb = b.vertices[j] + v * b.vectors[j]
                best = min(best, sin * min(u, 1 - u) * la, sin * min(v, 1 - v) * lb,
                           abs(pa[k] - pb[k]), abs(pa[0] - pb[0]))
    return float(best)
