"""Piercings of spatially projected loops through a planar surface, and lk(l, S)."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .geometry import Hyperlink, PlanarSurface, PLLoop


class DegeneratePiercing(ValueError):
    def __init__(self, msg, witness=None):
        super().__init__(msg)
        self.witness = witness


@dataclass(frozen=True)
class Piercing:
    loop_index: int
    s: float
    point: tuple          # (x2, x3) in the surface plane
    orientation: int      # sign of rho' . J_sigma = sign(x1' * J23)
    height: int           # +1 below the surface in time (x0 < 0), -1 above
    segment: Optional[int] = None

    @property
    def epsilon(self) -> int:
        return self.orientation * self.height


def _eps_for(l, S, eps):
    if eps is not None:
        return eps
    return 1e-9 * max(Hyperlink((l,)).scale(), S.scale())


def find_piercings(l: PLLoop, S: PlanarSurface, eps: Optional[float] = None,
                   loop_index: int = 0) -> list:
    """Transverse crossings of the plane x1 = 0 that land strictly inside S, sorted by s."""
    eps = _eps_for(l, S, eps)
    out = []
    v, e = l.vertices, l.ends
    for i in range(l.n_segments):
        a1, b1 = v[i, 1], e[i, 1]
        on_a, on_b = abs(a1) <= eps, abs(b1) <= eps
        if on_a and on_b:
            if (S.classify(v[i, 2:], eps) != "outside" or S.classify(e[i, 2:], eps) != "outside"
                    or _segment_meets_surface(v[i, 2:], e[i, 2:], S)):
                raise DegeneratePiercing(f"segment {i} lies in the surface plane", witness=i)
            continue
        if on_a or on_b:
            p = v[i] if on_a else e[i]
            if S.classify(p[2:], eps) != "outside":
                raise DegeneratePiercing(f"vertex of segment {i} touches the surface plane",
                                         witness=tuple(p))
            continue
        if (a1 > 0) == (b1 > 0):
            continue
        u = a1 / (a1 - b1)
        p = v[i] + u * (e[i] - v[i])
        where = S.classify(p[2:], eps)
        if where == "outside":
            continue
        if where == "boundary":
            raise DegeneratePiercing("loop crosses the surface plane on the boundary of S",
                                     witness=tuple(p))
        if abs(p[0]) <= eps:
            raise DegeneratePiercing("loop meets {0} x S (time coordinate vanishes at a piercing)",
                                     witness=tuple(p))
        orient = int(np.sign(e[i, 1] - v[i, 1])) * S.normal_sign
        height = 1 if p[0] < 0 else -1
        out.append(Piercing(loop_index, l.param(i, u), (float(p[2]), float(p[3])), orient,
                            height, i))
    out.sort(key=lambda x: x.s)
    return out


def _segment_meets_surface(p, q, S):
    from . import predicates as pr
    for c in S.components:
        for r in c.rings:
            for k in range(len(r)):
                if pr.classify_segments(p, q, r[k], r[(k + 1) % len(r)]) != pr.DISJOINT:
                    return True
    return False


def linking_number_surface(l: PLLoop, S: PlanarSurface, eps: Optional[float] = None) -> int:
    return sum(p.epsilon for p in find_piercings(l, S, eps))


def piercing_count(l: PLLoop, S: PlanarSurface, eps: Optional[float] = None) -> int:
    return len(find_piercings(l, S, eps))


def hyperlink_piercings(L: Hyperlink, S: PlanarSurface, eps: Optional[float] = None) -> list:
    return [p for u, l in enumerate(L) for p in find_piercings(l, S, eps, loop_index=u)]


def hyperlink_lk(L: Hyperlink, S: PlanarSurface, eps: Optional[float] = None) -> int:
    return sum(linking_number_surface(l, S, eps) for l in L)
