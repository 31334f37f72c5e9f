"""Piecewise-linear loops in R x R^3, hyperlinks, planar surfaces and time-likeness checks.

Coordinates are ordered (x0, x1, x2, x3) with x0 the time axis.  A loop is an
ordered vertex list, implicitly closed, parametrized proportionally to
arc length over [0, 1].
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Optional, Sequence

import numpy as np

from . import predicates as pr

# In-plane coordinates (indices into a 4-vector) of the projection onto Sigma_k.
PLANE_COORDS = {1: (2, 3), 2: (1, 3), 3: (1, 2)}

DEFAULT_REL_EPS = 1e-9


def _frozen(a, shape_tail, dtype=float):
    arr = np.array(a, dtype=dtype)
    if arr.ndim != 1 + len(shape_tail) or arr.shape[1:] != shape_tail:
        raise ValueError(f"expected array of shape (n, {', '.join(map(str, shape_tail))}), "
                         f"got {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("coordinates must be finite")
    arr.flags.writeable = False
    return arr


def half_integer(j) -> Fraction:
    """Parse a spin label (0, 0.5, '3/2', Fraction) into an exact half-integer."""
    f = Fraction(j) if not isinstance(j, float) else Fraction(j).limit_denominator(2)
    if f < 0 or (2 * f).denominator != 1:
        raise ValueError(f"spin must be a nonnegative integer multiple of 1/2, got {j!r}")
    if isinstance(j, float) and float(f) != j:
        raise ValueError(f"spin must be a nonnegative integer multiple of 1/2, got {j!r}")
    return f


@dataclass(frozen=True, eq=False)
class PLLoop:
    """Oriented closed polygon in R^4; the last vertex connects back to the first."""

    vertices: np.ndarray
    name: Optional[str] = None

    def __post_init__(self):
        v = _frozen(self.vertices, (4,))
        if len(v) < 3:
            raise ValueError("a loop needs at least 3 vertices")
        seg = np.roll(v, -1, axis=0) - v
        if np.any(np.all(seg == 0.0, axis=1)):
            raise ValueError("consecutive vertices must be distinct")
        object.__setattr__(self, "vertices", v)

    def __eq__(self, other):
        return (isinstance(other, PLLoop) and self.name == other.name
                and np.array_equal(self.vertices, other.vertices))

    __hash__ = None

    @property
    def n_segments(self) -> int:
        return len(self.vertices)

    @cached_property
    def ends(self) -> np.ndarray:
        return np.roll(self.vertices, -1, axis=0)

    @cached_property
    def vectors(self) -> np.ndarray:
        return self.ends - self.vertices

    @cached_property
    def lengths(self) -> np.ndarray:
        return np.linalg.norm(self.vectors, axis=1)

    @cached_property
    def total_length(self) -> float:
        return float(self.lengths.sum())

    @cached_property
    def breaks(self) -> np.ndarray:
        """Parameter value at the start of each segment, plus 1.0 at the end."""
        c = np.concatenate([[0.0], np.cumsum(self.lengths)]) / self.total_length
        c[-1] = 1.0
        return c

    def param(self, seg: int, u: float) -> float:
        """Global parameter of the point at fraction u along segment seg."""
        return float(self.breaks[seg] + u * (self.breaks[seg + 1] - self.breaks[seg]))

    def locate(self, s: float):
        """(segment index, fraction along it) for parameter s; vertices go right."""
        s = float(s) % 1.0 if s != 1.0 else 0.0
        i = int(np.searchsorted(self.breaks, s, side="right") - 1)
        i = min(max(i, 0), self.n_segments - 1)
        u = (s - self.breaks[i]) / (self.breaks[i + 1] - self.breaks[i])
        return i, u

    def point(self, s: float) -> np.ndarray:
        i, u = self.locate(s)
        return self.vertices[i] + u * self.vectors[i]

    def velocity(self, s: float) -> np.ndarray:
        i, _ = self.locate(s)
        return self.vectors[i] / (self.breaks[i + 1] - self.breaks[i])

    def reversed(self) -> "PLLoop":
        return PLLoop(self.vertices[::-1].copy(), self.name)

    def rotated(self, k: int) -> "PLLoop":
        """Same loop with the vertex list cyclically re-indexed by k."""
        return PLLoop(np.roll(self.vertices, -k, axis=0), self.name)

    def translated(self, offset) -> "PLLoop":
        return PLLoop(self.vertices + np.asarray(offset, float), self.name)

    def mapped(self, fn) -> "PLLoop":
        return PLLoop(fn(np.array(self.vertices)), self.name)


def loop_point(l: PLLoop, s: float) -> np.ndarray:
    return l.point(s)


def loop_velocity(l: PLLoop, s: float) -> np.ndarray:
    return l.velocity(s)


@dataclass(frozen=True)
class Hyperlink:
    loops: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "loops", tuple(self.loops))

    def __len__(self):
        return len(self.loops)

    def __iter__(self):
        return iter(self.loops)

    def __getitem__(self, i):
        return self.loops[i]

    @property
    def labels(self):
        return [l.name for l in self.loops]

    def scale(self) -> float:
        if not self.loops:
            return 1.0
        v = np.vstack([l.vertices for l in self.loops])
        d = float(np.linalg.norm(v.max(axis=0) - v.min(axis=0)))
        return d if d > 0 else 1.0

    def default_eps(self) -> float:
        return DEFAULT_REL_EPS * self.scale()


@dataclass(frozen=True)
class ColoredHyperlink:
    base: Hyperlink
    colors: tuple = ()

    def __post_init__(self):
        colors = tuple((half_integer(a), half_integer(b)) for a, b in self.colors)
        if len(colors) != len(self.base.loops):
            raise ValueError("one (j+, j-) pair is required per loop")
        object.__setattr__(self, "colors", colors)

    def __len__(self):
        return len(self.base)

    def classes(self):
        """Distinct representations in order of first appearance and their member loops."""
        groups: dict = {}
        for u, c in enumerate(self.colors):
            groups.setdefault(c, []).append(u)
        return list(groups.items())


# --- surfaces ---------------------------------------------------------------

def _ring_edges(ring):
    return ring, np.roll(ring, -1, axis=0)


def _ring_simple(ring) -> bool:
    n = len(ring)
    for i in range(n):
        for j in range(i + 1, n):
            if j == i + 1 or (i == 0 and j == n - 1):
                continue
            if pr.classify_segments(ring[i], ring[(i + 1) % n], ring[j],
                                    ring[(j + 1) % n]) != pr.DISJOINT:
                return False
    return True


def _rings_cross(r1, r2) -> bool:
    for i in range(len(r1)):
        for j in range(len(r2)):
            if pr.classify_segments(r1[i], r1[(i + 1) % len(r1)], r2[j],
                                    r2[(j + 1) % len(r2)]) != pr.DISJOINT:
                return True
    return False


def _ring_contains(ring, p) -> bool:
    """Even-odd test with exact side predicates; p assumed off the boundary."""
    inside = False
    n = len(ring)
    for i in range(n):
        a = ring[i]
        b = ring[(i + 1) % n]
        if (a[1] > p[1]) != (b[1] > p[1]):
            o = pr.orient2d(a, b, p)
            # upward edge with p on its left, or downward edge with p on its right
            if (b[1] > a[1] and o > 0) or (b[1] < a[1] and o < 0):
                inside = not inside
    return inside


def ring_area(ring) -> float:
    x, y = ring[:, 0], ring[:, 1]
    return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(np.roll(x, -1), y))


@dataclass(frozen=True, eq=False)
class SurfaceComponent:
    outer: np.ndarray
    holes: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "outer", _frozen(self.outer, (2,)))
        object.__setattr__(self, "holes", tuple(_frozen(h, (2,)) for h in self.holes))
        for r in (self.outer, *self.holes):
            if len(r) < 3 or not _ring_simple(r):
                raise ValueError("surface polygons must be simple with at least 3 vertices")
        for h in self.holes:
            if _rings_cross(self.outer, h) or not all(_ring_contains(self.outer, p) for p in h):
                raise ValueError("holes must lie strictly inside the outer boundary")
        for a in range(len(self.holes)):
            for b in range(a + 1, len(self.holes)):
                ha, hb = self.holes[a], self.holes[b]
                if (_rings_cross(ha, hb) or _ring_contains(ha, hb[0])
                        or _ring_contains(hb, ha[0])):
                    raise ValueError("holes must be pairwise disjoint")

    def __eq__(self, other):
        return (isinstance(other, SurfaceComponent)
                and np.array_equal(self.outer, other.outer)
                and len(self.holes) == len(other.holes)
                and all(np.array_equal(a, b) for a, b in zip(self.holes, other.holes)))

    __hash__ = None

    @property
    def rings(self):
        return (self.outer, *self.holes)

    def contains(self, p) -> bool:
        return _ring_contains(self.outer, p) and not any(_ring_contains(h, p) for h in self.holes)

    def area(self) -> float:
        return abs(ring_area(self.outer)) - sum(abs(ring_area(h)) for h in self.holes)


@dataclass(frozen=True, eq=False)
class PlanarSurface:
    """Oriented polygonal region of the x2-x3 plane, embedded at x0 = 0, x1 = 0.

    normal_sign is the sign of J23, i.e. whether the orientation normal points
    along +x1 or -x1.
    """

    components: tuple
    normal_sign: int = 1

    def __post_init__(self):
        comps = tuple(c if isinstance(c, SurfaceComponent) else SurfaceComponent(*c)
                      for c in self.components)
        if self.normal_sign not in (1, -1):
            raise ValueError("normal_sign must be +1 or -1")
        for a in range(len(comps)):
            for b in range(a + 1, len(comps)):
                ca, cb = comps[a], comps[b]
                # an island inside another component's hole is allowed
                if (any(_rings_cross(r1, r2) for r1 in ca.rings for r2 in cb.rings)
                        or ca.contains(cb.outer[0]) or cb.contains(ca.outer[0])):
                    raise ValueError("surface components must be pairwise disjoint")
        object.__setattr__(self, "components", comps)

    def __eq__(self, other):
        return (isinstance(other, PlanarSurface) and self.normal_sign == other.normal_sign
                and self.components == other.components)

    __hash__ = None

    @cached_property
    def edges(self):
        """All boundary edges as an (m, 2, 2) array."""
        out = []
        for c in self.components:
            for r in c.rings:
                out.append(np.stack([r, np.roll(r, -1, axis=0)], axis=1))
        return np.concatenate(out)

    def boundary_distance(self, p) -> float:
        e = self.edges
        p = np.asarray(p, float)
        d = e[:, 1] - e[:, 0]
        t = np.clip(np.einsum("ij,ij->i", p - e[:, 0], d) / np.einsum("ij,ij->i", d, d), 0, 1)
        return float(np.min(np.linalg.norm(p - e[:, 0] - t[:, None] * d, axis=1)))

    def classify(self, p, eps: float) -> str:
        """'inside', 'outside' or 'boundary' (within eps of an edge)."""
        if self.boundary_distance(p) <= eps:
            return "boundary"
        return "inside" if any(c.contains(p) for c in self.components) else "outside"

    def area(self) -> float:
        return sum(c.area() for c in self.components)

    def scale(self) -> float:
        v = np.vstack([c.outer for c in self.components])
        return float(np.linalg.norm(v.max(axis=0) - v.min(axis=0)))

    def flipped(self) -> "PlanarSurface":
        return PlanarSurface(self.components, -self.normal_sign)

    @cached_property
    def triangles(self) -> np.ndarray:
        """Ear-clipping triangulation of all components, shape (n, 3, 2)."""
        from .triangulate import triangulate_polygon
        return np.concatenate([triangulate_polygon(c.outer, c.holes) for c in self.components])


def polygon_disk(radius: float, n: int = 48, center=(0.0, 0.0), phase: float = 0.0):
    th = phase + 2 * np.pi * np.arange(n) / n
    return np.column_stack([center[0] + radius * np.cos(th), center[1] + radius * np.sin(th)])


# --- projection and validation ----------------------------------------------

def project(h: Hyperlink, axis: int) -> list:
    """Drop coordinate `axis` from every vertex; order and orientation are kept."""
    if axis not in (0, 1, 2, 3):
        raise ValueError("axis must be 0, 1, 2 or 3")
    return [np.delete(np.asarray(l.vertices), axis, axis=1) for l in h]


def lift(polylines: Sequence[np.ndarray], axis: int, values) -> Hyperlink:
    """Inverse of project: reinsert coordinate `axis` with per-loop vertex values."""
    return Hyperlink(tuple(PLLoop(np.insert(p, axis, v, axis=1))
                           for p, v in zip(polylines, values)))


@dataclass(frozen=True)
class Violation:
    kind: str                 # 'spatial_distinctness' or 'time_separation'
    loops: tuple              # (loop a, loop b); equal for a self-violation
    params: tuple             # (s on a, t on b)
    points: tuple             # witness points in R^4
    plane: Optional[int] = None


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple = field(default_factory=tuple)

    @property
    def valid(self) -> bool:
        return not self.violations


def _segments(h: Hyperlink):
    for a, l in enumerate(h):
        for i in range(l.n_segments):
            yield a, i, l.vertices[i], l.ends[i]


def _pairs(h: Hyperlink):
    segs = list(_segments(h))
    for x in range(len(segs)):
        for y in range(x + 1, len(segs)):
            a, i, _, _ = segs[x]
            b, j, _, _ = segs[y]
            if a == b:
                n = h[a].n_segments
                if (j - i) % n in (1, n - 1):
                    continue
            yield segs[x], segs[y]


def _adjacent_foldbacks(h: Hyperlink, eps: float):
    for a, l in enumerate(h):
        sp = l.vectors[:, 1:]
        for i in range(l.n_segments):
            j = (i + 1) % l.n_segments
            d1, d2 = sp[i], sp[j]
            n1, n2 = np.linalg.norm(d1), np.linalg.norm(d2)
            if n1 <= eps:
                yield Violation("spatial_distinctness", (a, a), (l.param(i, 0), l.param(i, 1)),
                                (tuple(l.vertices[i]), tuple(l.ends[i])))
                continue
            if n2 > eps and np.dot(d1, d2) < 0:
                # folds back onto itself when the spatial turn is (anti)collinear
                if np.linalg.norm(np.cross(d1, d2)) <= eps * max(n1, n2):
                    yield Violation("spatial_distinctness", (a, a),
                                    (l.param(i, 0.5), l.param(j, 0.5)),
                                    (tuple(l.point(l.param(i, 0.5))),
                                     tuple(l.point(l.param(j, 0.5)))))


def _time_checks(h, sa, sb, eps):
    """Condition (b) on one segment pair: points sharing two spatial coords need distinct x0."""
    a, i, p0, p1 = sa
    b, j, q0, q1 = sb
    out = []
    for k, (c1, c2) in PLANE_COORDS.items():
        P0, P1 = p0[[c1, c2]], p1[[c1, c2]]
        Q0, Q1 = q0[[c1, c2]], q1[[c1, c2]]
        kind = pr.classify_segments(P0, P1, Q0, Q1)
        if kind == pr.DISJOINT:
            continue
        if kind == pr.PROPER:
            cands = [pr.intersection_params(P0, P1, Q0, Q1)]
        else:
            # touching or overlapping: check the shared stretch at its ends
            cands = []
            for u, pt in ((0.0, P0), (1.0, P1)):
                v = _param_on(Q0, Q1, pt)
                if v is not None:
                    cands.append((u, v))
            for v, pt in ((0.0, Q0), (1.0, Q1)):
                u = _param_on(P0, P1, pt)
                if u is not None:
                    cands.append((u, v))
        dts = [(u, v, (q0[0] + v * (q1[0] - q0[0])) - (p0[0] + u * (p1[0] - p0[0])))
               for u, v in cands]
        signs = {np.sign(d) for _, _, d in dts if abs(d) > eps}
        bad = [t for t in dts if abs(t[2]) <= eps]
        if not bad and len(signs) > 1:
            bad = dts[:1]
        for u, v, _ in bad:
            la, lb = h[a], h[b]
            out.append(Violation("time_separation", (a, b), (la.param(i, u), lb.param(j, v)),
                                 (tuple(p0 + u * (p1 - p0)), tuple(q0 + v * (q1 - q0))), k))
    return out


def _param_on(q0, q1, pt):
    d = q1 - q0
    dd = float(d @ d)
    v = float((pt - q0) @ d) / dd
    if -1e-12 <= v <= 1 + 1e-12 and np.linalg.norm(q0 + v * d - pt) <= 1e-12 * (1 + np.sqrt(dd)):
        return min(max(v, 0.0), 1.0)
    return None


def _dedupe(violations, tol):
    kept = []
    for v in violations:
        pt = np.asarray(v.points[0])[1:]
        if any(w.kind == v.kind and set(w.loops) == set(v.loops)
               and np.linalg.norm(np.asarray(w.points[0])[1:] - pt) <= tol for w in kept):
            continue
        kept.append(v)
    return kept


def validate_timelike(h: Hyperlink, eps: Optional[float] = None) -> ValidationReport:
    """Check both time-likeness conditions exactly on every segment pair.

    (a) distinct points of the hyperlink never share their spatial position;
    (b) points sharing two spatial coordinates differ in time.  (b) is tested
    wherever two segments meet in one of the planes Sigma_k, including
    collinear overlaps.
    """
    if eps is None:
        eps = h.default_eps()
    found = list(_adjacent_foldbacks(h, eps))
    for sa, sb in _pairs(h):
        a, i, p0, p1 = sa
        b, j, q0, q1 = sb
        dist, u, v = pr.segment_segment_closest(p0[1:], p1[1:], q0[1:], q1[1:])
        if dist <= eps:
            found.append(Violation("spatial_distinctness", (a, b),
                                   (h[a].param(i, u), h[b].param(j, v)),
                                   (tuple(p0 + u * (p1 - p0)), tuple(q0 + v * (q1 - q0)))))
            continue
        found.extend(_time_checks(h, sa, sb, eps))
    return ValidationReport(tuple(_dedupe(found, 1e-6 * h.scale())))
