"""Robust 2-D/3-D primitives used by the diagram, piercing and validation code.

orient2d uses a floating-point filter with an exact rational fallback, so every
sign decision on float input is exact.
"""
from fractions import Fraction

import numpy as np

_EPS = np.finfo(float).eps
_CCW_ERRBOUND = (3.0 + 16.0 * _EPS) * _EPS


def _orient2d_exact(ax, ay, bx, by, cx, cy):
    ax, ay, bx, by, cx, cy = map(Fraction, (ax, ay, bx, by, cx, cy))
    det = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
    return (det > 0) - (det < 0)


def orient2d(a, b, c):
    """Sign of the signed area of triangle (a, b, c): +1 ccw, -1 cw, 0 collinear."""
    detleft = (b[0] - a[0]) * (c[1] - a[1])
    detright = (b[1] - a[1]) * (c[0] - a[0])
    det = detleft - detright
    if abs(det) > _CCW_ERRBOUND * (abs(detleft) + abs(detright)):
        return 1 if det > 0 else -1
    return _orient2d_exact(a[0], a[1], b[0], b[1], c[0], c[1])


def orient2d_many(a, b, c):
    """Vectorised orient2d over broadcast arrays of shape (..., 2)."""
    a, b, c = np.broadcast_arrays(np.asarray(a, float), np.asarray(b, float),
                                  np.asarray(c, float))
    detleft = (b[..., 0] - a[..., 0]) * (c[..., 1] - a[..., 1])
    detright = (b[..., 1] - a[..., 1]) * (c[..., 0] - a[..., 0])
    det = detleft - detright
    out = np.sign(det).astype(int)
    unsure = np.abs(det) <= _CCW_ERRBOUND * (np.abs(detleft) + np.abs(detright))
    for idx in zip(*np.nonzero(unsure)):
        out[idx] = _orient2d_exact(a[idx][0], a[idx][1], b[idx][0], b[idx][1],
                                   c[idx][0], c[idx][1])
    return out


# Outcomes of classify_segments.
DISJOINT = 0
PROPER = 1
TOUCHING = 2      # an endpoint lies on the other segment
OVERLAPPING = 3   # collinear with a shared stretch


def _on_segment(p, q, r):
    # r collinear with p-q; is it within the closed bounding box?
    return (min(p[0], q[0]) <= r[0] <= max(p[0], q[0])
            and min(p[1], q[1]) <= r[1] <= max(p[1], q[1]))


def classify_segments(p0, p1, q0, q1):
    """Exact classification of two closed 2-D segments."""
    o1 = orient2d(p0, p1, q0)
    o2 = orient2d(p0, p1, q1)
    o3 = orient2d(q0, q1, p0)
    o4 = orient2d(q0, q1, p1)
    if o1 * o2 < 0 and o3 * o4 < 0:
        return PROPER
    if o1 == o2 == o3 == o4 == 0:
        if (_on_segment(p0, p1, q0) or _on_segment(p0, p1, q1)
                or _on_segment(q0, q1, p0) or _on_segment(q0, q1, p1)):
            return OVERLAPPING
        return DISJOINT
    if ((o1 == 0 and _on_segment(p0, p1, q0)) or (o2 == 0 and _on_segment(p0, p1, q1))
            or (o3 == 0 and _on_segment(q0, q1, p0))
            or (o4 == 0 and _on_segment(q0, q1, p1))):
        return TOUCHING
    return DISJOINT


def intersection_params(p0, p1, q0, q1):
    """Parameters (u, v) in [0, 1] with p0 + u(p1-p0) == q0 + v(q1-q0).

    Only meaningful for non-parallel segments.
    """
    d = np.subtract(p1, p0)
    e = np.subtract(q1, q0)
    w = np.subtract(q0, p0)
    den = d[0] * e[1] - d[1] * e[0]
    u = (w[0] * e[1] - w[1] * e[0]) / den
    v = (w[0] * d[1] - w[1] * d[0]) / den
    return float(u), float(v)


def point_segment_distance(p, a, b):
    """Euclidean distance from point(s) p to segment a-b (any dimension)."""
    p = np.asarray(p, float)
    a = np.asarray(a, float)
    d = np.asarray(b, float) - a
    dd = float(d @ d)
    if dd == 0.0:
        return np.linalg.norm(p - a, axis=-1)
    t = np.clip(((p - a) @ d) / dd, 0.0, 1.0)
    return np.linalg.norm(p - (a + np.multiply.outer(t, d)), axis=-1)


def segment_segment_closest(p0, p1, q0, q1):
    """Closest points between segments p0-p1 and q0-q1 in any dimension.

    Returns (distance, u, v) where the closest points are p0 + u(p1-p0) and
    q0 + v(q1-q0). Handles parallel and degenerate segments.
    """
    p0 = np.asarray(p0, float)
    q0 = np.asarray(q0, float)
    d1 = np.asarray(p1, float) - p0
    d2 = np.asarray(q1, float) - q0
    r = p0 - q0
    a = float(d1 @ d1)
    e = float(d2 @ d2)
    f = float(d2 @ r)
    tiny = 1e-300
    if a <= tiny and e <= tiny:
        return float(np.linalg.norm(r)), 0.0, 0.0
    if a <= tiny:
        u = 0.0
        v = min(max(f / e, 0.0), 1.0)
    else:
        c = float(d1 @ r)
        if e <= tiny:
            v = 0.0
            u = min(max(-c / a, 0.0), 1.0)
        else:
            b = float(d1 @ d2)
            den = a * e - b * b
            u = min(max((b * f - c * e) / den, 0.0), 1.0) if den > 1e-14 * a * e else 0.0
            v = (b * u + f) / e
            if v < 0.0:
                v = 0.0
                u = min(max(-c / a, 0.0), 1.0)
            elif v > 1.0:
                v = 1.0
                u = min(max((b - c) / a, 0.0), 1.0)
    dist = float(np.linalg.norm(p0 + u * d1 - q0 - v * d2))
    return dist, u, v


def capsule_interval(p0, direction, length, q0, q1, radius):
    """Sub-interval of [0, length] where p0 + u*direction lies within `radius` of segment q0-q1.

    `direction` must be a unit vector.  The capsule is convex so the set is a
    single interval; returns (lo, hi) or None.
    """
    p0 = np.asarray(p0, float)
    d = np.asarray(direction, float)
    q0 = np.asarray(q0, float)
    q1 = np.asarray(q1, float)
    pieces = []
    for c in (q0, q1):
        w = p0 - c
        bq = float(w @ d)
        cq = float(w @ w) - radius * radius
        disc = bq * bq - cq
        if disc >= 0.0:
            s = np.sqrt(disc)
            pieces.append((-bq - s, -bq + s))
    seg = q1 - q0
    slen = float(np.linalg.norm(seg))
    if slen > 0.0:
        e = seg / slen
        n = np.array([-e[1], e[0]]) if e.shape[0] == 2 else None
        if n is not None:
            lo, hi = -np.inf, np.inf
            for axis, amin, amax in ((e, 0.0, slen), (n, -radius, radius)):
                off = float((p0 - q0) @ axis)
                rate = float(d @ axis)
                if abs(rate) < 1e-300:
                    if not (amin <= off <= amax):
                        lo, hi = 1.0, 0.0
                        break
                    continue
                t0 = (amin - off) / rate
                t1 = (amax - off) / rate
                lo = max(lo, min(t0, t1))
                hi = min(hi, max(t0, t1))
            if lo <= hi:
                pieces.append((lo, hi))
    if not pieces:
        return None
    lo = max(min(p[0] for p in pieces), 0.0)
    hi = min(max(p[1] for p in pieces), length)
    if lo > hi:
        return None
    return lo, hi
