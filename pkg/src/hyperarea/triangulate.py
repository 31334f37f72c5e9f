"""Ear-clipping triangulation of simple polygons with holes.

Holes are spliced into the outer ring through bridge edges (rightmost hole
vertex to a visible outer vertex), then ears are clipped greedily, always
taking the ear with the best minimum angle so the quadrature sees fewer
slivers.
"""
import numpy as np

from .geometry import ring_area


def _cross(o, a, b):
    return (a[..., 0] - o[..., 0]) * (b[..., 1] - o[..., 1]) - \
        (a[..., 1] - o[..., 1]) * (b[..., 0] - o[..., 0])


def _ccw(ring):
    ring = np.asarray(ring, float)
    return ring if ring_area(ring) > 0 else ring[::-1].copy()


def _bridge(ring, hole):
    """Splice a clockwise hole into a ccw ring (lists of 2-tuples)."""
    hole = list(map(tuple, hole))
    m_idx = max(range(len(hole)), key=lambda i: (hole[i][0], -hole[i][1]))
    mx, my = hole[m_idx]
    best_x, best_p = np.inf, None
    n = len(ring)
    for i in range(n):
        a, b = ring[i], ring[(i + 1) % n]
        if (a[1] <= my <= b[1] or b[1] <= my <= a[1]) and a[1] != b[1]:
            x = a[0] + (my - a[1]) * (b[0] - a[0]) / (b[1] - a[1])
            if mx <= x < best_x:
                best_x = x
                if x == a[0] and my == a[1]:
                    best_p = i
                elif x == b[0] and my == b[1]:
                    best_p = (i + 1) % n
                else:
                    best_p = i if a[0] > b[0] else (i + 1) % n
    if best_p is None:
        raise ValueError("hole is not enclosed by the outer ring")
    M = np.array([mx, my])
    I = np.array([best_x, my])
    P = np.asarray(ring[best_p])
    # reflex ring vertices inside triangle (M, I, P) would block the bridge
    tri = (M, I, P) if _cross(M, I, P) > 0 else (M, P, I)
    blockers = []
    for i in range(n):
        if i == best_p:
            continue
        q = np.asarray(ring[i])
        prev, nxt = np.asarray(ring[i - 1]), np.asarray(ring[(i + 1) % n])
        if _cross(prev, q, nxt) >= 0:
            continue
        if all(_cross(tri[k], tri[(k + 1) % 3], q) >= 0 for k in range(3)):
            ang = abs(np.arctan2(q[1] - my, q[0] - mx))
            blockers.append((ang, float(np.hypot(q[0] - mx, q[1] - my)), i))
    if blockers:
        best_p = min(blockers)[2]
    rot = hole[m_idx:] + hole[:m_idx]
    return ring[:best_p + 1] + rot + [rot[0], ring[best_p]] + ring[best_p + 1:]


def _min_angle(a, b, c):
    def ang(p, q, r):
        u, v = q - p, r - p
        return np.arccos(np.clip(u @ v / (np.linalg.norm(u) * np.linalg.norm(v)), -1, 1))
    return min(ang(a, b, c), ang(b, c, a), ang(c, a, b))


def triangulate_polygon(outer, holes=()) -> np.ndarray:
    """Triangles (n, 3, 2) covering the polygon, all counter-clockwise."""
    ring = list(map(tuple, _ccw(outer)))
    for h in sorted((_ccw(h)[::-1] for h in holes), key=lambda h: -h[:, 0].max()):
        ring = _bridge(ring, h)
    pts = np.array(ring, float)
    tris = []
    idx = list(range(len(pts)))
    while len(idx) > 3:
        P = pts[idx]
        n = len(idx)
        best = None
        for i in range(n):
            a, b, c = P[i - 1], P[i], P[(i + 1) % n]
            area2 = _cross(a, b, c)
            if area2 <= 0:
                continue
            others = np.ones(n, bool)
            others[[i - 1, i, (i + 1) % n]] = False
            Q = P[others]
            same = (np.all(Q == a, axis=1) | np.all(Q == b, axis=1) | np.all(Q == c, axis=1))
            Q = Q[~same]
            tol = -1e-14 * area2
            inside = ((_cross(a, b, Q) >= tol) & (_cross(b, c, Q) >= tol)
                      & (_cross(c, a, Q) >= tol))
            if inside.any():
                continue
            q = _min_angle(a, b, c)
            if best is None or q > best[0]:
                best = (q, i)
        if best is None:
            raise ValueError("ear clipping failed; polygon is not simple")
        i = best[1]
        tris.append((idx[i - 1], idx[i], idx[(i + 1) % n]))
        del idx[i]
    tris.append(tuple(idx))
    out = pts[np.array(tris)]
    keep = np.abs(_cross(out[:, 0], out[:, 1], out[:, 2])) > 0
    return out[keep]
