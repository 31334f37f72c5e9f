"""Gauss-Legendre panels on intervals and adaptive rules on triangles.

Lengths are measured in units of the kernel width sigma = 2 / kappa (the
standard deviation of every Gaussian factor).  The refinement radius R puts a
hot zone of radius R*sigma around the combinatorial features; inside it the
panel width is R*sigma / refinement_factor.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .. import predicates as pr

KAPPA_MAX = 64.0
# Gaussian tails beyond this many sigma are below 1e-16 relative and are dropped.
TAIL_SIGMAS = 8.5


@dataclass(frozen=True)
class QuadratureConfig:
    kappa: float
    base_points_per_segment: int = 8
    refinement_radius: float = 6.0
    refinement_factor: int = 4
    allow_large_kappa: bool = False

    def __post_init__(self):
        if not (self.kappa > 0 and np.isfinite(self.kappa)):
            raise ValueError("kappa must be a positive real")
        if self.kappa > KAPPA_MAX and not self.allow_large_kappa:
            raise ValueError(f"kappa > {KAPPA_MAX:g} needs allow_large_kappa=True "
                             "(node count grows like kappa^2)")
        if int(self.base_points_per_segment) < 1 or int(self.refinement_factor) < 1:
            raise ValueError("node counts must be positive")
        if not self.refinement_radius > 0:
            raise ValueError("refinement_radius must be positive")

    @property
    def sigma(self) -> float:
        return 2.0 / self.kappa

    @property
    def panel_width(self) -> float:
        return self.refinement_radius * self.sigma / self.refinement_factor

    @property
    def cutoff(self) -> float:
        return max(self.refinement_radius, TAIL_SIGMAS) * self.sigma

    def doubled(self) -> "QuadratureConfig":
        return QuadratureConfig(self.kappa, 2 * self.base_points_per_segment,
                                self.refinement_radius, self.refinement_factor,
                                self.allow_large_kappa)


def worker_count() -> int:
    try:
        return max(1, int(os.environ.get("HYPERAREA_WORKERS", "1")))
    except ValueError:
        return 1


@lru_cache(maxsize=None)
def gauss_legendre(n):
    """Nodes and weights on [0, 1]."""
    x, w = np.polynomial.legendre.leggauss(int(n))
    x = (x + 1) / 2
    w = w / 2
    x.flags.writeable = False
    w.flags.writeable = False
    return x, w


def panel_rule(lo, hi, width, n):
    """Composite GL rule on [lo, hi] with panels no wider than `width`."""
    if hi <= lo:
        return np.empty(0), np.empty(0)
    m = max(1, int(np.ceil((hi - lo) / width - 1e-9)))
    x, w = gauss_legendre(n)
    edges = np.linspace(lo, hi, m + 1)
    h = np.diff(edges)
    return (edges[:-1, None] + h[:, None] * x[None, :]).ravel(), (h[:, None] * w[None, :]).ravel()


@lru_cache(maxsize=None)
def triangle_rule(n):
    """Collapsed (Duffy) GL rule: a + s (b - a) + t (c - b) sweeps triangle abc.

    Weights carry the Jacobian factor s and sum to 1/2.
    """
    x, w = gauss_legendre(n)
    u, v = np.meshgrid(x, x, indexing="ij")
    wu, wv = np.meshgrid(w, w, indexing="ij")
    return u.ravel(), (u * v).ravel(), (wu * wv * u).ravel()


def triangle_nodes(tris, n):
    """Nodes and weights of the collapsed rule on each triangle in tris (m, 3, 2)."""
    tris = np.asarray(tris, float)
    a, b, c = tris[:, 0], tris[:, 1], tris[:, 2]
    s, t, w = triangle_rule(n)
    pts = a[:, None, :] + s[None, :, None] * (b - a)[:, None, :] + t[None, :, None] * (c - b)[:, None, :]
    area = 0.5 * np.abs((b - a)[:, 0] * (c - a)[:, 1] - (b - a)[:, 1] * (c - a)[:, 0])
    return pts.reshape(-1, 2), (2 * area[:, None] * w[None, :]).ravel()


def _subdivide(tris):
    a, b, c = tris[:, 0], tris[:, 1], tris[:, 2]
    ab, bc, ca = (a + b) / 2, (b + c) / 2, (c + a) / 2
    return np.concatenate([np.stack(t, axis=1) for t in
                           ((a, ab, ca), (ab, b, bc), (ca, bc, c), (ab, bc, ca))])


def _near(tris, segs, reach):
    """Conservative test: triangle within `reach` of any of the 2-D segments (k, 2, 2)."""
    if len(segs) == 0:
        return np.zeros(len(tris), bool)
    cen = tris.mean(axis=1)
    rad = np.max(np.linalg.norm(tris - cen[:, None, :], axis=2), axis=1)
    d = np.full(len(tris), np.inf)
    for s0, s1 in segs:
        d = np.minimum(d, pr.point_segment_distance(cen, s0, s1))
    return d <= reach + rad


def refine_triangles(tris, segs, reach, h, max_leaves=2_000_000):
    """Split triangles near `segs` until their diameter is at most h; drop far ones."""
    tris = np.asarray(tris, float)
    out = []
    while len(tris):
        tris = tris[_near(tris, segs, reach)]
        if not len(tris):
            break
        e = np.stack([tris[:, 1] - tris[:, 0], tris[:, 2] - tris[:, 1], tris[:, 0] - tris[:, 2]], 1)
        diam = np.max(np.linalg.norm(e, axis=2), axis=1)
        done = diam <= h
        out.append(tris[done])
        tris = _subdivide(tris[~done])
        if sum(len(o) for o in out) + len(tris) > max_leaves:
            raise RuntimeError("surface refinement exceeded the leaf budget; lower kappa")
    return np.concatenate(out) if out else np.empty((0, 3, 2))
