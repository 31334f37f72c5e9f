"""Finite-kappa kernel integrals whose kappa -> infinity limits are sk, lk and the area operator.

Crossing kernel, for the pair (y, rho) and projection plane Sigma_k with
height coordinate k:

    <p^y, p^rho>_k = (2 pi / kappa) G_k E_h E_t
    G_k = exp(-kappa^2 |y^ - rho^|^2 / 8)        (overlap of the planar Gaussians)
    E_h = erf(kappa (y_k - rho_k) / 2 sqrt 2)      (-> height sign)
    E_t = erf(kappa (rho_0 - y_0) / 2 sqrt 2)      (-> time-lag sign)

so kappa^3 / 16 pi^2 times the double integral of sum_k <.,.>_k (y' x rho')_k
is (kappa^2 / 8 pi) int int sum_k G_k E_h E_t (y' x rho')_k ds dt.

Piercing kernel at a surface point sigma^ = (x2, x3) of the plane x1 = 0:

    F(sigma^) = sqrt(2 pi) int y1' exp(-kappa^2 (y1^2 + |y^ - sigma^|^2) / 8) erf(-kappa y0 / 2 sqrt 2) ds

and lk is the limit of (kappa^3 / 32 pi^2) int F J23.
"""
from __future__ import annotations

import math
import warnings
from concurrent.futures import ThreadPoolExecutor

import numpy as np
from scipy.special import erf

from .. import predicates as pr
from ..geometry import PLANE_COORDS, ColoredHyperlink, Hyperlink, PlanarSurface, PLLoop
from ..piercing import hyperlink_piercings
from ..representation import casimir, trace_exp_E
from .kernels import SQRT2, SQRT2PI
from .quadrature import (QuadratureConfig, panel_rule, refine_triangles, triangle_nodes,
                         worker_count)

CHUNK = 1 << 21


class QuadratureWarning(UserWarning):
    pass


def _map(fn, items):
    items = list(items)
    n = worker_count()
    if n == 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(n) as ex:
        return list(ex.map(fn, items))


def _check(value, fn, cfg, what):
    """Re-run with doubled nodes; warn if the two estimates differ by more than 1%."""
    other = fn(cfg.doubled())
    scale = max(abs(value), abs(other), 1e-300)
    if abs(value - other) > 0.01 * scale:
        warnings.warn(f"{what}: doubling the node count moved the estimate from {value!r} "
                      f"to {other!r}", QuadratureWarning, stacklevel=3)
    return other


# ---------------------------------------------------------------- crossings

def _gap_lower_bound(A0, A1, B0, B1):
    lo_a, hi_a = np.minimum(A0, A1), np.maximum(A0, A1)
    lo_b, hi_b = np.minimum(B0, B1), np.maximum(B0, B1)
    gap = np.maximum(0, np.maximum(lo_b[None] - hi_a[:, None], lo_a[:, None] - hi_b[None]))
    return np.linalg.norm(gap, axis=2)


def _hot_params(p0, d, q0, q1, reach, cfg):
    """GL nodes in the segment parameter where p0 + u d lies within reach of q0-q1."""
    L = float(np.hypot(*d))
    iv = pr.capsule_interval(p0, d / L, L, q0, q1, reach)
    if iv is None:
        return None
    x, w = panel_rule(iv[0], iv[1], cfg.panel_width, cfg.base_points_per_segment)
    return x / L, w / L


def _pair_planes(a: PLLoop, b: PLLoop, cfg: QuadratureConfig):
    """(plane, i, j) for projected segment pairs whose kernel is not negligible."""
    out = []
    cross = np.cross(a.vectors[:, None, 1:], b.vectors[None, :, 1:])
    for k, c in PLANE_COORDS.items():
        c = list(c)
        A0, A1 = a.vertices[:, c], a.ends[:, c]
        B0, B1 = b.vertices[:, c], b.ends[:, c]
        near = _gap_lower_bound(A0, A1, B0, B1) <= cfg.cutoff
        near &= cross[:, :, k - 1] != 0
        for i, j in zip(*np.nonzero(near)):
            d, _, _ = pr.segment_segment_closest(A0[i], A1[i], B0[j], B1[j])
            if d <= cfg.cutoff:
                out.append((k, int(i), int(j)))
    return out


def _pair_term(a, b, cfg, k, i, j):
    c = list(PLANE_COORDS[k])
    va, vb = a.vectors[i], b.vectors[j]
    ua = _hot_params(a.vertices[i, c], va[c], b.vertices[j, c], b.ends[j, c], cfg.cutoff, cfg)
    ub = _hot_params(b.vertices[j, c], vb[c], a.vertices[i, c], a.ends[i, c], cfg.cutoff, cfg)
    if ua is None or ub is None:
        return 0.0
    pa = a.vertices[i][None, :] + ua[0][:, None] * va[None, :]
    pb = b.vertices[j][None, :] + ub[0][:, None] * vb[None, :]
    diff = pa[:, None, :] - pb[None, :, :]
    kap = cfg.kappa
    g = np.exp(-kap ** 2 * (diff[..., c[0]] ** 2 + diff[..., c[1]] ** 2) / 8)
    eh = erf(kap * diff[..., k] / (2 * SQRT2))
    et = erf(-kap * diff[..., 0] / (2 * SQRT2))
    val = ua[1] @ (g * eh * et) @ ub[1]
    return float(np.cross(va[1:], vb[1:])[k - 1]) * float(val)


def crossing_integral(a: PLLoop, b: PLLoop, cfg: QuadratureConfig) -> float:
    """int int sum_k G_k E_h E_t (a' x b')_k over both loop parameters."""
    pairs = _pair_planes(a, b, cfg)
    terms = _map(lambda p: _pair_term(a, b, cfg, *p), pairs)
    return math.fsum(terms)


def sk_finite_kappa(a: PLLoop, b: PLLoop, cfg: QuadratureConfig, check=False) -> float:
    """Finite-kappa hyperlinking integral; tends to sk(a, b)."""
    def run(c):
        return c.kappa ** 2 / (8 * np.pi) * crossing_integral(a, b, c)
    v = run(cfg)
    if check:
        _check(v, run, cfg, "sk_finite_kappa")
    return v


def sk_finite_kappa_hyperlink(a: PLLoop, G: Hyperlink, cfg: QuadratureConfig) -> float:
    return math.fsum(sk_finite_kappa(a, b, cfg) for b in G)


def holonomy_factor_finite_kappa(q, M: ColoredHyperlink, u: int, G: Hyperlink, side: int,
                                 cfg: QuadratureConfig) -> complex:
    """Tr exp(-+ (i q / 4)(kappa^3 / 4 pi) I E) on the +- side, I the crossing integral.

    (q/4)(kappa^3/4pi) I = pi q sk_kappa, so this is trace_exp_E(j, -+ pi q sk_kappa).
    """
    if side not in (1, -1):
        raise ValueError("side must be +1 or -1")
    j = M.colors[u][0 if side == 1 else 1]
    if q == 0 or len(G) == 0:
        return trace_exp_E(j, 0.0)
    sk = sk_finite_kappa_hyperlink(M.base[u], G, cfg)
    return trace_exp_E(j, -side * np.pi * q * sk)


# ---------------------------------------------------------------- piercings

def _line_nodes(l: PLLoop, cfg: QuadratureConfig):
    """Nodes of l where |x1| <= cutoff, and the (x2, x3) shadow of those pieces."""
    C = cfg.cutoff
    pts, ws, d1s, segs = [], [], [], []
    for i in range(l.n_segments):
        p, v = l.vertices[i], l.vectors[i]
        if v[1] == 0:
            if abs(p[1]) > C:
                continue
            lo, hi = 0.0, 1.0
        else:
            lo, hi = sorted(((-C - p[1]) / v[1], (C - p[1]) / v[1]))
            lo, hi = max(lo, 0.0), min(hi, 1.0)
            if lo >= hi:
                continue
        L = float(np.linalg.norm(v[1:]))
        if L == 0:
            continue
        x, w = panel_rule(lo * L, hi * L, cfg.panel_width, cfg.base_points_per_segment)
        u = x / L
        pts.append(p[None, :] + u[:, None] * v[None, :])
        ws.append(w / L)
        d1s.append(np.full(len(u), v[1]))
        segs.append((p[2:] + lo * v[2:], p[2:] + hi * v[2:]))
    if not pts:
        return np.empty((0, 4)), np.empty(0), np.empty(0), []
    return np.concatenate(pts), np.concatenate(ws), np.concatenate(d1s), segs


def _piercing_field(nodes, line, kappa):
    """F at surface nodes (m, 2) from one loop's line nodes."""
    pts, w, d1, _ = line
    if len(pts) == 0 or len(nodes) == 0:
        return np.zeros(len(nodes))
    coef = w * d1 * np.exp(-kappa ** 2 * pts[:, 1] ** 2 / 8) * erf(-kappa * pts[:, 0] / (2 * SQRT2))
    out = np.empty(len(nodes))
    step = max(1, CHUNK // len(pts))
    for s in range(0, len(nodes), step):
        nd = nodes[s:s + step]
        r2 = (nd[:, None, 0] - pts[None, :, 2]) ** 2 + (nd[:, None, 1] - pts[None, :, 3]) ** 2
        out[s:s + step] = np.exp(-kappa ** 2 * r2 / 8) @ coef
    return SQRT2PI * out


def _surface_nodes(S: PlanarSurface, segs, cfg: QuadratureConfig):
    leaves = refine_triangles(S.triangles, segs, cfg.cutoff, cfg.panel_width)
    if len(leaves) == 0:
        return np.empty((0, 2)), np.empty(0)
    return triangle_nodes(leaves, cfg.base_points_per_segment)


def piercing_fields(loops, S: PlanarSurface, cfg: QuadratureConfig):
    """Surface nodes, weights and F_u at those nodes for each loop (rows)."""
    lines = [_line_nodes(l, cfg) for l in loops]
    segs = [s for ln in lines for s in ln[3]]
    nodes, w = _surface_nodes(S, segs, cfg)
    F = np.array(_map(lambda ln: _piercing_field(nodes, ln, cfg.kappa), lines)).reshape(len(lines), -1)
    return nodes, w, F


def lk_finite_kappa(l: PLLoop, S: PlanarSurface, cfg: QuadratureConfig, check=False) -> float:
    """(kappa^3 / 32 pi^2) int_S F J23; tends to lk(l, S)."""
    def run(c):
        _, w, F = piercing_fields([l], S, c)
        return S.normal_sign * c.kappa ** 3 / (32 * np.pi ** 2) * math.fsum(w * F[0])
    v = run(cfg)
    if check:
        _check(v, run, cfg, "lk_finite_kappa")
    return v


def piercing_count_finite_kappa(l: PLLoop, S: PlanarSurface, cfg: QuadratureConfig,
                                check=False) -> float:
    """Same integral with |F|; tends to the number of piercings."""
    def run(c):
        _, w, F = piercing_fields([l], S, c)
        return c.kappa ** 3 / (32 * np.pi ** 2) * math.fsum(w * np.abs(F[0]))
    v = run(cfg)
    if check:
        _check(v, run, cfg, "piercing_count_finite_kappa")
    return v


# ---------------------------------------------------------------- area

def partition_labels(nodes, M: ColoredHyperlink, S: PlanarSurface, radius_factor=1.0, eps=None):
    """Class index of every surface node.

    Each piercing gets a disk of radius min(half the smallest piercing distance,
    distance to the boundary of S) times radius_factor; nodes in the disk go to
    the class of the piercing loop, all other nodes to class 0.
    """
    classes = M.classes()
    cls_of = {u: v for v, (_, us) in enumerate(classes) for u in us}
    ps = hyperlink_piercings(M.base, S, eps)
    labels = np.zeros(len(nodes), int)
    if not ps:
        return labels, classes
    P = np.array([p.point for p in ps])
    if len(P) > 1:
        D = np.linalg.norm(P[:, None] - P[None], axis=2)
        np.fill_diagonal(D, np.inf)
        half = D.min() / 2
    else:
        half = np.inf
    for p, x in zip(ps, P):
        r = radius_factor * min(half, S.boundary_distance(x))
        inside = np.sum((nodes - x) ** 2, axis=1) <= r * r
        labels[inside] = cls_of[p.loop_index]
    return labels, classes


def area_brackets(q, M: ColoredHyperlink, S: PlanarSurface, cfg: QuadratureConfig,
                  radius_factor=1.0):
    """(B+, B-): sum_v kb^3 |q| sqrt(xi_v) int_{S_v} |sum_{u in Gamma_v} F_u| |J23|, kb = kappa / 4 sqrt(pi)."""
    nodes, w, F = piercing_fields(list(M.base), S, cfg)
    labels, classes = partition_labels(nodes, M, S, radius_factor)
    kb3 = (cfg.kappa / (4 * np.sqrt(np.pi))) ** 3
    bp, bm = [], []
    for v, ((jp, jm), us) in enumerate(classes):
        sel = labels == v
        integral = math.fsum(w[sel] * np.abs(F[us][:, sel].sum(axis=0)))
        bp.append(np.sqrt(casimir(jp)) * integral)
        bm.append(np.sqrt(casimir(jm)) * integral)
    return abs(q) * kb3 * math.fsum(bp), abs(q) * kb3 * math.fsum(bm)


def area_finite_kappa(q, M: ColoredHyperlink, G: Hyperlink, S: PlanarSurface,
                      cfg: QuadratureConfig, radius_factor=1.0) -> complex:
    """prod_u [ (B+)^(1/n) Tr W+_u + (i B-)^(1/n) Tr W-_u ] at finite kappa, principal roots."""
    n = len(M)
    if n == 0:
        raise ValueError("the matter hyperlink has no loops")
    bp, bm = area_brackets(q, M, S, cfg, radius_factor)
    rp = bp ** (1.0 / n)
    rm = complex(0.0, bm) ** (1.0 / n)
    val = complex(1.0)
    for u in range(n):
        tp = holonomy_factor_finite_kappa(q, M, u, G, 1, cfg)
        tm = holonomy_factor_finite_kappa(q, M, u, G, -1, cfg)
        val *= rp * tp + rm * tm
    return val
