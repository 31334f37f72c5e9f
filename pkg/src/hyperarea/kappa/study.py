"""Convergence tables: finite-kappa estimates against the combinatorial limits."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..diagram import hyperlinking_number, sk_loop_vs_hyperlink
from ..geometry import Hyperlink
from ..observables import area_operator
from ..piercing import linking_number_surface, piercing_count
from ..representation import trace_exp_E
from .integrals import (area_finite_kappa, holonomy_factor_finite_kappa, lk_finite_kappa,
                        piercing_count_finite_kappa, sk_finite_kappa)
from .quadrature import QuadratureConfig

TARGETS = ("sk", "lk", "count", "holonomy", "area")
DEFAULT_SCHEDULE = (8.0, 16.0, 32.0)


@dataclass(frozen=True)
class ConvergenceRow:
    kappa: float
    estimate: complex
    reference: complex
    abs_error: float = field(init=False)
    rel_error: float = field(init=False)

    def __post_init__(self):
        err = abs(self.estimate - self.reference)
        object.__setattr__(self, "abs_error", float(err))
        # relative to |reference|; absolute when the limit is zero
        ref = abs(self.reference)
        object.__setattr__(self, "rel_error", float(err / ref) if ref > 0 else float(err))


def _reference(target, d):
    if target == "sk":
        return hyperlinking_number(d["a"], d["b"])
    if target == "lk":
        return linking_number_surface(d["loop"], d["S"])
    if target == "count":
        return piercing_count(d["loop"], d["S"])
    q, M = d.get("q", 1.0), d["M"]
    G = d.get("G", Hyperlink())
    if target == "holonomy":
        u, side = d.get("u", 0), d.get("side", 1)
        j = M.colors[u][0 if side == 1 else 1]
        return trace_exp_E(j, -side * np.pi * q * sk_loop_vs_hyperlink(M.base[u], G))
    return area_operator(q, M, G, d["S"]).value


def _estimate(target, d, cfg):
    if target == "sk":
        return sk_finite_kappa(d["a"], d["b"], cfg)
    if target == "lk":
        return lk_finite_kappa(d["loop"], d["S"], cfg)
    if target == "count":
        return piercing_count_finite_kappa(d["loop"], d["S"], cfg)
    q, M = d.get("q", 1.0), d["M"]
    G = d.get("G", Hyperlink())
    if target == "holonomy":
        return holonomy_factor_finite_kappa(q, M, d.get("u", 0), G, d.get("side", 1), cfg)
    return area_finite_kappa(q, M, G, d["S"], cfg, d.get("radius_factor", 1.0))


def convergence_study(target: str, inputs: dict, kappa_schedule=DEFAULT_SCHEDULE, **cfg_kw) -> list:
    """One ConvergenceRow per kappa, sorted by kappa.

    inputs by target: sk {a, b}; lk and count {loop, S}; holonomy {M, G, q, u, side};
    area {M, G, S, q, radius_factor}.  Extra keywords go to QuadratureConfig.
    """
    if target not in TARGETS:
        raise ValueError(f"unknown target {target!r}; expected one of {TARGETS}")
    ks = sorted(float(k) for k in kappa_schedule)
    if not ks:
        raise ValueError("empty kappa schedule")
    cfgs = [QuadratureConfig(k, **cfg_kw) for k in ks]   # validate all before running any
    ref = _reference(target, inputs)
    return [ConvergenceRow(c.kappa, _estimate(target, inputs, c), ref) for c in cfgs]
