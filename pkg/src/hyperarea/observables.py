"""Closed-form Wilson loop observable and quantized area operator.

Both are products over matter loops u of a '+' and a '-' trace term.  A trace
Tr exp(+-pi q sk E) is evaluated as trace_exp_E(j, +-pi q sk); the traces are
even in their argument so the sign conventions of the two displays agree.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .diagram import sk_loop_vs_hyperlink
from .geometry import ColoredHyperlink, Hyperlink, PlanarSurface
from .piercing import piercing_count
from .representation import casimir, trace_exp_E


@dataclass(frozen=True)
class AreaResult:
    value: complex
    per_loop_terms: tuple           # (u, plus_term, minus_term)
    piercing_sums: Optional[tuple]  # (c+, c-); None for the empty surface
    sk_values: tuple
    piercing_counts: tuple = ()
    prefactor: float = 1.0

    def recompute(self) -> complex:
        return self.prefactor * complex(np.prod([p + m for _, p, m in self.per_loop_terms]))


def _sk_values(M: ColoredHyperlink, G: Hyperlink, eps=None):
    return tuple(sk_loop_vs_hyperlink(l, G, eps) for l in M.base)


def wilson_terms(q: float, M: ColoredHyperlink, G: Hyperlink, eps=None):
    sks = _sk_values(M, G, eps)
    terms = tuple((u, trace_exp_E(jp, np.pi * q * sk), trace_exp_E(jm, -np.pi * q * sk))
                  for u, ((jp, jm), sk) in enumerate(zip(M.colors, sks)))
    return terms, sks


def wilson_loop(q: float, M: ColoredHyperlink, G: Hyperlink = Hyperlink(), eps=None) -> complex:
    """Z = prod_u [Tr+ exp(pi q sk_u E+) + Tr- exp(-pi q sk_u E-)], sk_u = sk(l_u, G)."""
    terms, _ = wilson_terms(q, M, G, eps)
    return complex(np.prod([p + m for _, p, m in terms]))


def piercing_sums(M: ColoredHyperlink, S: PlanarSurface, eps=None):
    counts = tuple(piercing_count(l, S, eps) for l in M.base)
    cp = sum(n * np.sqrt(casimir(jp)) for n, (jp, _) in zip(counts, M.colors))
    cm = sum(n * np.sqrt(casimir(jm)) for n, (_, jm) in zip(counts, M.colors))
    return float(cp), float(cm), counts


def area_operator(q: float, M: ColoredHyperlink, G: Hyperlink = Hyperlink(),
                  S: Optional[PlanarSurface] = None, eps=None) -> AreaResult:
    """Area operator acting on the Wilson loop observable; S=None is the empty surface."""
    if S is None:
        terms, sks = wilson_terms(q, M, G, eps)
        return AreaResult(complex(np.prod([p + m for _, p, m in terms])), terms, None, sks)
    n = len(M)
    if n == 0:
        raise ValueError("the matter hyperlink has no loops")
    cp, cm, counts = piercing_sums(M, S, eps)
    sks = _sk_values(M, G, eps)
    # principal branch: (i c)^(1/n) = c^(1/n) exp(i pi / 2n) for c >= 0
    rp = cp ** (1.0 / n)
    rm = complex(0.0, cm) ** (1.0 / n)
    terms = tuple((u, rp * trace_exp_E(jp, -np.pi * q * sk), rm * trace_exp_E(jm, np.pi * q * sk))
                  for u, ((jp, jm), sk) in enumerate(zip(M.colors, sks)))
    pref = abs(q) * np.sqrt(np.pi) / 2
    value = pref * complex(np.prod([p + m for _, p, m in terms]))
    return AreaResult(value, terms, (cp, cm), sks, counts, pref)
