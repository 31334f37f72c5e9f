"""Spin-j irreducible representations of su(2) in the basis e1, e2, e3 and traces of exp(a E).

At j = 1/2 the basis is

    e1 = 1/2 [[0, 1], [-1, 0]],  e2 = 1/2 [[0, i], [i, 0]],  e3 = 1/2 [[i, 0], [0, -i]],

so e1 = i Jy, e2 = i Jx, e3 = i Jz with J the usual Hermitian spin matrices;
[e1, e2] = e3 cyclically and E = e1 + e2 + e3 has eigenvalues i sqrt(3) m.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .geometry import half_integer

SQRT3 = np.sqrt(3.0)


def spin_matrices(j):
    """Hermitian (Jx, Jy, Jz) for spin j in the |j, m> basis, m = j, j-1, ..., -j."""
    j = half_integer(j)
    dim = int(2 * j + 1)
    m = float(j) - np.arange(dim)
    jz = np.diag(m).astype(complex)
    # <m+1| J+ |m> = sqrt(j(j+1) - m(m+1))
    jp = np.zeros((dim, dim), complex)
    jj = float(j) * (float(j) + 1)
    for k in range(1, dim):
        jp[k - 1, k] = np.sqrt(jj - m[k] * (m[k] + 1))
    jm = jp.conj().T
    return (jp + jm) / 2, (jp - jm) / 2j, jz


@dataclass(frozen=True, eq=False)
class SpinRep:
    j: Fraction
    dim: int
    generators: tuple     # rho(e1), rho(e2), rho(e3), each skew-Hermitian

    @property
    def E(self) -> np.ndarray:
        """rho(e1 + e2 + e3)."""
        return self.generators[0] + self.generators[1] + self.generators[2]

    def casimir_defect(self) -> float:
        """|| sum rho(e_i)^2 + j(j+1) I ||, zero for an exact representation."""
        s = sum(g @ g for g in self.generators)
        return float(np.linalg.norm(s + casimir(self.j) * np.eye(self.dim)))


def make_spin_rep(j) -> SpinRep:
    j = half_integer(j)
    jx, jy, jz = spin_matrices(j)
    gens = (1j * jy, 1j * jx, 1j * jz)
    for g in gens:
        g.flags.writeable = False
    return SpinRep(j, int(2 * j + 1), gens)


def casimir(j) -> float:
    j = float(half_integer(j))
    return j * (j + 1)


def weights(j) -> np.ndarray:
    j = half_integer(j)
    return float(j) - np.arange(int(2 * j + 1))


def trace_exp_E(j, a) -> complex:
    """Tr exp(a rho(E)) = sum_m exp(i sqrt(3) a m), m = -j..j."""
    m = weights(j)
    return complex(np.sum(np.exp(1j * SQRT3 * complex(a) * m)))
