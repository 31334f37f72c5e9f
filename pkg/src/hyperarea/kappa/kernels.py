"""Gaussian kernels and their closed-form inner products.

q_k^x(t) = sqrt(k) (2 pi)^(-1/4) exp(-k^2 (t-x)^2 / 4) is L2-normalized; the
d-dimensional p_k^x is the product of d copies.  The antiderivative of q is
taken from the centre, d^-1 q^x(t) = int_x^t q^x, which is an erf.
"""
from __future__ import annotations

import numpy as np
from scipy.special import erf

SQRT2 = np.sqrt(2.0)
SQRT2PI = np.sqrt(2.0 * np.pi)


def q_kappa(kappa, x, t):
    return np.sqrt(kappa) / (2 * np.pi) ** 0.25 * np.exp(-kappa ** 2 * (np.asarray(t) - x) ** 2 / 4)


def p_kappa(kappa, x, y):
    """Product Gaussian centred at x evaluated at y (last axis is the coordinate)."""
    x = np.asarray(x, float)
    y = np.asarray(y, float)
    d = x.shape[-1]
    r2 = np.sum((y - x) ** 2, axis=-1)
    return (kappa / np.sqrt(2 * np.pi)) ** (d / 2) * np.exp(-kappa ** 2 * r2 / 4)


def antiderivative_q(kappa, x, t):
    """int_x^t q_k^x."""
    c = np.sqrt(np.pi / kappa) / (2 * np.pi) ** 0.25
    return c * erf(kappa * (np.asarray(t) - x) / 2)


def kernel_inner_1d_signed(kappa, x, y):
    """(k / sqrt(2 pi)) <d^-1 q^x, q^y> = erf(k (y - x) / (2 sqrt 2)); -> sign(y - x)."""
    return erf(kappa * (np.asarray(y, float) - np.asarray(x, float)) / (2 * SQRT2))


def gaussian_inner_2d(kappa, p, q):
    """<p_k^p, p_k^q> = exp(-k^2 |p - q|^2 / 8); equals 1 at p = q."""
    d = np.asarray(p, float) - np.asarray(q, float)
    return np.exp(-kappa ** 2 * np.sum(d * d, axis=-1) / 8)
