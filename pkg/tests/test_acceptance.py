"""Acceptance suite: one test per criterion, each printing a single PASS/FAIL line."""
import math
import time

import numpy as np
import pytest
from scipy.integrate import dblquad
from scipy.linalg import expm

from conftest import ACCEPTANCE_LINES
from helpers import brute_crossings, random_hyperlink
from hyperarea.diagram import crossing_clearance, find_crossings, hyperlinking_number
from hyperarea.fixtures import (cancelling_piercings, circle_loop, hopf_pair, one_piercing,
                                two_loop_colored)
from hyperarea.geometry import ColoredHyperlink, Hyperlink, PLLoop
from hyperarea.kappa import (QuadratureConfig, area_finite_kappa, gaussian_inner_2d,
                             holonomy_factor_finite_kappa, kernel_inner_1d_signed,
                             lk_finite_kappa, piercing_count_finite_kappa, sk_finite_kappa)
from hyperarea.observables import area_operator, wilson_loop
from hyperarea.piercing import linking_number_surface, piercing_count
from hyperarea.representation import make_spin_rep, trace_exp_E

SCHEDULE = (8, 16, 32)


def report(n, title, ok, detail, elapsed, limit):
    ok = bool(ok) and elapsed < limit
    line = (f"criterion {n} [{'PASS' if ok else 'FAIL'}] {title}: {detail} "
            f"({elapsed:.1f} s, limit {limit:g} s)")
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def strictly_decreasing(xs):
    return all(b < a for a, b in zip(xs, xs[1:]))


def test_criterion_1_representations():
    t0 = time.perf_counter()
    rng = np.random.default_rng(1)
    worst_cas, worst_tr, min_tr = 0.0, 0.0, np.inf
    ok = True
    for j in ("0", "1/2", "1", "3/2", "2", "3"):
        rep = make_spin_rep(j)
        d = rep.casimir_defect()
        ok &= d <= 1e-12 * rep.dim
        worst_cas = max(worst_cas, d / rep.dim)
        for a in rng.uniform(-5, 5, 100) + 1j * rng.uniform(-5, 5, 100):
            ref = np.trace(expm(a * rep.E))
            err = abs(trace_exp_E(j, a) - ref) / abs(ref)
            worst_tr = max(worst_tr, err)
        t = trace_exp_E(j, 1j)
        ok &= abs(t.imag) < 1e-12 and t.real >= 1
        min_tr = min(min_tr, t.real)
    ok &= worst_tr <= 1e-10
    report(1, "representations", ok,
           f"max Casimir defect/(2j+1) {worst_cas:.1e}, max trace rel err {worst_tr:.1e}, "
           f"min Tr exp(iE) {min_tr:.3f}", time.perf_counter() - t0, 10)


def test_criterion_2_diagrams():
    t0 = time.perf_counter()
    rng = np.random.default_rng(2)
    ok, n_cross = True, 0
    for trial in range(20):
        h = random_hyperlink(rng, "hopf" if trial % 4 else "circles")
        a, b = h
        sk = hyperlinking_number(a, b)
        ok &= sk == -hyperlinking_number(b, a)
        ok &= hyperlinking_number(a.rotated(int(rng.integers(1, a.n_segments))), b) == sk
        ok &= hyperlinking_number(a.reversed(), b) == -sk
        ok &= hyperlinking_number(a, b.reversed()) == -sk
        clr = crossing_clearance(a, b)
        ok &= clr > 0
        jig = lambda l: PLLoop(l.vertices + rng.uniform(-1, 1, l.vertices.shape) * 0.099 * clr
                               / 2, l.name)
        ok &= hyperlinking_number(jig(a), jig(b)) == sk
        for k in (1, 2, 3):
            got = sorted((x.segments[0], x.segments[1], x.orientation, x.height, x.time_lag)
                         for x in find_crossings(a, b, k))
            ok &= got == brute_crossings(a, b, k)
            n_cross += len(got)
    report(2, "diagrams", ok, f"20 hyperlinks, {n_cross} crossings match the all-pairs oracle",
           time.perf_counter() - t0, 30)


def test_criterion_3_piercings():
    t0 = time.perf_counter()
    M1, disk = one_piercing()
    Mc, disk2, annulus = cancelling_piercings()
    single, canc = M1.base[0], Mc.base[0]
    got = {
        "cancelling": (piercing_count(canc, disk2), linking_number_surface(canc, disk2)),
        "single": (piercing_count(single, disk), linking_number_surface(single, disk)),
        "annulus": (piercing_count(canc, annulus), linking_number_surface(canc, annulus)),
    }
    ok = got["cancelling"] == (2, 0) and got["annulus"] == (0, 0)
    ok &= got["single"][0] == 1 and abs(got["single"][1]) == 1
    lk = got["single"][1]
    ok &= linking_number_surface(single.reversed(), disk) == -lk
    ok &= linking_number_surface(single, disk.flipped()) == -lk
    ok &= linking_number_surface(single.reversed(), disk.flipped()) == lk
    report(3, "piercings", ok, f"(count, lk) = {got}", time.perf_counter() - t0, 5)


def _q(k, c):
    # scalar q_kappa^c, written out from its definition for a fast oracle
    a = math.sqrt(k) / (2 * math.pi) ** 0.25
    return lambda t: a * math.exp(-k * k * (t - c) ** 2 / 4)


def _oracle_1d(k, x, y):
    qx, qy = _q(k, x), _q(k, y)
    w = 14 * math.sqrt(2) / k
    val, _ = dblquad(lambda s, t: qx(s) * qy(t), y - w, y + w, lambda t: x, lambda t: t,
                     epsabs=1e-13, epsrel=1e-12)
    return k / math.sqrt(2 * math.pi) * val


def _oracle_2d(k, p, q):
    # the integrand separates, but integrate it as a genuine 2-D function
    px, py, qx, qy = _q(k, p[0]), _q(k, p[1]), _q(k, q[0]), _q(k, q[1])
    m = (np.asarray(p) + np.asarray(q)) / 2
    w = 14 / k
    val, _ = dblquad(lambda z2, z1: px(z1) * py(z2) * qx(z1) * qy(z2),
                     m[0] - w, m[0] + w, m[1] - w, m[1] + w, epsabs=1e-13, epsrel=1e-12)
    return val


def test_criterion_4_kernel_constants():
    t0 = time.perf_counter()
    rng = np.random.default_rng(4)
    e1 = e2 = 0.0
    for _ in range(100):
        k = rng.uniform(1, 64)
        x = rng.uniform(-2, 2)
        y = x + rng.uniform(-5, 5) / k
        e1 = max(e1, abs(kernel_inner_1d_signed(k, x, y) - _oracle_1d(k, x, y)))
        p = rng.uniform(-2, 2, 2)
        q = p + rng.uniform(-4, 4, 2) / k
        e2 = max(e2, abs(gaussian_inner_2d(k, p, q) - _oracle_2d(k, p, q)))
    report(4, "kernel constants", e1 < 1e-8 and e2 < 1e-8,
           f"max |1-D - oracle| {e1:.1e}, max |2-D - oracle| {e2:.1e}",
           time.perf_counter() - t0, 30)


@pytest.mark.slow
def test_criterion_5_sk_convergence():
    t0 = time.perf_counter()
    a, b = hopf_pair()
    ref = hyperlinking_number(a, b)
    rel = [abs(sk_finite_kappa(a, b, QuadratureConfig(k)) - ref) / abs(ref) for k in SCHEDULE]
    report(5, "sk convergence", strictly_decreasing(rel) and rel[-1] < 0.1,
           f"sk = {ref}, rel errors {['%.2e' % r for r in rel]}", time.perf_counter() - t0, 300)


@pytest.mark.slow
def test_criterion_6_lk_convergence():
    t0 = time.perf_counter()
    M1, disk = one_piercing()
    Mc, disk2, _ = cancelling_piercings()
    single, canc = M1.base[0], Mc.base[0]
    lk = linking_number_surface(single, disk)
    err = [abs(lk_finite_kappa(single, disk, QuadratureConfig(k)) - lk) for k in SCHEDULE]
    signed = [lk_finite_kappa(canc, disk2, QuadratureConfig(k)) for k in SCHEDULE]
    count = [piercing_count_finite_kappa(canc, disk2, QuadratureConfig(k)) for k in SCHEDULE]
    cerr = [abs(c - 2) / 2 for c in count]
    ok = strictly_decreasing(err) and err[-1] < 0.1
    ok &= abs(signed[-1]) < 0.1 and strictly_decreasing(cerr) and cerr[-1] < 0.1
    report(6, "lk convergence", ok,
           f"single lk = {lk} errors {['%.2e' % e for e in err]}; cancelling signed "
           f"{['%.1e' % s for s in signed]}, |.| count rel errors {['%.2e' % e for e in cerr]}",
           time.perf_counter() - t0, 300)


@pytest.mark.slow
def test_criterion_7_wilson_loop():
    t0 = time.perf_counter()
    a, b = hopf_pair()
    sk = hyperlinking_number(a, b)
    M = ColoredHyperlink(Hyperlink((a,)), (("1/2", "1/2"),))
    G = Hyperlink((b,))
    cfg = QuadratureConfig(32)
    ok, worst = True, 0.0
    for q in (1.0, 0.15):
        ref = 2 * np.cos(np.sqrt(3) * np.pi * q * sk / 2)
        for side in (1, -1):
            est = holonomy_factor_finite_kappa(q, M, 0, G, side, cfg)
            r = abs(est - ref) / abs(ref)
            worst = max(worst, r)
            ok &= r < 0.1
    rng = np.random.default_rng(7)
    far = circle_loop((0, 0, 6), (0.6, 0.8, 0), (0, 0.36, 0.93), n=16, name="F")
    spins = ["0", "1/2", "1", "3/2", "2", "5/2"]
    imag = 0.0
    for _ in range(50):
        cols = tuple((spins[rng.integers(6)], spins[rng.integers(6)]) for _ in range(2))
        Mr = ColoredHyperlink(Hyperlink((a, far)), cols)
        z = wilson_loop(rng.uniform(-3, 3), Mr, G)
        imag = max(imag, abs(z.imag) / max(1.0, abs(z)))
    ok &= imag < 1e-12
    report(7, "Wilson loop", ok,
           f"worst holonomy rel error at kappa=32 {worst:.1e}; max |Im Z|/|Z| {imag:.1e}",
           time.perf_counter() - t0, 300)


@pytest.mark.slow
def test_criterion_8_area_operator():
    t0 = time.perf_counter()
    M, S = one_piercing()
    closed = area_operator(1.0, M, Hyperlink(), S).value
    target = np.sqrt(3 * np.pi) / 2 * (1 + 1j)
    ok = abs(closed - target) <= 1e-12
    cfg = QuadratureConfig(32)
    est = area_finite_kappa(1.0, M, Hyperlink(), S, cfg)
    rel = abs(est - closed) / abs(closed)
    ok &= rel < 0.15
    M2, S2 = two_loop_colored()
    v1 = area_finite_kappa(1.0, M2, Hyperlink(), S2, cfg, radius_factor=1.0)
    v2 = area_finite_kappa(1.0, M2, Hyperlink(), S2, cfg, radius_factor=0.5)
    part = abs(v1 - v2) / abs(v1)
    ok &= part < 0.05
    a, b = hopf_pair()
    Mh = ColoredHyperlink(Hyperlink((a,)), (("1/2", "1"),))
    for q in (0.3, 1.0, -2.0):
        ok &= area_operator(q, Mh, Hyperlink((b,)), None).value == wilson_loop(q, Mh, Hyperlink((b,)))
    report(8, "area operator", ok,
           f"closed form err {abs(closed - target):.1e}; kappa=32 rel err {rel:.1e}; "
           f"partition spread {part:.1e}; empty surface equals Wilson loop",
           time.perf_counter() - t0, 600)
