import numpy as np
import pytest
from hypothesis import given, strategies as st

from hyperarea.fixtures import (annulus, cancelling_piercings, circle_loop, hopf_pair,
                                one_piercing, two_loop_colored)
from hyperarea.geometry import ColoredHyperlink, Hyperlink
from hyperarea.observables import area_operator, piercing_sums, wilson_loop

SPINS = ["0", "1/2", "1", "3/2", "2"]
spin = st.sampled_from(SPINS)


def hopf_matter(cols=(("1/2", "1/2"),)):
    a, b = hopf_pair()
    return ColoredHyperlink(Hyperlink((a,)), cols), Hyperlink((b,))


def test_wilson_without_geometric_loops_is_dimension_product():
    M, _ = two_loop_colored()
    # (2+2)(3+2)
    assert wilson_loop(0.7, M, Hyperlink()) == 20


def test_wilson_closed_form_spin_half():
    M, G = hopf_matter()
    for q in (1.0, 0.2, -1.3):
        # sk = -6 here; both sides give 2 cos(sqrt3 pi q sk / 2)
        want = 4 * np.cos(np.sqrt(3) * np.pi * q * 6 / 2)
        assert wilson_loop(q, M, G) == pytest.approx(want, abs=1e-12)


def test_wilson_unit_sk_example():
    # a matter loop with sk = 1 against G: take a third of the hopf crossings by scaling q
    M, G = hopf_matter()
    q = -1.0 / 6      # q * sk = 1
    assert wilson_loop(q, M, G) == pytest.approx(4 * np.cos(np.sqrt(3) * np.pi / 2), abs=1e-12)


@given(st.floats(-5, 5), spin, spin, spin, spin)
def test_wilson_real(q, a, b, c, d):
    x, y = hopf_pair()
    far = circle_loop((0, 0, 6), (0.6, 0.8, 0), (0, 0.36, 0.93), n=16)
    M = ColoredHyperlink(Hyperlink((x, far)), ((a, b), (c, d)))
    z = wilson_loop(q, M, Hyperlink((y,)))
    assert abs(z.imag) <= 1e-12 * max(1.0, abs(z))


def test_one_piercing_closed_form():
    M, S = one_piercing()
    r = area_operator(1.0, M, Hyperlink(), S)
    assert abs(r.value - np.sqrt(3 * np.pi) / 2 * (1 + 1j)) <= 1e-12
    assert r.piercing_counts == (1,)
    assert r.piercing_sums == pytest.approx((np.sqrt(0.75), np.sqrt(0.75)))
    assert r.recompute() == r.value
    assert r.prefactor == pytest.approx(np.sqrt(np.pi) / 2)


def test_empty_surface_is_wilson_loop():
    M, G = hopf_matter((("1", "1/2"),))
    for q in (0.0, 0.4, -2.5):
        assert area_operator(q, M, G, None).value == wilson_loop(q, M, G)


def test_no_piercings_gives_zero():
    M, _, A = cancelling_piercings()
    assert area_operator(1.0, M, Hyperlink(), A).value == 0


def test_counts_not_lk_enter_the_brackets():
    M, D, _ = cancelling_piercings()
    r = area_operator(1.0, M, Hyperlink(), D)
    assert r.piercing_counts == (2,)
    want = np.sqrt(np.pi) / 2 * (2 * np.sqrt(0.75) * 2 + 1j * 2 * np.sqrt(0.75) * 2)
    assert r.value == pytest.approx(want, abs=1e-12)


def test_two_loops_equal_colors():
    M, S = two_loop_colored(colors=(("1/2", "1/2"), ("1/2", "1/2")))
    cp, cm, counts = piercing_sums(M, S)
    assert counts == (1, 1)
    assert cp == cm == pytest.approx(2 * np.sqrt(0.75))
    r = area_operator(2.0, M, Hyperlink(), S)
    root_p, root_m = cp ** 0.5, (1j * cm) ** 0.5
    want = 2.0 * np.sqrt(np.pi) / 2 * (root_p * 2 + root_m * 2) ** 2
    assert r.value == pytest.approx(want, abs=1e-12)


def test_q_scaling_of_prefactor():
    M, S = one_piercing()
    assert area_operator(-3.0, M, Hyperlink(), S).value == pytest.approx(
        3 * area_operator(1.0, M, Hyperlink(), S).value)
