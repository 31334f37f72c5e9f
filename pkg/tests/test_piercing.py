import numpy as np
import pytest
from hypothesis import given, strategies as st

from hyperarea.fixtures import (annulus, cancelling_loop, cancelling_piercings, circle_loop, disk,
                                one_piercing, one_piercing_loop)
from hyperarea.geometry import Hyperlink, PLLoop
from hyperarea.piercing import (DegeneratePiercing, find_piercings, hyperlink_lk,
                                hyperlink_piercings, linking_number_surface, piercing_count)


def _inside(ring, p):
    # plain float even-odd ray cast, independent of the package's exact test
    x, y = p
    c = False
    for (x1, y1), (x2, y2) in zip(ring, np.roll(ring, -1, axis=0)):
        if (y1 > y) != (y2 > y) and x < x1 + (y - y1) * (x2 - x1) / (y2 - y1):
            c = not c
    return c


def oracle_piercings(l, S):
    """(x2, x3, orientation, height) by solving x1 = 0 on every segment."""
    out = []
    for p, v in zip(l.vertices, l.vectors):
        if v[1] == 0:
            continue
        u = -p[1] / v[1]
        if not 0 < u < 1:
            continue
        x = p + u * v
        inside = any(_inside(c.outer, x[2:]) and not any(_inside(h, x[2:]) for h in c.holes)
                     for c in S.components)
        if inside:
            out.append((x[2], x[3], int(np.sign(v[1])) * S.normal_sign, 1 if x[0] < 0 else -1))
    return sorted(out)


def test_loop_on_one_side_has_none():
    l = circle_loop((3, 0, 0), (0.8, 0.6, 0), (0, 0, 1), x0=-0.2)
    assert find_piercings(l, disk()) == []


def test_cancelling_circle_against_oracle():
    M, D, A = cancelling_piercings()
    l = M.base[0]
    ps = find_piercings(l, D)
    assert len(ps) == 2
    assert {p.orientation for p in ps} == {1, -1}
    assert all(p.height == 1 for p in ps)
    got = sorted((p.point[0], p.point[1], p.orientation, p.height) for p in ps)
    assert np.allclose(np.array(got), np.array(oracle_piercings(l, D)))
    assert linking_number_surface(l, D) == 0
    assert piercing_count(l, A) == 0 and oracle_piercings(l, A) == []


def test_single_piercing_sign():
    M, S = one_piercing()
    l = M.base[0]
    (p,) = find_piercings(l, S)
    # downward in time-height terms: below the surface (x0 < 0), moving towards +x1
    assert p.height == 1
    assert p.epsilon == linking_number_surface(l, S) == oracle_piercings(l, S)[0][2]
    assert linking_number_surface(l.reversed(), S) == -p.epsilon
    assert linking_number_surface(l, S.flipped()) == -p.epsilon
    above = l.translated((0.6, 0, 0, 0))     # now at x0 = +0.3
    assert linking_number_surface(above, S) == -p.epsilon


def test_additivity_over_hyperlink():
    c = cancelling_loop()
    c2 = c.translated((0, 0, 0, 0.5))
    h = Hyperlink((c, c2))
    assert hyperlink_lk(h, disk()) == 0
    assert len(hyperlink_piercings(h, disk())) == 4
    assert {p.loop_index for p in hyperlink_piercings(h, disk())} == {0, 1}


@given(st.floats(-0.9, -0.05), st.floats(-0.5, 0.5), st.floats(0, 2 * np.pi))
def test_random_loops_match_oracle(x0, shift, phase):
    l = one_piercing_loop(x0=x0, shift=shift)
    l = PLLoop(l.vertices + np.array([0.05 * np.sin(phase), 0, 0, 0]), l.name)
    for S in (disk(), annulus(), disk().flipped()):
        got = sorted((p.point[0], p.point[1], p.orientation, p.height)
                     for p in find_piercings(l, S))
        want = oracle_piercings(l, S)
        assert len(got) == len(want)
        assert np.allclose(np.array(got).reshape(-1, 4), np.array(want).reshape(-1, 4))


def test_vertex_on_surface_is_degenerate():
    l = PLLoop([[-0.3, -1, 0.2, 0.1], [-0.3, 0, 0.5, 0.3], [-0.2, 1, 0.1, -0.2],
                [-0.4, 0.3, -3.5, 0.4]])
    with pytest.raises(DegeneratePiercing):
        find_piercings(l, disk())


def test_piercing_on_boundary_is_degenerate():
    S = disk(2.0, 4)      # square with a vertex at (2, 0)
    l = PLLoop([[-0.3, -1, 2, 0], [-0.3, 1, 2, 0], [-0.3, 1, 3, 1]])
    with pytest.raises(DegeneratePiercing):
        find_piercings(l, S)


def test_piercing_at_time_zero_is_degenerate():
    l = one_piercing_loop(x0=0.0)
    with pytest.raises(DegeneratePiercing):
        find_piercings(l, disk())
