"""Curated geometries bundled with the CLI `example` command and used by the test suite."""
import numpy as np

from .geometry import (ColoredHyperlink, Hyperlink, PlanarSurface, PLLoop, SurfaceComponent,
                       polygon_disk)

NAMES = ("two-circles", "hopf-pair", "one-piercing", "cancelling-piercings", "two-loop-colored")


def rotation(alpha, beta, gamma) -> np.ndarray:
    """Spatial rotation Rz(alpha) Ry(beta) Rx(gamma)."""
    ca, sa = np.cos(alpha), np.sin(alpha)
    cb, sb = np.cos(beta), np.sin(beta)
    cg, sg = np.cos(gamma), np.sin(gamma)
    rz = np.array([[ca, -sa, 0], [sa, ca, 0], [0, 0, 1]])
    ry = np.array([[cb, 0, sb], [0, 1, 0], [-sb, 0, cb]])
    rx = np.array([[1, 0, 0], [0, cg, -sg], [0, sg, cg]])
    return rz @ ry @ rx


# Tilt that makes every coordinate projection of a planar circle non-degenerate.
GENERIC = rotation(0.31, 0.47, 0.73)


def circle_loop(center, e1, e2, radius=1.0, n=24, x0=0.0, phase=None, name=None) -> PLLoop:
    """Regular n-gon inscribed in the circle center + radius (cos th e1 + sin th e2)."""
    if phase is None:
        phase = np.pi / n
    th = phase + 2 * np.pi * np.arange(n) / n
    pts = (np.asarray(center, float)[None, :] + radius * np.cos(th)[:, None] * np.asarray(e1, float)
           + radius * np.sin(th)[:, None] * np.asarray(e2, float))
    x0 = np.broadcast_to(np.asarray(x0, float), (n,)) if np.ndim(x0) == 0 else np.asarray(x0)
    return PLLoop(np.column_stack([x0, pts]), name)


def _tilted(center, e1, e2, R, **kw):
    R = np.asarray(R)
    return circle_loop(R @ np.asarray(center, float), R @ np.asarray(e1, float),
                       R @ np.asarray(e2, float), **kw)


def two_circles() -> Hyperlink:
    a = _tilted((0, 0, 0), (1, 0, 0), (0, 1, 0), GENERIC, name="A")
    b = _tilted((5, 0, 0), (1, 0, 0), (0, 1, 0), GENERIC, name="B")
    return Hyperlink((a, b))


def hopf_pair(time_offset=0.3, n=24, R=GENERIC) -> Hyperlink:
    """Round Hopf link: A in the x1-x2 plane at x0 = 0, B in the x2-x3 plane through A's disk,
    held at x0 = time_offset, both tilted by a generic rotation."""
    a = _tilted((0, 0, 0), (1, 0, 0), (0, 1, 0), R, n=n, name="A")
    b = _tilted((0, 1, 0), (0, 1, 0), (0, 0, 1), R, n=n, x0=time_offset, name="B")
    return Hyperlink((a, b))


def disk(radius=2.0, n=48, normal_sign=1) -> PlanarSurface:
    return PlanarSurface((SurfaceComponent(polygon_disk(radius, n)),), normal_sign)


def annulus(outer=4.0, inner=3.0, n=48, normal_sign=1) -> PlanarSurface:
    return PlanarSurface((SurfaceComponent(polygon_disk(outer, n),
                                           (polygon_disk(inner, n, phase=np.pi / n),)),),
                         normal_sign)


# Small tilt about the x3 and x1 axes: keeps piercing structure, removes degenerate projections.
SLIGHT = rotation(0.05, 0.0, 0.08)


def one_piercing_loop(x0=-0.3, shift=0.0, name="M") -> PLLoop:
    """Circle of radius 2.5 through the x1 = 0 plane at x2 ~ 0 (inside the disk) and x2 ~ 5 (outside)."""
    return _tilted((0, 2.5, shift), (1, 0, 0), (0, 1, 0), SLIGHT, radius=2.5, n=32, x0=x0,
                   name=name)


def cancelling_loop(x0=-0.2) -> PLLoop:
    """Unit circle about the origin in (nearly) the x1-x2 plane: pierces x1 = 0 at x2 ~ +-1."""
    return _tilted((0, 0, 0), (1, 0, 0), (0, 1, 0), SLIGHT, n=24, x0=x0, name="C")


def one_piercing():
    return ColoredHyperlink(Hyperlink((one_piercing_loop(),)), (("1/2", "1/2"),)), disk()


def cancelling_piercings():
    return ColoredHyperlink(Hyperlink((cancelling_loop(),)), (("1/2", "1/2"),)), disk(), annulus()


def two_loop_colored(colors=(("1/2", "1/2"), ("1", "1/2"))):
    l1 = one_piercing_loop(x0=-0.3, shift=0.7, name="M1")
    l2 = one_piercing_loop(x0=-0.45, shift=-0.7, name="M2").translated((0, 0, 0.15, 0))
    return ColoredHyperlink(Hyperlink((l1, l2)), colors), disk()
