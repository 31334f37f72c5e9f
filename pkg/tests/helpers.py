"""Oracles and generators shared by the test modules."""
import itertools

import numpy as np
from scipy.spatial.transform import Rotation

from hyperarea.fixtures import hopf_pair, two_circles
from hyperarea.geometry import Hyperlink, PLLoop, validate_timelike

# spatial plane k keeps the two 4-vector coordinates other than 0 and k
PLANES = {1: (2, 3), 2: (1, 3), 3: (1, 2)}


def levi_civita(i, j, k):
    perm = (i, j, k)
    if len(set(perm)) < 3:
        return 0
    inv = sum(1 for a, b in itertools.combinations(perm, 2) if a > b)
    return -1 if inv % 2 else 1


def brute_crossings(a: PLLoop, b: PLLoop, k: int):
    """All-pairs float intersection of projected segments; signs from the defining formulas.

    Returns sorted tuples (seg_a, seg_b, orientation, height, time_lag).
    """
    c = list(PLANES[k])
    out = []
    for i in range(a.n_segments):
        p, dp = a.vertices[i], a.vectors[i]
        for j in range(b.n_segments):
            q, dq = b.vertices[j], b.vectors[j]
            m = np.array([[dp[c[0]], -dq[c[0]]], [dp[c[1]], -dq[c[1]]]])
            if abs(np.linalg.det(m)) < 1e-14:
                continue
            u, v = np.linalg.solve(m, (q - p)[c])
            if not (0 < u < 1 and 0 < v < 1):
                continue
            pa, pb = p + u * dp, q + v * dq
            orient = sum(levi_civita(x, y, k) * dp[x] * dq[y]
                         for x in (1, 2, 3) for y in (1, 2, 3))
            out.append((i, j, int(np.sign(orient)), int(np.sign(pa[k] - pb[k])),
                        int(np.sign(pb[0] - pa[0]))))
    return sorted(out)


def brute_sk(a, b):
    return sum(o * h * t for k in (1, 2, 3) for _, _, o, h, t in brute_crossings(a, b, k))


def random_hyperlink(rng, kind="hopf"):
    """A randomly rotated, time-modulated, slightly perturbed copy of a bundled pair."""
    while True:
        R = Rotation.random(random_state=rng).as_matrix()
        if kind == "hopf":
            off = rng.uniform(0.3, 1.0) * rng.choice([-1, 1])
            h = hopf_pair(time_offset=off, n=int(rng.integers(12, 30)), R=R)
        else:
            h = Hyperlink(tuple(l.mapped(lambda v: np.column_stack([v[:, :1], v[:, 1:] @ R.T]))
                                for l in two_circles()))
        loops = []
        for l in h:
            v = np.array(l.vertices)
            th = np.linspace(0, 2 * np.pi, len(v), endpoint=False)
            v[:, 0] += 0.1 * np.sin(th + rng.uniform(0, 2 * np.pi))
            v[:, 1:] += rng.normal(scale=0.01, size=(len(v), 3))
            loops.append(PLLoop(v, l.name))
        h = Hyperlink(tuple(loops))
        if validate_timelike(h).valid:
            return h
