"""Deterministic direction sets on spheres for sup-norm sampling.

All samplers are seeded and reproducible.  Axis points (positive and
negative unit vectors) are always prepended so that axis-supported test
families attain their suprema exactly.
"""

from __future__ import annotations

import numpy as np
from scipy.stats import qmc

from .clifford import Paravector


def sphere_directions(dim: int, count: int, seed: int = 0) -> np.ndarray:
    """~count unit vectors in R^dim: all +/- axis points, then a scrambled
    Sobol set pushed through the inverse normal CDF and normalised."""
    axes = np.concatenate([np.eye(dim), -np.eye(dim)])
    extra = max(count - len(axes), 0)
    if extra == 0:
        return axes
    sampler = qmc.Sobol(d=dim, scramble=True, seed=seed)
    m = max(int(np.ceil(np.log2(extra))), 0)
    u = sampler.random_base2(m=m)[:extra]
    # Clip away the corners where ndtri is infinite.
    from scipy.special import ndtri

    g = ndtri(np.clip(u, 1e-12, 1 - 1e-12))
    norms = np.linalg.norm(g, axis=1, keepdims=True)
    norms[norms == 0] = 1.0
    return np.concatenate([axes, g / norms])


def sphere_points(n: int, radius: float, count: int, seed: int = 0) -> list[Paravector]:
    """Paravector points of norm ``radius`` in the (n+1)-dimensional space."""
    dirs = sphere_directions(n + 1, count, seed=seed)
    return [Paravector(radius * d[0], radius * d[1:]) for d in dirs]


def ball_points(n: int, radius: float, count: int, seed: int = 0) -> list[Paravector]:
    """Points of the closed ball, radii stratified from the boundary inward."""
    dirs = sphere_directions(n + 1, count, seed=seed)
    points = []
    for k, d in enumerate(dirs):
        r = radius * (1.0 - 0.5 * (k % 4) / 4.0)
        points.append(Paravector(r * d[0], r * d[1:]))
    return points
