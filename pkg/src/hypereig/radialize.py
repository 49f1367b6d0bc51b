"""Monte Carlo sphere averages of the kernel eigenfunction.

The kernel power omega(x, u)^alpha is an eigenfunction of the full Laplacian
in the (k+1)-dimensional ball, not a radial one: it depends on the direction
of x relative to the boundary point u. Averaging it over a geodesic sphere
centered at the origin kills the directional dependence and reproduces the
radial eigenfunction phi of the same eigenvalue. This module performs that
average by direct sampling, giving a validation path for the quadrature that
involves no 1-D reduction at all.

Sampling detail: points uniform on the Euclidean sphere |x| = eta(r) are
drawn as normalized (k+1)-dimensional Gaussian vectors (rejection-free in
any dimension). Draws are organized in fixed blocks of 65536 samples, block
g seeded by default_rng([seed, g]); per-block sums are reduced in block
order, so the result for a given (seed, n_samples) is bitwise reproducible
and independent of how blocks might be partitioned across workers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .geometry import HyperbolicSpace, eta_from_r

__all__ = ["BallPoint", "BLOCK_SIZE", "kernel_eigenfunction", "sphere_average"]

BLOCK_SIZE = 65536


@dataclass(frozen=True)
class BallPoint:
    """A point of the ball model, as a (k+1)-vector of Euclidean coordinates."""

    coordinates: tuple[float, ...]

    def __post_init__(self):
        coords = tuple(float(c) for c in self.coordinates)
        if len(coords) == 0 or not all(math.isfinite(c) for c in coords):
            raise DomainError("ball point needs a nonempty tuple of finite coordinates")
        object.__setattr__(self, "coordinates", coords)

    @property
    def norm(self) -> float:
        return math.sqrt(sum(c * c for c in self.coordinates))


def _as_vector(point, dim: int, name: str) -> np.ndarray:
    if isinstance(point, BallPoint):
        point = point.coordinates
    vec = np.asarray(point, dtype=float)
    if vec.shape != (dim,):
        raise DomainError(f"{name} must be a {dim}-vector, got shape {vec.shape}")
    if not np.all(np.isfinite(vec)):
        raise DomainError(f"{name} must have finite coordinates")
    return vec


def kernel_eigenfunction(space: HyperbolicSpace, x, u, alpha: float) -> float:
    """The kernel power ((rho^2 - |x|^2) / |x - u|^2)^alpha.

    x is any interior point (|x| < rho), u a boundary point (|u| = rho to
    1e-12 relative). Equals 1 at the origin for every alpha and for alpha=0
    everywhere.
    """
    alpha = float(alpha)
    if not math.isfinite(alpha):
        raise DomainError(f"kernel power must be finite, got {alpha!r}")
    dim = space.k + 1
    xv = _as_vector(x, dim, "interior point")
    uv = _as_vector(u, dim, "boundary point")
    rho = space.rho
    u_norm = float(np.linalg.norm(uv))
    if abs(u_norm - rho) > 1e-12 * rho:
        raise DomainError(f"boundary point must satisfy |u| = rho, got |u| = {u_norm!r}")
    x_norm2 = float(xv @ xv)
    if x_norm2 >= rho * rho:
        raise DomainError("interior point must satisfy |x| < rho")
    diff = xv - uv
    return float(((rho * rho - x_norm2) / (diff @ diff)) ** alpha)


def _block_sums(space: HyperbolicSpace, alpha: float, eta: float,
                u: np.ndarray, n_samples: int, seed: int,
                block_size: int) -> tuple[np.ndarray, np.ndarray]:
    """Per-block sums of kernel values and their squares."""
    dim = space.k + 1
    rho = space.rho
    pw = rho * rho - eta * eta
    n_blocks = -(-n_samples // block_size)
    sums = np.empty(n_blocks)
    squares = np.empty(n_blocks)
    for g in range(n_blocks):
        m = min(block_size, n_samples - g * block_size)
        rng = np.random.default_rng([seed, g])
        gauss = rng.standard_normal((m, dim))
        norms = np.linalg.norm(gauss, axis=1)
        while np.any(norms == 0.0):
            bad = norms == 0.0
            gauss[bad] = rng.standard_normal((int(bad.sum()), dim))
            norms = np.linalg.norm(gauss, axis=1)
        points = gauss * (eta / norms)[:, None]
        diff = points - u[None, :]
        values = (pw / np.einsum("ij,ij->i", diff, diff)) ** alpha
        sums[g] = values.sum()
        squares[g] = (values * values).sum()
    return sums, squares


def sphere_average(space: HyperbolicSpace, alpha: float, r: float,
                   n_samples: int, seed: int, u=None,
                   block_size: int = BLOCK_SIZE) -> tuple[float, float]:
    """Monte Carlo average of the kernel power over the geodesic sphere of radius r.

    Returns (mean, standard error). Deterministic for fixed (seed, n_samples,
    block_size); see the module docstring for the block structure. The default
    boundary point is rho * e_1; any other choice changes nothing but the
    sampling noise (the average is rotation-invariant).
    """
    alpha = float(alpha)
    if not math.isfinite(alpha):
        raise DomainError(f"kernel power must be finite, got {alpha!r}")
    if not isinstance(n_samples, int) or isinstance(n_samples, bool) or n_samples < 1:
        raise DomainError(f"sample count must be an integer >= 1, got {n_samples!r}")
    if not isinstance(seed, int) or isinstance(seed, bool) or seed < 0:
        raise DomainError(f"seed must be a nonnegative integer, got {seed!r}")
    if not isinstance(block_size, int) or isinstance(block_size, bool) or block_size < 1:
        raise DomainError(f"block size must be an integer >= 1, got {block_size!r}")
    r = float(r)
    if not math.isfinite(r) or r < 0.0:
        raise DomainError(f"geodesic radius must be finite and >= 0, got {r!r}")

    dim = space.k + 1
    if u is None:
        uv = np.zeros(dim)
        uv[0] = space.rho
    else:
        uv = _as_vector(u, dim, "boundary point")
        if abs(float(np.linalg.norm(uv)) - space.rho) > 1e-12 * space.rho:
            raise DomainError("boundary point must satisfy |u| = rho")

    eta = eta_from_r(space, r)
    sums, squares = _block_sums(space, alpha, eta, uv, n_samples, seed, block_size)
    total = float(sums.sum())
    total_sq = float(squares.sum())
    mean = total / n_samples
    if n_samples == 1:
        return mean, 0.0
    variance = max(0.0, (total_sq - n_samples * mean * mean) / (n_samples - 1))
    return mean, math.sqrt(variance / n_samples)
