"""Unit-sphere grids used for validation, level-set quadrature and scans.

All grids are antipodally symmetric (omega in grid => -omega in grid), so
phase sums over them are exactly Hermitian where the symmetry of the
integrand says they should be. Weights sum to |S^(n-1)|.
"""

import numpy as np

from .errors import UnsupportedDimension, ValidationError


def unit_sphere_grid(n, resolution):
    """Nodes and weights of a quadrature grid on the Euclidean unit sphere.

    n=1: the two-point set {-1,+1} with unit weights (counting measure).
    n=2: trapezoid rule on the circle, `resolution` equispaced angles
         (exact for trigonometric polynomials of degree < resolution).
    n=3: product of Gauss-Legendre in cos(polar) (resolution//2 nodes)
         and trapezoid in azimuth (resolution nodes).
    """
    if n == 1:
        return np.array([[-1.0], [1.0]]), np.array([1.0, 1.0])
    if n == 2:
        if resolution < 4:
            raise ValidationError("resolution: must be >= 4 for circle grids")
        if resolution % 2:
            raise ValidationError(
                "resolution: must be even for n=2 (antipodal symmetry of the grid)"
            )
        theta = 2.0 * np.pi * np.arange(resolution) / resolution
        omegas = np.column_stack([np.cos(theta), np.sin(theta)])
        weights = np.full(resolution, 2.0 * np.pi / resolution)
        return omegas, weights
    if n == 3:
        n_theta = int(resolution)
        n_u = max(2, n_theta // 2)
        if n_theta < 8 or n_theta % 2:
            raise ValidationError("resolution: must be even and >= 8 for n=3 grids")
        u, wu = np.polynomial.legendre.leggauss(n_u)
        theta = 2.0 * np.pi * np.arange(n_theta) / n_theta
        st = np.sqrt(1.0 - u**2)
        omegas = np.empty((n_u * n_theta, 3))
        weights = np.empty(n_u * n_theta)
        for i in range(n_u):
            base = i * n_theta
            omegas[base : base + n_theta, 0] = st[i] * np.cos(theta)
            omegas[base : base + n_theta, 1] = st[i] * np.sin(theta)
            omegas[base : base + n_theta, 2] = u[i]
            weights[base : base + n_theta] = wu[i] * 2.0 * np.pi / n_theta
        return omegas, weights
    raise UnsupportedDimension(f"dim: sphere grids implemented for n <= 3, got n={n}")


def validation_grid(n):
    """Fixed positivity-validation grid, about 2^n * 512 directions.

    Quadrature-grade grids exist for n <= 3; higher dimensions fall back
    to a fixed seeded direction sample (positivity screening only, no
    weights of quadrature quality).
    """
    if n == 1:
        return unit_sphere_grid(1, 2)
    if n == 2:
        return unit_sphere_grid(2, 2048)
    if n == 3:
        return unit_sphere_grid(3, 90)
    rng = np.random.default_rng(1234509876)
    pts = rng.standard_normal((4096, n))
    pts /= np.sqrt((pts**2).sum(axis=1))[:, None]
    weights = np.full(4096, _sphere_area(n) / 4096.0)
    return pts, weights


def _sphere_area(n):
    from math import gamma, pi

    return 2.0 * pi ** (n / 2.0) / gamma(n / 2.0)
