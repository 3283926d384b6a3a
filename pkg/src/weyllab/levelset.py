"""Geometry and quadrature of the level set S* = {sigma = 1}.

The measure nu on S* is realized in the spherical gauge: the ray through a
unit vector omega meets S* at r(omega) = sigma(omega)^(-1/m) omega, and
matching the radial disintegration

    integral u(xi) dxi = int_0^inf int_{S*} u(t xi) dnu(xi) t^(n-1) dt

forces the density sigma(omega)^(-n/m) against the sphere measure. The
total mass nu(S*) is the constant entering the critical log law.
"""

import io

import numpy as np

from ._grids import unit_sphere_grid
from .backend import core
from .errors import UnsupportedDimension, ValidationError, ZeroArgument


class LevelSetQuad:
    """Quadrature nodes on S* with weights carrying dnu-mass."""

    __slots__ = ("symbol", "nodes", "weights", "resolution")

    def __init__(self, symbol, nodes, weights, resolution):
        self.symbol = symbol
        self.nodes = np.asarray(nodes, dtype=float)
        self.weights = np.asarray(weights, dtype=float)
        self.resolution = int(resolution)

    def __len__(self):
        return self.nodes.shape[0]

    @property
    def total(self):
        """nu(S*) as summed by this rule (deterministic pairwise)."""
        return core.pairwise_sum_real(self.weights)

    def max_node_norm(self):
        return float(np.sqrt((self.nodes**2).sum(axis=1)).max())

    def to_csv(self):
        n = self.nodes.shape[1]
        buf = io.StringIO()
        buf.write(",".join([f"xi_{j + 1}" for j in range(n)] + ["weight"]) + "\n")
        for node, w in zip(self.nodes, self.weights):
            buf.write(",".join(f"{v:.17g}" for v in node) + f",{w:.17g}\n")
        return buf.getvalue()


def radial_gauge(sym, omega):
    """Radius r(omega) = sigma(omega)^(-1/m); r(omega)*omega lies on S*."""
    omega = np.asarray(omega, dtype=float)
    if not omega.any():
        raise ZeroArgument("omega: needs a nonzero direction")
    return sym.eval(omega) ** (-1.0 / sym.degree)


def build_quadrature(sym, resolution):
    """Level-set rule from a sphere grid pushed onto S*.

    Node j is r(omega_j) omega_j; its weight is sigma(omega_j)^(-n/m)
    times the sphere-grid weight. For n=1 the grid is {-1,+1} and the
    weights are sigma(+-1)^(-1/m).
    """
    if sym.dim > 3:
        raise UnsupportedDimension(f"dim: quadrature implemented for n <= 3, got {sym.dim}")
    if resolution < 8 and sym.dim > 1:
        raise ValidationError("resolution: must be >= 8")
    omegas, sw = unit_sphere_grid(sym.dim, resolution)
    sigma = sym.eval_many(omegas)
    r = sigma ** (-1.0 / sym.degree)
    nodes = r[:, None] * omegas
    weights = sigma ** (-sym.dim / sym.degree) * sw
    return LevelSetQuad(sym, nodes, weights, resolution if sym.dim > 1 else 2)


def nu_total(sym, resolution):
    """Total mass nu(S*) of the level-set density."""
    return build_quadrature(sym, resolution).total


_BUMP_REFERENCE = {1: 16.0 / 15.0, 2: np.pi / 3.0, 3: 32.0 * np.pi / 105.0}


def verify_disintegration(sym, quad, test):
    """Relative error of the radial disintegration identity on a test function.

    test="gaussian": u = exp(-|xi|^2), ambient integral pi^(n/2); the
    radial integral uses composite Gauss-Legendre on [0, 10] (tail below
    1e-12). test="bump": u = (1-|xi|^2)_+^2 with the closed-form ambient
    integral; the radial factor integrates exactly per node.
    """
    n = sym.dim
    if test == "gaussian":
        reference = np.pi ** (n / 2.0)
        r2 = (quad.nodes**2).sum(axis=1)
        gx, gw = np.polynomial.legendre.leggauss(20)
        # T = 10 suffices for unit-scale level sets; stretch so the tail
        # exp(-T^2 min|xi|^2) stays below 1e-12 for squashed ones
        T = max(10.0, float(np.ceil(np.sqrt(30.0 / r2.min()))))
        panels = np.linspace(0.0, T, 4 * int(T) + 1)
        total = 0.0
        for a, b in zip(panels[:-1], panels[1:]):
            t = 0.5 * (b - a) * gx + 0.5 * (a + b)
            w = 0.5 * (b - a) * gw
            for ti, wi in zip(t, w):
                s = core.pairwise_sum_real(quad.weights * np.exp(-(ti**2) * r2))
                total += wi * ti ** (n - 1) * s
        return abs(total - reference) / abs(reference)
    if test == "bump":
        reference = _BUMP_REFERENCE[n]
        r = np.sqrt((quad.nodes**2).sum(axis=1))
        # per node: int_0^(1/r) (1 - t^2 r^2)^2 t^(n-1) dt = r^(-n) * C_n,
        # C_n by Gauss-Legendre on [0,1], exact for this polynomial
        gx, gw = np.polynomial.legendre.leggauss(8)
        s = 0.5 * gx + 0.5
        cn = float(np.sum(0.5 * gw * (1.0 - s**2) ** 2 * s ** (n - 1)))
        total = core.pairwise_sum_real(quad.weights * r ** (-float(n)) * cn)
        return abs(total - reference) / abs(reference)
    raise ValidationError(f"test: unknown test function {test!r}")
