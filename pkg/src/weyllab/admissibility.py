"""Pointwise and whole-grid checks of the derivative-tensor admissibility
condition: at xi, order k fails the equality

    sigma^(k-1) d^k sigma = C(m,k) (d sigma)^(x k),
    C(m,k) = m(m-1)...(m-k+1) / m^k,

iff the normalized residual exceeds a threshold. A direction is witnessed
at the smallest failing k <= k0; a symbol is admissible-on-grid when every
direction has a witness. Grid checking cannot certify admissibility, so
reports always carry the grid resolution.
"""

from dataclasses import dataclass

import numpy as np

from ._grids import unit_sphere_grid
from .errors import UnsupportedOrder, ValidationError, ZeroArgument
from .symbols import tensor_power

_GUARD = 1e-300


def c_constant(m, k):
    """m(m-1)...(m-k+1) / m^k."""
    if k < 2:
        raise ValidationError("k: admissibility orders start at 2")
    if m <= 0:
        raise ValidationError("m: homogeneity order must be > 0")
    num = 1.0
    for j in range(k):
        num *= m - j
    return num / m**k


def _max_order(sym):
    return int(sym.degree) if sym.is_polynomial else 4


def admissibility_residual(sym, xi, k):
    """Normalized Frobenius gap between the two order-k tensors at xi.

    r = |A - B|_F / (|A|_F + |B|_F + guard) with A = sigma^(k-1) d^k sigma
    and B = C(m,k) (d sigma)^(x k); r lies in [0,1] and vanishes iff the
    tensors agree. Scale-invariant in xi.
    """
    xi = np.asarray(xi, dtype=float)
    if not xi.any():
        raise ZeroArgument("xi: residual undefined at the origin")
    kmax = _max_order(sym)
    if not 2 <= k <= kmax:
        raise UnsupportedOrder(
            f"k: order must lie in [2, {kmax}] for this symbol, got {k}"
        )
    sigma = sym.eval(xi)
    a = sym.deriv_tensor(xi, k).scaled(sigma ** (k - 1))
    b = tensor_power(sym.grad(xi), k).scaled(c_constant(sym.degree, k))
    return (a - b).frobenius() / (a.frobenius() + b.frobenius() + _GUARD)


@dataclass(frozen=True)
class DirectionCheck:
    omega: tuple
    residuals: dict  # k -> residual
    witness: object  # smallest failing k, or None


@dataclass(frozen=True)
class AdmissibilityReport:
    k0: int
    grid_resolution: int
    threshold: float
    per_direction: tuple
    min_max_residual: float
    admissible_on_grid: bool

    def witnesses(self):
        return tuple(d.witness for d in self.per_direction)


def check_admissible(sym, k0, resolution, threshold=1e-8):
    """Scan a sphere grid for witnesses of orders 2..k0.

    The verdict is "admissible-on-grid at this resolution", never a
    certificate: isolated failure directions between grid points cannot
    be excluded.
    """
    if resolution < 64 and sym.dim > 1:
        raise ValidationError("resolution: must be >= 64")
    kmax = _max_order(sym)
    if not 2 <= k0 <= kmax:
        raise UnsupportedOrder(f"k0: must lie in [2, {kmax}] for this symbol")
    omegas, _ = unit_sphere_grid(sym.dim, resolution if sym.dim > 1 else 2)
    checks = []
    min_max = float("inf")
    all_witnessed = True
    for omega in omegas:
        residuals = {k: admissibility_residual(sym, omega, k) for k in range(2, k0 + 1)}
        witness = next((k for k in range(2, k0 + 1) if residuals[k] > threshold), None)
        if witness is None:
            all_witnessed = False
        min_max = min(min_max, max(residuals.values()))
        checks.append(DirectionCheck(tuple(omega), residuals, witness))
    return AdmissibilityReport(
        k0, int(resolution), float(threshold), tuple(checks), min_max, all_witnessed
    )
