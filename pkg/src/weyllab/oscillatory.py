"""Oscillatory integrals over the level set and their decay rates.

The flat-model probe J(t) = sum_i w_i e^{i t <xi_i, h>} discretizes the
integral of e^{i t <xi, h>} dnu over S*. Its envelope decays like
t^(-1/k0) for k0-admissible symbols (t^(-1/2) on strictly convex level
sets in the plane); the slope is extracted by a block-max envelope fit,
since pointwise fits are defeated by Bessel-type oscillation.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from . import levelset
from .backend import core
from .errors import DegenerateFit, UnderResolved, ValidationError, ZeroArgument
from .parallel import ordered_map

_SAMPLING_FACTOR = 16.0


def j_probe(sym, quad, h, t):
    """J(t) = sum_i w_i e^{i t <xi_i, h>} over the level-set rule.

    Refuses when resolution < 16 * t * |h| * max|xi_i| (the rule keeps
    the grid beyond the Nyquist rate of the restricted phase).
    """
    h = np.asarray(h, dtype=float)
    if not h.any():
        raise ZeroArgument("h: needs a nonzero direction")
    if t <= 0:
        raise ValidationError("t: must be > 0")
    if sym.dim > 1:
        # n=1 level sets are two atoms: the sum is exact at any t
        need = _SAMPLING_FACTOR * t * float(np.linalg.norm(h)) * quad.max_node_norm()
        if quad.resolution < need:
            raise UnderResolved(
                f"resolution: {quad.resolution} below sampling rule {need:.0f} at t={t:g}"
            )
    val = core.phase_sum(quad.nodes, quad.weights.astype(np.complex128), h, t)
    assert abs(val) <= quad.total * (1.0 + 1e-9)
    return val


@dataclass(frozen=True)
class DecayProbe:
    sym: object
    h: tuple
    t_grid: tuple
    values: tuple  # complex J(t) per grid point
    resolution: int


def probe_decay(sym, h, t_min, t_max, per_decade=40, resolution=None, threads=None):
    """Sample J(t) on a geometric grid, auto-sizing the quadrature.

    t-evaluations are independent; `threads` only changes wall time, not
    the values or their order.
    """
    if not (0 < t_min < t_max):
        raise ValidationError("t-range: need 0 < t_min < t_max")
    h = np.asarray(h, dtype=float)
    decades = math.log10(t_max / t_min)
    count = max(2, int(round(decades * per_decade)) + 1)
    t_grid = np.geomspace(t_min, t_max, count)
    if resolution is None:
        max_norm = sym.sphere_min ** (-1.0 / sym.degree)
        need = _SAMPLING_FACTOR * t_max * float(np.linalg.norm(h)) * max_norm
        resolution = max(64, 2 * int(math.ceil(need / 2.0)))
    quad = levelset.build_quadrature(sym, resolution)
    values = tuple(ordered_map(lambda t: j_probe(sym, quad, h, t), t_grid, threads))
    return DecayProbe(sym, tuple(h), tuple(t_grid), values, resolution)


def decay_slope(probe, block=10):
    """Log-log slope of the block-max envelope of |J(t)|.

    At 40 samples per decade a block of 10 spans a factor 10^(1/4) in t,
    at least one full oscillation period over the probed range, so every
    block max sits on the envelope rather than under it.
    """
    t = np.asarray(probe.t_grid)
    if t[-1] / t[0] < 99.0:
        raise DegenerateFit("t-grid: need >= 2 decades for a decay fit")
    if block < 2:
        raise ValidationError("block: envelope blocks need >= 2 points")
    mags = np.abs(np.asarray(probe.values))
    env_t = []
    env_v = []
    for start in range(0, t.size - block + 1, block):
        sl = slice(start, start + block)
        i = start + int(np.argmax(mags[sl]))
        env_t.append(t[i])
        env_v.append(mags[i])
    if len(env_t) < 3:
        raise DegenerateFit("t-grid: too few envelope blocks")
    from .asymptotics import fit_line

    return fit_line(np.log(env_t), np.log(env_v), "ln envelope |J| vs ln t")


def one_d_tail(a, b, hmag):
    """The 1-D tail integral int_a^b e^{i hmag eta} / eta deta.

    Evaluated in integration-by-parts form (boundary term plus an
    absolutely convergent eta^-2 integral handled by adaptive oscillatory
    quadrature; b may be inf). Returns (value, |value|*a); the product
    stays bounded as a, b vary.
    """
    if hmag <= 0:
        raise ValidationError("hmag: must be > 0")
    if a <= 0 or b < a:
        raise ValidationError("interval: need 0 < a <= b")
    if a == b:
        return 0.0 + 0.0j, 0.0
    c = float(hmag)

    def boundary(eta):
        return np.exp(1j * c * eta) / (1j * c * eta)

    bterm = (0.0 if math.isinf(b) else boundary(b)) - boundary(a)

    def inv_sq(eta):
        return 1.0 / eta**2

    upper = np.inf if math.isinf(b) else b
    re, _ = integrate.quad(inv_sq, a, upper, weight="cos", wvar=c, limit=400)
    im, _ = integrate.quad(inv_sq, a, upper, weight="sin", wvar=c, limit=400)
    value = complex(bterm) + (re + 1j * im) / (1j * c)
    return value, abs(value) * a
