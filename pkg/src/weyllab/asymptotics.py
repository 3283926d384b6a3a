"""Predicted limit objects and regressions of observed kernels against them.

Covers the rescaled limit kernel below the critical exponent, the
critical-exponent log law with constant g = nu(S*)/(2pi)^n, and the
off-diagonal Green-function splitting K = -g ln|x-y| + Q.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import levelset, spectra
from .backend import core
from .errors import (
    DegenerateFit,
    NonIntegrable,
    PairTooClose,
    ValidationError,
)
from .parallel import ordered_map

TWO_PI = 2.0 * np.pi


@dataclass(frozen=True)
class FitReport:
    slope: float
    intercept: float
    max_abs_residual: float
    sample_count: int
    design: str


def fit_line(xs, ys, design):
    """Ordinary least squares y = slope*x + intercept."""
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    if xs.size < 3:
        raise DegenerateFit(f"samples: need >= 3 points for {design}, got {xs.size}")
    xm, ym = xs.mean(), ys.mean()
    sxx = float(((xs - xm) ** 2).sum())
    if sxx == 0.0:
        raise DegenerateFit(f"samples: no abscissa spread for {design}")
    slope = float(((xs - xm) * (ys - ym)).sum() / sxx)
    intercept = ym - slope * xm
    resid = ys - (slope * xs + intercept)
    return FitReport(slope, float(intercept), float(np.abs(resid).max()), xs.size, design)


# ---------------------------------------------------------------------------
# the rescaled limit kernel

_PANEL_FLOOR = 1e-8
_PANEL_GL = 24


def _radial_mesh():
    """Geometric panels of [0,1] with ratio 1/2 down to the 1e-8 floor."""
    edges = [1.0]
    while edges[-1] > _PANEL_FLOOR:
        edges.append(edges[-1] / 2.0)
    return edges  # descending; tail below edges[-1] handled analytically


def limit_kernel(sym, s, alpha, beta, h, quad):
    """(2pi)^-n int_{sigma<=1} e^{i<xi,h>} (i xi)^a (-i xi)^b sigma^-s dxi.

    Polar form: int_0^1 t^(n-1+|a|+|b|-ms) g(t) dt with
    g(t) = sum_i w_i e^{i t <xi_i,h>} (i xi_i)^a (-i xi_i)^b, integrated on
    geometric panels (Gauss-Legendre each) plus a two-term series for the
    sub-floor tail, which carries real mass when the radial exponent is
    close to -1.
    """
    n = sym.dim
    d = sum(alpha) + sum(beta)
    p = n - 1 + d - sym.degree * s
    if p <= -1.0:
        raise NonIntegrable(
            f"s: need s < (n+|alpha|+|beta|)/m = {(n + d) / sym.degree:g}, got {s:g}"
        )
    h = np.asarray(h, dtype=float)
    w = quad.weights.astype(np.complex128)
    if d:
        c0 = (1j) ** sum(alpha) * (-1j) ** sum(beta)
        mono = np.ones(len(quad))
        for j in range(n):
            e = alpha[j] + beta[j]
            if e:
                mono = mono * quad.nodes[:, j] ** e
        w = w * (c0 * mono)

    edges = _radial_mesh()
    gx, gw = np.polynomial.legendre.leggauss(_PANEL_GL)
    t_all = []
    w_all = []
    for hi, lo in zip(edges[:-1], edges[1:]):
        t_all.append(0.5 * (hi - lo) * gx + 0.5 * (hi + lo))
        w_all.append(0.5 * (hi - lo) * gw)
    t_all = np.concatenate(t_all)
    w_all = np.concatenate(w_all)

    g_vals = core.phase_sum_batch(quad.nodes, w, h, t_all)
    radial = complex(core.pairwise_sum(w_all * t_all**p * g_vals))

    # tail [0, eps]: g(t) ~ g(0) + g'(0) t
    eps = edges[-1]
    g0 = complex(core.pairwise_sum(w))
    c = quad.nodes @ h
    g1 = 1j * complex(core.pairwise_sum(w * c))
    radial += g0 * eps ** (p + 1) / (p + 1) + g1 * eps ** (p + 2) / (p + 2)
    return radial / TWO_PI**n


def g_constant(sym, quad):
    """Critical log-law constant nu(S*)/(2pi)^n."""
    return quad.total / TWO_PI**sym.dim


# ---------------------------------------------------------------------------
# scans and fits against the torus model

@dataclass(frozen=True)
class RescaleRow:
    L: float
    sup_err: float


def rescaled_error_scan(sym, s, alpha, beta, w, h_grid, L_list, resolution=4096, threads=None):
    """Sup over h of |L^(s-(n+d)/m) d^a d^b K_L(w + L^(-1/m) h, w) - limit(h)|.

    Returns one row per cutoff; errors should decay like L^(-1/m) (times a
    log for the threshold derivative orders). Cutoffs are independent
    cells; `threads` never changes values or row order.
    """
    n = sym.dim
    d = sum(alpha) + sum(beta)
    if s >= (n + d) / sym.degree:
        raise NonIntegrable(
            f"s: need s < (n+|alpha|+|beta|)/m = {(n + d) / sym.degree:g}"
        )
    w = np.asarray(w, dtype=float)
    h_grid = [np.asarray(h, dtype=float) for h in h_grid]
    quad = levelset.build_quadrature(sym, resolution)
    limits = [limit_kernel(sym, s, alpha, beta, h, quad) for h in h_grid]

    L_list = sorted(float(L) for L in L_list)
    band_max = spectra.enumerate_band(sym, L_list[-1])

    def scan_one(L):
        band = band_max.restricted(L)
        scale = L ** (s - (n + d) / sym.degree)
        sup_err = 0.0
        for h, lim in zip(h_grid, limits):
            x = tuple(w + L ** (-1.0 / sym.degree) * h)
            req = spectra.KernelRequest(
                z=-s, alpha=tuple(alpha), beta=tuple(beta), x=x, y=tuple(w), L=L
            )
            val = scale * spectra.torus_kernel(req, band)
            sup_err = max(sup_err, abs(val - lim))
        return RescaleRow(L, sup_err)

    return ordered_map(scan_one, L_list, threads)


@dataclass(frozen=True)
class LogFitResult:
    fit: FitReport
    g_hat: float        # slope * m
    g_target: float     # nu(S*)/(2pi)^n
    slope_target: float  # g_target / m
    samples: tuple      # (L, K_L(x,x)) pairs


def _critical_exponent(model):
    if isinstance(model, spectra.TorusModel):
        sym = model.symbol
        return sym.dim / sym.degree
    return 0.5  # Dirichlet interval: n=1, m=2


def _diagonal_value(model, s, x, band):
    if isinstance(model, spectra.TorusModel):
        sym = model.symbol
        req = spectra.KernelRequest(
            z=-s,
            alpha=(0,) * sym.dim,
            beta=(0,) * sym.dim,
            x=tuple(np.atleast_1d(x)),
            y=tuple(np.atleast_1d(x)),
            L=band.L,
        )
        return spectra.torus_kernel(req, band).real
    return spectra.dirichlet_kernel(s, band.L, float(x), float(x))


def _model_g_target(model):
    if isinstance(model, spectra.TorusModel):
        sym = model.symbol
        res = spectra._default_levelset_resolution(sym.dim)
        return levelset.nu_total(sym, res) / TWO_PI**sym.dim
    return 2.0 / TWO_PI  # nu(S*) = 2 for sigma = xi^2 on the line


def log_fit_diagonal(model, s, x, L_list):
    """Fit K_L(x,x) against ln L at the critical exponent.

    The law K ~ g ln(L^(1/m)) makes the raw ln-L slope g/m; both the raw
    slope and g_hat = slope*m are reported to keep the 1/m convention
    explicit.
    """
    crit = _critical_exponent(model)
    if s != crit:
        raise ValidationError(f"s: log fit requires the critical exponent {crit:g}")
    L_list = sorted(float(L) for L in L_list)
    if len(L_list) < 6 or L_list[-1] / L_list[0] < 99.0:
        raise DegenerateFit("L-list: need >= 6 cutoffs spanning >= 2 decades")
    if isinstance(model, spectra.TorusModel):
        band_max = spectra.enumerate_band(model.symbol, L_list[-1])
        bands = [band_max.restricted(L) for L in L_list]
        m = model.symbol.degree
    else:
        bands = [spectra.dirichlet_band(L) for L in L_list]
        m = 2.0
    samples = tuple(
        (L, _diagonal_value(model, s, x, band)) for L, band in zip(L_list, bands)
    )
    fit = fit_line(
        [math.log(L) for L, _ in samples], [v for _, v in samples], "K(x,x) vs ln L"
    )
    g_target = _model_g_target(model)
    return LogFitResult(fit, fit.slope * m, g_target, g_target / m, samples)


@dataclass(frozen=True)
class GreenFitResult:
    fit: FitReport
    g_hat: float
    g_target: float
    pairs: tuple          # ((x, y), separation) in input order
    q_hat: dict           # L -> tuple of Q estimates per pair
    q_spread: float       # max over pairs of (max-min over L); nan if single L


def offdiag_green_fit(sym, s, pairs, L, kappa_min, resolution=4096, threads=None):
    """Regress K_L(x,y) on -ln|x-y| and extract the bounded remainder.

    Every pair must satisfy |x-y| >= kappa_min * L^(-1/m) at every
    requested cutoff. The slope estimates g; per pair and cutoff,
    Q_hat = K_L + g_target ln|x-y| (the theoretical constant keeps the
    boundedness proxy independent of fit noise). With several cutoffs the
    spread of Q_hat across them measures the kappa^(-1/k) stabilization.
    """
    n = sym.dim
    if s != n / sym.degree:
        raise ValidationError(
            f"s: Green splitting requires the critical exponent {n / sym.degree:g}"
        )
    if kappa_min < 1.0:
        raise ValidationError("kappa_min: must be >= 1")
    L_list = sorted(float(v) for v in (L if np.iterable(L) else [L]))
    pair_arr = [(np.asarray(x, dtype=float), np.asarray(y, dtype=float)) for x, y in pairs]
    seps = np.array([np.linalg.norm(x - y) for x, y in pair_arr])
    if np.any(seps <= 0.0) or np.any(seps > 0.5):
        raise ValidationError("pairs: separations must lie in (0, 0.5]")
    floor = kappa_min * L_list[0] ** (-1.0 / sym.degree)
    if np.any(seps < floor):
        worst = float(seps.min())
        raise PairTooClose(
            f"pairs: separation {worst:.4g} below kappa_min*L^(-1/m) = {floor:.4g}"
        )
    band_max = spectra.enumerate_band(sym, L_list[-1])
    quad = levelset.build_quadrature(sym, resolution)
    g_target = g_constant(sym, quad)

    q_hat = {}
    k_last = None
    for L in L_list:
        band = band_max.restricted(L)

        def kernel_at(pair, band=band, L=L):
            x, y = pair
            req = spectra.KernelRequest(
                z=-s, alpha=(0,) * n, beta=(0,) * n, x=tuple(x), y=tuple(y), L=L
            )
            return spectra.torus_kernel(req, band).real

        vals = np.array(ordered_map(kernel_at, pair_arr, threads))
        q_hat[L] = tuple(vals + g_target * np.log(seps))
        k_last = vals
    fit = fit_line(-np.log(seps), k_last, "K(x,y) vs -ln|x-y|")
    if len(L_list) > 1:
        stack = np.array([q_hat[L] for L in L_list])
        q_spread = float((stack.max(axis=0) - stack.min(axis=0)).max())
    else:
        q_spread = float("nan")
    return GreenFitResult(
        fit,
        fit.slope,
        g_target,
        tuple(((tuple(x), tuple(y)), float(d)) for (x, y), d in zip(pair_arr, seps)),
        q_hat,
        q_spread,
    )
