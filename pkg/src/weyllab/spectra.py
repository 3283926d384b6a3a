"""Exact model spectra and truncated weighted kernels.

Torus model: A with constant-coefficient symbol sigma on (R/2piZ)^n,
eigenvalues sigma(k) over k in Z^n \\ {0} (the zero mode is excluded so
every eigenvalue is positive), eigenfunctions (2pi)^(-n/2) e^{i<k,x>}.
Dirichlet model: -d^2/dx^2 on (0, pi), eigenvalues k^2, eigenfunctions
sqrt(2/pi) sin(kx).

Kernel sums are deterministic: terms in lexicographic k order, reduced by
a fixed-shape pairwise tree independent of thread count. A compensated
(fsum) mode exists as a summation oracle.
"""

import io
import math
from dataclasses import dataclass

import numpy as np

from . import levelset
from .backend import core
from .errors import DomainError, OverflowRisk, UnsupportedDimension, ValidationError

TWO_PI = 2.0 * np.pi


@dataclass(frozen=True)
class TorusModel:
    symbol: object


@dataclass(frozen=True)
class Dirichlet1D:
    length: float = np.pi  # fixed; integer eigendata


class SpectralBand:
    """Eigendata {(k, lambda)} with 0 < lambda <= L, in enumeration order."""

    __slots__ = ("model", "L", "points", "lam")

    def __init__(self, model, L, points, lam):
        self.model = model
        self.L = float(L)
        self.points = points
        self.lam = lam

    def __len__(self):
        return self.lam.size

    def restricted(self, L):
        """Sub-band with lambda <= L; preserves enumeration order."""
        if L > self.L:
            raise ValidationError("L: restriction cutoff exceeds the band cutoff")
        mask = self.lam <= L
        return SpectralBand(self.model, L, self.points[mask], self.lam[mask])

    def to_csv(self):
        n = self.points.shape[1]
        buf = io.StringIO()
        buf.write(",".join([f"k_{j + 1}" for j in range(n)] + ["lambda"]) + "\n")
        for k, lv in zip(self.points, self.lam):
            buf.write(",".join(str(int(v)) for v in k) + f",{lv:.17g}\n")
        return buf.getvalue()


_COUNT_REFUSAL = 10**8


def _default_levelset_resolution(n):
    return {1: 2, 2: 4096, 3: 128}[n]


def weyl_prediction(sym, L, resolution=None):
    """Vol({sigma <= 1}) * L^(n/m) = nu(S*)/n * L^(n/m)."""
    res = resolution or _default_levelset_resolution(sym.dim)
    return levelset.nu_total(sym, res) / sym.dim * L ** (sym.dim / sym.degree)


def enumerate_band(sym, L):
    """All torus eigendata with 0 < sigma(k) <= L.

    The scan box |k|_inf <= (L/sigma_min)^(1/m) uses a safe lower bound
    for sigma on the unit sphere, then tests sigma(k) <= L exactly;
    refuses when the predicted count exceeds 1e8.
    """
    if L <= 0:
        raise ValidationError("L: cutoff must be > 0")
    if sym.dim > 3:
        raise UnsupportedDimension(
            f"dim: band enumeration implemented for n <= 3, got {sym.dim}"
        )
    predicted = weyl_prediction(sym, L)
    if predicted > _COUNT_REFUSAL:
        raise OverflowRisk(
            f"L: predicted band size {predicted:.3g} exceeds {_COUNT_REFUSAL:.0e}"
        )
    bound = int(math.ceil((L / sym.sphere_min_bound()) ** (1.0 / sym.degree)))
    from .symbols import MetricForm, PolyForm  # local: avoids import cycle at module load

    if isinstance(sym.form, PolyForm):
        coeffs = np.array([c for _, c in sym.form.terms])
        exps = np.array([a for a, _ in sym.form.terms], dtype=np.int64)
        points, lam = core.enumerate_poly(coeffs, exps, bound, float(L))
    elif isinstance(sym.form, MetricForm):
        points, lam = core.enumerate_metric(
            np.asarray(sym.form.q), sym.degree, bound, float(L)
        )
    else:
        raise ValidationError("symbol: unknown form")
    return SpectralBand(TorusModel(sym), L, points, lam)


def dirichlet_band(L):
    """Dirichlet eigendata k^2 <= L, k >= 1."""
    if L <= 0:
        raise ValidationError("L: cutoff must be > 0")
    kmax = int(math.isqrt(int(math.floor(L))))
    while (kmax + 1) ** 2 <= L:
        kmax += 1
    while kmax > 0 and kmax**2 > L:
        kmax -= 1
    k = np.arange(1, kmax + 1, dtype=np.int64).reshape(-1, 1)
    return SpectralBand(Dirichlet1D(), L, k, (k[:, 0] ** 2).astype(float))


def weyl_count(sym, L, resolution=None):
    """(exact eigenvalue count, Weyl prediction) for the torus model."""
    band = enumerate_band(sym, L)
    return len(band), weyl_prediction(sym, L, resolution)


@dataclass(frozen=True)
class KernelRequest:
    """One truncated-kernel evaluation: weight lambda^z, derivative orders
    alpha (in x) and beta (in y), points x and y, cutoff L."""

    z: complex
    alpha: tuple
    beta: tuple
    x: tuple
    y: tuple
    L: float

    def __post_init__(self):
        if self.L <= 0:
            raise ValidationError("L: cutoff must be > 0")
        if any(a < 0 for a in self.alpha) or any(b < 0 for b in self.beta):
            raise ValidationError("alpha/beta: multi-index entries must be >= 0")


def _mode_weights(band, z, alpha, beta):
    logl = np.log(band.lam)
    w = np.exp(z * logl).astype(np.complex128)
    d_alpha = sum(alpha)
    d_beta = sum(beta)
    if d_alpha or d_beta:
        c0 = (1j) ** d_alpha * (-1j) ** d_beta
        pts = band.points.astype(float)
        mono = np.ones(len(band))
        for d in range(pts.shape[1]):
            e = alpha[d] + beta[d]
            if e:
                mono = mono * pts[:, d] ** e
        w = w * (c0 * mono)
    return w


def torus_kernel(req, band, compensated=False):
    """(2pi)^-n sum over 0<sigma(k)<=L of sigma(k)^z (ik)^a (-ik)^b e^{i<k,x-y>}.

    The complex power is exp(z ln sigma(k)) on the real branch. With
    compensated=True the reduction is exact fsum (validation oracle)
    instead of the deterministic pairwise tree.
    """
    if not isinstance(band.model, TorusModel):
        raise ValidationError("band: torus_kernel needs a torus band")
    sym = band.model.symbol
    if band.L != req.L:
        raise ValidationError(f"band: cutoff mismatch (band {band.L}, request {req.L})")
    if len(req.alpha) != sym.dim or len(req.beta) != sym.dim:
        raise ValidationError("alpha/beta: length must equal the symbol dimension")
    w = _mode_weights(band, req.z, req.alpha, req.beta)
    diff = np.asarray(req.x, dtype=float) - np.asarray(req.y, dtype=float)
    pts = band.points.astype(float)
    if compensated:
        ang = pts @ diff
        vals = w * np.exp(1j * ang)
        s = complex(math.fsum(vals.real), math.fsum(vals.imag))
    else:
        s = core.phase_sum(pts, w, diff, 1.0)
    return s / TWO_PI**sym.dim


def dirichlet_kernel(s, L, x, y, allow_boundary=False):
    """sum_{0<k^2<=L} k^(-2s) (2/pi) sin(kx) sin(ky) on (0, pi).

    Interior evaluation only; pass allow_boundary=True to evaluate at the
    endpoints (where every term vanishes).
    """
    lo, hi = 0.0, np.pi
    for name, v in (("x", x), ("y", y)):
        if not (lo <= v <= hi):
            raise DomainError(f"{name}: point {v} outside [0, pi]")
        if not allow_boundary and not (lo < v < hi):
            raise DomainError(
                f"{name}: boundary evaluation requires allow_boundary=True"
            )
    band = dirichlet_band(L)
    k = band.points[:, 0].astype(float)
    terms = np.exp(-2.0 * s * np.log(k)) * (2.0 / np.pi) * np.sin(k * x) * np.sin(k * y)
    return core.pairwise_sum_real(terms)


# ---------------------------------------------------------------------------
# weighted kernels and the projector-integration identity

@dataclass(frozen=True)
class WeightFunction:
    """Spectral weight f on (0, inf), with derivative, both vectorized."""

    name: str
    f: object
    fprime: object


BUILTIN_WEIGHTS = {
    "step": WeightFunction("step", lambda t: np.ones_like(t), lambda t: np.zeros_like(t)),
    "inv": WeightFunction("inv", lambda t: 1.0 / t, lambda t: -1.0 / t**2),
    "invsqrt": WeightFunction(
        "invsqrt", lambda t: t**-0.5, lambda t: -0.5 * t**-1.5
    ),
}


def _mode_terms(band, x, y):
    if isinstance(band.model, TorusModel):
        n = band.points.shape[1]
        diff = np.asarray(x, dtype=float) - np.asarray(y, dtype=float)
        ang = band.points.astype(float) @ diff
        return np.exp(1j * ang) / TWO_PI**n
    k = band.points[:, 0].astype(float)
    return ((2.0 / np.pi) * np.sin(k * float(x)) * np.sin(k * float(y))).astype(
        np.complex128
    )


def kernel_weighted(weight, L, x, y, band, segment_gl=32):
    """Weighted kernel sum f(lambda_k) e_k(x) conj(e_k(y)), two routes.

    Returns (direct, via_identity): the direct eigenmode sum, and
    f(L) E_L - int_0^L f'(lambda) E_lambda dlambda where the integral
    exploits that E_lambda is a step function (Gauss-Legendre between
    consecutive distinct eigenvalues). Agreement validates the
    integration-by-parts identity.
    """
    if band.L != L:
        raise ValidationError(f"band: cutoff mismatch (band {band.L}, request {L})")
    terms = _mode_terms(band, x, y)
    fvals = weight.f(band.lam)
    direct = core.pairwise_sum(fvals * terms)

    values, inverse = np.unique(band.lam, return_inverse=True)
    proj = np.bincount(inverse, weights=terms.real) + 1j * np.bincount(
        inverse, weights=terms.imag
    )
    e_total = proj.sum()
    gx, gw = np.polynomial.legendre.leggauss(segment_gl)
    edges = np.append(values, L)
    seg = np.zeros(values.size)
    for i in range(values.size):
        a, b = edges[i], edges[i + 1]
        if b > a:
            t = 0.5 * (b - a) * gx + 0.5 * (a + b)
            seg[i] = 0.5 * (b - a) * float(np.sum(gw * weight.fprime(t)))
    # int_{lambda_i}^{L} f' = suffix sum of the segment integrals
    suffix = np.cumsum(seg[::-1])[::-1]
    fL = float(weight.f(np.array([L]))[0])
    identity = fL * e_total - complex(np.sum(proj * suffix))
    return complex(direct), complex(identity)
