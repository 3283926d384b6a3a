"""weyllab: a numerical laboratory for truncated weighted spectral kernels
K_L^s on exact-spectrum models (flat tori with homogeneous constant
coefficient symbols, the 1-D Dirichlet interval) and for the asymptotic
laws they obey: the rescaled limit kernel below the critical exponent,
the logarithmic law at it, level-set oscillatory decay, and the
admissibility condition on symbols.
"""

from .backend import BACKEND, available_backends
from .symbols import HomogeneousSymbol, SymTensor, euler_check, parse_symbol, polarize, tensor_power
from .levelset import LevelSetQuad, build_quadrature, nu_total, radial_gauge, verify_disintegration
from .spectra import (
    BUILTIN_WEIGHTS,
    Dirichlet1D,
    KernelRequest,
    SpectralBand,
    TorusModel,
    WeightFunction,
    dirichlet_band,
    dirichlet_kernel,
    enumerate_band,
    kernel_weighted,
    torus_kernel,
    weyl_count,
)
from .asymptotics import (
    FitReport,
    g_constant,
    limit_kernel,
    log_fit_diagonal,
    offdiag_green_fit,
    rescaled_error_scan,
)
from .oscillatory import DecayProbe, decay_slope, j_probe, one_d_tail, probe_decay
from .admissibility import AdmissibilityReport, admissibility_residual, c_constant, check_admissible

__version__ = "0.1.0"

__all__ = [
    "AdmissibilityReport",
    "BACKEND",
    "BUILTIN_WEIGHTS",
    "DecayProbe",
    "Dirichlet1D",
    "FitReport",
    "HomogeneousSymbol",
    "KernelRequest",
    "LevelSetQuad",
    "SpectralBand",
    "SymTensor",
    "TorusModel",
    "WeightFunction",
    "admissibility_residual",
    "available_backends",
    "build_quadrature",
    "c_constant",
    "check_admissible",
    "decay_slope",
    "dirichlet_band",
    "dirichlet_kernel",
    "enumerate_band",
    "euler_check",
    "g_constant",
    "j_probe",
    "kernel_weighted",
    "limit_kernel",
    "log_fit_diagonal",
    "nu_total",
    "offdiag_green_fit",
    "one_d_tail",
    "parse_symbol",
    "polarize",
    "probe_decay",
    "radial_gauge",
    "rescaled_error_scan",
    "tensor_power",
    "torus_kernel",
    "verify_disintegration",
    "weyl_count",
]
