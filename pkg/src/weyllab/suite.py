"""The verification suite: quantitative desk-scale reproductions of the
asymptotic constants plus property checks, each with its pinned tolerance.

Quick tier targets <= 60 s single-threaded; full adds the large-cutoff
scans. Every criterion function is deterministic (fixed grids, fixed
seeds) and returns a CriterionResult with one or more labelled checks.
"""

import time
from dataclasses import dataclass

import numpy as np
from scipy import special

from . import admissibility, asymptotics, levelset, oscillatory, spectra
from .symbols import HomogeneousSymbol, SymTensor, multi_indices, polarize


@dataclass(frozen=True)
class Check:
    label: str
    measured: float
    target: float
    tol: str
    ok: bool


@dataclass(frozen=True)
class CriterionResult:
    name: str
    tier: str
    seconds: float
    checks: tuple

    @property
    def passed(self):
        return all(c.ok for c in self.checks)


def _circle():
    return HomogeneousSymbol.polynomial({(2, 0): 1.0, (0, 2): 1.0})


def _quartic():
    return HomogeneousSymbol.polynomial({(4, 0): 1.0, (0, 4): 1.0})


def _result(name, tier, t0, checks):
    return CriterionResult(name, tier, time.perf_counter() - t0, tuple(checks))


def crit_weyl_law():
    """Torus counting vs pi*L at L = 4e4, within 3%, under 5 s."""
    t0 = time.perf_counter()
    count, _ = spectra.weyl_count(_circle(), 4e4)
    rel = abs(count / (np.pi * 4e4) - 1.0)
    dt = time.perf_counter() - t0
    return _result(
        "weyl-law",
        "quick",
        t0,
        [
            Check("count/(pi L) - 1", rel, 0.0, "<= 0.03", rel <= 0.03),
            Check("runtime [s]", dt, 0.0, "< 5", dt < 5.0),
        ],
    )


def crit_log_const_2d():
    """Critical log constant on the 2-D torus: slope 1/(4 pi) within 5%."""
    t0 = time.perf_counter()
    L_list = [1000.0 * 2.0**j for j in range(7)] + [1e5]
    res = asymptotics.log_fit_diagonal(
        spectra.TorusModel(_circle()), 1.0, (0.7, 1.1), L_list
    )
    rel_slope = abs(res.fit.slope / res.slope_target - 1.0)
    rel_g = abs(res.g_hat / res.g_target - 1.0)
    dt = time.perf_counter() - t0
    return _result(
        "log-const-2d",
        "full",
        t0,
        [
            Check("slope vs 1/(4 pi)", res.fit.slope, res.slope_target, "+-5%", rel_slope <= 0.05),
            Check("g = slope*m vs 1/(2 pi)", res.g_hat, res.g_target, "+-5%", rel_g <= 0.05),
            Check("runtime [s]", dt, 0.0, "< 60", dt < 60.0),
        ],
    )


def crit_log_const_dirichlet():
    """Dirichlet interval, s=1/2: ln-L slope 1/(2 pi) within 5%, two interior points."""
    t0 = time.perf_counter()
    L_list = list(np.geomspace(1e4, 1e8, 8))
    checks = []
    for x in (np.pi / 2.0, np.pi / 4.0):
        res = asymptotics.log_fit_diagonal(spectra.Dirichlet1D(), 0.5, x, L_list)
        rel = abs(res.fit.slope / res.slope_target - 1.0)
        checks.append(
            Check(f"slope at x={x:.4f}", res.fit.slope, res.slope_target, "+-5%", rel <= 0.05)
        )
    return _result("log-const-dirichlet", "quick", t0, checks)


def _h_grid():
    hs = [np.zeros(2)]
    for r in (0.5, 1.0, 1.5, 2.0):
        for phi in (0.0, np.pi / 4.0, np.pi / 2.0):
            hs.append(r * np.array([np.cos(phi), np.sin(phi)]))
    return hs


def crit_rescaled_limit():
    """Rescaled kernel vs limit kernel: error drops >= 3x from L=1e2 to 1e4;
    rescaled diagonal at s=1/2 within 2% of 1/(2 pi) at L=1e4."""
    t0 = time.perf_counter()
    sym = _circle()
    checks = []
    hs = _h_grid()
    for s in (0.0, 0.5):
        rows = asymptotics.rescaled_error_scan(
            sym, s, (0, 0), (0, 0), (0.4, 1.3), hs, [1e2, 1e3, 1e4]
        )
        factor = rows[0].sup_err / rows[-1].sup_err
        checks.append(
            Check(f"sup-err decrease factor, s={s:g}", factor, 3.0, ">= 3", factor >= 3.0)
        )
    band = spectra.enumerate_band(sym, 1e4)
    req = spectra.KernelRequest(
        z=-0.5, alpha=(0, 0), beta=(0, 0), x=(0.4, 1.3), y=(0.4, 1.3), L=1e4
    )
    diag = spectra.torus_kernel(req, band).real * 1e4 ** (0.5 - 1.0)
    target = 1.0 / (2.0 * np.pi)
    rel = abs(diag / target - 1.0)
    checks.append(Check("rescaled diagonal, s=1/2", diag, target, "+-2%", rel <= 0.02))
    return _result("rescaled-limit", "full", t0, checks)


def crit_green_splitting():
    """Off-diagonal splitting: slope 1/(2 pi) within 7% at L=1e5 (kappa>=32);
    Q-hat spread shrinks when the cutoff family doubles kappa."""
    t0 = time.perf_counter()
    sym = _circle()
    x0 = np.array([0.9, 1.7])
    direction = np.array([np.cos(0.3), np.sin(0.3)])
    pairs_all = [(x0, x0 + d * direction) for d in np.geomspace(0.02, 0.5, 14)]
    floor = 32.0 * 1e5**-0.5
    pairs_fit = [(x, y) for x, y in pairs_all if np.linalg.norm(x - y) >= floor]
    res = asymptotics.offdiag_green_fit(sym, 1.0, pairs_fit, 1e5, 32.0)
    rel = abs(res.fit.slope / res.g_target - 1.0)
    low = asymptotics.offdiag_green_fit(sym, 1.0, pairs_all, [1e4, 4e4], 2.0)
    high = asymptotics.offdiag_green_fit(sym, 1.0, pairs_all, [2.5e4, 1e5], 2.0)
    return _result(
        "green-splitting",
        "full",
        t0,
        [
            Check("slope vs 1/(2 pi)", res.fit.slope, res.g_target, "+-7%", rel <= 0.07),
            Check(
                "Q-hat spread at doubled kappa",
                high.q_spread,
                low.q_spread,
                "< spread at base kappa",
                high.q_spread < low.q_spread,
            ),
        ],
    )


def crit_osc_decay(full=True):
    """Level-set oscillatory decay: Bessel cross-check at t=10; envelope
    slopes (full tier) at the convex rate and the quartic k0=4 rate."""
    t0 = time.perf_counter()
    circle = _circle()
    quad = levelset.build_quadrature(circle, 4096)
    jp = oscillatory.j_probe(circle, quad, (1.0, 0.0), 10.0)
    ref = 2.0 * np.pi * special.j0(10.0)
    err = abs(jp - ref)
    checks = [Check("j_probe vs 2 pi J0(10)", err, 0.0, "<= 1e-8", err <= 1e-8)]
    if full:
        quartic = _quartic()
        s1 = oscillatory.decay_slope(oscillatory.probe_decay(circle, (1.0, 0.0), 10.0, 1e3))
        checks.append(
            Check("circle envelope slope", s1.slope, -0.5, "in [-0.55,-0.45]", -0.55 <= s1.slope <= -0.45)
        )
        s2 = oscillatory.decay_slope(oscillatory.probe_decay(quartic, (1.0, 0.0), 10.0, 1e3))
        checks.append(
            Check("quartic axis slope", s2.slope, -0.25, "in [-0.30,-0.20]", -0.30 <= s2.slope <= -0.20)
        )
        hd = np.array([1.0, 1.0]) / np.sqrt(2.0)
        s3 = oscillatory.decay_slope(oscillatory.probe_decay(quartic, hd, 10.0, 1e3))
        checks.append(Check("quartic diagonal slope", s3.slope, -0.5, "<= -0.45", s3.slope <= -0.45))
    return _result("osc-decay", "full" if full else "quick", t0, checks)


def crit_admissibility():
    """Witness structure on grids: circle everywhere k=2 with margin >= 0.4;
    quartic k0=4 witnessed (k=4 exactly on the axes), k0=3 not."""
    t0 = time.perf_counter()
    circle, quartic = _circle(), _quartic()
    r1 = admissibility.check_admissible(circle, 2, 256)
    ok1 = r1.admissible_on_grid and set(r1.witnesses()) == {2}
    checks = [
        Check("circle admissible, witness 2 everywhere", float(ok1), 1.0, "true", ok1),
        Check("circle min-max residual", r1.min_max_residual, 0.4, ">= 0.4", r1.min_max_residual >= 0.4),
    ]
    r2 = admissibility.check_admissible(quartic, 4, 256)
    # grid angle j*2pi/256: the coordinate axes sit at j in {0, 64, 128, 192}
    k4_idx = {i for i, d in enumerate(r2.per_direction) if d.witness == 4}
    ok2 = r2.admissible_on_grid and k4_idx == {0, 64, 128, 192}
    checks.append(Check("quartic k0=4: witness 4 exactly on axes", float(ok2), 1.0, "true", ok2))
    r3 = admissibility.check_admissible(quartic, 3, 256)
    axis_resid = max(
        max(d.residuals.values()) for d in r3.per_direction if d.witness is None
    )
    ok3 = (not r3.admissible_on_grid) and axis_resid <= 1e-8
    checks.append(
        Check("quartic k0=3: unwitnessed axes, residuals", axis_resid, 0.0, "<= 1e-8", ok3)
    )
    return _result("admissibility", "quick", t0, checks)


def crit_polarization():
    """100 random symmetric tensors, orders 2-4, n <= 3: polarization
    reproduces direct evaluation to 1e-10 relative."""
    t0 = time.perf_counter()
    rng = np.random.default_rng(20250810)
    worst = 0.0
    for _ in range(100):
        n = int(rng.integers(1, 4))
        k = int(rng.integers(2, 5))
        entries = {a: float(rng.normal()) for a in multi_indices(n, k)}
        tensor = SymTensor(n, k, entries)
        pts = [rng.normal(size=n) for _ in range(k)]
        direct = tensor(*pts)
        via = polarize(tensor.diagonal, pts)
        scale = max(abs(direct), tensor.frobenius() * np.prod([np.linalg.norm(p) for p in pts]) * 1e-6)
        worst = max(worst, abs(direct - via) / scale)
    return _result(
        "polarization",
        "quick",
        t0,
        [Check("worst relative gap", worst, 0.0, "<= 1e-10", worst <= 1e-10)],
    )


def crit_disintegration():
    """Radial disintegration identity and nu(S*) reference values."""
    t0 = time.perf_counter()
    circle, quartic = _circle(), _quartic()
    qc = levelset.build_quadrature(circle, 4096)
    qq = levelset.build_quadrature(quartic, 4096)
    e1 = levelset.verify_disintegration(circle, qc, "gaussian")
    e2 = levelset.verify_disintegration(quartic, qq, "gaussian")
    nu_c = qc.total
    nu_q = qq.total
    ref_q = 4.0 * special.ellipk(0.5)  # modulus 1/sqrt(2)
    return _result(
        "disintegration",
        "quick",
        t0,
        [
            Check("gaussian error, circle", e1, 0.0, "<= 1e-6", e1 <= 1e-6),
            Check("gaussian error, quartic", e2, 0.0, "<= 1e-6", e2 <= 1e-6),
            Check("nu(S*) circle vs 2 pi", abs(nu_c - 2 * np.pi), 0.0, "<= 1e-8", abs(nu_c - 2 * np.pi) <= 1e-8),
            Check("nu(S*) quartic vs 4K(1/sqrt2)", abs(nu_q - ref_q), 0.0, "<= 1e-4", abs(nu_q - ref_q) <= 1e-4),
        ],
    )


def crit_link_identity():
    """Direct vs integrated-by-parts weighted kernels on three weights."""
    t0 = time.perf_counter()
    checks = []
    circle = _circle()
    band2 = spectra.enumerate_band(circle, 400.0)
    for name in ("step", "inv"):
        w = spectra.BUILTIN_WEIGHTS[name]
        d, i = spectra.kernel_weighted(w, 400.0, (0.3, 0.9), (1.1, 0.2), band2)
        rel = abs(d - i) / abs(d)
        checks.append(Check(f"weight {name}, 2-D torus", rel, 0.0, "<= 1e-10", rel <= 1e-10))
    line = HomogeneousSymbol.polynomial({(2,): 1.0})
    band1 = spectra.enumerate_band(line, 100.0)
    d, i = spectra.kernel_weighted(
        spectra.BUILTIN_WEIGHTS["invsqrt"], 100.0, (0.5,), (1.2,), band1
    )
    rel = abs(d - i) / abs(d)
    checks.append(Check("weight invsqrt, 1-D torus", rel, 0.0, "<= 1e-10", rel <= 1e-10))
    return _result("link-identity", "quick", t0, checks)


QUICK = (
    crit_weyl_law,
    crit_log_const_dirichlet,
    lambda: crit_osc_decay(full=False),
    crit_admissibility,
    crit_polarization,
    crit_disintegration,
    crit_link_identity,
)

FULL = (
    crit_weyl_law,
    crit_log_const_2d,
    crit_log_const_dirichlet,
    crit_rescaled_limit,
    crit_green_splitting,
    lambda: crit_osc_decay(full=True),
    crit_admissibility,
    crit_polarization,
    crit_disintegration,
    crit_link_identity,
)


def run_suite(tier):
    """Run the named tier; returns (results, all_passed)."""
    fns = QUICK if tier == "quick" else FULL
    results = [fn() for fn in fns]
    return results, all(r.passed for r in results)
