import numpy as np
import pytest
from scipy.integrate import quad as scipy_quad
from scipy.special import ellipk, j0

from weyllab import (
    Dirichlet1D,
    HomogeneousSymbol,
    TorusModel,
    build_quadrature,
    g_constant,
    limit_kernel,
    log_fit_diagonal,
    offdiag_green_fit,
    rescaled_error_scan,
)
from weyllab.asymptotics import fit_line
from weyllab.errors import DegenerateFit, NonIntegrable, PairTooClose, ValidationError

TWO_PI = 2.0 * np.pi


def test_limit_kernel_diagonal_values(circle):
    quad = build_quadrature(circle, 2048)
    v = limit_kernel(circle, 0.0, (0, 0), (0, 0), (0.0, 0.0), quad)
    assert v.real == pytest.approx(1.0 / (4.0 * np.pi), rel=1e-10)
    v = limit_kernel(circle, 0.5, (0, 0), (0, 0), (0.0, 0.0), quad)
    assert v.real == pytest.approx(1.0 / TWO_PI, rel=1e-10)


def test_limit_kernel_closed_radial_integral(circle, quartic):
    # at h=0 the polar integral collapses to nu(S*) / ((2pi)^n (n - ms))
    for sym in (circle, quartic):
        quad = build_quadrature(sym, 2048)
        for s in (0.0, 0.3, 0.8 / sym.degree * 2.0):
            v = limit_kernel(sym, s, (0, 0), (0, 0), (0.0, 0.0), quad)
            expected = quad.total / TWO_PI**2 / (2.0 - sym.degree * s)
            assert v.real == pytest.approx(expected, rel=1e-8)
            assert abs(v.imag) <= 1e-14


def test_limit_kernel_bessel_oracle(circle):
    quad = build_quadrature(circle, 2048)
    ref, _ = scipy_quad(lambda t: j0(2.0 * t) * t, 0.0, 1.0, epsabs=1e-14, epsrel=1e-14)
    v = limit_kernel(circle, 0.0, (0, 0), (0, 0), (2.0, 0.0), quad)
    assert v.real == pytest.approx(ref / TWO_PI, abs=1e-8)


def test_limit_kernel_hermitian_in_h(circle, rng):
    quad = build_quadrature(circle, 1024)
    for _ in range(5):
        h = rng.normal(size=2)
        a = limit_kernel(circle, 0.4, (1, 0), (0, 1), h, quad)
        b = limit_kernel(circle, 0.4, (1, 0), (0, 1), -h, quad)
        assert abs(a - b.conjugate()) <= 1e-12 * max(1.0, abs(a))


def test_limit_kernel_derivative_orders(circle):
    # d = |alpha|+|beta| shifts the radial exponent; closed form at h=0:
    # only the diagonal-matching monomials survive angular averaging
    quad = build_quadrature(circle, 2048)
    v = limit_kernel(circle, 0.5, (1, 0), (1, 0), (0.0, 0.0), quad)
    # integrand (i xi_1)(-i xi_1) sigma^{-1/2} = xi_1^2 / |xi|: polar value
    # int_0^1 t^2 dt * int cos^2 = (1/3) pi / (2pi)^2
    assert v.real == pytest.approx((1.0 / 3.0) * np.pi / TWO_PI**2, rel=1e-8)


def test_limit_kernel_nonintegrable(circle):
    quad = build_quadrature(circle, 256)
    with pytest.raises(NonIntegrable):
        limit_kernel(circle, 1.0, (0, 0), (0, 0), (0.0, 0.0), quad)
    with pytest.raises(NonIntegrable):
        limit_kernel(circle, 1.2, (0, 0), (0, 0), (0.0, 0.0), quad)
    # but derivatives raise the threshold
    limit_kernel(circle, 1.2, (1, 0), (0, 1), (0.0, 0.0), quad)


def test_g_constant_values(circle, quartic):
    assert g_constant(circle, build_quadrature(circle, 4096)) == pytest.approx(
        1.0 / TWO_PI, rel=1e-10
    )
    line = HomogeneousSymbol.polynomial({(2,): 1.0})
    assert g_constant(line, build_quadrature(line, 2)) == pytest.approx(1.0 / np.pi, rel=1e-14)
    expected = 4.0 * ellipk(0.5) / TWO_PI**2
    assert g_constant(quartic, build_quadrature(quartic, 4096)) == pytest.approx(
        expected, rel=1e-8
    )
    assert expected == pytest.approx(0.18787, abs=2e-5)


def test_rescaled_scan_decreases(circle):
    hs = [np.zeros(2), np.array([1.0, 0.0]), np.array([0.0, 2.0]), np.array([1.0, 1.0])]
    rows = rescaled_error_scan(circle, 0.0, (0, 0), (0, 0), (0.4, 1.3), hs, [1e2, 1e4])
    assert rows[-1].sup_err <= rows[0].sup_err / 3.0


def test_rescaled_scan_near_critical(circle):
    # s just below n/m: completes, decreasing after the first entry
    hs = [np.zeros(2), np.array([1.0, 0.0]), np.array([1.0, 1.0])]
    L_list = [100.0 * 2**j for j in range(6)]
    rows = rescaled_error_scan(circle, 0.9, (0, 0), (0, 0), (0.4, 1.3), hs, L_list)
    errs = [r.sup_err for r in rows]
    assert all(b <= a for a, b in zip(errs[1:], errs[2:]))


def test_rescaled_diagonal_weyl_consistency(circle):
    # s=0, h=0: the rescaled diagonal is count/((2pi)^n L) -> Vol/(2pi)^n
    rows = rescaled_error_scan(circle, 0.0, (0, 0), (0, 0), (0.0, 0.0), [np.zeros(2)], [1e4])
    assert rows[0].sup_err <= 0.03 / (4.0 * np.pi)


def test_log_fit_torus(circle):
    L_list = [1000.0 * 2.0**j for j in range(7)] + [1e5]
    res = log_fit_diagonal(TorusModel(circle), 1.0, (0.7, 1.1), L_list)
    assert res.fit.slope == pytest.approx(1.0 / (4.0 * np.pi), rel=0.05)
    assert res.g_hat == pytest.approx(res.g_target, rel=0.05)
    assert res.fit.sample_count == 8


def test_log_fit_dirichlet():
    L_list = list(np.geomspace(1e4, 1e8, 8))
    for x in (np.pi / 2.0, np.pi / 4.0):
        res = log_fit_diagonal(Dirichlet1D(), 0.5, x, L_list)
        assert res.fit.slope == pytest.approx(1.0 / TWO_PI, rel=0.05)


def test_log_fit_one_d_torus():
    line = HomogeneousSymbol.polynomial({(2,): 1.0})
    res = log_fit_diagonal(TorusModel(line), 0.5, (0.7,), list(np.geomspace(1e4, 1e8, 8)))
    assert res.fit.slope == pytest.approx(1.0 / TWO_PI, rel=0.05)
    assert res.g_target == pytest.approx(1.0 / np.pi, rel=1e-12)


def test_log_fit_preconditions(circle):
    with pytest.raises(ValidationError):
        log_fit_diagonal(TorusModel(circle), 0.5, (0.7, 1.1), list(np.geomspace(1e3, 1e5, 8)))
    with pytest.raises(DegenerateFit):
        log_fit_diagonal(TorusModel(circle), 1.0, (0.7, 1.1), [1e3, 2e3, 4e3, 8e3, 1.6e4])
    with pytest.raises(DegenerateFit):
        log_fit_diagonal(TorusModel(circle), 1.0, (0.7, 1.1), list(np.geomspace(1e3, 5e4, 6)))


def _ray_pairs(d_min, d_max, count):
    x0 = np.array([0.9, 1.7])
    direction = np.array([np.cos(0.3), np.sin(0.3)])
    return [(x0, x0 + d * direction) for d in np.geomspace(d_min, d_max, count)]


def test_green_fit_slope(circle):
    pairs = _ray_pairs(0.11, 0.5, 10)
    res = offdiag_green_fit(circle, 1.0, pairs, 1e5, 32.0)
    assert res.fit.slope == pytest.approx(1.0 / TWO_PI, rel=0.07)


def test_green_fit_q_stabilizes(circle):
    pairs = _ray_pairs(0.02, 0.5, 12)
    low = offdiag_green_fit(circle, 1.0, pairs, [1e4, 4e4], 2.0)
    high = offdiag_green_fit(circle, 1.0, pairs, [2.5e4, 1e5], 2.0)
    assert high.q_spread < low.q_spread


def test_green_fit_one_d():
    # 1-D sum oracle: sum cos(k d)/k = -ln(2 sin(d/2)) + tail
    line = HomogeneousSymbol.polynomial({(2,): 1.0})
    pairs = [(np.array([2.0]), np.array([2.0 + d])) for d in np.geomspace(0.05, 0.5, 8)]
    res = offdiag_green_fit(line, 0.5, pairs, 1e6, 32.0)
    assert res.fit.slope == pytest.approx(1.0 / np.pi, rel=0.07)


def test_green_fit_guards(circle):
    pairs = _ray_pairs(0.02, 0.5, 6)
    with pytest.raises(PairTooClose):
        offdiag_green_fit(circle, 1.0, pairs, 1e5, 32.0)
    with pytest.raises(ValidationError):
        offdiag_green_fit(circle, 0.5, pairs, 1e5, 2.0)  # not the critical exponent
    with pytest.raises(ValidationError):
        offdiag_green_fit(circle, 1.0, pairs, 1e5, 0.5)  # kappa < 1
    far = [(np.array([0.0, 0.0]), np.array([0.7, 0.0]))]
    with pytest.raises(ValidationError):
        offdiag_green_fit(circle, 1.0, far, 1e5, 2.0)  # separation > 0.5


def test_offdiag_and_diagonal_slopes_agree(circle):
    # both estimate g once the 1/m ln-argument convention is unwound
    L_list = [1000.0 * 2.0**j for j in range(7)] + [1e5]
    diag = log_fit_diagonal(TorusModel(circle), 1.0, (0.7, 1.1), L_list)
    green = offdiag_green_fit(circle, 1.0, _ray_pairs(0.11, 0.5, 10), 1e5, 32.0)
    assert green.fit.slope == pytest.approx(diag.g_hat, rel=0.05)


def test_limit_kernel_weyl_consistency(circle):
    # F(0) at s=0 is Vol({sigma<=1})/(2pi)^n, the Weyl prediction at L=1
    from weyllab.spectra import weyl_prediction

    quad = build_quadrature(circle, 2048)
    lhs = limit_kernel(circle, 0.0, (0, 0), (0, 0), (0.0, 0.0), quad).real
    rhs = weyl_prediction(circle, 1.0) / TWO_PI**2
    assert lhs == pytest.approx(rhs, rel=1e-8)


def test_fit_line_basics():
    xs = np.array([0.0, 1.0, 2.0, 3.0])
    rep = fit_line(xs, 2.0 * xs + 1.0, "test")
    assert rep.slope == pytest.approx(2.0, abs=1e-14)
    assert rep.intercept == pytest.approx(1.0, abs=1e-14)
    assert rep.max_abs_residual <= 1e-14
    with pytest.raises(DegenerateFit):
        fit_line([1.0, 2.0], [1.0, 2.0], "too short")
    with pytest.raises(DegenerateFit):
        fit_line([1.0, 1.0, 1.0], [1.0, 2.0, 3.0], "no spread")
