import numpy as np
import pytest
from scipy.special import j0, sici

from weyllab import build_quadrature, decay_slope, j_probe, one_d_tail, probe_decay
from weyllab.errors import DegenerateFit, UnderResolved, ValidationError, ZeroArgument


def test_bessel_values(circle):
    quad = build_quadrature(circle, 4096)
    ref10 = 2.0 * np.pi * j0(10.0)
    assert abs(j_probe(circle, quad, (1.0, 0.0), 10.0) - ref10) <= 1e-8
    ref100 = 2.0 * np.pi * j0(100.0)
    got = j_probe(circle, quad, (1.0, 0.0), 100.0)
    assert abs(got - ref100) <= 1e-8
    assert abs(abs(got) - 0.12558) <= 5e-5


def test_small_t_limit(circle, quartic):
    for sym in (circle, quartic):
        quad = build_quadrature(sym, 1024)
        val = j_probe(sym, quad, (0.7, 0.3), 1e-9)
        assert abs(val - quad.total) <= 1e-6


def test_triangle_bound(quartic, rng):
    quad = build_quadrature(quartic, 2048)
    for _ in range(10):
        t = float(rng.uniform(0.1, 20.0))
        h = rng.normal(size=2)
        val = j_probe(quartic, quad, h, t)
        assert abs(val) <= quad.total * (1.0 + 1e-12)


def test_conjugation(quartic, rng):
    quad = build_quadrature(quartic, 2048)
    for _ in range(5):
        h = rng.normal(size=2)
        a = j_probe(quartic, quad, h, 7.3)
        b = j_probe(quartic, quad, -h, 7.3)
        assert abs(a - b.conjugate()) <= 1e-12 * max(1.0, abs(a))


def test_sampling_rule(circle):
    quad = build_quadrature(circle, 256)
    with pytest.raises(UnderResolved):
        j_probe(circle, quad, (1.0, 0.0), 100.0)
    with pytest.raises(ZeroArgument):
        j_probe(circle, quad, (0.0, 0.0), 1.0)
    with pytest.raises(ValidationError):
        j_probe(circle, quad, (1.0, 0.0), 0.0)


def test_decay_slopes(circle, quartic):
    s = decay_slope(probe_decay(circle, (1.0, 0.0), 10.0, 1e3))
    assert -0.55 <= s.slope <= -0.45
    s = decay_slope(probe_decay(quartic, (1.0, 0.0), 10.0, 1e3))
    assert -0.30 <= s.slope <= -0.20
    h = np.array([1.0, 1.0]) / np.sqrt(2.0)
    s = decay_slope(probe_decay(quartic, h, 10.0, 1e3))
    assert s.slope <= -0.45


def test_envelope_product_bounded(quartic):
    # admissibility witness k0=4 on the axis direction: envelope * t^(1/4)
    # stays within a constant of its small-t value
    probe = probe_decay(quartic, (1.0, 0.0), 10.0, 1e3)
    t = np.array(probe.t_grid)
    mags = np.abs(np.array(probe.values))
    prod = mags * t**0.25
    assert prod.max() <= 3.0 * prod[:40].max()


def test_slope_consistent_with_witness(circle, quartic):
    # envelope slope <= -1/k + 0.1 for the smallest uniform witness order k
    s = decay_slope(probe_decay(circle, (1.0, 0.0), 10.0, 1e3)).slope
    assert s <= -1.0 / 2.0 + 0.1
    s = decay_slope(probe_decay(quartic, (1.0, 0.0), 10.0, 1e3)).slope
    assert s <= -1.0 / 4.0 + 0.1


def test_decay_grid_validation(circle):
    probe = probe_decay(circle, (1.0, 0.0), 10.0, 50.0)
    with pytest.raises(DegenerateFit):
        decay_slope(probe)
    with pytest.raises(ValidationError):
        probe_decay(circle, (1.0, 0.0), 10.0, 5.0)


def test_one_d_tail_oracle():
    # int_1^inf e^{i eta}/eta = -Ci(1) + i (pi/2 - Si(1))
    si1, ci1 = sici(1.0)
    ref = complex(-ci1, np.pi / 2.0 - si1)
    value, ratio = one_d_tail(1.0, np.inf, 1.0)
    assert abs(value - ref) <= 1e-8
    assert ratio == pytest.approx(abs(ref), rel=1e-6)


def test_one_d_tail_bound_ratio_stable():
    _, r1 = one_d_tail(1.0, np.inf, 1.0)
    _, r10 = one_d_tail(10.0, 1e4, 1.0)
    assert r10 <= 3.0 * r1 and r1 <= 3.0 * r10


def test_one_d_tail_finite_oracle():
    si_b, ci_b = sici(30.0)
    si_a, ci_a = sici(2.0)
    ref = complex(ci_b - ci_a, si_b - si_a)
    value, _ = one_d_tail(2.0, 30.0, 1.0)
    assert abs(value - ref) <= 1e-8
    # scaled frequency: substitute u = c eta
    si_b, ci_b = sici(3.0 * 30.0)
    si_a, ci_a = sici(3.0 * 2.0)
    ref = complex(ci_b - ci_a, si_b - si_a)
    value, _ = one_d_tail(2.0, 30.0, 3.0)
    assert abs(value - ref) <= 1e-8


def test_one_d_tail_edges():
    value, ratio = one_d_tail(3.0, 3.0, 1.0)
    assert value == 0.0 and ratio == 0.0
    with pytest.raises(ValidationError):
        one_d_tail(0.0, 1.0, 1.0)
    with pytest.raises(ValidationError):
        one_d_tail(2.0, 1.0, 1.0)
    with pytest.raises(ValidationError):
        one_d_tail(1.0, 2.0, 0.0)
