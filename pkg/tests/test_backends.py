"""Twin checks: the compiled core and the NumPy fallback implement the
same fixed-shape reduction tree and evaluation order."""

import math

import numpy as np
import pytest

from weyllab import _purecore
from weyllab.parallel import ordered_map

fastcore = pytest.importorskip("weyllab._fastcore")


def test_pairwise_bitwise_equal(rng):
    for n in (0, 1, 2, 3, 5, 8, 1000, 31417):
        v = rng.normal(size=n) + 1j * rng.normal(size=n)
        assert _purecore.pairwise_sum(v) == fastcore.pairwise_sum(v)
        r = rng.normal(size=n)
        assert _purecore.pairwise_sum_real(r) == fastcore.pairwise_sum_real(r)


def test_pairwise_matches_fsum(rng):
    # the deterministic tree against exact compensated summation
    v = rng.normal(size=100_000) * np.exp(rng.uniform(-8, 8, size=100_000))
    exact = math.fsum(v)
    got = _purecore.pairwise_sum_real(v)
    assert abs(got - exact) <= 1e-12 * np.abs(v).sum()


def test_enumeration_bitwise_equal_poly():
    coeffs = np.array([1.0, 0.8, 2.0])
    exps = np.array([[4, 0], [2, 2], [0, 4]], dtype=np.int64)
    p1, l1 = _purecore.enumerate_poly(coeffs, exps, 15, 9000.0)
    p2, l2 = fastcore.enumerate_poly(coeffs, exps, 15, 9000.0)
    assert (p1 == p2).all()
    assert (l1 == l2).all()  # bitwise


def test_enumeration_bitwise_equal_metric_even():
    # integer half-degree: both backends use repeated multiplication
    q = np.array([[2.0, 0.3], [0.3, 1.0]])
    p1, l1 = _purecore.enumerate_metric(q, 2.0, 12, 200.0)
    p2, l2 = fastcore.enumerate_metric(q, 2.0, 12, 200.0)
    assert (p1 == p2).all() and (l1 == l2).all()


def test_enumeration_metric_fractional_close():
    # non-integer half-degree goes through pow(); SIMD vs libm may differ
    # in the last ulp, never in the point set
    q = np.array([[2.0, 0.3], [0.3, 1.0]])
    p1, l1 = _purecore.enumerate_metric(q, 3.0, 10, 500.0)
    p2, l2 = fastcore.enumerate_metric(q, 3.0, 10, 500.0)
    assert (p1 == p2).all()
    assert np.abs(l1 - l2).max() <= 2.0 * np.spacing(l1).max()


def test_enumeration_3d():
    coeffs = np.array([1.0, 1.0, 1.0])
    exps = np.eye(3, dtype=np.int64) * 2
    p1, l1 = _purecore.enumerate_poly(coeffs, exps, 5, 25.0)
    p2, l2 = fastcore.enumerate_poly(coeffs, exps, 5, 25.0)
    assert (p1 == p2).all() and (l1 == l2).all()
    # lexicographic order
    assert (p1[np.lexsort(p1.T[::-1])] == p1).all()


def test_phase_sum_agreement(rng):
    pts = rng.integers(-60, 61, size=(30011, 2)).astype(float)
    w = rng.normal(size=30011) + 1j * rng.normal(size=30011)
    h = np.array([0.371, -1.22])
    a = _purecore.phase_sum(pts, w, h, 1.0)
    b = fastcore.phase_sum(pts, w, h, 1.0)
    assert abs(a - b) <= 1e-13 * np.abs(w).sum()
    ts = np.geomspace(0.1, 3.0, 17)
    av = _purecore.phase_sum_batch(pts, w, h, ts)
    bv = fastcore.phase_sum_batch(pts, w, h, ts)
    assert np.abs(av - bv).max() <= 1e-13 * np.abs(w).sum()


def test_phase_sum_diagonal_bitwise(rng):
    # zero phase avoids sin/cos entirely: exact agreement
    pts = rng.integers(-60, 61, size=(10007, 2)).astype(float)
    w = rng.normal(size=10007) + 1j * rng.normal(size=10007)
    a = _purecore.phase_sum(pts, w, np.zeros(2), 1.0)
    b = fastcore.phase_sum(pts, w, np.zeros(2), 1.0)
    assert a == b


def test_empty_inputs():
    pts = np.empty((0, 2))
    w = np.empty(0, dtype=complex)
    for mod in (_purecore, fastcore):
        assert mod.pairwise_sum(np.empty(0, dtype=complex)) == 0.0
        assert mod.phase_sum(pts, w, np.array([1.0, 0.0]), 1.0) == 0.0


def test_threading_does_not_change_values(circle):
    # the suite-facing guarantee: outputs independent of thread count
    from weyllab import rescaled_error_scan

    hs = [np.zeros(2), np.array([1.0, 0.0]), np.array([0.5, 0.5])]
    rows1 = rescaled_error_scan(circle, 0.0, (0, 0), (0, 0), (0.4, 1.3), hs, [1e2, 1e3], threads=1)
    rows4 = rescaled_error_scan(circle, 0.0, (0, 0), (0, 0), (0.4, 1.3), hs, [1e2, 1e3], threads=4)
    assert [(r.L, r.sup_err) for r in rows1] == [(r.L, r.sup_err) for r in rows4]


def test_ordered_map_order():
    got = ordered_map(lambda x: x * x, range(20), threads=4)
    assert got == [x * x for x in range(20)]
