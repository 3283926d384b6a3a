import math

import numpy as np
import pytest

from weyllab import (
    HomogeneousSymbol,
    SymTensor,
    euler_check,
    parse_symbol,
    polarize,
    tensor_power,
)
from weyllab.errors import InvalidSymbol, UnsupportedOrder, ValidationError, ZeroArgument
from weyllab.symbols import multi_indices, multinomial


def circle_grid(count=64):
    theta = 2 * np.pi * np.arange(count) / count
    return np.column_stack([np.cos(theta), np.sin(theta)])


def test_eval_examples(circle, quartic):
    assert circle.eval([3.0, 4.0]) == 25.0
    assert quartic.eval([1.0, 1.0]) == 2.0
    # homogeneity: sigma(2 xi) = 2^m sigma(xi)
    assert circle.eval([2.0, 0.0]) == 4.0 * circle.eval([1.0, 0.0])


def test_eval_zero_raises(circle):
    with pytest.raises(ZeroArgument):
        circle.eval([0.0, 0.0])
    with pytest.raises(ZeroArgument):
        circle.deriv_tensor([0.0, 0.0], 2)


def test_positivity_validation():
    # odd total degree cannot be positive on the sphere
    with pytest.raises(InvalidSymbol):
        HomogeneousSymbol.polynomial({(3, 0): 1.0, (0, 3): 1.0})
    # indefinite quadratic
    with pytest.raises(InvalidSymbol):
        HomogeneousSymbol.polynomial({(2, 0): 1.0, (0, 2): -1.0})
    with pytest.raises(InvalidSymbol):
        HomogeneousSymbol.metric_power([[1.0, 0.0], [0.0, -2.0]], 2.0)
    with pytest.raises(InvalidSymbol):
        HomogeneousSymbol.polynomial({(2, 0): 1.0, (1, 1): 1.0, (0, 2): 0.1})


def test_mixed_degree_rejected():
    with pytest.raises(InvalidSymbol):
        HomogeneousSymbol.polynomial({(2, 0): 1.0, (1, 0): 1.0})


def test_homogeneity_property(rng, quartic):
    aniso = HomogeneousSymbol.metric_power([[2.0, 0.3], [0.3, 1.0]], 3.0)
    for sym in (quartic, aniso):
        for _ in range(50):
            xi = rng.normal(size=2)
            if not xi.any():
                continue
            t = float(rng.uniform(0.5, 2.0))
            lhs = sym.eval(t * xi)
            rhs = t**sym.degree * sym.eval(xi)
            assert abs(lhs - rhs) <= 1e-10 * abs(rhs)


def test_derivative_homogeneity(rng, quartic):
    # d^k sigma at t*xi = t^(m-k) d^k sigma at xi, entrywise
    for _ in range(20):
        xi = rng.normal(size=2)
        t = float(rng.uniform(0.5, 2.0))
        for k in range(1, 5):
            a = quartic.deriv_tensor(t * xi, k)
            b = quartic.deriv_tensor(xi, k)
            for alpha in multi_indices(2, k):
                lhs = a.entry(alpha)
                rhs = t ** (quartic.degree - k) * b.entry(alpha)
                assert abs(lhs - rhs) <= 1e-8 * max(1.0, abs(rhs))


def test_deriv_tensor_examples(circle, quartic):
    hess = circle.deriv_tensor([0.7, -0.2], 2)
    assert hess.entry((2, 0)) == 2.0
    assert hess.entry((0, 2)) == 2.0
    assert hess.entry((1, 1)) == 0.0
    grad = quartic.deriv_tensor([1.0, 0.0], 1)
    assert grad.entry((1, 0)) == 4.0 and grad.entry((0, 1)) == 0.0
    four = quartic.deriv_tensor([1.0, 0.0], 4)
    assert four.entry((4, 0)) == 24.0
    assert four.entry((0, 4)) == 24.0
    assert four.entry((2, 2)) == 0.0
    # order 0 equals eval
    assert quartic.deriv_tensor([1.0, 2.0], 0).entry((0, 0)) == quartic.eval([1.0, 2.0])


def _fd_directional(f, x, dirs, h):
    if not dirs:
        return f(x)
    return (
        _fd_directional(f, x + h * dirs[0], dirs[1:], h)
        - _fd_directional(f, x - h * dirs[0], dirs[1:], h)
    ) / (2.0 * h)


def _fd_richardson(f, x, dirs, h=1e-2):
    coarse = _fd_directional(f, x, dirs, h)
    fine = _fd_directional(f, x, dirs, h / 2.0)
    return (4.0 * fine - coarse) / 3.0


def test_deriv_matches_finite_differences(rng):
    # central differences at step 1e-2, one Richardson pass, rel 1e-5
    symbols = [
        HomogeneousSymbol.polynomial({(4, 0): 1.0, (0, 4): 1.0}),
        HomogeneousSymbol.polynomial({(4, 0): 1.0, (2, 2): 0.8, (0, 4): 2.0}),
        HomogeneousSymbol.metric_power([[2.0, 0.4], [0.4, 1.0]], 3.0),
    ]
    for sym in symbols:
        for _ in range(10):
            xi = rng.normal(size=2)
            xi /= np.linalg.norm(xi)
            k = int(rng.integers(1, 5))
            dirs = [rng.normal(size=2) for _ in range(k)]
            exact = sym.deriv_tensor(xi, k)(*dirs)
            approx = _fd_richardson(sym.eval, xi, dirs)
            scale = max(abs(exact), abs(approx), 1e-8)
            assert abs(exact - approx) / scale <= 1e-5


def test_metric_deriv_order_capped():
    sym = HomogeneousSymbol.metric_power(np.eye(2), 3.0)
    with pytest.raises(UnsupportedOrder):
        sym.deriv_tensor([1.0, 0.0], 5)


def test_tensor_power_examples():
    t = tensor_power([2.0, 0.0], 2)
    assert t.entry((2, 0)) == 4.0
    assert t.entry((1, 1)) == 0.0 and t.entry((0, 2)) == 0.0
    t = tensor_power([1.0, 1.0], 2)
    assert t(np.array([1.0, 0.0]), np.array([0.0, 1.0])) == 1.0
    t = tensor_power([4.0, 0.0], 3)
    e1 = np.array([1.0, 0.0])
    assert t(e1, e1, e1) == 64.0


def test_symtensor_symmetry(rng):
    tensor = SymTensor(3, 3, {a: float(rng.normal()) for a in multi_indices(3, 3)})
    u, v, w = (rng.normal(size=3) for _ in range(3))
    ref = tensor(u, v, w)
    assert tensor(v, u, w) == pytest.approx(ref, rel=1e-12)
    assert tensor(w, v, u) == pytest.approx(ref, rel=1e-12)


def test_symtensor_frobenius_matches_dense(rng):
    tensor = SymTensor(2, 3, {a: float(rng.normal()) for a in multi_indices(2, 3)})
    dense = tensor.to_dense()
    assert tensor.frobenius() == pytest.approx(np.sqrt((dense**2).sum()), rel=1e-12)
    # multiplicity bookkeeping
    assert multinomial((2, 1)) == 3
    assert multinomial((1, 1, 1)) == 6


def test_polarize_examples():
    assert polarize(lambda x: x[0] ** 2, [np.array([1.0, 0.0]), np.array([0.0, 1.0])]) == 0.0
    got = polarize(lambda x: 2.0 * x[0] * x[1], [np.array([1.0, 0.0]), np.array([0.0, 1.0])])
    assert got == pytest.approx(1.0, abs=1e-14)


def test_polarize_roundtrip(rng):
    for _ in range(25):
        n = int(rng.integers(1, 4))
        k = int(rng.integers(2, 5))
        tensor = SymTensor(n, k, {a: float(rng.normal()) for a in multi_indices(n, k)})
        pts = [rng.normal(size=n) for _ in range(k)]
        direct = tensor(*pts)
        via = polarize(tensor.diagonal, pts)
        scale = max(abs(direct), tensor.frobenius() * math.prod(float(np.linalg.norm(p)) for p in pts) * 1e-6)
        assert abs(direct - via) <= 1e-10 * scale


def test_euler_check(circle, quartic):
    grid = circle_grid()
    assert euler_check(circle, grid) <= 1e-12
    assert euler_check(quartic, grid) <= 1e-12
    metric = HomogeneousSymbol.metric_power([[1.0, 0.0], [0.0, 2.0]], 1.0)
    assert euler_check(metric, grid) <= 1e-10


def test_parse_literals():
    sym = parse_symbol("poly: 1*x1^4 + 1*x2^4")
    assert sym.degree == 4.0 and sym.dim == 2
    assert sym.eval([1.0, 1.0]) == 2.0
    sym = parse_symbol("poly: x1^2+x2^2")
    assert sym.eval([3.0, 4.0]) == 25.0
    sym = parse_symbol("metric: m=2; q=[[1,0],[0,1]]")
    assert sym.eval([0.0, 2.0]) == 4.0
    sym = parse_symbol("poly: 2.5e-1*x1^2")
    assert sym.eval([2.0, ]) == 1.0
    # canonical literal reparses to the same values
    quartic = parse_symbol("poly: x1^4 + 3*x1^2*x2^2 + x2^4")
    again = parse_symbol(quartic.literal())
    assert again.eval([0.7, -1.3]) == quartic.eval([0.7, -1.3])


def test_parse_mixed_degree_message():
    with pytest.raises(ValidationError) as err:
        parse_symbol("poly: x1^2 + x2")
    assert str(err.value) == "symbol: mixed-degree monomial at term 2"


def test_parse_garbage():
    with pytest.raises(ValidationError):
        parse_symbol("poly: x0^2")
    with pytest.raises(ValidationError):
        parse_symbol("spline: whatever")
    with pytest.raises(ValidationError):
        parse_symbol("metric: q=[[1,0],[0,1]]")  # missing m
