"""Pure-NumPy implementation of the hot kernels.

Mirrors weyllab._fastcore operation for operation. Both backends use the
same fixed-shape pairwise reduction tree and the same evaluation order for
lattice symbols, so results do not depend on which backend is active (up
to <=1 ulp in sin/cos between NumPy's SIMD routines and libm) and never
depend on thread count.

Reduction tree: level l pairs element 2i with 2i+1; an odd trailing
element is carried to the next level unchanged.
"""

import numpy as np

BACKEND_NAME = "python"


def pairwise_sum(values):
    """Deterministic pairwise sum of a 1-D complex array."""
    v = np.ascontiguousarray(values, dtype=np.complex128)
    if v.size == 0:
        return 0.0 + 0.0j
    while v.size > 1:
        m = v.size // 2
        head = v[0 : 2 * m : 2] + v[1 : 2 * m : 2]
        if v.size & 1:
            v = np.concatenate([head, v[-1:]])
        else:
            v = head
    return complex(v[0])


def pairwise_sum_real(values):
    """Deterministic pairwise sum of a 1-D float array."""
    v = np.ascontiguousarray(values, dtype=np.float64)
    if v.size == 0:
        return 0.0
    while v.size > 1:
        m = v.size // 2
        head = v[0 : 2 * m : 2] + v[1 : 2 * m : 2]
        if v.size & 1:
            v = np.concatenate([head, v[-1:]])
        else:
            v = head
    return float(v[0])


def _dot_fixed(points, h):
    # explicit per-coordinate accumulation; no BLAS, no FMA fusion
    acc = points[:, 0] * h[0]
    for j in range(1, points.shape[1]):
        acc = acc + points[:, j] * h[j]
    return acc


def phase_sum(points, weights, h, t):
    """sum_i weights[i] * exp(i*t*<points[i], h>) with pairwise reduction."""
    pts = np.ascontiguousarray(points, dtype=np.float64)
    w = np.ascontiguousarray(weights, dtype=np.complex128)
    hv = np.ascontiguousarray(h, dtype=np.float64)
    ang = t * _dot_fixed(pts, hv)
    vals = w * (np.cos(ang) + 1j * np.sin(ang))
    return pairwise_sum(vals)


def phase_sum_batch(points, weights, h, ts):
    """phase_sum at several t values; returns a complex array."""
    pts = np.ascontiguousarray(points, dtype=np.float64)
    w = np.ascontiguousarray(weights, dtype=np.complex128)
    hv = np.ascontiguousarray(h, dtype=np.float64)
    c = _dot_fixed(pts, hv)
    out = np.empty(len(ts), dtype=np.complex128)
    for i, t in enumerate(ts):
        ang = t * c
        out[i] = pairwise_sum(w * (np.cos(ang) + 1j * np.sin(ang)))
    return out


def _ipow(base, e):
    # repeated multiplication; same rounding sequence as the compiled core
    out = np.ones_like(base)
    for _ in range(e):
        out = out * base
    return out


def _poly_values(coeffs, exps, cols):
    acc = np.zeros_like(cols[0])
    for j in range(len(coeffs)):
        term = np.full_like(cols[0], coeffs[j])
        for d in range(len(cols)):
            term = term * _ipow(cols[d], int(exps[j, d]))
        acc = acc + term
    return acc


def _metric_values(q, degree, cols):
    n = len(cols)
    quad = np.zeros_like(cols[0])
    for i in range(n):
        for j in range(n):
            quad = quad + (q[i, j] * cols[i]) * cols[j]
    half = degree / 2.0
    if half == int(half):
        return _ipow(quad, int(half))
    return np.power(quad, half)


def _enumerate(value_fn, n, bound, lmax):
    rng = np.arange(-bound, bound + 1, dtype=np.int64)
    pts_chunks = []
    lam_chunks = []
    if n == 1:
        cols = [rng.astype(np.float64)]
        lam = value_fn(cols)
        mask = (lam > 0.0) & (lam <= lmax)
        pts_chunks.append(rng[mask].reshape(-1, 1))
        lam_chunks.append(lam[mask])
    elif n == 2:
        for k1 in rng:
            cols = [np.full(rng.size, float(k1)), rng.astype(np.float64)]
            lam = value_fn(cols)
            mask = (lam > 0.0) & (lam <= lmax)
            if not mask.any():
                continue
            sel = rng[mask]
            block = np.empty((sel.size, 2), dtype=np.int64)
            block[:, 0] = k1
            block[:, 1] = sel
            pts_chunks.append(block)
            lam_chunks.append(lam[mask])
    elif n == 3:
        g2, g3 = np.meshgrid(rng, rng, indexing="ij")
        g2 = g2.ravel()
        g3 = g3.ravel()
        f2 = g2.astype(np.float64)
        f3 = g3.astype(np.float64)
        for k1 in rng:
            cols = [np.full(g2.size, float(k1)), f2, f3]
            lam = value_fn(cols)
            mask = (lam > 0.0) & (lam <= lmax)
            if not mask.any():
                continue
            block = np.empty((int(mask.sum()), 3), dtype=np.int64)
            block[:, 0] = k1
            block[:, 1] = g2[mask]
            block[:, 2] = g3[mask]
            pts_chunks.append(block)
            lam_chunks.append(lam[mask])
    else:
        raise ValueError("enumeration implemented for n in {1,2,3}")
    if not pts_chunks:
        return np.empty((0, n), dtype=np.int64), np.empty(0, dtype=np.float64)
    return np.concatenate(pts_chunks), np.concatenate(lam_chunks)


def enumerate_poly(coeffs, exps, bound, lmax):
    """Lattice points 0 < sigma(k) <= lmax for a homogeneous polynomial.

    coeffs: (M,) float64, exps: (M,n) int64. Scan order is lexicographic
    over [-bound, bound]^n; the origin is excluded by the 0 < sigma test.
    """
    coeffs = np.ascontiguousarray(coeffs, dtype=np.float64)
    exps = np.ascontiguousarray(exps, dtype=np.int64)
    n = exps.shape[1]
    return _enumerate(lambda cols: _poly_values(coeffs, exps, cols), n, int(bound), float(lmax))


def enumerate_metric(q, degree, bound, lmax):
    """Lattice points 0 < (k^T q k)^(degree/2) <= lmax."""
    q = np.ascontiguousarray(q, dtype=np.float64)
    n = q.shape[0]
    return _enumerate(lambda cols: _metric_values(q, degree, cols), n, int(bound), float(lmax))
