"""Compiled hot kernels: deterministic pairwise reductions, weighted phase
sums, and lattice-band enumeration.

Operation-for-operation twin of weyllab._purecore; both use the identical
fixed-shape reduction tree and evaluation order (see that module). Built
with -ffp-contract=off so no FMA contraction diverges from the fallback.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport cos, sin, pow

cnp.import_array()


cdef double complex _reduce_pairwise_c(double complex* buf, Py_ssize_t n) noexcept nogil:
    cdef Py_ssize_t m, i
    if n == 0:
        return 0.0
    while n > 1:
        m = n // 2
        for i in range(m):
            buf[i] = buf[2 * i] + buf[2 * i + 1]
        if n & 1:
            buf[m] = buf[n - 1]
        n = m + (n & 1)
    return buf[0]


cdef double _reduce_pairwise_d(double* buf, Py_ssize_t n) noexcept nogil:
    cdef Py_ssize_t m, i
    if n == 0:
        return 0.0
    while n > 1:
        m = n // 2
        for i in range(m):
            buf[i] = buf[2 * i] + buf[2 * i + 1]
        if n & 1:
            buf[m] = buf[n - 1]
        n = m + (n & 1)
    return buf[0]


def pairwise_sum(values):
    """Deterministic pairwise sum of a 1-D complex array."""
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] v = np.array(values, dtype=np.complex128, copy=True, order="C")
    return complex(_reduce_pairwise_c(<double complex*> v.data, v.shape[0]))


def pairwise_sum_real(values):
    """Deterministic pairwise sum of a 1-D float array."""
    cdef cnp.ndarray[cnp.float64_t, ndim=1] v = np.array(values, dtype=np.float64, copy=True, order="C")
    return float(_reduce_pairwise_d(<double*> v.data, v.shape[0]))


cdef void _fill_phase_values(double[:, ::1] pts, double complex[::1] w,
                             double[::1] h, double t,
                             double complex* buf) noexcept nogil:
    cdef Py_ssize_t i, j, npts = pts.shape[0], n = pts.shape[1]
    cdef double c, ang
    for i in range(npts):
        c = pts[i, 0] * h[0]
        for j in range(1, n):
            c = c + pts[i, j] * h[j]
        ang = t * c
        buf[i] = w[i] * (cos(ang) + 1j * sin(ang))


def phase_sum(points, weights, h, t):
    """sum_i weights[i] * exp(i*t*<points[i], h>) with pairwise reduction."""
    cdef cnp.ndarray[cnp.float64_t, ndim=2] pts = np.ascontiguousarray(points, dtype=np.float64)
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] w = np.ascontiguousarray(weights, dtype=np.complex128)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] hv = np.ascontiguousarray(h, dtype=np.float64)
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] buf = np.empty(pts.shape[0], dtype=np.complex128)
    cdef double tt = t
    if pts.shape[0] == 0:
        return 0.0 + 0.0j
    _fill_phase_values(pts, w, hv, tt, <double complex*> buf.data)
    return complex(_reduce_pairwise_c(<double complex*> buf.data, buf.shape[0]))


def phase_sum_batch(points, weights, h, ts):
    """phase_sum at several t values; returns a complex array."""
    cdef cnp.ndarray[cnp.float64_t, ndim=2] pts = np.ascontiguousarray(points, dtype=np.float64)
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] w = np.ascontiguousarray(weights, dtype=np.complex128)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] hv = np.ascontiguousarray(h, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] tarr = np.ascontiguousarray(ts, dtype=np.float64)
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] out = np.empty(tarr.shape[0], dtype=np.complex128)
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] buf = np.empty(pts.shape[0], dtype=np.complex128)
    cdef Py_ssize_t k
    if pts.shape[0] == 0:
        out[:] = 0.0
        return out
    for k in range(tarr.shape[0]):
        _fill_phase_values(pts, w, hv, tarr[k], <double complex*> buf.data)
        out[k] = _reduce_pairwise_c(<double complex*> buf.data, buf.shape[0])
    return out


cdef double _poly_at(double[::1] coeffs, long long[:, ::1] exps,
                     double* x, Py_ssize_t n) noexcept nogil:
    cdef double acc = 0.0, term, p
    cdef Py_ssize_t j, d, r
    for j in range(coeffs.shape[0]):
        term = coeffs[j]
        for d in range(n):
            p = 1.0
            for r in range(exps[j, d]):
                p = p * x[d]
            term = term * p
        acc = acc + term
    return acc


cdef double _metric_at(double[:, ::1] q, double degree,
                       double* x, Py_ssize_t n) noexcept nogil:
    cdef double quad = 0.0, p
    cdef Py_ssize_t i, j, r
    cdef double half = degree / 2.0
    cdef long long ihalf
    for i in range(n):
        for j in range(n):
            quad = quad + (q[i, j] * x[i]) * x[j]
    ihalf = <long long> half
    if half == <double> ihalf:
        p = 1.0
        for r in range(ihalf):
            p = p * quad
        return p
    return pow(quad, half)


def enumerate_poly(coeffs, exps, bound, lmax):
    """Lattice points 0 < sigma(k) <= lmax for a homogeneous polynomial."""
    cdef double[::1] cf = np.ascontiguousarray(coeffs, dtype=np.float64)
    cdef long long[:, ::1] ex = np.ascontiguousarray(exps, dtype=np.int64)
    return _enumerate_impl(cf, ex, None, 0.0, ex.shape[1], int(bound), float(lmax), True)


def enumerate_metric(q, degree, bound, lmax):
    """Lattice points 0 < (k^T q k)^(degree/2) <= lmax."""
    cdef double[:, ::1] qm = np.ascontiguousarray(q, dtype=np.float64)
    return _enumerate_impl(None, None, qm, float(degree), qm.shape[0], int(bound), float(lmax), False)


cdef _enumerate_impl(double[::1] cf, long long[:, ::1] ex, double[:, ::1] qm,
                     double degree, Py_ssize_t n, long long bound, double lmax,
                     bint is_poly):
    cdef long long k1, k2, k3
    cdef double x[3]
    cdef double val
    cdef Py_ssize_t count = 0, idx
    cdef cnp.ndarray[cnp.int64_t, ndim=2] pts
    cdef cnp.ndarray[cnp.float64_t, ndim=1] lam
    if n < 1 or n > 3:
        raise ValueError("enumeration implemented for n in {1,2,3}")

    # pass 1: count
    for k1 in range(-bound, bound + 1):
        x[0] = <double> k1
        if n == 1:
            val = _poly_at(cf, ex, x, n) if is_poly else _metric_at(qm, degree, x, n)
            if val > 0.0 and val <= lmax:
                count += 1
        else:
            for k2 in range(-bound, bound + 1):
                x[1] = <double> k2
                if n == 2:
                    val = _poly_at(cf, ex, x, n) if is_poly else _metric_at(qm, degree, x, n)
                    if val > 0.0 and val <= lmax:
                        count += 1
                else:
                    for k3 in range(-bound, bound + 1):
                        x[2] = <double> k3
                        val = _poly_at(cf, ex, x, n) if is_poly else _metric_at(qm, degree, x, n)
                        if val > 0.0 and val <= lmax:
                            count += 1

    pts = np.empty((count, n), dtype=np.int64)
    lam = np.empty(count, dtype=np.float64)
    idx = 0

    # pass 2: fill, same lexicographic order
    for k1 in range(-bound, bound + 1):
        x[0] = <double> k1
        if n == 1:
            val = _poly_at(cf, ex, x, n) if is_poly else _metric_at(qm, degree, x, n)
            if val > 0.0 and val <= lmax:
                pts[idx, 0] = k1
                lam[idx] = val
                idx += 1
        else:
            for k2 in range(-bound, bound + 1):
                x[1] = <double> k2
                if n == 2:
                    val = _poly_at(cf, ex, x, n) if is_poly else _metric_at(qm, degree, x, n)
                    if val > 0.0 and val <= lmax:
                        pts[idx, 0] = k1
                        pts[idx, 1] = k2
                        lam[idx] = val
                        idx += 1
                else:
                    for k3 in range(-bound, bound + 1):
                        x[2] = <double> k3
                        val = _poly_at(cf, ex, x, n) if is_poly else _metric_at(qm, degree, x, n)
                        if val > 0.0 and val <= lmax:
                            pts[idx, 0] = k1
                            pts[idx, 1] = k2
                            pts[idx, 2] = k3
                            lam[idx] = val
                            idx += 1
    return pts, lam


BACKEND_NAME = "cython"
