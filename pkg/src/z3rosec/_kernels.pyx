# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled Monte-Carlo Bussgang kernels; same contracts as ``_kernels_py``.

Complex arithmetic is spelled out on real/imaginary parts: C99 complex
multiplication goes through NaN-checking library calls.
"""

import numpy as np

from libc.math cimport pow, sqrt, cos, sin


cdef struct RappShape:
    double gain
    double inv_psat
    double s
    double inv_two_s
    int s_int
    double ampm_rad
    double inv_knee2
    double q_half
    int q_half_int


cdef inline double _powi(double base, int n) noexcept nogil:
    cdef double out = 1.0
    while n > 0:
        if n & 1:
            out *= base
        base *= base
        n >>= 1
    return out


cdef RappShape _shape(double gain, double sqrt_psat, double two_s, double ampm_rad, double knee, double q):
    cdef RappShape sh
    sh.gain = gain
    sh.inv_psat = 1.0 / (sqrt_psat * sqrt_psat)
    sh.s = 0.5 * two_s
    sh.inv_two_s = 1.0 / two_s
    sh.s_int = <int>sh.s if sh.s == <int>sh.s and sh.s <= 64 else -1
    sh.ampm_rad = ampm_rad
    sh.inv_knee2 = 1.0 / (knee * knee)
    sh.q_half = 0.5 * q
    sh.q_half_int = <int>sh.q_half if sh.q_half == <int>sh.q_half and sh.q_half <= 64 else -1
    return sh


cdef inline void _rapp(double xr, double xi, RappShape* sh, double* yr, double* yi) noexcept nogil:
    cdef double r2 = xr * xr + xi * xi
    cdef double u, denom, rq, kq, phi, a, c, d
    if sh.s_int > 0:
        u = _powi(r2 * sh.inv_psat, sh.s_int)
    else:
        u = pow(r2 * sh.inv_psat, sh.s)
    if sh.s_int == 2:
        denom = sqrt(sqrt(1.0 + u))
    elif sh.s_int == 1:
        denom = sqrt(1.0 + u)
    else:
        denom = pow(1.0 + u, sh.inv_two_s)
    a = sh.gain / denom
    if sh.ampm_rad == 0.0:
        yr[0] = a * xr
        yi[0] = a * xi
        return
    if sh.q_half_int > 0:
        rq = _powi(r2, sh.q_half_int)
        kq = _powi(r2 * sh.inv_knee2, sh.q_half_int)
    else:
        rq = pow(r2, sh.q_half)
        kq = pow(r2 * sh.inv_knee2, sh.q_half)
    phi = sh.ampm_rad * rq / (1.0 + kq)
    c = a * cos(phi)
    d = a * sin(phi)
    yr[0] = xr * c - xi * d
    yi[0] = xr * d + xi * c


cdef inline void _mix(const double* fr, const double* fi, const double* zr, const double* zi,
                      Py_ssize_t k, double* xr, double* xi) noexcept nogil:
    cdef Py_ssize_t j
    cdef double re = 0.0, im = 0.0
    for j in range(k):
        re = re + fr[j] * zr[j] - fi[j] * zi[j]
        im = im + fr[j] * zi[j] + fi[j] * zr[j]
    xr[0] = re
    xi[0] = im


def _parts(arr):
    arr = np.asarray(arr, dtype=np.complex128)
    return np.ascontiguousarray(arr.real), np.ascontiguousarray(arr.imag)


def rapp_gain_sums(z, mixing, double gain, double sqrt_psat, double two_s,
                   double ampm_rad, double knee, double q):
    zr_a, zi_a = _parts(z)
    fr_a, fi_a = _parts(mixing)
    cdef const double[:, ::1] zr = zr_a, zi = zi_a, fr = fr_a, fi = fi_a
    cdef Py_ssize_t n = zr.shape[0], k = zr.shape[1], m = fr.shape[0], s, a
    num_r = np.zeros(m)
    num_i = np.zeros(m)
    den = np.zeros(m)
    cdef double[::1] nr = num_r, ni = num_i, de = den
    cdef double xr, xi, yr, yi
    cdef RappShape sh = _shape(gain, sqrt_psat, two_s, ampm_rad, knee, q)
    with nogil:
        for s in range(n):
            for a in range(m):
                _mix(&fr[a, 0], &fi[a, 0], &zr[s, 0], &zi[s, 0], k, &xr, &xi)
                _rapp(xr, xi, &sh, &yr, &yi)
                nr[a] += yr * xr + yi * xi
                ni[a] += yi * xr - yr * xi
                de[a] += xr * xr + xi * xi
    return num_r + 1j * num_i, den


def rapp_error_cov(z, mixing, g, double gain, double sqrt_psat, double two_s,
                   double ampm_rad, double knee, double q):
    zr_a, zi_a = _parts(z)
    fr_a, fi_a = _parts(mixing)
    gr_a, gi_a = _parts(g)
    cdef const double[:, ::1] zr = zr_a, zi = zi_a, fr = fr_a, fi = fi_a
    cdef const double[::1] gr = gr_a, gi = gi_a
    cdef Py_ssize_t n = zr.shape[0], k = zr.shape[1], m = fr.shape[0], s, a
    err = np.empty((n, m), dtype=np.complex128)
    # interleaved (re, im) view of the complex buffer
    cdef double[:, ::1] ev = err.view(np.float64)
    cdef double xr, xi, yr, yi
    cdef RappShape sh = _shape(gain, sqrt_psat, two_s, ampm_rad, knee, q)
    with nogil:
        for s in range(n):
            for a in range(m):
                _mix(&fr[a, 0], &fi[a, 0], &zr[s, 0], &zi[s, 0], k, &xr, &xi)
                _rapp(xr, xi, &sh, &yr, &yi)
                ev[s, 2 * a] = yr - (gr[a] * xr - gi[a] * xi)
                ev[s, 2 * a + 1] = yi - (gr[a] * xi + gi[a] * xr)
    # outer-product sum on BLAS
    return err.T @ err.conj()
