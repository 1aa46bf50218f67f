"""Pure NumPy implementations of the hot kernels (fallback backend)."""

import numpy as np


def hermitian_quadform(rows, mat):
    """``Re(rows[i]^T mat rows[i]^*)`` for every row."""
    rows = np.ascontiguousarray(rows, dtype=complex)
    return np.einsum("im,im->i", rows @ mat, rows.conj()).real


def _rapp(x, gain, sqrt_psat, two_s, ampm_rad, knee, q):
    r = np.abs(x)
    ratio = gain / (1.0 + (r / sqrt_psat) ** two_s) ** (1.0 / two_s)
    phi = ampm_rad * r**q / (1.0 + (r / knee) ** q)
    return x * ratio * np.exp(1j * phi)


def rapp_gain_sums(z, mixing, gain, sqrt_psat, two_s, ampm_rad, knee, q):
    """Per-antenna ``sum_n y x^*`` and ``sum_n |x|^2`` for ``x = mixing @ z_n``."""
    x = z @ mixing.T
    y = _rapp(x, gain, sqrt_psat, two_s, ampm_rad, knee, q)
    return np.sum(y * x.conj(), axis=0), np.sum(x.real**2 + x.imag**2, axis=0)


def rapp_error_cov(z, mixing, g, gain, sqrt_psat, two_s, ampm_rad, knee, q):
    """``sum_n e_n e_n^H`` with ``e = rapp(x) - g * x``."""
    x = z @ mixing.T
    e = _rapp(x, gain, sqrt_psat, two_s, ampm_rad, knee, q) - x * g
    return e.T @ e.conj()
