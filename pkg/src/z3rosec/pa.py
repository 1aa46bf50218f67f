"""Memoryless PA models: modified Rapp and 3rd-order polynomial.

The polynomial coefficients are obtained per input back-off by a weighted
least-squares fit to the Rapp response, with weights given by the Rayleigh
amplitude density of a circularly-symmetric Gaussian input.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NumericalError


@dataclass(frozen=True)
class RappParams:
    """Modified Rapp AM/AM and AM/PM parameters.

    ``ampm_scale_deg`` is the AM/PM numerator in degrees; ``amam_gain`` is
    the linear small-signal amplitude gain.
    """

    p_sat: float
    amam_gain: float = 1.0
    smoothness_s: float = 2.0
    ampm_scale_deg: float = -0.315
    ampm_knee: float = 1.137
    smoothness_q: float = 4.0

    def __post_init__(self):
        for name in ("p_sat", "smoothness_s", "ampm_knee", "smoothness_q"):
            value = getattr(self, name)
            if not value > 0:
                raise DomainError(f"{name} must be positive, got {value}")
        if not self.amam_gain > 0:
            raise DomainError(f"amam_gain must be positive, got {self.amam_gain}")

    def with_psat(self, p_sat):
        return RappParams(
            p_sat, self.amam_gain, self.smoothness_s, self.ampm_scale_deg, self.ampm_knee, self.smoothness_q
        )


@dataclass(frozen=True)
class Poly3Params:
    beta1: complex
    beta3: complex

    def __post_init__(self):
        if self.beta1 == 0:
            raise DomainError("beta1 must be nonzero")


@dataclass(frozen=True)
class IboSpec:
    ibo_db: float
    p_in: float

    def __post_init__(self):
        if not self.p_in > 0:
            raise DomainError(f"p_in must be positive, got {self.p_in}")


def psat_from_ibo(ibo):
    """Saturation power for ``IBO[dB] = 10 log10(p_in / p_sat)``."""
    return ibo.p_in / 10.0 ** (ibo.ibo_db / 10.0)


def rapp_amam(p, r):
    r = np.asarray(r, dtype=float)
    two_s = 2.0 * p.smoothness_s
    return p.amam_gain * r / (1.0 + (r / np.sqrt(p.p_sat)) ** two_s) ** (1.0 / two_s)


def rapp_ampm(p, r):
    """Phase shift in radians."""
    r = np.asarray(r, dtype=float)
    q = p.smoothness_q
    return np.deg2rad(p.ampm_scale_deg * r**q / (1.0 + (r / p.ampm_knee) ** q))


def rapp_gain(p, r):
    """Complex amplitude response ``phi_A(r) e^{j phi_phi(r)}`` for r >= 0."""
    return rapp_amam(p, r) * np.exp(1j * rapp_ampm(p, r))


def rapp_apply(p, x):
    x = np.asarray(x, dtype=complex)
    r = np.abs(x)
    # y = x * (phi_A(r)/r) e^{j phi_phi}; the ratio tends to amam_gain at r = 0
    two_s = 2.0 * p.smoothness_s
    ratio = p.amam_gain / (1.0 + (r / np.sqrt(p.p_sat)) ** two_s) ** (1.0 / two_s)
    return x * ratio * np.exp(1j * rapp_ampm(p, r))


def poly3_apply(p, x):
    x = np.asarray(x, dtype=complex)
    return p.beta1 * x + p.beta3 * x * (x.real**2 + x.imag**2)


def rayleigh_density(r, p_in):
    """Amplitude density of CN(0, p_in)."""
    r = np.asarray(r, dtype=float)
    return 2.0 * r / p_in * np.exp(-(r**2) / p_in)


def fit_poly3_to_rapp(p, p_in, grid_points=4096, span_sigmas=5.0):
    """Rayleigh-weighted LS fit of ``beta1 r + beta3 r^3`` to the Rapp response.

    The amplitude grid is uniform on ``[0, span_sigmas * sqrt(p_in)]`` so the
    result is deterministic.
    """
    if not p_in > 0:
        raise DomainError(f"p_in must be positive, got {p_in}")
    if grid_points < 3:
        raise NumericalError("amplitude grid needs at least 3 points")
    r = np.linspace(0.0, span_sigmas * np.sqrt(p_in), int(grid_points))
    weight = rayleigh_density(r, p_in)
    if not np.sum(weight) > 0:
        raise NumericalError("zero weight mass on amplitude grid")
    sw = np.sqrt(weight)
    basis = np.column_stack([r, r**3]) * sw[:, None]
    target = rapp_gain(p, r) * sw
    coef, *_ = np.linalg.lstsq(basis.astype(complex), target, rcond=None)
    if not np.all(np.isfinite(coef)):
        raise NumericalError("non-finite polynomial fit")
    return Poly3Params(complex(coef[0]), complex(coef[1]))


def fit_residual(p, poly, p_in, span_sigmas=12.0, points=200_001):
    """Rayleigh-weighted mean squared fit error, by dense trapezoid quadrature."""
    r = np.linspace(0.0, span_sigmas * np.sqrt(p_in), points)
    err = np.abs(rapp_gain(p, r) - poly.beta1 * r - poly.beta3 * r**3) ** 2
    return float(np.trapezoid(rayleigh_density(r, p_in) * err, r))
