"""Radiation patterns, SNDR, secrecy rate and secrecy outage over an angular grid."""

from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .array import array_response
from .errors import DomainError, NumericalError

DEFAULT_GRID_POINTS = 2000
MAX_CLAMP_FRACTION = 1e-3


def angular_grid(num_points=DEFAULT_GRID_POINTS):
    if int(num_points) != num_points or num_points < 2:
        raise DomainError(f"grid needs an integer number of points >= 2, got {num_points}")
    return np.linspace(0.0, np.pi, int(num_points))


def _beam(precoder_or_w):
    if hasattr(precoder_or_w, "info_beam"):
        return precoder_or_w.info_beam
    return np.asarray(precoder_or_w, dtype=complex)


def _an_cov(precoder_or_w):
    return getattr(precoder_or_w, "an_covariance", None)


def _check_square(mat, m, name):
    if mat.shape != (m, m):
        raise DomainError(f"{name} has shape {mat.shape}, expected {(m, m)}")


def signal_pattern(geom, gain, precoder_or_w, grid):
    """``|h(theta)^T G w|^2`` per angle; for MRT+AN ``w`` is the information beam."""
    gain = np.asarray(gain)
    b = _beam(precoder_or_w)
    _check_square(gain, geom.num_antennas, "gain matrix")
    if b.shape != (geom.num_antennas,):
        raise DomainError("precoder length does not match the array")
    return np.abs(array_response(geom, grid) @ (gain @ b)) ** 2


def _quadform_pattern(rows, mat, return_clamped):
    values = kernels.hermitian_quadform(rows, mat)
    negative = values < 0
    clamped = int(np.count_nonzero(negative))
    values = np.where(negative, 0.0, values)
    return (values, clamped) if return_clamped else values


def distortion_pattern(geom, distortion_cov, grid, return_clamped=False):
    """``h(theta)^T C_e h(theta)^*`` per angle, tiny negatives clamped to zero."""
    cov = np.asarray(distortion_cov, dtype=complex)
    _check_square(cov, geom.num_antennas, "distortion covariance")
    return _quadform_pattern(array_response(geom, grid), cov, return_clamped)


def an_pattern(geom, gain, an_covariance, grid, return_clamped=False):
    """Radiated artificial-noise power ``h^T G C_an G^H h^*`` per angle."""
    gain = np.asarray(gain)
    cov = gain @ an_covariance @ gain.conj().T
    _check_square(cov, geom.num_antennas, "artificial-noise covariance")
    return _quadform_pattern(array_response(geom, grid), cov, return_clamped)


def check_clamps(clamped, total):
    if clamped > MAX_CLAMP_FRACTION * total:
        raise NumericalError(f"{clamped} of {total} pattern values were negative before clamping")


@dataclass(frozen=True, eq=False)
class PatternReport:
    grid: np.ndarray
    signal: np.ndarray
    distortion: np.ndarray
    total_power: float
    directivity: np.ndarray
    noise: np.ndarray = field(default=None, repr=False)

    @property
    def directivity_signal(self):
        return self.signal / (self.total_power / np.pi)

    @property
    def directivity_distortion(self):
        return self.distortion / (self.total_power / np.pi)


def total_power_and_directivity(p_sig, p_dist, grid, p_an=None):
    p_sig = np.asarray(p_sig, dtype=float)
    p_dist = np.asarray(p_dist, dtype=float)
    grid = np.asarray(grid, dtype=float)
    if not p_sig.shape == p_dist.shape == grid.shape:
        raise DomainError("pattern arrays and grid differ in shape")
    total = p_sig + p_dist
    if p_an is not None:
        total = total + np.asarray(p_an, dtype=float)
    p_t = float(np.trapezoid(total, grid))
    if not p_t > 0:
        raise NumericalError("total radiated power is not positive")
    return PatternReport(grid, p_sig, p_dist, p_t, total / (p_t / np.pi), p_an)


def pattern_report(geom, stats, precoder, grid):
    """Signal, distortion (and AN) patterns plus directivity for one operating point."""
    sig = signal_pattern(geom, stats.gain, precoder, grid)
    dist, clamped = distortion_pattern(geom, stats.distortion_cov, grid, return_clamped=True)
    an = None
    if _an_cov(precoder) is not None:
        an, more = an_pattern(geom, stats.gain, precoder.an_covariance, grid, return_clamped=True)
        clamped += more
    check_clamps(clamped, len(grid))
    return total_power_and_directivity(sig, dist, grid, an)


def received_powers(channels, gain, precoder_or_w, distortion_cov):
    """Signal, distortion and artificial-noise power received through each channel row."""
    rows = np.atleast_2d(np.asarray(channels, dtype=complex))
    gain = np.asarray(gain)
    sig = np.abs(rows @ (gain @ _beam(precoder_or_w))) ** 2
    dist = np.maximum(kernels.hermitian_quadform(rows, np.asarray(distortion_cov)), 0.0)
    an_cov = _an_cov(precoder_or_w)
    if an_cov is None:
        an = np.zeros_like(sig)
    else:
        an = np.maximum(kernels.hermitian_quadform(rows, gain @ an_cov @ gain.conj().T), 0.0)
    return sig, dist, an


def snr(channels, gain, precoder_or_w, noise_variance):
    if not noise_variance > 0:
        raise DomainError("noise variance must be positive")
    rows = np.atleast_2d(np.asarray(channels, dtype=complex))
    return np.abs(rows @ (np.asarray(gain) @ _beam(precoder_or_w))) ** 2 / noise_variance


def sndr(channels, gain, precoder_or_w, distortion_cov, noise_variance):
    """Signal over distortion + received AN + thermal noise, per channel row."""
    if not noise_variance > 0:
        raise DomainError("noise variance must be positive")
    sig, dist, an = received_powers(channels, gain, precoder_or_w, distortion_cov)
    return sig / (dist + an + noise_variance)


def secrecy_rate(sndr_legit, sndr_eve):
    sndr_legit = np.asarray(sndr_legit, dtype=float)
    sndr_eve = np.asarray(sndr_eve, dtype=float)
    if np.any(sndr_legit < 0) or np.any(sndr_eve < 0):
        raise DomainError("SNDR values must be nonnegative")
    return np.maximum(0.0, np.log2((1.0 + sndr_legit) / (1.0 + sndr_eve)))


def outage_curve(rates, thresholds):
    """Fraction of grid points whose secrecy rate is strictly below each threshold."""
    rates = np.asarray(rates, dtype=float)
    if rates.size == 0:
        raise DomainError("empty rate grid")
    srt = np.sort(rates)
    return np.searchsorted(srt, np.asarray(thresholds, dtype=float), side="left") / rates.size


def secrecy_rate_at_outage(rates, p):
    """Lower empirical ``p``-quantile: sorted rates at index ``floor(p * M_pt)``."""
    if not 0.0 < p < 1.0:
        raise DomainError(f"outage probability must lie in (0, 1), got {p}")
    srt = np.sort(np.asarray(rates, dtype=float))
    return float(srt[int(np.floor(p * srt.size))])


@dataclass(frozen=True, eq=False)
class SecrecyReport:
    angles: np.ndarray
    sndr_eve: np.ndarray
    snr_eve: np.ndarray
    sndr_legit: float
    snr_legit: float
    rates: np.ndarray

    def rate_at_outage(self, p):
        return secrecy_rate_at_outage(self.rates, p)

    def outage(self, thresholds):
        return outage_curve(self.rates, thresholds)

    @property
    def mean_rate(self):
        return float(np.mean(self.rates))

    def summary(self):
        return {
            "secrecy_rate_p05": self.rate_at_outage(0.05),
            "secrecy_rate_p10": self.rate_at_outage(0.10),
            "secrecy_rate_mean": self.mean_rate,
        }


def secrecy_report(geom, legit_angle, stats, precoder, noise_variance, angles, path_loss=1.0):
    """Per-angle eavesdropper SNDR and secrecy rate for one operating point.

    An eavesdropper placed exactly at the legitimate angle shares its channel,
    so its SNDR is taken to be the legitimate SNDR.
    """
    angles = np.asarray(angles, dtype=float)
    amp = np.sqrt(path_loss)
    legit = amp * array_response(geom, legit_angle)
    rows = amp * array_response(geom, angles)
    sndr_legit = float(sndr(legit, stats.gain, precoder, stats.distortion_cov, noise_variance)[0])
    snr_legit = float(snr(legit, stats.gain, precoder, noise_variance)[0])
    sndr_eve = sndr(rows, stats.gain, precoder, stats.distortion_cov, noise_variance)
    snr_eve = snr(rows, stats.gain, precoder, noise_variance)
    same = angles == legit_angle
    sndr_eve[same] = sndr_legit
    snr_eve[same] = snr_legit
    rates = secrecy_rate(sndr_legit, sndr_eve)
    return SecrecyReport(angles, sndr_eve, snr_eve, sndr_legit, snr_legit, rates)


def to_db(power):
    power = np.asarray(power, dtype=float)
    with np.errstate(divide="ignore"):
        return 10.0 * np.log10(power)
