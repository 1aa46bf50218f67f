"""Bussgang decomposition ``phi(x) = G x + e`` of per-antenna PA outputs.

Closed forms hold for the 3rd-order polynomial with any zero-mean circular
Gaussian input of covariance ``C_x``. The Rapp model is handled by a seeded
Monte-Carlo estimator.
"""

from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import DomainError

CLOSED_FORM_POLY3 = "closed-form-poly3"
MONTE_CARLO_RAPP = "monte-carlo-rapp"
RNG_ALGORITHM = "numpy.random.PCG64"
DEFAULT_MC_SAMPLES = 200_000
MIN_MC_SAMPLES = 10_000
CHUNK = 1 << 16


@dataclass(frozen=True, eq=False)
class BussgangStats:
    gain: np.ndarray
    distortion_cov: np.ndarray
    source: str
    num_samples: int = 0
    seed: int = None
    rng: str = None
    zero_weight_antennas: tuple = ()

    def metadata(self):
        meta = {"source": self.source}
        if self.source == MONTE_CARLO_RAPP:
            meta.update(
                num_samples=self.num_samples,
                seed=self.seed,
                rng=self.rng,
                zero_weight_antennas=list(self.zero_weight_antennas),
            )
        return meta


def check_covariance(cov):
    cov = np.asarray(cov, dtype=complex)
    if cov.ndim != 2 or cov.shape[0] != cov.shape[1]:
        raise DomainError("covariance must be a square matrix")
    scale = max(np.abs(cov).max(), np.finfo(float).tiny)
    if np.abs(cov - cov.conj().T).max() > 1e-12 * scale:
        raise DomainError("covariance is not Hermitian")
    trace = np.real(np.trace(cov))
    if np.linalg.eigvalsh(cov).min() < -1e-10 * max(trace, np.finfo(float).tiny):
        raise DomainError("covariance is not positive semidefinite")
    return cov


def poly3_bussgang_gain(p, cov):
    cov = check_covariance(cov)
    return np.diag(p.beta1 + 2.0 * p.beta3 * np.real(np.diag(cov)))


def poly3_distortion_cov(p, cov):
    cov = check_covariance(cov)
    return 2.0 * abs(p.beta3) ** 2 * np.abs(cov) ** 2 * cov


def poly3_bussgang(p, cov):
    return BussgangStats(poly3_bussgang_gain(p, cov), poly3_distortion_cov(p, cov), CLOSED_FORM_POLY3)


def _as_mixing(weights):
    if hasattr(weights, "mixing_matrix"):
        return weights.mixing_matrix()
    f = np.asarray(weights, dtype=complex)
    return f[:, None] if f.ndim == 1 else f


def _chunks(seed, num_samples, width):
    rng = np.random.Generator(np.random.PCG64(seed))
    done = 0
    while done < num_samples:
        n = min(CHUNK, num_samples - done)
        raw = rng.standard_normal((n, width, 2))
        yield (raw[..., 0] + 1j * raw[..., 1]) * np.sqrt(0.5)
        done += n


def rapp_bussgang_mc(p, weights, num_samples=DEFAULT_MC_SAMPLES, seed=0, backend=None):
    """Monte-Carlo Bussgang gain and distortion covariance for Rapp PAs.

    ``weights`` is a beam vector ``w`` (input ``x = w s``), a mixing matrix
    ``F`` (input ``x = F z`` with ``z ~ CN(0, I)``) or a precoder. Samples are
    drawn in fixed-size chunks from a PCG64 stream seeded by ``seed``; a second
    pass replays the stream to accumulate the distortion covariance around the
    final gain. Same inputs and seed give bit-identical results.
    """
    mixing = np.ascontiguousarray(_as_mixing(weights))
    if not np.linalg.norm(mixing) > 0:
        raise DomainError("precoder weights are all zero")
    num_samples = int(num_samples)
    if num_samples < MIN_MC_SAMPLES:
        raise DomainError(f"num_samples must be >= {MIN_MC_SAMPLES}, got {num_samples}")
    impl = kernels.get_backend(backend)
    args = (
        p.amam_gain,
        np.sqrt(p.p_sat),
        2.0 * p.smoothness_s,
        np.deg2rad(p.ampm_scale_deg),
        p.ampm_knee,
        p.smoothness_q,
    )
    m, width = mixing.shape
    num = np.zeros(m, dtype=complex)
    den = np.zeros(m)
    for z in _chunks(seed, num_samples, width):
        a, b = impl.rapp_gain_sums(z, mixing, *args)
        num += a
        den += b
    zero = den == 0
    g = np.where(zero, 0.0, num / np.where(zero, 1.0, den))
    acc = np.zeros((m, m), dtype=complex)
    for z in _chunks(seed, num_samples, width):
        acc += impl.rapp_error_cov(z, mixing, g, *args)
    cov = acc / num_samples
    cov = 0.5 * (cov + cov.conj().T)
    return BussgangStats(
        np.diag(g),
        cov,
        MONTE_CARLO_RAPP,
        num_samples=num_samples,
        seed=int(seed),
        rng=RNG_ALGORITHM,
        zero_weight_antennas=tuple(int(i) for i in np.flatnonzero(zero)),
    )
