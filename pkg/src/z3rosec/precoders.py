"""MRT, Z3RO and MRT + artificial-noise precoders with unit total power."""

from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError

MRT = "mrt"
Z3RO = "z3ro"
MRT_AN = "mrt-an"
KINDS = (MRT, Z3RO, MRT_AN)


@dataclass(frozen=True, eq=False)
class Precoder:
    """Precoding strategy.

    For ``mrt`` and ``z3ro``, ``weights`` is the unit-norm beam and the
    transmit covariance is ``w w^H``. For ``mrt-an``, ``weights`` is the unit
    beam direction, ``info_fraction`` the share of power it carries and
    ``an_covariance`` (trace ``1 - info_fraction``) the null-space noise.
    """

    weights: np.ndarray
    kind: str
    saturated_set: tuple = ()
    info_fraction: float = 1.0
    an_covariance: np.ndarray = field(default=None, repr=False)

    @property
    def num_antennas(self):
        return self.weights.shape[0]

    @property
    def info_beam(self):
        return np.sqrt(self.info_fraction) * self.weights

    def transmit_covariance(self):
        b = self.info_beam
        cov = np.outer(b, b.conj())
        if self.an_covariance is not None:
            cov = cov + self.an_covariance
        return cov

    def total_power(self):
        return float(np.real(np.trace(self.transmit_covariance())))

    def mixing_matrix(self):
        """Matrix F with ``x = F z``, ``z ~ CN(0, I)``, reproducing the transmit covariance."""
        b = self.info_beam[:, None]
        if self.an_covariance is None or self.info_fraction == 1.0:
            return b
        m = self.num_antennas
        scale = np.sqrt((1.0 - self.info_fraction) / (m - 1))
        return np.hstack([b, scale * null_space_basis(self.weights)])


def _check_channel(h):
    h = np.asarray(h, dtype=complex)
    if h.ndim != 1:
        raise DomainError("channel must be a vector")
    norm = np.linalg.norm(h)
    if not norm > 0:
        raise DomainError("channel has zero norm")
    return h, norm


def mrt(h):
    h, norm = _check_channel(h)
    return Precoder(h.conj() / norm, MRT)


def z3ro_gains(h, saturated_set):
    """Per-antenna real gains; antennas in ``saturated_set`` get the negative
    factor that cancels the aggregate 3rd-order term at the user."""
    h4 = np.abs(h) ** 4
    sat = np.zeros(h.shape[0], dtype=bool)
    sat[list(saturated_set)] = True
    gains = np.ones(h.shape[0])
    gains[sat] = -np.cbrt(h4[~sat].sum() / h4[sat].sum())
    return gains


def z3ro(h, num_saturated=1, saturated_set=None):
    """Z3RO beam; ``saturated_set`` overrides the default first ``num_saturated`` antennas."""
    h, _ = _check_channel(h)
    m = h.shape[0]
    if saturated_set is None:
        saturated_set = tuple(range(int(num_saturated)))
    saturated_set = tuple(sorted(int(i) for i in saturated_set))
    ms = len(saturated_set)
    if not 0 < ms < m / 2:
        raise DomainError(f"need 0 < M_s < M/2, got M_s={ms}, M={m}")
    if len(set(saturated_set)) != ms or min(saturated_set) < 0 or max(saturated_set) >= m:
        raise DomainError(f"invalid saturated antenna set {saturated_set}")
    w = h.conj() * z3ro_gains(h, saturated_set)
    return Precoder(w / np.linalg.norm(w), Z3RO, saturated_set=saturated_set)


def null_space_basis(u):
    """Orthonormal basis (M x (M-1)) of the complement of span{u}.

    Built from the Householder reflector that maps ``e_0`` onto ``u/|u|`` (up
    to a unit phase); its trailing M-1 columns span the complement. Fully
    deterministic, no pivoting.
    """
    u = np.asarray(u, dtype=complex)
    u = u / np.linalg.norm(u)
    m = u.shape[0]
    phase = u[0] / abs(u[0]) if abs(u[0]) > 0 else 1.0
    e0 = np.zeros(m, dtype=complex)
    e0[0] = phase
    v = u - e0
    vn = np.linalg.norm(v)
    if vn < 1e-15:
        reflector = np.eye(m, dtype=complex)
    else:
        v = v / vn
        reflector = np.eye(m, dtype=complex) - 2.0 * np.outer(v, v.conj())
    return reflector[:, 1:]


def mrt_with_an(h, info_fraction=0.7):
    h, norm = _check_channel(h)
    m = h.shape[0]
    if m < 2:
        raise DomainError("artificial noise needs M >= 2")
    if not 0.0 < info_fraction <= 1.0:
        raise DomainError(f"info_fraction must lie in (0, 1], got {info_fraction}")
    u = h.conj() / norm
    # V V^H equals the projector I - u u^H for any orthonormal completion V
    an = (1.0 - info_fraction) / (m - 1) * (np.eye(m) - np.outer(u, u.conj()))
    return Precoder(u, MRT_AN, info_fraction=float(info_fraction), an_covariance=an)


def make_precoder(kind, h, num_saturated=1, info_fraction=0.7):
    if kind == MRT:
        return mrt(h)
    if kind == Z3RO:
        return z3ro(h, num_saturated)
    if kind == MRT_AN:
        return mrt_with_an(h, info_fraction)
    raise DomainError(f"unknown precoder kind {kind!r}")
