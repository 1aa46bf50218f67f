"""Uniform linear array geometry and line-of-sight channels."""

from dataclasses import dataclass

import numpy as np

from .errors import DomainError

_ANGLE_SLACK = 1e-12


@dataclass(frozen=True)
class ArrayGeometry:
    num_antennas: int = 16
    spacing_over_wavelength: float = 0.5

    def __post_init__(self):
        if int(self.num_antennas) != self.num_antennas or self.num_antennas < 2:
            raise DomainError(f"num_antennas must be an integer >= 2, got {self.num_antennas}")
        if not 0.0 < self.spacing_over_wavelength <= 1.0:
            raise DomainError(
                f"spacing_over_wavelength must lie in (0, 1], got {self.spacing_over_wavelength}"
            )


@dataclass(frozen=True)
class UserDef:
    angle: float
    path_loss: float = 1.0

    def __post_init__(self):
        _check_angles(self.angle)
        if not self.path_loss >= 0.0:
            raise DomainError(f"path_loss must be nonnegative, got {self.path_loss}")


def _check_angles(angles):
    a = np.asarray(angles, dtype=float)
    if not np.all(np.isfinite(a)) or np.any(a < -_ANGLE_SLACK) or np.any(a > np.pi + _ANGLE_SLACK):
        raise DomainError("angles must lie in [0, pi] radians")


def array_response(geom, angles):
    """Unit-gain ULA response ``exp(-j m 2 pi (d/lambda) cos(theta))``.

    A scalar angle yields a length-M vector; an array of angles yields one
    row per angle (shape ``(len(angles), M)``).
    """
    _check_angles(angles)
    theta = np.asarray(angles, dtype=float)
    m = np.arange(geom.num_antennas)
    phase = -2.0 * np.pi * geom.spacing_over_wavelength * np.multiply.outer(np.cos(theta), m)
    return np.exp(1j * phase)


def los_channel(geom, user):
    return np.sqrt(user.path_loss) * array_response(geom, user.angle)
