"""Simulation of PA-distortion-aware precoding for physical-layer security.

A uniform linear array with per-antenna nonlinear PAs serves a legitimate
user over a line-of-sight channel. Distortion is characterised with the
Bussgang decomposition and turned into radiation patterns, SNDR, secrecy
rates and secrecy outage statistics over eavesdropper angles.
"""

__version__ = "0.1.0"

from .array import ArrayGeometry, UserDef, array_response, los_channel
from .bussgang import (
    BussgangStats,
    poly3_bussgang,
    poly3_bussgang_gain,
    poly3_distortion_cov,
    rapp_bussgang_mc,
)
from .errors import ConfigError, DomainError, NumericalError
from .pa import (
    IboSpec,
    Poly3Params,
    RappParams,
    fit_poly3_to_rapp,
    poly3_apply,
    psat_from_ibo,
    rapp_apply,
)
from .precoders import Precoder, mrt, mrt_with_an, z3ro

__all__ = [
    "ArrayGeometry",
    "BussgangStats",
    "ConfigError",
    "DomainError",
    "IboSpec",
    "NumericalError",
    "Poly3Params",
    "Precoder",
    "RappParams",
    "UserDef",
    "array_response",
    "fit_poly3_to_rapp",
    "los_channel",
    "mrt",
    "mrt_with_an",
    "poly3_apply",
    "poly3_bussgang",
    "poly3_bussgang_gain",
    "poly3_distortion_cov",
    "psat_from_ibo",
    "rapp_apply",
    "rapp_bussgang_mc",
    "z3ro",
]
