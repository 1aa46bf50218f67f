"""Scenario configuration.

Configs are TOML files of dotted keys (``array.num_antennas = 16``). Every
key has a built-in default, so an empty file describes the reference
scenario: 16 antennas at half-wavelength spacing, user at 120 degrees,
noise variance 1e-2, unit path loss, modified Rapp PA with S = 2, q = 4,
AM/PM scale -0.315 deg and knee 1.137, Z3RO with one saturated antenna and
a 2000-point angular grid.
"""

import copy
import json
from dataclasses import dataclass, field, fields
from pathlib import Path

import numpy as np
import tomli

from ..array import ArrayGeometry, UserDef
from ..bussgang import MIN_MC_SAMPLES
from ..errors import ConfigError, DomainError
from ..pa import Poly3Params, RappParams
from ..precoders import KINDS

PA_MODELS = ("poly3", "rapp")

DEFAULTS = {
    "array": {"num_antennas": 16, "spacing_over_wavelength": 0.5},
    "scenario": {
        "legit_angle_deg": 120.0,
        "noise_variance": 1e-2,
        "path_loss": 1.0,
        "eve_angle_deg": None,
        "eve_exclusion_deg": 2.0,
    },
    "pa": {
        "models": ["poly3"],
        "amam_gain": 1.0,
        "smoothness_s": 2.0,
        "ampm_scale_deg": -0.315,
        "ampm_knee": 1.137,
        "smoothness_q": 4.0,
        "beta1": None,
        "beta3": None,
        "fit_grid_points": 4096,
        "fit_span_sigmas": 5.0,
    },
    "precoder": {"kinds": list(KINDS), "num_saturated": 1, "info_fraction": 0.7},
    "sweep": {
        "ibo_db": [float(v) for v in range(-20, 1)],
        "angle_ibo_db": [-20.0, -10.0, 0.0],
        "pattern_ibo_db": [-10.0],
    },
    "grid": {"num_points": 2000},
    "montecarlo": {"num_samples": 200_000, "seed": 0},
}


def _flatten(tree, prefix=""):
    out = {}
    for key, value in tree.items():
        path = f"{prefix}{key}"
        if isinstance(value, dict):
            out.update(_flatten(value, path + "."))
        else:
            out[path] = value
    return out


def _complex(value, key):
    if value is None:
        return None
    if isinstance(value, (int, float)):
        return complex(value)
    if isinstance(value, (list, tuple)) and len(value) == 2 and all(isinstance(v, (int, float)) for v in value):
        return complex(value[0], value[1])
    raise ConfigError("expected a number or a [re, im] pair", key)


def _number_list(value, key):
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        value = [value]
    if not isinstance(value, list) or not value or not all(
        isinstance(v, (int, float)) and not isinstance(v, bool) for v in value
    ):
        raise ConfigError("expected a nonempty list of numbers", key)
    return [float(v) for v in value]


def _choice_list(value, allowed, key):
    if isinstance(value, str):
        value = [value]
    if not isinstance(value, list) or not value or any(v not in allowed for v in value):
        raise ConfigError(f"expected a nonempty list drawn from {list(allowed)}", key)
    return list(dict.fromkeys(value))


@dataclass(frozen=True)
class ScenarioConfig:
    values: dict = field(default_factory=lambda: copy.deepcopy(DEFAULTS))

    @classmethod
    def from_mapping(cls, mapping):
        merged = copy.deepcopy(DEFAULTS)
        known = _flatten(DEFAULTS)
        for key, value in _flatten(mapping).items():
            if key not in known:
                raise ConfigError("unknown key", key)
            section, name = key.split(".", 1)
            merged[section][name] = value
        cfg = cls(merged)
        cfg.validate()
        return cfg

    def to_mapping(self):
        return copy.deepcopy(self.values)

    def replace(self, **dotted):
        """New config with dotted-key overrides, e.g. ``replace(**{"montecarlo.seed": 3})``."""
        tree = self.to_mapping()
        for key, value in dotted.items():
            section, name = key.split(".", 1)
            tree.setdefault(section, {})[name] = value
        return ScenarioConfig.from_mapping(tree)

    def __getitem__(self, key):
        section, name = key.split(".", 1)
        return self.values[section][name]

    # typed views -------------------------------------------------------

    @property
    def geometry(self):
        return ArrayGeometry(int(self["array.num_antennas"]), float(self["array.spacing_over_wavelength"]))

    @property
    def legit_angle(self):
        return float(np.deg2rad(self["scenario.legit_angle_deg"]))

    @property
    def legit_user(self):
        return UserDef(self.legit_angle, float(self["scenario.path_loss"]))

    @property
    def noise_variance(self):
        return float(self["scenario.noise_variance"])

    @property
    def per_antenna_input_power(self):
        return 1.0 / self.geometry.num_antennas

    def rapp_params(self, p_sat):
        return RappParams(
            p_sat=p_sat,
            amam_gain=float(self["pa.amam_gain"]),
            smoothness_s=float(self["pa.smoothness_s"]),
            ampm_scale_deg=float(self["pa.ampm_scale_deg"]),
            ampm_knee=float(self["pa.ampm_knee"]),
            smoothness_q=float(self["pa.smoothness_q"]),
        )

    @property
    def fixed_poly3(self):
        """Explicit polynomial coefficients, or None to fit per IBO."""
        b1 = _complex(self["pa.beta1"], "pa.beta1")
        b3 = _complex(self["pa.beta3"], "pa.beta3")
        if b1 is None and b3 is None:
            return None
        return Poly3Params(1.0 + 0j if b1 is None else b1, 0j if b3 is None else b3)

    def validate(self):
        checks = [
            ("array.num_antennas", lambda: self.geometry),
            ("array.spacing_over_wavelength", lambda: self.geometry),
            ("scenario.legit_angle_deg", lambda: self.legit_user),
            ("scenario.path_loss", lambda: self.legit_user),
            ("pa.amam_gain", lambda: self.rapp_params(1.0)),
            ("pa.beta1", lambda: self.fixed_poly3),
        ]
        for key, check in checks:
            try:
                check()
            except (DomainError, TypeError, ValueError) as exc:
                raise ConfigError(str(exc), key) from None
        if not _positive(self["scenario.noise_variance"]):
            raise ConfigError("must be positive", "scenario.noise_variance")
        eve = self["scenario.eve_angle_deg"]
        if eve is not None and not (_number(eve) and 0 <= eve <= 180):
            raise ConfigError("must be null or an angle in [0, 180] degrees", "scenario.eve_angle_deg")
        if not (_number(self["scenario.eve_exclusion_deg"]) and self["scenario.eve_exclusion_deg"] >= 0):
            raise ConfigError("must be nonnegative", "scenario.eve_exclusion_deg")
        self.values["pa"]["models"] = _choice_list(self["pa.models"], PA_MODELS, "pa.models")
        self.values["precoder"]["kinds"] = _choice_list(self["precoder.kinds"], KINDS, "precoder.kinds")
        for key in ("sweep.ibo_db", "sweep.angle_ibo_db", "sweep.pattern_ibo_db"):
            section, name = key.split(".")
            self.values[section][name] = _number_list(self[key], key)
        m = self.geometry.num_antennas
        ms = self["precoder.num_saturated"]
        if not (isinstance(ms, int) and 0 < ms < m / 2):
            raise ConfigError(f"must be an integer with 0 < M_s < M/2 = {m / 2}", "precoder.num_saturated")
        rho = self["precoder.info_fraction"]
        if not (_number(rho) and 0 < rho <= 1):
            raise ConfigError("must lie in (0, 1]", "precoder.info_fraction")
        npts = self["grid.num_points"]
        if not (isinstance(npts, int) and npts >= 2):
            raise ConfigError("must be an integer >= 2", "grid.num_points")
        ns = self["montecarlo.num_samples"]
        if not (isinstance(ns, int) and ns >= MIN_MC_SAMPLES):
            raise ConfigError(f"must be an integer >= {MIN_MC_SAMPLES}", "montecarlo.num_samples")
        seed = self["montecarlo.seed"]
        if not (isinstance(seed, int) and 0 <= seed < 2**64):
            raise ConfigError("must be an unsigned 64-bit integer", "montecarlo.seed")
        for key in ("pa.fit_grid_points",):
            if not (isinstance(self[key], int) and self[key] >= 3):
                raise ConfigError("must be an integer >= 3", key)
        if not _positive(self["pa.fit_span_sigmas"]):
            raise ConfigError("must be positive", "pa.fit_span_sigmas")


def _number(v):
    return isinstance(v, (int, float)) and not isinstance(v, bool) and np.isfinite(v)


def _positive(v):
    return _number(v) and v > 0


def load_config(path):
    """Load a TOML config, or the config echoed in a run manifest (``.json``)."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc.strerror}") from None
    try:
        if path.suffix == ".json":
            data = json.loads(text)
            data = data.get("config", data)
        else:
            data = tomli.loads(text)
    except (ValueError, tomli.TOMLDecodeError) as exc:
        raise ConfigError(f"cannot parse {path}: {exc}") from None
    if not isinstance(data, dict):
        raise ConfigError(f"{path} does not hold a key-value table")
    return ScenarioConfig.from_mapping(data)
