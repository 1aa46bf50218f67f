"""Experiment recipes: radiation pattern, secrecy vs IBO, secrecy vs angle, SNDR vs IBO."""

from dataclasses import dataclass, field

import numpy as np

from .. import metrics
from ..array import array_response, los_channel
from ..bussgang import poly3_bussgang, rapp_bussgang_mc
from ..pa import IboSpec, fit_poly3_to_rapp, psat_from_ibo
from ..precoders import MRT, Z3RO, make_precoder


@dataclass
class Table:
    header: list
    rows: list = field(default_factory=list)


@dataclass
class RunArtifact:
    experiment: str
    tables: dict
    details: dict = field(default_factory=dict)


@dataclass(frozen=True, eq=False)
class OperatingPoint:
    precoder: object
    stats: object
    pa_meta: dict


def build_precoder(cfg, kind):
    h = los_channel(cfg.geometry, cfg.legit_user)
    return make_precoder(kind, h, cfg["precoder.num_saturated"], cfg["precoder.info_fraction"])


def operating_point(cfg, kind, pa_model, ibo_db):
    """Precoder and Bussgang statistics for one (precoder, PA model, IBO) point.

    IBO is referenced to the average per-antenna input power ``1/M``.
    """
    precoder = build_precoder(cfg, kind)
    p_in = cfg.per_antenna_input_power
    p_sat = psat_from_ibo(IboSpec(ibo_db, p_in))
    rapp = cfg.rapp_params(p_sat)
    if pa_model == "poly3":
        poly = cfg.fixed_poly3
        fitted = poly is None
        if fitted:
            poly = fit_poly3_to_rapp(rapp, p_in, cfg["pa.fit_grid_points"], cfg["pa.fit_span_sigmas"])
        stats = poly3_bussgang(poly, precoder.transmit_covariance())
        meta = {"beta1": [poly.beta1.real, poly.beta1.imag], "beta3": [poly.beta3.real, poly.beta3.imag],
                "fitted": fitted}
    elif pa_model == "rapp":
        stats = rapp_bussgang_mc(rapp, precoder, cfg["montecarlo.num_samples"], cfg["montecarlo.seed"])
        meta = {}
    else:
        raise ValueError(f"unknown PA model {pa_model!r}")
    meta.update(stats.metadata(), p_sat=p_sat)
    return OperatingPoint(precoder, stats, meta)


def _grid(cfg):
    return metrics.angular_grid(cfg["grid.num_points"])


def _ibo_tag(ibo_db):
    return f"{ibo_db:g}".replace("-", "m")


def run_pattern_experiment(cfg):
    geom = cfg.geometry
    grid = _grid(cfg)
    tables, details = {}, {}
    for kind in cfg["precoder.kinds"]:
        for pa_model in cfg["pa.models"]:
            for ibo in cfg["sweep.pattern_ibo_db"]:
                op = operating_point(cfg, kind, pa_model, ibo)
                report = metrics.pattern_report(geom, op.stats, op.precoder, grid)
                d_sig = metrics.to_db(report.directivity_signal)
                d_dist = metrics.to_db(report.directivity_distortion)
                name = f"pattern__{kind}__{pa_model}__ibo{_ibo_tag(ibo)}.csv"
                tables[name] = Table(
                    ["angle_deg", "directivity_signal_db", "directivity_distortion_db"],
                    list(zip(np.rad2deg(grid), d_sig, d_dist)),
                )
                details[name] = {"ibo_db": ibo, "total_power": report.total_power, "pa": op.pa_meta}
    return RunArtifact("pattern", tables, details)


def run_secrecy_vs_ibo(cfg):
    geom = cfg.geometry
    grid = _grid(cfg)
    tables, details = {}, {}
    for kind in cfg["precoder.kinds"]:
        for pa_model in cfg["pa.models"]:
            name = f"secrecy_ibo__{kind}__{pa_model}.csv"
            table = Table(["ibo_db", "secrecy_rate_p05", "secrecy_rate_p10", "secrecy_rate_mean"])
            points = []
            for ibo in cfg["sweep.ibo_db"]:
                op = operating_point(cfg, kind, pa_model, ibo)
                rep = metrics.secrecy_report(
                    geom, cfg.legit_angle, op.stats, op.precoder, cfg.noise_variance, grid,
                    cfg["scenario.path_loss"],
                )
                s = rep.summary()
                table.rows.append((ibo, s["secrecy_rate_p05"], s["secrecy_rate_p10"], s["secrecy_rate_mean"]))
                points.append({"ibo_db": ibo, "pa": op.pa_meta})
            tables[name] = table
            details[name] = points
    return RunArtifact("secrecy-ibo", tables, details)


def run_secrecy_vs_angle(cfg):
    """Secrecy rate of MRT and Z3RO per eavesdropper angle.

    The legitimate angle is inserted into the uniform grid so the output
    shows the zero at the user.
    """
    geom = cfg.geometry
    angles = np.union1d(_grid(cfg), [cfg.legit_angle])
    tables, details = {}, {}
    for pa_model in cfg["pa.models"]:
        for ibo in cfg["sweep.angle_ibo_db"]:
            cols = {}
            metas = {}
            for kind in (MRT, Z3RO):
                op = operating_point(cfg, kind, pa_model, ibo)
                rep = metrics.secrecy_report(
                    geom, cfg.legit_angle, op.stats, op.precoder, cfg.noise_variance, angles,
                    cfg["scenario.path_loss"],
                )
                cols[kind] = rep.rates
                metas[kind] = op.pa_meta
            name = f"secrecy_angle__{pa_model}__ibo{_ibo_tag(ibo)}.csv"
            tables[name] = Table(
                ["angle_deg", "R_s_mrt", "R_s_z3ro"], list(zip(np.rad2deg(angles), cols[MRT], cols[Z3RO]))
            )
            details[name] = {"ibo_db": ibo, "pa": metas}
    return RunArtifact("secrecy-angle", tables, details)


def worst_case_eve_angle(cfg, op, grid):
    """Grid angle maximizing eavesdropper SNDR outside the exclusion window around the user."""
    rows = np.sqrt(cfg["scenario.path_loss"]) * array_response(cfg.geometry, grid)
    s = metrics.sndr(rows, op.stats.gain, op.precoder, op.stats.distortion_cov, cfg.noise_variance)
    window = np.deg2rad(cfg["scenario.eve_exclusion_deg"])
    s = np.where(np.abs(grid - cfg.legit_angle) <= window, -np.inf, s)
    return float(grid[int(np.argmax(s))])


def run_sndr_vs_ibo(cfg):
    geom = cfg.geometry
    grid = _grid(cfg)
    amp = np.sqrt(cfg["scenario.path_loss"])
    legit = amp * array_response(geom, cfg.legit_angle)
    fixed_eve = cfg["scenario.eve_angle_deg"]
    tables, details = {}, {}
    for kind in cfg["precoder.kinds"]:
        for pa_model in cfg["pa.models"]:
            name = f"sndr_ibo__{kind}__{pa_model}.csv"
            table = Table(["ibo_db", "sndr_legit_db", "snr_legit_db", "sndr_eve_db", "snr_eve_db"])
            points = []
            for ibo in cfg["sweep.ibo_db"]:
                op = operating_point(cfg, kind, pa_model, ibo)
                if fixed_eve is None:
                    eve_angle = worst_case_eve_angle(cfg, op, grid)
                else:
                    eve_angle = float(np.deg2rad(fixed_eve))
                eve = amp * array_response(geom, eve_angle)
                g, c, nv = op.stats.gain, op.stats.distortion_cov, cfg.noise_variance
                row = [
                    metrics.sndr(legit, g, op.precoder, c, nv)[0],
                    metrics.snr(legit, g, op.precoder, nv)[0],
                    metrics.sndr(eve, g, op.precoder, c, nv)[0],
                    metrics.snr(eve, g, op.precoder, nv)[0],
                ]
                table.rows.append((ibo, *metrics.to_db(row)))
                points.append({"ibo_db": ibo, "eve_angle_deg": float(np.rad2deg(eve_angle)), "pa": op.pa_meta})
            tables[name] = table
            details[name] = points
    return RunArtifact("sndr-ibo", tables, details)


EXPERIMENTS = {
    "pattern": run_pattern_experiment,
    "secrecy-ibo": run_secrecy_vs_ibo,
    "secrecy-angle": run_secrecy_vs_angle,
    "sndr-ibo": run_sndr_vs_ibo,
}
