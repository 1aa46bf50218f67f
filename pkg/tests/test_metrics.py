import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from z3rosec import metrics
from z3rosec.array import ArrayGeometry, UserDef, array_response, los_channel
from z3rosec.bussgang import poly3_bussgang
from z3rosec.errors import DomainError, NumericalError
from z3rosec.pa import IboSpec, Poly3Params, RappParams, fit_poly3_to_rapp, psat_from_ibo
from z3rosec.precoders import mrt, mrt_with_an, z3ro

THETA_L = np.deg2rad(120.0)


def fitted(ibo_db):
    return fit_poly3_to_rapp(RappParams(psat_from_ibo(IboSpec(ibo_db, 1 / 16))), 1 / 16)


def test_grid():
    g = metrics.angular_grid(2000)
    assert g[0] == 0.0 and g[-1] == np.pi and np.all(np.diff(g) > 0)
    with pytest.raises(DomainError):
        metrics.angular_grid(1)


def test_signal_pattern_matched_filter_peak(geom, legit_channel):
    pre = mrt(legit_channel)
    p = metrics.signal_pattern(geom, np.eye(16), pre, np.array([THETA_L]))
    assert p[0] == pytest.approx(16.0, rel=1e-13)


def test_signal_pattern_linear_pa_is_array_factor(geom, legit_channel):
    pre = z3ro(legit_channel)
    grid = metrics.angular_grid(500)
    p = metrics.signal_pattern(geom, 0.9j * np.eye(16), pre, grid)
    af = np.abs(array_response(geom, grid) @ pre.weights) ** 2
    np.testing.assert_allclose(p, 0.81 * af, rtol=1e-12)


def test_signal_pattern_scalar_loop_oracle(geom, legit_channel):
    pre = mrt(legit_channel)
    stats = poly3_bussgang(fitted(-10.0), pre.transmit_covariance())
    grid = metrics.angular_grid(2000)
    fast = metrics.signal_pattern(geom, stats.gain, pre, grid)
    g = np.diag(stats.gain)
    w = pre.weights

    def oracle(theta):
        acc = 0j
        for m in range(16):
            acc += np.exp(-1j * m * np.pi * np.cos(theta)) * g[m] * w[m]
        return abs(acc) ** 2

    assert fast[np.argmax(fast)] == pytest.approx(oracle(grid[np.argmax(fast)]), rel=1e-12)
    assert metrics.signal_pattern(geom, stats.gain, pre, np.array([THETA_L]))[0] == pytest.approx(
        oracle(THETA_L), rel=1e-12
    )
    for i in (0, 333, 1500, 1999):
        assert fast[i] == pytest.approx(oracle(grid[i]), rel=1e-10, abs=1e-14)


def test_signal_pattern_dimension_mismatch(geom):
    with pytest.raises(DomainError):
        metrics.signal_pattern(geom, np.eye(4), np.ones(4) / 2, metrics.angular_grid(10))
    with pytest.raises(DomainError):
        metrics.distortion_pattern(geom, np.eye(3), metrics.angular_grid(10))


def test_distortion_pattern_zero(geom):
    p = metrics.distortion_pattern(geom, np.zeros((16, 16)), metrics.angular_grid(100))
    assert not np.any(p)


def test_z3ro_distortion_null(geom, legit_channel):
    pre = z3ro(legit_channel)
    stats = poly3_bussgang(fitted(-10.0), pre.transmit_covariance())
    grid = metrics.angular_grid(2000)
    peak = metrics.distortion_pattern(geom, stats.distortion_cov, grid).max()
    at_user = metrics.distortion_pattern(geom, stats.distortion_cov, np.array([THETA_L]))[0]
    assert at_user / peak < 1e-10


def test_mrt_distortion_follows_signal(geom, legit_channel):
    pre = mrt(legit_channel)
    stats = poly3_bussgang(fitted(-5.0), pre.transmit_covariance())
    grid = metrics.angular_grid(2000)
    dist = metrics.distortion_pattern(geom, stats.distortion_cov, grid)
    assert abs(grid[np.argmax(dist)] - THETA_L) <= grid[1]


def test_clamp_accounting(geom):
    cov = -1e-30 * np.eye(16)
    values, clamped = metrics.distortion_pattern(geom, cov, metrics.angular_grid(100), return_clamped=True)
    assert clamped == 100 and not np.any(values)
    metrics.check_clamps(2, 2000)
    with pytest.raises(NumericalError):
        metrics.check_clamps(3, 2000)


def test_directivity_examples():
    grid = metrics.angular_grid(2000)
    rep = metrics.total_power_and_directivity(np.full(2000, 0.3), np.full(2000, 0.2), grid)
    np.testing.assert_allclose(rep.directivity, 1.0, rtol=1e-12)
    assert rep.total_power == pytest.approx(0.5 * np.pi)
    sig = np.cos(grid) ** 2 + 0.1
    a = metrics.total_power_and_directivity(sig, 0 * sig, grid)
    b = metrics.total_power_and_directivity(2 * sig, 0 * sig, grid)
    np.testing.assert_allclose(a.directivity, b.directivity, rtol=1e-14)


@pytest.mark.parametrize("kind", ["mrt", "z3ro", "mrt-an"])
def test_directivity_integrates_to_pi(geom, legit_channel, kind):
    from z3rosec.precoders import make_precoder

    pre = make_precoder(kind, legit_channel)
    stats = poly3_bussgang(fitted(-5.0), pre.transmit_covariance())
    grid = metrics.angular_grid(2000)
    rep = metrics.pattern_report(geom, stats, pre, grid)
    assert np.trapezoid(rep.directivity, grid) == pytest.approx(np.pi, rel=1e-3)
    np.testing.assert_allclose(rep.directivity_signal + rep.directivity_distortion
                               + (0 if rep.noise is None else rep.noise / (rep.total_power / np.pi)),
                               rep.directivity, rtol=1e-12)


def test_sndr_without_distortion_is_snr(legit_channel):
    pre = mrt(legit_channel)
    zero = np.zeros((16, 16))
    s = metrics.sndr(legit_channel, np.eye(16), pre, zero, 1e-2)[0]
    assert s == pytest.approx(metrics.snr(legit_channel, np.eye(16), pre, 1e-2)[0])
    assert s == pytest.approx(1600.0, rel=1e-12)
    assert 10 * np.log10(s) == pytest.approx(32.0412, abs=1e-4)
    with pytest.raises(DomainError):
        metrics.sndr(legit_channel, np.eye(16), pre, zero, 0.0)


def test_z3ro_user_sndr_equals_snr(legit_channel):
    pre = z3ro(legit_channel)
    for ibo in (-20.0, -10.0, -5.0, 0.0):
        stats = poly3_bussgang(fitted(ibo), pre.transmit_covariance())
        a = metrics.sndr(legit_channel, stats.gain, pre, stats.distortion_cov, 1e-2)[0]
        b = metrics.snr(legit_channel, stats.gain, pre, 1e-2)[0]
        assert abs(a - b) <= 1e-8 * b


def test_an_not_received_by_user_with_linear_pa(legit_channel):
    pre = mrt_with_an(legit_channel, 0.7)
    sig, dist, an = metrics.received_powers(legit_channel, np.eye(16), pre, np.zeros((16, 16)))
    assert sig[0] == pytest.approx(0.7 * 16)
    assert an[0] < 1e-12


@settings(max_examples=30, deadline=None)
@given(ibo=st.floats(-25, 2), kind=st.sampled_from(["mrt", "z3ro", "mrt-an"]), seed=st.integers(0, 1000))
def test_sndr_never_exceeds_snr(ibo, kind, seed):
    from z3rosec.precoders import make_precoder

    geom = ArrayGeometry(16)
    theta = np.random.default_rng(seed).uniform(0, np.pi)
    h = los_channel(geom, UserDef(theta, 1.0))
    pre = make_precoder(kind, h)
    stats = poly3_bussgang(fitted(ibo), pre.transmit_covariance())
    rows = array_response(geom, metrics.angular_grid(300))
    a = metrics.sndr(rows, stats.gain, pre, stats.distortion_cov, 1e-2)
    b = metrics.snr(rows, stats.gain, pre, 1e-2)
    assert np.all(a <= b * (1 + 1e-12))


def test_distortion_monotone_in_beta3(geom, legit_channel):
    pre = mrt(legit_channel)
    grid = metrics.angular_grid(200)
    prev = np.zeros(200)
    for b3 in (0.0, 0.1, 0.5, 1.0, 2.0):
        stats = poly3_bussgang(Poly3Params(1.0, -b3 * np.exp(0.3j)), pre.transmit_covariance())
        cur = metrics.distortion_pattern(geom, stats.distortion_cov, grid)
        assert np.all(cur >= prev * (1 - 1e-12))
        prev = cur


def test_secrecy_rate_examples():
    assert metrics.secrecy_rate(5.0, 5.0) == 0
    assert metrics.secrecy_rate(3.0, 1.0) == pytest.approx(1.0)
    assert metrics.secrecy_rate(1.0, 3.0) == 0
    with pytest.raises(DomainError):
        metrics.secrecy_rate(-1.0, 0.0)


@given(a=st.floats(0, 1e6), b=st.floats(0, 1e6), d=st.floats(0, 1e6))
def test_secrecy_rate_monotone(a, b, d):
    r = metrics.secrecy_rate(a, b)
    assert r >= 0
    assert metrics.secrecy_rate(a + d, b) >= r
    assert metrics.secrecy_rate(a, b + d) <= r


def test_outage_examples():
    rates = np.array([0.0, 1.0, 2.5, 4.0])
    assert metrics.outage_curve(rates, 0.0) == 0
    assert metrics.outage_curve(np.full(10, 2.0), 2.1) == 1
    assert metrics.outage_curve(rates, np.inf) == 1
    np.testing.assert_allclose(metrics.outage_curve(rates, [0.5, 1.0, 3.0]), [0.25, 0.25, 0.75])
    with pytest.raises(DomainError):
        metrics.outage_curve([], 1.0)


def test_quantile_examples():
    assert metrics.secrecy_rate_at_outage(np.full(7, 3.3), 0.37) == 3.3
    assert metrics.secrecy_rate_at_outage(np.arange(10.0)[::-1], 0.5) == 5.0
    for p in (0.0, 1.0):
        with pytest.raises(DomainError):
            metrics.secrecy_rate_at_outage(np.arange(3.0), p)


rate_arrays = st.lists(st.floats(0, 20), min_size=1, max_size=200).map(np.array)


@given(rates=rate_arrays, t1=st.floats(0, 25), t2=st.floats(0, 25))
def test_outage_monotone_step(rates, t1, t2):
    lo, hi = sorted((t1, t2))
    a, b = metrics.outage_curve(rates, [lo, hi])
    assert 0 <= a <= b <= 1


@given(rates=rate_arrays, p1=st.floats(0.001, 0.999), p2=st.floats(0.001, 0.999))
def test_quantile_monotone_and_consistent(rates, p1, p2):
    lo, hi = sorted((p1, p2))
    q_lo = metrics.secrecy_rate_at_outage(rates, lo)
    assert q_lo <= metrics.secrecy_rate_at_outage(rates, hi)
    # the returned threshold is met with outage at most p
    assert metrics.outage_curve(rates, q_lo) <= lo + 1e-12


def test_secrecy_report_zero_at_user(geom, legit_channel):
    pre = mrt(legit_channel)
    stats = poly3_bussgang(fitted(-10.0), pre.transmit_covariance())
    angles = np.union1d(metrics.angular_grid(2000), [THETA_L])
    rep = metrics.secrecy_report(geom, THETA_L, stats, pre, 1e-2, angles)
    assert rep.rates[np.flatnonzero(angles == THETA_L)[0]] == 0.0
    assert np.all(rep.rates >= 0)
    assert set(rep.summary()) == {"secrecy_rate_p05", "secrecy_rate_p10", "secrecy_rate_mean"}


def test_to_db():
    np.testing.assert_allclose(metrics.to_db([1.0, 100.0]), [0.0, 20.0])
    assert metrics.to_db(0.0) == -np.inf
