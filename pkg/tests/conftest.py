import numpy as np
import pytest

from z3rosec.array import ArrayGeometry, UserDef, los_channel

TABLE_I_ANGLE = np.deg2rad(120.0)


@pytest.fixture
def geom():
    return ArrayGeometry(16, 0.5)


@pytest.fixture
def legit_channel(geom):
    return los_channel(geom, UserDef(TABLE_I_ANGLE, 1.0))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_unit_vector(rng, m):
    w = rng.standard_normal(m) + 1j * rng.standard_normal(m)
    return w / np.linalg.norm(w)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(RESULTS):
            terminalreporter.write_line(line)
