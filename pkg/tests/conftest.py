import numpy as np
import pytest

from coneperturb import cones as C
from coneperturb.rng import stream

XHAT = np.array([0.6, 0.8])


@pytest.fixture
def rng():
    return stream(12345, "tests")


def all_cones():
    return [
        C.Orthant(3),
        C.Lorentz(2),
        C.Psd(3),
        C.Copositive(3),
        C.Lexicographic(),
        C.Ray(3, [0.0, 0.6, 0.8]),
        C.GridNonneg(np.linspace(0.0, 1.0, 5)),
    ]


def pytest_configure(config):
    config.acceptance_lines = {}


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = getattr(config, "acceptance_lines", {})
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(lines):
        terminalreporter.write_line(lines[key])
