import math

import numpy as np
import pytest

from fisherdist.grid import Grid, renormalize

ACCEPTANCE_RESULTS = []


def normal_pdf(x, mean=0.0, sd=1.0):
    """Independent closed-form normal density, used as oracle."""
    x = np.asarray(x, dtype=float)
    return np.exp(-0.5 * ((x - mean) / sd) ** 2) / (sd * math.sqrt(2.0 * math.pi))


def normal_density(grid, mean=0.0, sd=1.0):
    return renormalize(normal_pdf(grid.points, mean, sd), grid)


@pytest.fixture(scope="session")
def grid():
    return Grid(-12.0, 12.0, 4801)


@pytest.fixture(scope="session")
def wide_grid():
    return Grid(-12.0, 32.0, 8801)


@pytest.fixture
def record_criterion():
    def record(number, name, passed, detail=""):
        ACCEPTANCE_RESULTS.append((number, name, bool(passed), detail))

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number, name, passed, detail in sorted(ACCEPTANCE_RESULTS, key=lambda r: r[0]):
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"[{status}] criterion {number}: {name} {detail}".rstrip())
