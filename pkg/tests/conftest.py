import re

import pytest

from vdgv.grid import CHAR2, RUNNING, grid_specs
from vdgv.gf import build_field
from vdgv.heis import Heisenberg
from vdgv.lfunc import make_spec
from vdgv.pipeline import Analysis
from vdgv.verify import run_suites


@pytest.fixture(scope="session")
def F3():
    return build_field(3, 1)


@pytest.fixture(scope="session")
def F4():
    return build_field(2, 2)


@pytest.fixture(scope="session")
def F9():
    return build_field(3, 2)


@pytest.fixture(scope="session")
def running():
    """y^3 - y = x(x^3 - x) over F_3."""
    return Analysis(make_spec(**RUNNING))


@pytest.fixture(scope="session")
def char2():
    """y^2 + y = x^3 over F_4."""
    return Analysis(make_spec(**CHAR2))


@pytest.fixture(scope="session")
def G_run(running):
    return running.G


@pytest.fixture(scope="session")
def G_two(char2):
    return char2.G


@pytest.fixture(scope="session")
def small_grid():
    """(Analysis, suite results) for every curve of the small grid, computed once."""
    out = []
    for spec in grid_specs("small"):
        an = Analysis(spec)
        out.append((an, run_suites(an)))
    return out


def make_heis(p0, f, p, R):
    return Heisenberg(make_spec(p0, f, p, R).R)


# one PASS/FAIL line per acceptance criterion in the terminal summary
_criteria: dict = {}


def pytest_runtest_logreport(report):
    m = re.search(r"test_acceptance\.py::test_criterion_(\d+)_(\w+)", report.nodeid)
    if not m:
        return
    key = (int(m.group(1)), m.group(2))
    if report.when == "call" or report.failed:
        prev = _criteria.get(key, "PASS")
        _criteria[key] = "FAIL" if (report.failed or prev == "FAIL") else "PASS"


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for (n, name), status in sorted(_criteria.items()):
        terminalreporter.write_line(f"criterion {n} ({name.replace('_', ' ')}): {status}")
