import sys
import numpy as np
import pytest
from hypothesis import settings

from moufang_lattice.autgroup import standard_group
from moufang_lattice.lattice import paige_lattice
from moufang_lattice.loopcore import CayleyTable
from moufang_lattice.paige import build_paige2

settings.register_profile("default", max_examples=150, deadline=None)
settings.load_profile("default")


@pytest.fixture(scope="session")
def C():
    return build_paige2()


@pytest.fixture(scope="session")
def aut():
    return standard_group()


@pytest.fixture(scope="session")
def lat():
    return paige_lattice()


@pytest.fixture(scope="session")
def five_loop():
    """Smallest loop that is not a group; it is not Moufang either."""
    rows = ("01234", "10342", "24013", "32401", "43120")
    return CayleyTable(np.array([[int(c) for c in row] for row in rows]), 0)


def pytest_terminal_summary(terminalreporter):
    lines = []
    for mod in list(sys.modules.values()):
        if getattr(mod, "__name__", "").endswith("test_acceptance"):
            lines = getattr(mod, "RESULTS", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
