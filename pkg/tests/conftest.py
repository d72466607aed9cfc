import numpy as np
import pytest

from dimerstate.coupling import synthetic_crossover_pair
from dimerstate.eos import EosParams
from dimerstate.units import load_constants

# reported fit of the KNaCuSi4O10 energy-volume curve
REF_V0 = 3271.0
REF_B0 = 54.1
REF_B0P = 3.3


@pytest.fixture(scope="session")
def constants():
    from importlib import resources
    return load_constants(resources.files("dimerstate").joinpath("data/codata2018.txt").read_text())


@pytest.fixture
def reference_params():
    return EosParams(0.0, REF_V0, REF_B0, REF_B0P)


@pytest.fixture
def crossover_pair():
    return synthetic_crossover_pair(J_ambient=-10.0)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
