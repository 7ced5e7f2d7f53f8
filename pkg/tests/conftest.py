import numpy as np
import pytest
from hypothesis import settings

from qsep.states import bell_state, maximally_mixed, projector

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

ACCEPTANCE_LINES = []


@pytest.fixture
def singlet():
    return projector(bell_state("psi_minus"))


@pytest.fixture
def mixed4():
    return maximally_mixed((2, 2))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_hermitian(n, rng):
    G = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return (G + G.conj().T) / 2


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
