import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


def rand_complex(rng, *shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def rand_hermitian(rng, d):
    a = rand_complex(rng, d, d)
    return (a + a.conj().T) / 2


def rand_psd(rng, d, rank=None):
    a = rand_complex(rng, d, rank or d)
    return a @ a.conj().T


def rand_unit(rng, d):
    v = rand_complex(rng, d)
    return v / np.linalg.norm(v)


# one line per acceptance criterion, printed in the terminal summary
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
