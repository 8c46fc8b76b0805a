import numpy as np
import pytest

from ghz_noise.noise import PowerLawParams

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def default_noise():
    return PowerLawParams(1e-2, 3.0)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_hermitian(rng, n=8):
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return 0.5 * (a + a.conj().T)


def random_density(rng, rank=8):
    a = rng.normal(size=(8, rank)) + 1j * rng.normal(size=(8, rank))
    rho = a @ a.conj().T
    return rho / np.trace(rho).real


def random_qubit_unitary(rng):
    q, r = np.linalg.qr(rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)))
    return q * (np.diag(r) / np.abs(np.diag(r)))


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
