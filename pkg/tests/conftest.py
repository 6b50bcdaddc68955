import numpy as np
import pytest

from isopencil import _kernels
from isopencil.matrix_core import eig_hermitian
from isopencil.numrange import range_polygon, support_sweep
from isopencil.words import word_trace_sum

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    """Trigger numba compilation once so timed tests measure steady state."""
    B = np.diag(np.ones(2), 1).astype(complex)
    support_sweep(B, 1, 8)
    range_polygon(B, 1, 8)
    word_trace_sum(B, 2, 1)
    _kernels.jacobi_singular_values(B, 5, 1e-15)
    eig_hermitian(B + B.conj().T)
    yield


@pytest.fixture
def B_chain4():
    return np.array([[0, 1, 1, 0], [0, 0, 1, -1], [0, 0, 0, 1], [0, 0, 0, 0]], dtype=complex)


@pytest.fixture
def B_nil5():
    B = np.zeros((5, 5), dtype=complex)
    B[0, 1] = 2
    B[2, 3] = B[2, 4] = B[3, 4] = 1
    return B


@pytest.fixture
def B_five():
    return np.array(
        [
            [0, 1, 0.5, 1, 0],
            [0, 0, 1, -1, -1],
            [0, 0, 0, 1, 1.5],
            [0, 0, 0, 0, 1],
            [0, 0, 0, 0, 0],
        ],
        dtype=complex,
    )


@pytest.fixture
def B_diag4():
    return np.diag([1, 0, -1, 1j]).astype(complex)


def jordan(n):
    return np.diag(np.ones(n - 1), 1).astype(complex)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
