"""Shared fixtures for the test suite"""

import numpy as np
import pytest

from hermitian import from_matrix, set_default_workers
from reference_oracle import relative_error

ORACLE_TOL = 1e-13


@pytest.fixture(autouse=True)
def single_worker():
    """Kernels default to one worker unless a test asks for more"""
    set_default_workers(None)
    yield
    set_default_workers(None)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def projector():
    """|i><i| on n qubits in any storage format"""

    def make(n: int, index: int, fmt="dense", m: int = 5):
        mat = np.zeros((1 << n, 1 << n), dtype=np.complex128)
        mat[index, index] = 1.0
        return from_matrix(mat, fmt, m)

    return make


@pytest.fixture
def assert_oracle():
    """Relative Frobenius comparison of a kernel result against an oracle result"""

    def check(result, expected, tol: float = ORACLE_TOL):
        error = relative_error(result, expected)
        assert error <= tol, f"relative error {error:.3e} exceeds {tol:.0e}"

    return check


@pytest.fixture
def random_block(rng):
    def make(d: int) -> np.ndarray:
        return rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))

    return make
