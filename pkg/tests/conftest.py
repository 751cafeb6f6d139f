import numpy as np
import pytest

from simstoq import build_basis, structure_constants_analytic, structure_constants_trace


@pytest.fixture(scope="session")
def basis_of():
    """Cached GellMannBasis factory shared across the whole run."""
    cache = {}

    def get(d):
        if d not in cache:
            cache[d] = build_basis(d)
        return cache[d]

    return get


@pytest.fixture(scope="session")
def table_of(basis_of):
    """Cached trace-oracle structure-constant tables (both parts)."""
    cache = {}

    def get(d):
        if d not in cache:
            cache[d] = structure_constants_trace(basis_of(d))
        return cache[d]

    return get


@pytest.fixture(scope="session")
def analytic_table_of():
    cache = {}

    def get(d):
        if d not in cache:
            cache[d] = structure_constants_analytic(d)
        return cache[d]

    return get


PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)
