import numpy as np
import pytest


def random_density(seed, n_max):
    """Random positive semidefinite matrix with unit trace."""
    rng = np.random.default_rng(seed)
    dim = n_max + 1
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    rho = a @ a.conj().T
    return rho / np.trace(rho).real


@pytest.fixture
def rng():
    return np.random.default_rng(7)
