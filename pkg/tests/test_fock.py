"""Number-basis operators and state evaluation in each representation."""

import math

import numpy as np

from conftest import random_density
from tomokit.core.fock import (
    annihilation,
    fock_optical_eval,
    fock_optical_grid,
    fock_wigner_eval,
    momentum_operator,
    number_operator,
    position_operator,
)
from tomokit.core.grids import GridSpec


def test_operator_algebra():
    dim = 12
    a = annihilation(dim)
    ad = a.conj().T
    comm = a @ ad - ad @ a
    # the commutator identity holds away from the truncation corner
    assert np.abs(comm[:-1, :-1] - np.eye(dim)[:-1, :-1]).max() < 1e-14
    assert np.abs(number_operator(dim) - ad @ a).max() < 1e-14
    q = position_operator(dim)
    p = momentum_operator(dim)
    assert np.abs(q - (a + ad) / math.sqrt(2.0)).max() < 1e-14
    assert np.abs(p - (a - ad) / (1j * math.sqrt(2.0))).max() < 1e-14


def test_ground_and_first_excited_rows():
    x = np.linspace(-4.0, 4.0, 101)
    rho0 = np.diag([1.0 + 0.0j])
    w0 = fock_optical_eval(rho0, x, 0.7)
    assert np.abs(w0 - np.exp(-x ** 2) / math.sqrt(math.pi)).max() < 1e-14
    rho1 = np.diag([0.0, 1.0 + 0.0j])
    w1 = fock_optical_eval(rho1, x, 0.0)
    assert np.abs(w1 - 2.0 * x ** 2 * np.exp(-x ** 2) / math.sqrt(math.pi)).max() < 1e-14


def test_theta_vector_evaluation_shape():
    rho = random_density(3, 4)
    x = np.linspace(-3.0, 3.0, 21)
    theta = np.linspace(0.0, 3.0, 5)
    vals = fock_optical_eval(rho, x, theta)
    assert vals.shape == (5, 21)
    for j, th in enumerate(theta):
        assert np.abs(vals[j] - fock_optical_eval(rho, x, th)).max() < 1e-15


def test_wigner_values_of_number_states():
    assert abs(fock_wigner_eval(np.diag([1.0 + 0j]), 0.0, 0.0)
               - 1.0 / math.pi) < 1e-14
    assert abs(fock_wigner_eval(np.diag([0.0, 1.0 + 0j]), 0.0, 0.0)
               + 1.0 / math.pi) < 1e-14


def test_wigner_trace_pairing():
    # 2 pi iint W_rho W_sigma = tr(rho sigma) for random mixed states
    rho = random_density(11, 4)
    sigma = random_density(12, 4)
    q = np.linspace(-8.0, 8.0, 321)
    Wr = fock_wigner_eval(rho, q[:, None], q[None, :])
    Ws = fock_wigner_eval(sigma, q[:, None], q[None, :])
    dq = q[1] - q[0]
    got = 2.0 * math.pi * np.sum(Wr * Ws) * dq * dq
    want = np.trace(rho @ sigma).real
    assert abs(got - want) < 1e-9


def test_optical_grid_is_normalized():
    rho = random_density(21, 6)
    grid = fock_optical_grid(rho, GridSpec())
    assert grid.normalization_defect() < 1e-13


def test_hermiticity_of_rows():
    # w is real for Hermitian rho even with complex off-diagonal entries
    rho = random_density(5, 5)
    vals = fock_optical_eval(rho, np.linspace(-2, 2, 11), 1.3)
    assert np.all(np.isreal(vals))
