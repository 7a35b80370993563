"""Oscillator eigenfunction values: orthonormality, small-n forms, stability."""

import math

import numpy as np

from tomokit.core.hermite import hermite_functions, hermite_values


def test_small_n_closed_forms():
    x = np.linspace(-3.0, 3.0, 41)
    psi = hermite_functions(2, x)
    g = np.exp(-x ** 2 / 2.0) / math.pi ** 0.25
    assert np.abs(psi[0] - g).max() < 1e-14
    assert np.abs(psi[1] - math.sqrt(2.0) * x * g).max() < 1e-14
    assert np.abs(psi[2] - (2.0 * x ** 2 - 1.0) / math.sqrt(2.0) * g).max() < 1e-14


def test_orthonormality():
    x = np.linspace(-12.0, 12.0, 2401)
    psi = hermite_functions(30, x)
    gram = psi @ psi.T * (x[1] - x[0])
    assert np.abs(gram - np.eye(31)).max() < 1e-12


def test_large_order_no_overflow():
    x = np.linspace(-22.0, 22.0, 4401)
    psi = hermite_functions(120, x)
    assert np.all(np.isfinite(psi))
    # the top function still integrates to one
    norm = np.trapezoid(psi[120] ** 2, dx=x[1] - x[0])
    assert abs(norm - 1.0) < 1e-10


def test_values_match_functions():
    # psi_n = H_n e^{-x^2/2} / (pi^{1/4} 2^{n/2} sqrt(n!))
    x = np.linspace(-4.0, 4.0, 17)
    psi = hermite_functions(8, x)
    H = hermite_values(8, x)
    weight = np.exp(-x ** 2 / 2.0) / math.pi ** 0.25
    for n in (0, 3, 8):
        scale = 2.0 ** (n / 2.0) * math.sqrt(math.factorial(n))
        assert np.abs(psi[n] - H[n] * weight / scale).max() < 1e-12


def test_values_overflow_raises():
    import pytest
    with np.errstate(over="ignore", invalid="ignore"):
        with pytest.raises(OverflowError):
            hermite_values(400, np.array([30.0]))


def test_shape_broadcasting():
    x = np.zeros((3, 5))
    assert hermite_functions(4, x).shape == (5, 3, 5)
    assert hermite_values(2, 1.5).shape == (3,)
