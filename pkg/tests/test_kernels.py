"""Backend equivalence and stencil correctness for the hot kernels."""

import numpy as np
import pytest

from tomokit import kernels


needs_compiled = pytest.mark.skipif(
    "compiled" not in kernels.available_backends(),
    reason="compiled backend not built")


@pytest.fixture
def phase_fields(rng):
    q = np.linspace(-5.0, 5.0, 81)
    p = np.linspace(-5.0, 5.0, 97)
    W = np.exp(-q[:, None] ** 2 - p[None, :] ** 2) * (1.0 + 0.3 * q[:, None])
    return q, p, W


def test_interp1_quintic_exactness():
    # degree-5 polynomials are reproduced exactly away from the edges
    x0, dx = -3.0, 0.125
    xs = x0 + dx * np.arange(64)
    coeffs = np.array([0.3, -1.2, 0.8, 0.05, -0.02, 0.004])
    f = np.polynomial.polynomial.polyval(xs, coeffs)
    xq = np.linspace(-2.3, 3.1, 57)
    got = kernels.interp1(f, x0, dx, xq)
    want = np.polynomial.polynomial.polyval(xq, coeffs)
    assert np.abs(got - want).max() < 1e-12


def test_interp1_zero_outside_grid():
    f = np.ones(16)
    got = kernels.interp1(f, 0.0, 0.5, np.array([-3.0, 9.0, 100.0]))
    assert np.all(got == 0.0)


def test_interp2_separable_polynomial():
    x0 = y0 = -2.0
    dx = dy = 0.1
    xs = x0 + dx * np.arange(41)
    F = np.outer(xs ** 2, xs ** 3 - xs)
    xq = np.array([-1.1, 0.3, 0.7])
    yq = np.array([0.2, -0.9, 1.3])
    got = kernels.interp2(F, x0, dx, y0, dy, xq, yq)
    assert np.abs(got - xq ** 2 * (yq ** 3 - yq)).max() < 1e-12


def test_liouville_rhs_free_stream_sign(phase_fields):
    # with V=0 the rhs is -p dW/dq; Gaussian factor gives the sign cleanly
    q, p, W = phase_fields
    dq, dp = q[1] - q[0], p[1] - p[0]
    rhs = kernels.liouville_rhs(W, p, np.zeros_like(q), dq, dp)
    dWdq = (-2.0 * q[:, None] * W
            + 0.3 * np.exp(-q[:, None] ** 2 - p[None, :] ** 2))
    inner = (slice(4, -4), slice(4, -4))
    assert np.abs((rhs + p[None, :] * dWdq)[inner]).max() < 5e-4


def test_moyal_equals_liouville_for_quadratic(phase_fields):
    q, p, W = phase_fields
    dq, dp = q[1] - q[0], p[1] - p[0]
    vq = 0.5 * q
    a = kernels.liouville_rhs(W, p, vq, dq, dp)
    b = kernels.moyal_rhs(W, p, vq, np.zeros_like(q), dq, dp)
    assert np.array_equal(a, b)


def test_moyal_dispersive_term_matches_analytic(phase_fields):
    # the correction is -(V'''/24) d^3W/dp^3, checked against the Gaussian
    q, p, W = phase_fields
    dq, dp = q[1] - q[0], p[1] - p[0]
    vqqq = np.full_like(q, 6.0)
    diff = kernels.moyal_rhs(W, p, 0.0 * q, vqqq, dq, dp) \
        - kernels.liouville_rhs(W, p, 0.0 * q, dq, dp)
    d3 = (12.0 * p[None, :] - 8.0 * p[None, :] ** 3) * W
    inner = (slice(6, -6), slice(6, -6))
    assert np.abs(diff[inner] + (6.0 / 24.0) * d3[inner]).max() < 2e-3


def test_radon_row_gathers_line_integral():
    # projecting the round Gaussian at any angle gives the 1-d Gaussian
    q = np.linspace(-7.0, 7.0, 257)
    W = np.exp(-q[:, None] ** 2 - q[None, :] ** 2) / np.pi
    xs = np.linspace(-4.0, 4.0, 33)
    s = np.linspace(-9.9, 9.9, 512)
    for theta in (0.0, 0.4, 1.1):
        row = kernels.radon_row(W, q[0], q[1] - q[0], q[0], q[1] - q[0],
                                xs, np.cos(theta), np.sin(theta), s)
        want = np.exp(-xs ** 2) / np.sqrt(np.pi)
        assert np.abs(row - want).max() < 1e-6


@needs_compiled
@pytest.mark.parametrize("name", ["interp1", "interp2", "radon_row",
                                  "liouville_rhs", "moyal_rhs"])
def test_backends_agree(name, phase_fields, rng):
    q, p, W = phase_fields
    dq, dp = q[1] - q[0], p[1] - p[0]
    xq = rng.uniform(-4.5, 4.5, size=40)
    calls = {
        "interp1": lambda: kernels.interp1(W[:, 3], q[0], dq, xq),
        "interp2": lambda: kernels.interp2(W, q[0], dq, p[0], dp, xq,
                                           xq[::-1].copy()),
        "radon_row": lambda: kernels.radon_row(W, q[0], dq, p[0], dp, xq,
                                               0.6, 0.8,
                                               np.linspace(-6.0, 6.0, 200)),
        "liouville_rhs": lambda: kernels.liouville_rhs(W, p, 0.5 * q, dq, dp),
        "moyal_rhs": lambda: kernels.moyal_rhs(W, p, 0.5 * q,
                                               np.full_like(q, 0.6), dq, dp),
    }
    old = kernels.set_backend("compiled")
    try:
        compiled = calls[name]()
        kernels.set_backend("python")
        pure = calls[name]()
    finally:
        kernels.set_backend(old)
    assert np.abs(np.asarray(compiled) - np.asarray(pure)).max() < 1e-13


def test_set_backend_rejects_unknown():
    with pytest.raises(ValueError):
        kernels.set_backend("fortran")
