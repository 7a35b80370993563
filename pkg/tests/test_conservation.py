"""Moment harmonics, evolution fluxes, class projection, classical extraction."""

import math
import warnings

import numpy as np
import pytest

from conftest import random_density
from tomokit.conservation import (
    classical_rho_extraction,
    harmonic_residual,
    hermite_class_projection,
    moment_profile,
    normalization_flux_cubic,
    ode_residual,
    symplectic_moment_residual,
)
from tomokit.core.catalog import (
    StateSpec,
    analytic_source,
    catalog_optical_grid,
    catalog_wigner_grid,
)
from tomokit.core.fock import (
    fock_optical_eval,
    fock_optical_grid,
    fock_wigner_grid,
    momentum_operator,
    position_operator,
)
from tomokit.core.grids import GridSpec, OpticalTomogramGrid


# -- moment profiles and harmonic content ------------------------------------------


def test_first_moment_of_cos3_state():
    w = catalog_optical_grid("example-cos3")
    g = moment_profile(w, 1)
    assert np.abs(g.values - np.cos(g.theta) ** 3).max() < 1e-12


def test_harmonic_split_of_cos_cubed():
    # cos^3 = (3/4) cos + (1/4) cos 3t; the order-1 window allows only k=1
    w = catalog_optical_grid("example-cos3")
    fit = harmonic_residual(moment_profile(w, 1))
    assert fit.allowed[1][0] == pytest.approx(0.75, abs=1e-12)
    assert fit.forbidden[3][0] == pytest.approx(0.25, abs=1e-12)
    assert fit.residual == pytest.approx(0.25, abs=1e-12)


def test_harmonics_pass_for_gaussians():
    w = catalog_optical_grid("coherent")
    g1 = moment_profile(w, 1)
    assert np.abs(g1.values - np.cos(g1.theta)).max() < 1e-12
    assert harmonic_residual(g1).residual < 1e-12
    ground = catalog_optical_grid("ground")
    g2 = moment_profile(ground, 2)
    assert np.abs(g2.values - 0.5).max() < 1e-12
    assert harmonic_residual(g2).residual < 1e-12


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_fock_class_states_have_no_forbidden_harmonics(m):
    rho = random_density(31, 5)
    w = fock_optical_grid(rho)
    assert harmonic_residual(moment_profile(w, m)).residual < 1e-12


def test_parity_violating_profile_is_caught():
    # order 1 admits only odd harmonics; an even term is forbidden
    spec = GridSpec()
    base = np.exp(-(spec.x[None, :] - 0.3 * np.cos(2.0 * spec.theta[:, None])) ** 2)
    w = OpticalTomogramGrid(spec, base / math.sqrt(math.pi))
    fit = harmonic_residual(moment_profile(w, 1))
    assert fit.residual > 0.2


# -- the moment transport identity --------------------------------------------------


def test_ode_residual_of_cos3():
    w = catalog_optical_grid("example-cos3")
    g = moment_profile(w, 1)
    resid = ode_residual(g)
    assert np.abs(resid + 2.0 * np.cos(3.0 * g.theta)).max() < 1e-10
    l2 = math.sqrt(float(np.sum(resid ** 2)) * (g.theta[1] - g.theta[0]))
    assert l2 == pytest.approx(math.sqrt(2.0 * math.pi), abs=1e-9)


def test_ode_residual_kernel_members():
    # cos(theta) for m=1 and cos(2 theta), constants for m=2 are annihilated
    w = catalog_optical_grid("coherent")
    assert np.abs(ode_residual(moment_profile(w, 1))).max() < 1e-8
    ground = catalog_optical_grid("ground")
    assert np.abs(ode_residual(moment_profile(ground, 2))).max() < 1e-8


def test_ode_residual_warns_on_noise():
    spec = GridSpec()
    rng = np.random.default_rng(0)
    noisy = np.exp(-spec.x[None, :] ** 2) / math.sqrt(math.pi) \
        * (1.0 + 1e-3 * rng.normal(size=(spec.n_theta, 1)))
    w = OpticalTomogramGrid(spec, noisy)
    with pytest.warns(RuntimeWarning):
        ode_residual(moment_profile(w, 1))


def test_moment_profile_warns_on_edge_mass():
    spec = GridSpec()
    w = OpticalTomogramGrid(spec, np.full((spec.n_theta, spec.n_x), 1.0 / 14.0))
    with pytest.warns(RuntimeWarning):
        moment_profile(w, 2)


# -- cubic flux ----------------------------------------------------------------------


def test_cubic_flux_of_cos3():
    w = catalog_optical_grid("example-cos3")
    flux = normalization_flux_cubic(w, 1.0)
    theta = w.spec.theta
    at_quarter = float(np.interp(math.pi / 4.0, theta, flux))
    assert at_quarter == pytest.approx(1.5, abs=1e-9)
    # the angular integral vanishes identically for this profile
    assert abs(float(np.sum(flux)) * (theta[1] - theta[0])) < 1e-12


def test_cubic_flux_vanishes_on_class_members():
    for name in ("ground", "coherent", "w1"):
        w = catalog_optical_grid(name)
        assert np.abs(normalization_flux_cubic(w, 1.0)).max() < 1e-10


# -- symplectic moments ---------------------------------------------------------------


@pytest.mark.parametrize("m", [0, 1, 2, 3, 4])
def test_m1_moments_are_polynomial(m):
    assert symplectic_moment_residual(analytic_source("m1"), m) < 1e-12


def test_vanishing_moments_hit_the_floor():
    # odd moments of the even ground state vanish; misfit must read ~0
    assert symplectic_moment_residual(analytic_source("ground"), 1) < 1e-12


def test_f1_moments_are_not_polynomial():
    assert symplectic_moment_residual(analytic_source("f1"), 2) > 0.1


def test_grid_backed_view_moments():
    from tomokit.transforms import optical_to_symplectic
    rho = random_density(8, 4)
    view = optical_to_symplectic(fock_optical_grid(rho))
    for m in (1, 2):
        assert symplectic_moment_residual(view, m) < 1e-10


# -- Hermite-class projection ---------------------------------------------------------


def test_projection_recovers_ground():
    rho, residual = hermite_class_projection(catalog_optical_grid("ground"), 6)
    assert residual < 1e-12
    want = np.zeros((7, 7))
    want[0, 0] = 1.0
    assert np.abs(rho.mat - want).max() < 1e-12


def test_projection_of_w1_matrix():
    rho, residual = hermite_class_projection(catalog_optical_grid("w1"), 8)
    assert residual < 1e-6
    diag = np.diag(rho.mat).real
    assert diag[:3] == pytest.approx([-0.125, 0.625, 0.5], abs=1e-9)
    assert abs(rho.trace() - 1.0) < 1e-9
    off = rho.mat - np.diag(np.diag(rho.mat))
    assert np.abs(off).max() < 1e-9


def test_projection_round_trips_random_state():
    rho0 = random_density(17, 5)
    grid = fock_optical_grid(rho0)
    rho, residual = hermite_class_projection(grid, 5)
    assert residual < 1e-10
    assert np.abs(rho.mat - rho0).max() < 1e-10


def test_projection_rejects_cos3():
    _, residual = hermite_class_projection(catalog_optical_grid("example-cos3"), 24)
    assert residual > 0.01


def test_projection_is_idempotent():
    grid = catalog_optical_grid("w1")
    rho1, _ = hermite_class_projection(grid, 8)
    again = fock_optical_grid(rho1.padded(8), grid.spec)
    rho2, residual = hermite_class_projection(again, 8)
    assert residual < 1e-10
    assert np.abs(rho1.mat - rho2.mat).max() < 1e-10


# -- classical extraction --------------------------------------------------------------


def test_classical_extraction_of_ground():
    rho = classical_rho_extraction(catalog_wigner_grid("ground"), 4)
    assert abs(rho.mat[0, 0].real - 1.0) < 1e-10
    assert np.abs(rho.mat - np.diag([1.0] + [0.0] * 4)).max() < 1e-8


def test_classical_extraction_of_displaced_gaussian():
    spec = GridSpec().with_phase_grid(-9.0, 9.0, 361)
    src = analytic_source(StateSpec("coherent", {"q0": 1.0, "p0": 0.5}))
    from tomokit.core.grids import WignerGrid
    W = WignerGrid(spec, src.eval_wigner(spec.q[:, None], spec.p[None, :]))
    n_max = 12
    rho = classical_rho_extraction(W, n_max)
    assert abs(rho.trace() - 1.0) < 1e-6
    # the matrix reproduces the tomogram it came from
    x = np.linspace(-3.0, 3.0, 41)
    for theta in (0.0, 0.9):
        got = fock_optical_eval(rho.mat, x, theta)
        want = src.eval_optical(x, theta)
        assert np.abs(got - want).max() < 1e-5


# -- padded-operator ladder oracles -----------------------------------------------------


def test_ladder_formulas_for_first_two_moments():
    n_max = 4
    rho = random_density(23, n_max)
    big = np.zeros((n_max + 3, n_max + 3), dtype=np.complex128)
    big[:n_max + 1, :n_max + 1] = rho
    q = position_operator(n_max + 3)
    p = momentum_operator(n_max + 3)
    mean_q = np.trace(big @ q).real
    mean_p = np.trace(big @ p).real
    mean_q2 = np.trace(big @ q @ q).real
    mean_p2 = np.trace(big @ p @ p).real
    mean_qp = np.trace(big @ (q @ p + p @ q)).real
    w = fock_optical_grid(rho)
    g1 = moment_profile(w, 1)
    g2 = moment_profile(w, 2)
    th = g1.theta
    want1 = mean_q * np.cos(th) + mean_p * np.sin(th)
    want2 = mean_q2 * np.cos(th) ** 2 + mean_p2 * np.sin(th) ** 2 \
        + mean_qp * np.sin(th) * np.cos(th)
    assert np.abs(g1.values - want1).max() < 1e-6
    assert np.abs(g2.values - want2).max() < 1e-6
