"""Built-in state definitions: closed forms, cross-representation agreement."""

import math

import numpy as np
import pytest

from tomokit.core.catalog import (
    StateSpec,
    analytic_source,
    available_states,
    catalog_fock,
    catalog_optical_grid,
    catalog_wigner_grid,
    resolve_entry,
)
from tomokit.core.fock import fock_optical_eval, fock_wigner_eval
from tomokit.transforms import euler_defect


ALL_NAMES = [name for name, _ in available_states()]


def test_catalog_listing_is_complete():
    assert ALL_NAMES[0] == "ground"
    assert set(ALL_NAMES) >= {"ground", "coherent", "squeezed", "example-cos3",
                              "f1", "w1", "w1-quartic", "m1"}
    genuine = [n for n, e in available_states() if e.genuine]
    assert "w1" not in genuine and "ground" in genuine


def test_unknown_state_raises():
    with pytest.raises(ValueError):
        resolve_entry("wigner-himself")
    with pytest.raises(ValueError):
        resolve_entry(StateSpec("ground", {"bogus": 1.0}))


@pytest.mark.parametrize("name", [n for n, e in available_states()
                                  if e.optical is not None])
def test_optical_entries_are_normalized(name):
    grid = catalog_optical_grid(name)
    assert grid.normalization_defect() < 1e-9


@pytest.mark.parametrize("name", [n for n, e in available_states()
                                  if e.optical is not None])
def test_optical_entries_satisfy_parity(name):
    # w(X, theta + pi) = w(-X, theta), probed off the grid
    src = analytic_source(name)
    x = np.linspace(-3.0, 3.0, 31)
    for theta in (0.3, 1.1, 2.6):
        a = src.eval_optical(x, theta + math.pi)
        b = src.eval_optical(-x, theta)
        assert np.abs(a - b).max() < 1e-14


def test_cos3_row_means():
    grid = catalog_optical_grid("example-cos3")
    means = grid.row_integrals(weight=grid.spec.x)
    want = np.cos(grid.spec.theta) ** 3
    assert np.abs(means - want).max() < 1e-12


def test_coherent_center_parameters():
    src = analytic_source(StateSpec("coherent", {"q0": 0.4, "p0": -1.2}))
    grid = catalog_optical_grid(StateSpec("coherent", {"q0": 0.4, "p0": -1.2}))
    means = grid.row_integrals(weight=grid.spec.x)
    theta = grid.spec.theta
    assert np.abs(means - (0.4 * np.cos(theta) - 1.2 * np.sin(theta))).max() < 1e-12
    assert src.entry.genuine


def test_w1_profile_values():
    # nonnegative quadrature density with the documented number-basis matrix
    src = analytic_source("w1")
    x = np.linspace(-5.0, 5.0, 201)
    vals = src.eval_optical(x, 0.9)
    assert vals.min() >= 0.0
    rho = catalog_fock("w1", n_max=6)
    assert np.abs(np.diag(rho.mat)[:3] - np.array([-0.125, 0.625, 0.5])).max() < 1e-14
    assert abs(rho.trace() - 1.0) < 1e-14
    # and the matrix reproduces the closed form
    recon = fock_optical_eval(rho.padded(8), x, 0.9)
    assert np.abs(recon - vals).max() < 1e-12


def test_f1_value_at_origin():
    src = analytic_source("f1")
    got = float(src.eval_symplectic(0.0, 0.0, 0.0))
    assert abs(got - math.exp(0.25) / math.sqrt(math.pi)) < 1e-14
    assert not src.homogeneous


def test_m1_homogeneity():
    src = analytic_source("m1")
    triples = [(0.3, 1.0, -0.4), (-1.1, 0.2, 2.0), (0.0, 2.0, 0.5)]
    assert euler_defect(src, triples) < 1e-6
    for lam in (0.5, 2.0, 3.7):
        a = src.eval_symplectic(lam * 0.3, lam * 1.0, lam * -0.4)
        b = src.eval_symplectic(0.3, 1.0, -0.4) / lam
        assert abs(float(a) - float(b)) < 1e-14


def test_fock_entries_match_wigner_closed_forms():
    for name, value in (("fock0", 1.0 / math.pi), ("fock1", -1.0 / math.pi)):
        grid = catalog_wigner_grid(name)
        center = grid.values[grid.spec.n_q // 2, grid.spec.n_p // 2]
        assert abs(center - value) < 1e-12


def test_fock_matrix_route_agrees_with_analytic():
    # number-basis tail of the squeezed state converges by n_max ~ 40
    rho = catalog_fock("squeezed", n_max=40)
    src = analytic_source("squeezed")
    q = np.linspace(-2.0, 2.0, 9)
    got = fock_wigner_eval(rho.mat, q[:, None], q[None, :])
    want = src.eval_wigner(q[:, None], q[None, :])
    assert np.abs(got - want).max() < 1e-12


def test_wigner_only_entry_has_no_optical():
    src = analytic_source("w1-quartic")
    with pytest.raises(ValueError):
        src.eval_optical(np.zeros(3), 0.0)
    assert abs(src.eval_wigner(0.0, 0.0) + 1.0 / (4.0 * math.pi)) < 1e-14
