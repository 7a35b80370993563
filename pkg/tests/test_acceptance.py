"""Shipped guarantees, one test per line of the release checklist."""

import json
import math
import time

import numpy as np
import pytest

from conftest import random_density
from tomokit.cli import COUNTEREXAMPLE_CHECKS, main
from tomokit.conservation import (
    harmonic_residual,
    hermite_class_projection,
    moment_profile,
    normalization_flux_cubic,
    ode_residual,
    symplectic_moment_residual,
)
from tomokit.core.catalog import (
    analytic_source,
    available_states,
    catalog_fock,
    catalog_optical_grid,
)
from tomokit.core.fock import (
    fock_optical_grid,
    fock_wigner_grid,
    momentum_operator,
    position_operator,
)
from tomokit.core.grids import GridSpec, WignerGrid
from tomokit.evolution import (
    PolynomialPotential,
    evolve_liouville,
    evolve_moyal,
    stable_dt,
)
from tomokit.transforms import inverse_radon_optical, radon_optical
from tomokit.validation import (
    check_hirschman,
    check_positivity,
    check_radon_fixed_point,
    pure_state_overlap,
)

GENUINE = [name for name, entry in available_states() if entry.genuine]

LN_PI_E = math.log(math.pi * math.e)


def test_01_w1_vacuum_overlap_is_minus_one_eighth():
    start = time.perf_counter()
    vac = catalog_fock("fock0", n_max=0)
    overlap = pure_state_overlap(analytic_source("w1"), vac.mat)
    elapsed = time.perf_counter() - start
    assert overlap == pytest.approx(-0.125, abs=2e-3)
    assert elapsed < 5.0


def test_02_w1_projection_recovers_the_density_block():
    rho, residual = hermite_class_projection(catalog_optical_grid("w1"), 8)
    assert residual < 1e-6
    diag = np.diag(rho.mat).real
    assert diag[:3] == pytest.approx([-0.125, 0.625, 0.5], abs=1e-3)
    assert np.trace(rho.mat).real == pytest.approx(1.0, abs=1e-6)


def test_03_hirschman_bound_holds_across_the_catalog():
    ground = check_hirschman(catalog_optical_grid("ground"))
    assert abs(ground.metric) < 1e-3  # equality state saturates ln(pi e)
    for name in GENUINE + ["example-cos3"]:
        report = check_hirschman(catalog_optical_grid(name), tolerance=1e-3)
        assert report.passed, name


def test_04_cos3_profile_fails_every_conservation_gate():
    w = catalog_optical_grid("example-cos3")
    g = moment_profile(w, 1)
    fit = harmonic_residual(g)
    assert fit.forbidden[3][0] == pytest.approx(0.250, abs=1e-3)
    flux = normalization_flux_cubic(w, 1.0)
    at_quarter = float(np.interp(math.pi / 4.0, w.spec.theta, flux))
    assert at_quarter == pytest.approx(1.50, abs=0.01)
    resid = ode_residual(g)
    l2 = math.sqrt(float(np.sum(resid ** 2)) * (g.theta[1] - g.theta[0]))
    assert l2 == pytest.approx(2.5066, abs=0.01)


def test_05_f1_passes_klm_yet_is_no_radon_fixed_point():
    klm = check_positivity(analytic_source("f1"), mode="quantum",
                           n_sets=100, set_size=6, seed=42)
    assert klm.metric >= -1e-8
    assert klm.passed
    fp = check_radon_fixed_point(analytic_source("f1"))
    assert not fp.passed
    assert fp.seeds["probe_gap_at_0_2_0"] == pytest.approx(0.0156, abs=1e-3)


def test_06_m1_conserves_normalization_but_is_no_quantum_state():
    src = analytic_source("m1")
    triples = [(0.3, 1.0, 0.2), (1.0, 0.5, -1.5), (-0.7, 2.0, 0.4)]
    defect = max(abs(lam * src.eval_symplectic(lam * X, lam * mu, lam * nu)
                     - src.eval_symplectic(X, mu, nu))
                 for X, mu, nu in triples for lam in (0.5, 2.0, 3.7))
    assert defect < 1e-12
    for m in (0, 1, 2):
        assert symplectic_moment_residual(src, m) < 1e-8
    pos = check_positivity(src, mode="quantum", seed=5)
    assert not pos.passed
    assert isinstance(pos.seeds["worst"], int)


def test_07_radon_round_trips_and_inverts_w1():
    for n in range(4):
        rho = np.zeros((n + 1, n + 1), dtype=np.complex128)
        rho[n, n] = 1.0
        W = fock_wigner_grid(rho)
        back = inverse_radon_optical(radon_optical(W), W.spec)
        l2 = math.sqrt(float(np.sum((back.values - W.values) ** 2))
                       * W.spec.dq * W.spec.dp)
        assert l2 < 1e-2, n
    Wi = inverse_radon_optical(catalog_optical_grid("w1"))
    center = Wi.values[Wi.spec.n_q // 2, Wi.spec.n_p // 2]
    assert center == pytest.approx(-1.0 / (4.0 * math.pi), abs=1e-3)


def test_08_transport_conserves_mass_on_the_quartic_well():
    spec = GridSpec().with_phase_grid(-7.0, 7.0, 256)
    W0 = WignerGrid(spec, np.exp(-spec.q[:, None] ** 2 - spec.p[None, :] ** 2)
                    / math.pi)
    quartic = PolynomialPotential(c4=0.1)
    for propagator in (evolve_liouville, evolve_moyal):
        start = time.perf_counter()
        _, trace = propagator(W0, quartic, 1.0)
        elapsed = time.perf_counter() - start
        assert trace.mass_drift() < 1e-6, propagator.__name__
        assert elapsed < 60.0, propagator.__name__

    small = GridSpec().with_phase_grid(-6.0, 6.0, 129)
    W0 = WignerGrid(small, np.exp(-small.q[:, None] ** 2
                                  - small.p[None, :] ** 2) / math.pi)
    pot = PolynomialPotential(c2=0.5)
    dt = 0.5 * stable_dt(small, pot)
    a, trace = evolve_liouville(W0, pot, 0.2, dt=dt)
    b, _ = evolve_moyal(W0, pot, 0.2, dt=dt)
    steps = len(trace.times) - 1
    assert np.abs(a.values - b.values).max() <= 1e-12 * steps


def test_09_first_two_moments_match_the_ladder_formulas():
    n_max = 4
    q = position_operator(n_max + 3)
    p = momentum_operator(n_max + 3)
    for seed in range(20):
        rho = random_density(seed, n_max)
        big = np.zeros((n_max + 3, n_max + 3), dtype=np.complex128)
        big[:n_max + 1, :n_max + 1] = rho
        w = fock_optical_grid(rho)
        th = w.spec.theta
        g1 = moment_profile(w, 1).values
        g2 = moment_profile(w, 2).values
        want1 = np.trace(big @ q).real * np.cos(th) \
            + np.trace(big @ p).real * np.sin(th)
        want2 = np.trace(big @ q @ q).real * np.cos(th) ** 2 \
            + np.trace(big @ p @ p).real * np.sin(th) ** 2 \
            + np.trace(big @ (q @ p + p @ q)).real * np.sin(th) * np.cos(th)
        assert np.abs(g1 - want1).max() < 1e-6, seed
        assert np.abs(g2 - want2).max() < 1e-6, seed


def test_10_cli_narrative_is_complete_and_reproducible(tmp_path, capsys):
    for name in GENUINE:
        code = main(["validate", "--state", name, "--checks", "all",
                     "--seed", "42"])
        assert code == 0, name

    for name, rec in COUNTEREXAMPLE_CHECKS.items():
        report = tmp_path / f"{name}.json"
        argv = [rec["command"], "--state", name, *rec["args"],
                "--json", str(report)]
        assert main(argv) == 1, name
        payload = json.loads(report.read_text())
        failed = {e["check"] for e in payload["checks"] if not e["pass"]}
        assert rec["check"] in failed, name

    report = tmp_path / "repro.json"
    argv = ["validate", "--state", "w1", "--checks", "overlap",
            "--json", str(report)]
    main(argv)
    first = report.read_bytes()
    main(argv)
    assert report.read_bytes() == first
    capsys.readouterr()
