"""Analytic state catalog: reference states and known non-states.

Every entry evaluates in closed form (double precision, no interpolation).
Genuine entries are bona fide oscillator states with all representations
consistent; the remaining entries are normalized candidates that look like
tomograms or phase-space densities but fail exactly one family of checks,
recorded in ``diagnosis``.

Representations per entry: ``optical`` w(X, theta), ``symplectic``
M(X, mu, nu), ``wigner`` W(q, p), and a number-basis matrix where one exists.
Entries without a representation raise when asked for it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
from scipy.special import eval_laguerre

from .grids import FockMatrix, GridSpec, OpticalTomogramGrid, WignerGrid, polar_decompose
from .hermite import hermite_functions

__all__ = [
    "StateSpec",
    "CatalogEntry",
    "AnalyticSource",
    "analytic_source",
    "available_states",
    "resolve_entry",
    "catalog_eval",
    "catalog_fock",
    "catalog_optical_grid",
    "catalog_wigner_grid",
    "DEFAULT_N_MAX",
]

DEFAULT_N_MAX = 24

_SQRT_PI = math.sqrt(math.pi)


@dataclass
class StateSpec:
    """A state reference: a catalog name or a grid-file path, plus parameters."""

    kind: str
    params: dict = field(default_factory=dict)


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    summary: str
    genuine: bool
    diagnosis: Optional[str]  # failing check family for non-states
    optical: Optional[Callable] = None  # (x, theta) -> w
    symplectic: Optional[Callable] = None  # (x, mu, nu) -> M
    wigner: Optional[Callable] = None  # (q, p) -> W
    fock: Optional[Callable] = None  # (n_max) -> complex matrix
    homogeneous: bool = True  # symplectic representation obeys degree -1 scaling

    def has(self, representation):
        return getattr(self, representation, None) is not None


def _polar_extend(optical):
    """Degree -1 homogeneous symplectic form of a closed-form optical tomogram."""

    def symplectic(x, mu, nu):
        r, theta, sign = polar_decompose(mu, nu)
        return optical(sign * np.asarray(x, dtype=np.float64) / r, theta) / r

    return symplectic


def _gaussian_tomogram(center):
    """w(X, theta) = exp(-(X - center(theta))^2)/sqrt(pi)."""

    def optical(x, theta):
        return np.exp(-(np.asarray(x, dtype=np.float64) - center(theta)) ** 2) / _SQRT_PI

    return optical


def _basis_matrix(n, n_max):
    mat = np.zeros((n_max + 1, n_max + 1), dtype=np.complex128)
    mat[n, n] = 1.0
    return mat


# -- closed forms -------------------------------------------------------------


def _ground_optical(x, theta):
    del theta
    return np.exp(-np.asarray(x, dtype=np.float64) ** 2) / _SQRT_PI


def _ground_symplectic(x, mu, nu):
    r2 = np.asarray(mu, dtype=np.float64) ** 2 + np.asarray(nu, dtype=np.float64) ** 2
    _reject_origin(r2)
    return np.exp(-np.asarray(x, dtype=np.float64) ** 2 / r2) / np.sqrt(math.pi * r2)


def _ground_wigner(q, p):
    return np.exp(-np.asarray(q, dtype=np.float64) ** 2
                  - np.asarray(p, dtype=np.float64) ** 2) / math.pi


def _reject_origin(r2):
    if np.any(np.asarray(r2) == 0.0):
        raise ValueError("symplectic tomogram undefined at mu = nu = 0")


def _fock_optical(n):
    def optical(x, theta):
        del theta
        psi = hermite_functions(n, np.asarray(x, dtype=np.float64))[n]
        return psi ** 2

    return optical


def _fock_wigner(n):
    def wigner(q, p):
        u = np.asarray(q, dtype=np.float64) ** 2 + np.asarray(p, dtype=np.float64) ** 2
        return ((-1.0) ** n / math.pi) * eval_laguerre(n, 2.0 * u) * np.exp(-u)

    return wigner


def _coherent_center(q0, p0):
    def center(theta):
        return q0 * np.cos(theta) + p0 * np.sin(theta)

    return center


def _coherent_symplectic(q0, p0):
    def symplectic(x, mu, nu):
        mu = np.asarray(mu, dtype=np.float64)
        nu = np.asarray(nu, dtype=np.float64)
        r2 = mu ** 2 + nu ** 2
        _reject_origin(r2)
        shift = np.asarray(x, dtype=np.float64) - q0 * mu - p0 * nu
        return np.exp(-shift ** 2 / r2) / np.sqrt(math.pi * r2)

    return symplectic


def _coherent_wigner(q0, p0):
    def wigner(q, p):
        return np.exp(-(np.asarray(q, dtype=np.float64) - q0) ** 2
                      - (np.asarray(p, dtype=np.float64) - p0) ** 2) / math.pi

    return wigner


def _coherent_fock(q0, p0):
    alpha = (q0 + 1j * p0) / math.sqrt(2.0)

    def fock(n_max):
        c = np.empty(n_max + 1, dtype=np.complex128)
        c[0] = math.exp(-abs(alpha) ** 2 / 2.0)
        for n in range(1, n_max + 1):
            c[n] = c[n - 1] * alpha / math.sqrt(n)
        return np.outer(c, c.conj())

    return fock


def _squeezed_sigma2(sq2, sp2):
    def sigma2(theta):
        theta = np.asarray(theta, dtype=np.float64)
        return sq2 * np.cos(theta) ** 2 + sp2 * np.sin(theta) ** 2

    return sigma2


def _squeezed_optical(sq2, sp2):
    s2 = _squeezed_sigma2(sq2, sp2)

    def optical(x, theta):
        v = s2(theta)
        return np.exp(-np.asarray(x, dtype=np.float64) ** 2 / (2.0 * v)) \
            / np.sqrt(2.0 * math.pi * v)

    return optical


def _squeezed_symplectic(sq2, sp2):
    def symplectic(x, mu, nu):
        v = sq2 * np.asarray(mu, dtype=np.float64) ** 2 \
            + sp2 * np.asarray(nu, dtype=np.float64) ** 2
        _reject_origin(v)
        return np.exp(-np.asarray(x, dtype=np.float64) ** 2 / (2.0 * v)) \
            / np.sqrt(2.0 * math.pi * v)

    return symplectic


def _squeezed_wigner(sq2, sp2):
    norm = 1.0 / (2.0 * math.pi * math.sqrt(sq2 * sp2))

    def wigner(q, p):
        return norm * np.exp(-np.asarray(q, dtype=np.float64) ** 2 / (2.0 * sq2)
                             - np.asarray(p, dtype=np.float64) ** 2 / (2.0 * sp2))

    return wigner


def _squeezed_fock(sq2, sp2):
    if abs(math.sqrt(sq2 * sp2) - 0.5) > 1e-12:
        return None  # number-basis form implemented for pure squeezed vacuum only
    r = -0.5 * math.log(2.0 * sq2)

    def fock(n_max):
        c = np.zeros(n_max + 1, dtype=np.complex128)
        c[0] = 1.0 / math.sqrt(math.cosh(r))
        for n in range(0, n_max - 1, 2):
            c[n + 2] = -c[n] * math.tanh(r) * math.sqrt((n + 1.0) / (n + 2.0))
        return np.outer(c, c.conj())

    return fock


def _cos3_center(theta):
    return np.cos(np.asarray(theta, dtype=np.float64)) ** 3


def _f1_symplectic(x, mu, nu):
    x = np.asarray(x, dtype=np.float64)
    mu = np.asarray(mu, dtype=np.float64)
    nu = np.asarray(nu, dtype=np.float64)
    return (math.exp(0.25) / _SQRT_PI) * np.exp(-x ** 2 - mu ** 2 / 4.0 - nu ** 2 / 4.0)


def _w1_profile(x):
    x = np.asarray(x, dtype=np.float64)
    return np.exp(-x ** 2) * (x ** 4 + x ** 2 / 4.0 + 0.125) / _SQRT_PI


def _w1_optical(x, theta):
    del theta
    return _w1_profile(x)


def _w1_symplectic(x, mu, nu):
    r2 = np.asarray(mu, dtype=np.float64) ** 2 + np.asarray(nu, dtype=np.float64) ** 2
    _reject_origin(r2)
    return _w1_profile(np.asarray(x, dtype=np.float64) / np.sqrt(r2)) / np.sqrt(r2)


def _w1_wigner(q, p):
    u = np.asarray(q, dtype=np.float64) ** 2 + np.asarray(p, dtype=np.float64) ** 2
    return (np.exp(-u) / math.pi) * (u ** 2 - 0.75 * u - 0.25)


def _w1_fock(n_max):
    mat = np.zeros((n_max + 1, n_max + 1), dtype=np.complex128)
    mat[0, 0] = -0.125
    mat[1, 1] = 0.625
    mat[2, 2] = 0.5
    return mat


# -- registry ------------------------------------------------------------------


def _build_entries(spec: StateSpec):
    kind = spec.kind
    params = dict(spec.params or {})

    def take(name, default):
        return float(params.pop(name, default))

    if kind == "ground":
        entry = CatalogEntry(
            "ground", "oscillator ground state (round Gaussian)", True, None,
            optical=_ground_optical, symplectic=_ground_symplectic,
            wigner=_ground_wigner, fock=lambda n_max: _basis_matrix(0, n_max))
    elif kind.startswith("fock") and kind[4:].isdigit():
        n = int(kind[4:])
        if n > 5:
            raise ValueError("catalog carries number states up to fock5")
        entry = CatalogEntry(
            kind, f"number state n={n}", True, None,
            optical=_fock_optical(n), symplectic=_polar_extend(_fock_optical(n)),
            wigner=_fock_wigner(n), fock=lambda n_max: _basis_matrix(n, n_max))
    elif kind == "coherent":
        q0 = take("q0", 1.0)
        p0 = take("p0", 0.0)
        entry = CatalogEntry(
            "coherent", f"displaced Gaussian at (q,p)=({q0:g},{p0:g})", True, None,
            optical=_gaussian_tomogram(_coherent_center(q0, p0)),
            symplectic=_coherent_symplectic(q0, p0),
            wigner=_coherent_wigner(q0, p0), fock=_coherent_fock(q0, p0))
    elif kind == "squeezed":
        sq2 = take("sigma_q2", 0.25)
        sp2 = take("sigma_p2", 1.0)
        entry = CatalogEntry(
            "squeezed", f"squeezed Gaussian, variances ({sq2:g},{sp2:g})", True, None,
            optical=_squeezed_optical(sq2, sp2),
            symplectic=_squeezed_symplectic(sq2, sp2),
            wigner=_squeezed_wigner(sq2, sp2), fock=_squeezed_fock(sq2, sp2))
    elif kind == "example-cos3":
        entry = CatalogEntry(
            "example-cos3", "Gaussian ridge centered on cos^3(theta)", False,
            "conservation",
            optical=_gaussian_tomogram(_cos3_center),
            symplectic=_polar_extend(_gaussian_tomogram(_cos3_center)))
    elif kind == "f1":
        entry = CatalogEntry(
            "f1", "separable Gaussian in (X, mu, nu); not homogeneous", False,
            "fixedpoint",
            optical=_ground_optical,  # restriction to the unit circle
            symplectic=_f1_symplectic, homogeneous=False)
    elif kind == "w1":
        entry = CatalogEntry(
            "w1", "quartic-profile quadrature density, angle independent", False,
            "overlap/positivity",
            optical=_w1_optical, symplectic=_w1_symplectic,
            wigner=_w1_wigner, fock=_w1_fock)
    elif kind == "w1-quartic":
        entry = CatalogEntry(
            "w1-quartic", "phase-space quartic with negative trough", False,
            "positivity", wigner=_w1_wigner)
    elif kind == "m1":
        entry = CatalogEntry(
            "m1", "homogeneous extension of the w1 profile", False, "positivity",
            optical=_w1_optical, symplectic=_w1_symplectic)
    else:
        raise ValueError(f"unknown catalog state {kind!r}")
    if params:
        raise ValueError(f"unused parameters for {kind!r}: {sorted(params)}")
    return entry


_CATALOG_NAMES = ("ground", "fock0", "fock1", "fock2", "fock3", "fock4", "fock5",
                  "coherent", "squeezed", "example-cos3", "f1", "w1",
                  "w1-quartic", "m1")


def available_states():
    """Catalog names with their one-line summaries, in listing order."""
    return [(name, _build_entries(StateSpec(name))) for name in _CATALOG_NAMES]


def resolve_entry(spec):
    if isinstance(spec, str):
        spec = StateSpec(spec)
    return _build_entries(spec)


def catalog_eval(spec, representation, point):
    """Closed-form value of one catalog entry at one point.

    representation is 'optical' (X, theta), 'symplectic' (X, mu, nu) or
    'wigner' (q, p).
    """
    entry = resolve_entry(spec)
    if representation not in ("optical", "symplectic", "wigner"):
        raise ValueError(f"unknown representation {representation!r}")
    fn = getattr(entry, representation)
    if fn is None:
        raise ValueError(f"{entry.name} has no {representation} representation")
    expected = {"optical": 2, "symplectic": 3, "wigner": 2}[representation]
    if len(point) != expected:
        raise ValueError(f"{representation} point needs {expected} coordinates")
    return float(fn(*point))


def catalog_fock(spec, n_max=DEFAULT_N_MAX):
    entry = resolve_entry(spec)
    if entry.fock is None:
        raise ValueError(f"{entry.name} has no number-basis representation")
    return FockMatrix(entry.fock(n_max))


class AnalyticSource:
    """Closed-form state evaluators with numpy broadcasting.

    Wraps one catalog entry so transforms can treat it like a grid-backed
    source; ``homogeneous`` is False for candidates whose (mu, nu) dependence
    does not reduce to the unit circle.
    """

    broadcasts = True

    def __init__(self, spec):
        self.entry = resolve_entry(spec)
        self.homogeneous = self.entry.homogeneous

    @property
    def name(self):
        return self.entry.name

    def eval_optical(self, x, theta):
        if self.entry.optical is None:
            raise ValueError(f"{self.name} has no optical representation")
        return self.entry.optical(np.asarray(x, dtype=np.float64),
                                  np.asarray(theta, dtype=np.float64))

    def eval_symplectic(self, x, mu, nu):
        if self.entry.symplectic is None:
            raise ValueError(f"{self.name} has no symplectic representation")
        return self.entry.symplectic(np.asarray(x, dtype=np.float64),
                                     np.asarray(mu, dtype=np.float64),
                                     np.asarray(nu, dtype=np.float64))

    def eval_wigner(self, q, p):
        if self.entry.wigner is None:
            raise ValueError(f"{self.name} has no phase-space representation")
        return self.entry.wigner(np.asarray(q, dtype=np.float64),
                                 np.asarray(p, dtype=np.float64))


def analytic_source(spec):
    return AnalyticSource(spec)


def catalog_optical_grid(spec, grid_spec=None):
    entry = resolve_entry(spec)
    if entry.optical is None:
        raise ValueError(f"{entry.name} has no optical representation")
    grid_spec = grid_spec or GridSpec()
    theta = grid_spec.theta[:, None]
    values = entry.optical(grid_spec.x[None, :], theta)
    values = np.broadcast_to(values, (grid_spec.n_theta, grid_spec.n_x)).copy()
    return OpticalTomogramGrid(grid_spec, values)


def catalog_wigner_grid(spec, grid_spec=None):
    entry = resolve_entry(spec)
    if entry.wigner is None:
        raise ValueError(f"{entry.name} has no phase-space representation")
    grid_spec = grid_spec or GridSpec()
    values = entry.wigner(grid_spec.q[:, None], grid_spec.p[None, :])
    return WignerGrid(grid_spec, values)
