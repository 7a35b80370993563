"""Maps between phase-space functions, quadrature tomograms and their
characteristic functions.

Conventions (matching :mod:`tomokit.core.grids`):

- forward projection: w(X, theta) = int W(q, p) delta(X - q cos t - p sin t),
  computed along the line q = X cos t - s sin t, p = X sin t + s cos t;
- filtered backprojection inverts it with the band-limited ramp kernel
  h(0) = pi/(2 dx^2), h(n dx) = -2/(pi n^2 dx^2) for odd n, 0 for even n != 0
  (the exact inverse Fourier transform of |eta| cut at the grid Nyquist),
  then W(q, p) = (1/2pi) int_0^pi g(q cos t + p sin t, t) dt;
- characteristic function: phi(mu, nu) = int M(X, mu, nu) e^{iX} dX, which
  for a homogeneous tomogram reduces to int w(y, theta) e^{i s r y} dy with
  (r, theta, s) the polar branch of (mu, nu);
- phase-space recovery: W(q, p) = (1/4pi^2) iint phi e^{-i(mu q + nu p)}.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.signal import fftconvolve

from . import kernels
from .core.grids import (
    GridSpec,
    OpticalTomogramGrid,
    SymplecticView,
    WignerGrid,
    polar_decompose,
)
from .parallel import parallel_map

__all__ = [
    "CharacteristicSamples",
    "CharacteristicGrid",
    "radon_optical",
    "inverse_radon_optical",
    "optical_to_symplectic",
    "symplectic_to_optical",
    "characteristic_function",
    "characteristic_grid",
    "wigner_from_characteristic",
    "euler_defect",
    "save_characteristic",
    "load_characteristic",
]

# quadrature axis for closed-form sources: wide enough that every catalog
# integrand is far below double-precision noise at the ends
_WIDE_HALF_WIDTH = 20.0
_WIDE_STEP = 0.02


def _wide_axis():
    n = int(round(2.0 * _WIDE_HALF_WIDTH / _WIDE_STEP)) + 1
    return np.linspace(-_WIDE_HALF_WIDTH, _WIDE_HALF_WIDTH, n)


def _trapezoid_weights(n, step):
    w = np.full(n, step)
    w[0] *= 0.5
    w[-1] *= 0.5
    return w


# -- projection ----------------------------------------------------------------


def radon_optical(W, out_spec=None):
    """Project a phase-space grid onto quadrature distributions w(X, theta)."""
    if not isinstance(W, WignerGrid):
        raise TypeError("radon_optical expects a WignerGrid")
    spec = W.spec
    out_spec = out_spec or spec
    reach = math.hypot(max(abs(spec.q_min), spec.q_max),
                       max(abs(spec.p_min), spec.p_max))
    if out_spec.x_max > reach + 1e-12:
        raise ValueError("requested X range exceeds the diagonal extent of the grid")
    half = reach
    n_s = 2 * int(round(half / out_spec.dx)) + 1
    s = np.linspace(-half, half, n_s)
    xs = out_spec.x

    def one_row(theta):
        return kernels.radon_row(W.values, spec.q_min, spec.dq, spec.p_min,
                                 spec.dp, xs, math.cos(theta), math.sin(theta), s)

    rows = parallel_map(one_row, list(out_spec.theta))
    flags = list(W.flags)
    if W.boundary_magnitude() > 1e-10 and "boundary" not in flags:
        flags.append("boundary")
    return OpticalTomogramGrid(out_spec, np.vstack(rows), flags=flags)


def _ramlak_kernel(n, dx):
    """Band-limited ramp kernel sampled at offsets -(n-1)..(n-1)."""
    offsets = np.arange(-(n - 1), n)
    h = np.zeros(offsets.shape, dtype=np.float64)
    h[offsets == 0] = math.pi / (2.0 * dx * dx)
    odd = (offsets % 2) != 0
    h[odd] = -2.0 / (math.pi * offsets[odd].astype(np.float64) ** 2 * dx * dx)
    return h


def inverse_radon_optical(w, out_spec=None):
    """Filtered backprojection of an optical tomogram onto a phase grid."""
    if not isinstance(w, OpticalTomogramGrid):
        raise TypeError("inverse_radon_optical expects an OpticalTomogramGrid")
    spec = w.spec
    out_spec = out_spec or spec
    # the filtered projection has slowly decaying tails beyond the tomogram's
    # X range, and backprojection samples it out to the grid corners: keep the
    # full convolution support, t in [2 x_min, 2 x_max]
    h = _ramlak_kernel(spec.n_x, spec.dx)
    filtered = np.empty((spec.n_theta, 3 * spec.n_x - 2))
    for j in range(spec.n_theta):
        filtered[j] = fftconvolve(w.values[j], h, mode="full") * spec.dx
    t_min = spec.x_min - (spec.x_max - spec.x_min)
    q = out_spec.q
    p = out_spec.p

    def backproject(j):
        theta = spec.theta[j]
        t = q[:, None] * math.cos(theta) + p[None, :] * math.sin(theta)
        vals = kernels.interp1(filtered[j], t_min, spec.dx, t.ravel())
        return vals.reshape(t.shape)

    parts = parallel_map(backproject, list(range(spec.n_theta)))
    W = sum(parts) * (spec.dtheta / (2.0 * math.pi))
    flags = list(w.flags)
    if w.boundary_magnitude() > 1e-10 and "boundary" not in flags:
        flags.append("boundary")
    return WignerGrid(out_spec, W, flags=flags)


# -- optical <-> symplectic ------------------------------------------------------


def optical_to_symplectic(w):
    """Degree -1 homogeneous view M(X, mu, nu) of an optical tomogram."""
    return SymplecticView(w)


def symplectic_to_optical(M, out_spec=None):
    """Restrict a symplectic source to the unit circle mu = cos t, nu = sin t."""
    if out_spec is None:
        base_spec = getattr(getattr(M, "base", None), "spec", None)
        out_spec = base_spec or GridSpec()
    xs = out_spec.x
    values = np.empty((out_spec.n_theta, out_spec.n_x))
    if hasattr(M, "eval_optical"):
        for j, theta in enumerate(out_spec.theta):
            values[j] = M.eval_optical(xs, theta)
    elif hasattr(M, "eval_symplectic"):
        for j, theta in enumerate(out_spec.theta):
            values[j] = M.eval_symplectic(xs, math.cos(theta), math.sin(theta))
    else:
        raise TypeError("source exposes neither eval_optical nor eval_symplectic")
    return OpticalTomogramGrid(out_spec, values)


# -- characteristic function -----------------------------------------------------


@dataclass
class CharacteristicSamples:
    """phi(mu, nu) on an explicit point list; flags[i] notes provenance."""

    points: np.ndarray  # (n, 2)
    values: np.ndarray  # (n,) complex
    flags: list = field(default_factory=list)


@dataclass
class CharacteristicGrid:
    """phi on a uniform (mu, nu) mesh, values indexed [mu_index, nu_index]."""

    mu: np.ndarray
    nu: np.ndarray
    values: np.ndarray
    flags: list = field(default_factory=list)


def _phi_from_rows(grid, points):
    """Polar route for grid-backed tomograms, rows cached per angle."""
    x = grid.spec.x
    wx = _trapezoid_weights(grid.spec.n_x, grid.spec.dx)
    cache = {}
    out = np.empty(len(points), dtype=np.complex128)
    flags = [""] * len(points)
    for i, (mu, nu) in enumerate(points):
        if mu == 0.0 and nu == 0.0:
            out[i] = 1.0
            flags[i] = "limit"
            continue
        r, theta, sign = polar_decompose(mu, nu)
        row = cache.get(theta)
        if row is None:
            row = cache[theta] = grid.eval_row(theta) * wx
        k = sign * r
        out[i] = row @ np.exp(1j * k * x)
    return out, flags


def _phi_direct(source, points, chunk=2048):
    """Quadrature of phi for a closed-form source.

    Homogeneous sources are reduced to the unit circle first (the integrand
    int w(y, theta) e^{i s r y} dy keeps the state's own width); the direct
    int M(X, mu, nu) e^{iX} dX is used otherwise, where the X width is fixed
    by the candidate instead of scaling with hypot(mu, nu).
    """
    x = _wide_axis()
    wx = _trapezoid_weights(x.size, x[1] - x[0])
    cos_row = wx * np.cos(x)
    sin_row = wx * np.sin(x)
    pts = np.asarray(points, dtype=np.float64).reshape(-1, 2)
    out = np.empty(pts.shape[0], dtype=np.complex128)
    flags = [""] * pts.shape[0]
    origin = (pts[:, 0] == 0.0) & (pts[:, 1] == 0.0)
    todo = np.flatnonzero(~origin)
    polar = getattr(source, "homogeneous", False) and hasattr(source, "eval_optical")
    for start in range(0, todo.size, chunk):
        idx = todo[start:start + chunk]
        if polar:
            r, theta, sign = polar_decompose(pts[idx, 0], pts[idx, 1])
            vals = source.eval_optical(x[:, None], theta[None, :])
            waves = np.exp(1j * x[:, None] * (sign * r)[None, :])
            out[idx] = np.einsum("x,xp,xp->p", wx, vals, waves)
        else:
            M = source.eval_symplectic(x[:, None], pts[idx, 0][None, :],
                                       pts[idx, 1][None, :])
            out[idx] = cos_row @ M + 1j * (sin_row @ M)
    for i in np.flatnonzero(origin):
        out[i] = 1.0
        flags[i] = "limit"
    return out, flags


def characteristic_function(source, points):
    """phi(mu, nu) = int M(X, mu, nu) e^{iX} dX at the requested points.

    Grid-backed tomograms go through the polar reduction and their own X
    axis; closed-form sources are integrated directly, which is also the
    only correct route for non-homogeneous candidates.
    """
    pts = np.asarray(list(points), dtype=np.float64).reshape(-1, 2)
    grid = None
    if isinstance(source, OpticalTomogramGrid):
        grid = source
    elif isinstance(source, SymplecticView) and \
            isinstance(getattr(source, "base", None), OpticalTomogramGrid):
        grid = source.base
    if grid is not None:
        values, flags = _phi_from_rows(grid, pts)
    elif hasattr(source, "eval_symplectic"):
        values, flags = _phi_direct(source, pts)
    else:
        raise TypeError("source must be grid-backed or expose eval_symplectic")
    return CharacteristicSamples(pts, values, [f for f in flags if f])


def _phi_mesh_from_grid(grid, mu, nu, chunk=4096):
    """(k, theta) table route: exact trigonometric interpolation in theta,
    6-point interpolation in k on a fine table."""
    ext = grid.extended_values()  # rows over [0, 2pi)
    n_rows = ext.shape[0]
    x = grid.spec.x
    wx = _trapezoid_weights(grid.spec.n_x, grid.spec.dx)
    k_max = math.hypot(float(np.abs(mu).max()), float(np.abs(nu).max())) + 1.0
    dk = 0.01
    m_k = int(math.ceil(k_max / dk))
    n_k = 2 * m_k + 1
    ks = np.linspace(-m_k * dk, m_k * dk, n_k)
    table = (ext * wx[None, :]) @ np.exp(1j * np.outer(x, ks))
    coeffs = np.fft.fft(table, axis=0) / n_rows
    modes = np.fft.fftfreq(n_rows, d=1.0 / n_rows)

    MU, NU = np.meshgrid(mu, nu, indexing="ij")
    out = np.empty(MU.shape, dtype=np.complex128).ravel()
    muf, nuf = MU.ravel(), NU.ravel()
    origin = (muf == 0.0) & (nuf == 0.0)
    todo = np.flatnonzero(~origin)
    offsets = np.arange(-2, 4)
    for start in range(0, todo.size, chunk):
        idx = todo[start:start + chunk]
        r, theta, sign = polar_decompose(muf[idx], nuf[idx])
        t = (sign * r - ks[0]) / dk
        i0 = np.floor(t).astype(np.int64)
        w6 = kernels.lagrange6_weights(t - i0)
        cols = np.clip(i0[:, None] + offsets[None, :], 0, n_k - 1)
        gathered = coeffs[:, cols]  # (modes, pts, 6)
        c_at_k = np.einsum("mpo,po->mp", gathered, w6)
        phase = np.exp(1j * np.outer(modes, theta))
        out[idx] = np.einsum("mp,mp->p", phase, c_at_k)
    out[origin] = 1.0
    return out.reshape(MU.shape)


def characteristic_grid(source, half_width=12.0, n=241):
    """phi on a centered square mesh, for phase-space recovery."""
    axis = np.linspace(-half_width, half_width, n)
    if isinstance(source, SymplecticView) and \
            isinstance(getattr(source, "base", None), OpticalTomogramGrid):
        source = source.base
    if isinstance(source, OpticalTomogramGrid):
        values = _phi_mesh_from_grid(source, axis, axis)
    elif hasattr(source, "eval_symplectic"):
        MU, NU = np.meshgrid(axis, axis, indexing="ij")
        vals, _ = _phi_direct(source, np.column_stack([MU.ravel(), NU.ravel()]))
        values = vals.reshape(MU.shape)
    else:
        raise TypeError("source must be grid-backed or expose eval_symplectic")
    flags = []
    edge = max(np.abs(values[0]).max(), np.abs(values[-1]).max(),
               np.abs(values[:, 0]).max(), np.abs(values[:, -1]).max())
    if edge > 1e-8:
        flags.append("decay")
    return CharacteristicGrid(axis, axis.copy(), values, flags)


def wigner_from_characteristic(char, out_spec=None):
    """2D inverse Fourier transform of phi on its mesh; output is real."""
    out_spec = out_spec or GridSpec()
    mu, nu = char.mu, char.nu
    wmu = _trapezoid_weights(mu.size, mu[1] - mu[0])
    wnu = _trapezoid_weights(nu.size, nu[1] - nu[0])
    Eq = np.exp(-1j * np.outer(out_spec.q, mu)) * wmu[None, :]
    Ep = np.exp(-1j * np.outer(nu, out_spec.p)) * wnu[:, None]
    W = (Eq @ char.values @ Ep) / (4.0 * math.pi ** 2)
    resid = float(np.abs(W.imag).max())
    if resid > 1e-8:
        raise ValueError(f"imaginary residual {resid:.2e} exceeds 1e-8; "
                         "phi mesh is inconsistent with a real function")
    flags = list(char.flags)
    edge = max(np.abs(char.values[0]).max(), np.abs(char.values[-1]).max(),
               np.abs(char.values[:, 0]).max(), np.abs(char.values[:, -1]).max())
    if edge > 1e-8 and "decay" not in flags:
        flags.append("decay")
    return WignerGrid(out_spec, W.real, flags=flags)


# -- diagnostics -----------------------------------------------------------------


def euler_defect(source, triples, h=1e-4):
    """Residual of the homogeneity identity M + X M_X + mu M_mu + nu M_nu.

    Central differences at step h; zero (to O(h^2)) iff the source is degree
    -1 homogeneous.  Returns the max absolute residual over the triples.
    """
    worst = 0.0
    for X, mu, nu in triples:
        m0 = source.eval_symplectic(X, mu, nu)
        dX = (source.eval_symplectic(X + h, mu, nu)
              - source.eval_symplectic(X - h, mu, nu)) / (2 * h)
        dmu = (source.eval_symplectic(X, mu + h, nu)
               - source.eval_symplectic(X, mu - h, nu)) / (2 * h)
        dnu = (source.eval_symplectic(X, mu, nu + h)
               - source.eval_symplectic(X, mu, nu - h)) / (2 * h)
        worst = max(worst, abs(float(m0 + X * dX + mu * dmu + nu * dnu)))
    return worst


# -- serialization ----------------------------------------------------------------


def save_characteristic(samples, path):
    """CSV rows mu, nu, re, im."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        for (mu, nu), v in zip(samples.points, samples.values):
            writer.writerow([repr(float(mu)), repr(float(nu)),
                             repr(float(v.real)), repr(float(v.imag))])
    return path


def load_characteristic(path):
    rows = np.loadtxt(path, delimiter=",", ndmin=2)
    if rows.shape[1] != 4:
        raise ValueError("expected rows of mu, nu, re, im")
    return CharacteristicSamples(rows[:, :2], rows[:, 2] + 1j * rows[:, 3])
