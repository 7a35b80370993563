"""Number-basis representations: tomograms, phase-space functions, operators.

A Hermitian matrix rho in the oscillator number basis determines a quadrature
distribution

    w(X, theta) = sum_{nm} rho_nm exp(i theta (m - n)) psi_n(X) psi_m(X),

real whenever rho is Hermitian.  Its homogeneous extension follows the polar
reduction in :mod:`tomokit.core.grids`.
"""

from __future__ import annotations

import math

import numpy as np

from .grids import FockMatrix, GridSpec, OpticalTomogramGrid, WignerGrid, polar_decompose
from .hermite import hermite_functions

__all__ = [
    "annihilation",
    "number_operator",
    "position_operator",
    "momentum_operator",
    "fock_optical_eval",
    "fock_optical_grid",
    "fock_symplectic_eval",
    "fock_wigner_eval",
    "fock_wigner_grid",
]


def _as_matrix(rho):
    if isinstance(rho, FockMatrix):
        return rho.mat
    return FockMatrix(rho).mat


def annihilation(dim):
    a = np.zeros((dim, dim), dtype=np.complex128)
    ns = np.arange(1, dim)
    a[ns - 1, ns] = np.sqrt(ns)
    return a


def number_operator(dim):
    return np.diag(np.arange(dim, dtype=np.complex128))


def position_operator(dim):
    a = annihilation(dim)
    return (a + a.conj().T) / math.sqrt(2.0)


def momentum_operator(dim):
    a = annihilation(dim)
    return (a - a.conj().T) / (1j * math.sqrt(2.0))


def fock_optical_eval(rho, x, theta):
    """w(X, theta) for a number-basis matrix.

    x may be any array; theta a scalar or 1-d array.  Returns x.shape for
    scalar theta, else (len(theta),) + x.shape.
    """
    mat = _as_matrix(rho)
    dim = mat.shape[0]
    x = np.asarray(x, dtype=np.float64)
    psi = hermite_functions(dim - 1, x)  # (dim,) + x.shape
    theta_arr = np.atleast_1d(np.asarray(theta, dtype=np.float64))
    psi_flat = psi.reshape(dim, -1)
    out = np.empty((theta_arr.size, psi_flat.shape[1]))
    ns = np.arange(dim)
    for i, th in enumerate(theta_arr):
        v = np.exp(1j * ns * th)[:, None] * psi_flat
        out[i] = np.einsum("nx,nx->x", v.conj(), mat @ v).real
    if np.ndim(theta) == 0:
        return out[0].reshape(x.shape)
    return out.reshape((theta_arr.size,) + x.shape)


def fock_optical_grid(rho, spec=None):
    spec = spec or GridSpec()
    values = fock_optical_eval(rho, spec.x, spec.theta)
    return OpticalTomogramGrid(spec, values)


def fock_symplectic_eval(rho, x, mu, nu):
    """Homogeneous tomogram M(X, mu, nu) of a number-basis matrix."""
    r, theta, sign = polar_decompose(mu, nu)
    if np.ndim(r) == 0:
        return fock_optical_eval(rho, sign * np.asarray(x) / r, theta) / r
    x, r, theta, sign = np.broadcast_arrays(np.asarray(x, dtype=np.float64), r, theta, sign)
    out = np.empty(x.shape, dtype=np.float64)
    flat = out.reshape(-1)
    xf, rf, tf, sf = (a.reshape(-1) for a in (x, r, theta, sign))
    for i in range(flat.shape[0]):
        flat[i] = fock_optical_eval(rho, sf[i] * xf[i] / rf[i], tf[i]) / rf[i]
    return out


def fock_wigner_eval(rho, q, p, u_half_width=None, n_u=None):
    """Phase-space (Wigner) function of a number-basis matrix.

    Quadrature of W(q, p) = (1/2pi) int R(q, u) exp(-i p u) du with
    R(q, u) = <q + u/2| rho |q - u/2> expanded over eigenfunctions.  q and p
    are 1-d arrays; returns shape (len(q), len(p)).
    """
    mat = _as_matrix(rho)
    dim = mat.shape[0]
    q = np.atleast_1d(np.asarray(q, dtype=np.float64))
    p = np.atleast_1d(np.asarray(p, dtype=np.float64))
    if u_half_width is None:
        # eigenfunction support ~ sqrt(2 n + 1) plus Gaussian tails
        u_half_width = 2.0 * (math.sqrt(2.0 * dim + 1.0) + 5.0)
    if n_u is None:
        n_u = int(round(2.0 * u_half_width / 0.05)) + 1
    u = np.linspace(-u_half_width, u_half_width, n_u)
    du = u[1] - u[0]
    R = np.empty((q.size, n_u), dtype=np.complex128)
    for i, qi in enumerate(q):
        plus = hermite_functions(dim - 1, qi + 0.5 * u)
        minus = hermite_functions(dim - 1, qi - 0.5 * u)
        R[i] = np.einsum("nu,nu->u", plus.astype(np.complex128), mat @ minus)
    phases = np.exp(-1j * np.outer(u, p))
    W = (R @ phases) * (du / (2.0 * math.pi))
    return W.real


def fock_wigner_grid(rho, spec=None):
    spec = spec or GridSpec()
    values = fock_wigner_eval(rho, spec.q, spec.p)
    return WignerGrid(spec, values)
