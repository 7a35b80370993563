"""Numpy implementations of the hot kernels (fallback backend).

Semantics are documented in :mod:`tomokit.kernels`; the compiled backend
mirrors these functions exactly.
"""

from __future__ import annotations

import numpy as np

_OFFSETS = np.arange(-2, 4)
# denominator of the 6-point Lagrange basis polynomial for each tap offset
_DENOM = np.array([-120.0, 24.0, -12.0, 12.0, -24.0, 120.0])


def _lagrange6_weights(u):
    """Weights of 6-point Lagrange interpolation at fractional position u in [0,1)."""
    u = np.asarray(u, dtype=np.float64)
    diffs = u[..., None] - _OFFSETS  # (..., 6)
    weights = np.empty(diffs.shape, dtype=np.float64)
    for j in range(6):
        others = [k for k in range(6) if k != j]
        weights[..., j] = diffs[..., others].prod(axis=-1) / _DENOM[j]
    return weights


def interp1(f, x0, dx, xq):
    f = np.asarray(f, dtype=np.float64)
    xq = np.asarray(xq, dtype=np.float64)
    n = f.shape[0]
    t = (xq - x0) / dx
    i0 = np.floor(t).astype(np.int64)
    w = _lagrange6_weights(t - i0)
    out = np.zeros(xq.shape, dtype=np.float64)
    for j, off in enumerate(_OFFSETS):
        idx = i0 + off
        ok = (idx >= 0) & (idx < n)
        out[ok] += w[..., j][ok] * f[idx[ok]]
    return out


def interp2(F, x0, dx, y0, dy, xq, yq):
    F = np.asarray(F, dtype=np.float64)
    xq = np.asarray(xq, dtype=np.float64)
    yq = np.asarray(yq, dtype=np.float64)
    nx, ny = F.shape
    tx = (xq - x0) / dx
    ty = (yq - y0) / dy
    ix = np.floor(tx).astype(np.int64)
    iy = np.floor(ty).astype(np.int64)
    wx = _lagrange6_weights(tx - ix)
    wy = _lagrange6_weights(ty - iy)
    out = np.zeros(xq.shape, dtype=np.float64)
    for a, offa in enumerate(_OFFSETS):
        ia = ix + offa
        oka = (ia >= 0) & (ia < nx)
        if not oka.any():
            continue
        row_acc = np.zeros(xq.shape, dtype=np.float64)
        for b, offb in enumerate(_OFFSETS):
            ib = iy + offb
            ok = oka & (ib >= 0) & (ib < ny)
            if not ok.any():
                continue
            row_acc[ok] += wy[..., b][ok] * F[ia[ok], ib[ok]]
        out += wx[..., a] * row_acc
    return out


def radon_row(W, q0, dq, p0, dp, xs, cos_t, sin_t, s):
    xs = np.asarray(xs, dtype=np.float64)
    s = np.asarray(s, dtype=np.float64)
    qpts = xs[:, None] * cos_t - s[None, :] * sin_t
    ppts = xs[:, None] * sin_t + s[None, :] * cos_t
    vals = interp2(W, q0, dq, p0, dp, qpts, ppts)
    ds = s[1] - s[0]
    weights = np.full(s.shape, ds)
    weights[0] *= 0.5
    weights[-1] *= 0.5
    return vals @ weights


def _d1_axis0(W, dq):
    # zero outside the grid: missing neighbours contribute nothing
    Wp = np.pad(W, ((2, 2), (0, 0)))
    return (Wp[:-4] - 8.0 * Wp[1:-3] + 8.0 * Wp[3:-1] - Wp[4:]) / (12.0 * dq)


def _d1_axis1(W, dp):
    return _d1_axis0(W.T, dp).T


def _d3_axis1(W, dp):
    Wp = np.pad(W, ((0, 0), (3, 3)))
    c = Wp
    out = (
        0.125 * c[:, :-6]
        - c[:, 1:-5]
        + 1.625 * c[:, 2:-4]
        - 1.625 * c[:, 4:-2]
        + c[:, 5:-1]
        - 0.125 * c[:, 6:]
    )
    return out / dp**3


def liouville_rhs(W, p, vq, dq, dp):
    W = np.asarray(W, dtype=np.float64)
    dWdq = _d1_axis0(W, dq)
    dWdp = _d1_axis1(W, dp)
    return -p[None, :] * dWdq + vq[:, None] * dWdp


def moyal_rhs(W, p, vq, vqqq, dq, dp):
    out = liouville_rhs(W, p, vq, dq, dp)
    out -= (vqqq[:, None] / 24.0) * _d3_axis1(W, dp)
    return out
