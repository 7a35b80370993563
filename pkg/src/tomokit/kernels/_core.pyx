# Compiled implementations of the hot kernels. Semantics are documented in
# tomokit/kernels/__init__.py and mirrored by tomokit/kernels/_pure.py.

import numpy as np

cimport numpy as cnp
from libc.math cimport floor

cnp.import_array()

cdef double[6] _DENOM = [-120.0, 24.0, -12.0, 12.0, -24.0, 120.0]


cdef inline void _weights6(double u, double* w) noexcept nogil:
    # 6-point Lagrange weights for tap offsets -2..3 at fractional position u
    cdef double[6] diff
    cdef int j, k
    cdef double acc
    for j in range(6):
        diff[j] = u - (j - 2)
    for j in range(6):
        acc = 1.0
        for k in range(6):
            if k != j:
                acc *= diff[k]
        w[j] = acc / _DENOM[j]


cdef inline double _interp2_point(const double[:, ::1] F, double x0, double dx,
                                  double y0, double dy, double x, double y) noexcept nogil:
    cdef double tx = (x - x0) / dx
    cdef double ty = (y - y0) / dy
    cdef Py_ssize_t ix = <Py_ssize_t>floor(tx)
    cdef Py_ssize_t iy = <Py_ssize_t>floor(ty)
    cdef double[6] wx
    cdef double[6] wy
    cdef Py_ssize_t nx = F.shape[0]
    cdef Py_ssize_t ny = F.shape[1]
    cdef Py_ssize_t a, b, ia, ib
    cdef double acc = 0.0, row
    _weights6(tx - ix, wx)
    _weights6(ty - iy, wy)
    for a in range(6):
        ia = ix + a - 2
        if ia < 0 or ia >= nx:
            continue
        row = 0.0
        for b in range(6):
            ib = iy + b - 2
            if ib < 0 or ib >= ny:
                continue
            row += wy[b] * F[ia, ib]
        acc += wx[a] * row
    return acc


cdef inline double _interp1_point(const double[::1] f, double x0, double dx,
                                  double x) noexcept nogil:
    cdef double t = (x - x0) / dx
    cdef Py_ssize_t i0 = <Py_ssize_t>floor(t)
    cdef double[6] w
    cdef Py_ssize_t n = f.shape[0]
    cdef Py_ssize_t j, idx
    cdef double acc = 0.0
    _weights6(t - i0, w)
    for j in range(6):
        idx = i0 + j - 2
        if 0 <= idx < n:
            acc += w[j] * f[idx]
    return acc


def interp1(f, double x0, double dx, xq):
    cdef cnp.ndarray[double, ndim=1] fa = np.ascontiguousarray(f, dtype=np.float64)
    xq_arr = np.asarray(xq, dtype=np.float64)
    cdef cnp.ndarray[double, ndim=1] xf = np.ascontiguousarray(xq_arr.ravel())
    cdef cnp.ndarray[double, ndim=1] out = np.empty(xf.shape[0], dtype=np.float64)
    cdef const double[::1] fv = fa
    cdef const double[::1] xv = xf
    cdef double[::1] ov = out
    cdef Py_ssize_t i, n = xf.shape[0]
    with nogil:
        for i in range(n):
            ov[i] = _interp1_point(fv, x0, dx, xv[i])
    return out.reshape(xq_arr.shape)


def interp2(F, double x0, double dx, double y0, double dy, xq, yq):
    cdef cnp.ndarray[double, ndim=2] Fa = np.ascontiguousarray(F, dtype=np.float64)
    xq_arr = np.asarray(xq, dtype=np.float64)
    yq_arr = np.asarray(yq, dtype=np.float64)
    if xq_arr.shape != yq_arr.shape:
        xq_arr, yq_arr = np.broadcast_arrays(xq_arr, yq_arr)
    cdef cnp.ndarray[double, ndim=1] xf = np.ascontiguousarray(np.asarray(xq_arr).ravel(), dtype=np.float64)
    cdef cnp.ndarray[double, ndim=1] yf = np.ascontiguousarray(np.asarray(yq_arr).ravel(), dtype=np.float64)
    cdef cnp.ndarray[double, ndim=1] out = np.empty(xf.shape[0], dtype=np.float64)
    cdef const double[:, ::1] Fv = Fa
    cdef const double[::1] xv = xf
    cdef const double[::1] yv = yf
    cdef double[::1] ov = out
    cdef Py_ssize_t i, n = xf.shape[0]
    with nogil:
        for i in range(n):
            ov[i] = _interp2_point(Fv, x0, dx, y0, dy, xv[i], yv[i])
    return out.reshape(np.asarray(xq_arr).shape)


def radon_row(W, double q0, double dq, double p0, double dp,
              xs, double cos_t, double sin_t, s):
    cdef cnp.ndarray[double, ndim=2] Wa = np.ascontiguousarray(W, dtype=np.float64)
    cdef cnp.ndarray[double, ndim=1] xa = np.ascontiguousarray(xs, dtype=np.float64)
    cdef cnp.ndarray[double, ndim=1] sa = np.ascontiguousarray(s, dtype=np.float64)
    cdef cnp.ndarray[double, ndim=1] out = np.zeros(xa.shape[0], dtype=np.float64)
    cdef const double[:, ::1] Wv = Wa
    cdef const double[::1] xv = xa
    cdef const double[::1] sv = sa
    cdef double[::1] ov = out
    cdef Py_ssize_t i, j, nx = xa.shape[0], ns = sa.shape[0]
    cdef double ds = sv[1] - sv[0]
    cdef double acc, wgt, x
    with nogil:
        for i in range(nx):
            x = xv[i]
            acc = 0.0
            for j in range(ns):
                wgt = 0.5 * ds if (j == 0 or j == ns - 1) else ds
                acc += wgt * _interp2_point(Wv, q0, dq, p0, dp,
                                            x * cos_t - sv[j] * sin_t,
                                            x * sin_t + sv[j] * cos_t)
            ov[i] = acc
    return out


def liouville_rhs(W, p, vq, double dq, double dp):
    cdef cnp.ndarray[double, ndim=2] Wa = np.ascontiguousarray(W, dtype=np.float64)
    cdef cnp.ndarray[double, ndim=1] pa = np.ascontiguousarray(p, dtype=np.float64)
    cdef cnp.ndarray[double, ndim=1] va = np.ascontiguousarray(vq, dtype=np.float64)
    cdef cnp.ndarray[double, ndim=2] out = np.empty_like(Wa)
    _transport(Wa, pa, va, None, dq, dp, out)
    return out


def moyal_rhs(W, p, vq, vqqq, double dq, double dp):
    cdef cnp.ndarray[double, ndim=2] Wa = np.ascontiguousarray(W, dtype=np.float64)
    cdef cnp.ndarray[double, ndim=1] pa = np.ascontiguousarray(p, dtype=np.float64)
    cdef cnp.ndarray[double, ndim=1] va = np.ascontiguousarray(vq, dtype=np.float64)
    cdef cnp.ndarray[double, ndim=1] v3 = np.ascontiguousarray(vqqq, dtype=np.float64)
    cdef cnp.ndarray[double, ndim=2] out = np.empty_like(Wa)
    _transport(Wa, pa, va, v3, dq, dp, out)
    return out


cdef void _transport(const double[:, ::1] W, const double[::1] p, const double[::1] vq,
                     object vqqq, double dq, double dp, double[:, ::1] out):
    cdef Py_ssize_t nq = W.shape[0], np_ = W.shape[1]
    cdef Py_ssize_t i, j
    cdef double c1 = 1.0 / (12.0 * dq)
    cdef double c2 = 1.0 / (12.0 * dp)
    cdef double c3 = 1.0 / (dp * dp * dp)
    cdef double dwq, dwp, d3wp, w_m2, w_m1, w_p1, w_p2, w_m3, w_p3
    cdef bint with_third = vqqq is not None
    cdef const double[::1] v3 = vqqq if with_third else vq
    with nogil:
        for i in range(nq):
            for j in range(np_):
                w_m2 = W[i - 2, j] if i >= 2 else 0.0
                w_m1 = W[i - 1, j] if i >= 1 else 0.0
                w_p1 = W[i + 1, j] if i + 1 < nq else 0.0
                w_p2 = W[i + 2, j] if i + 2 < nq else 0.0
                dwq = (w_m2 - 8.0 * w_m1 + 8.0 * w_p1 - w_p2) * c1
                w_m2 = W[i, j - 2] if j >= 2 else 0.0
                w_m1 = W[i, j - 1] if j >= 1 else 0.0
                w_p1 = W[i, j + 1] if j + 1 < np_ else 0.0
                w_p2 = W[i, j + 2] if j + 2 < np_ else 0.0
                dwp = (w_m2 - 8.0 * w_m1 + 8.0 * w_p1 - w_p2) * c2
                out[i, j] = -p[j] * dwq + vq[i] * dwp
                if with_third:
                    w_m3 = W[i, j - 3] if j >= 3 else 0.0
                    w_p3 = W[i, j + 3] if j + 3 < np_ else 0.0
                    d3wp = (0.125 * w_m3 - w_m2 + 1.625 * w_m1
                            - 1.625 * w_p1 + w_p2 - 0.125 * w_p3) * c3
                    out[i, j] -= v3[i] / 24.0 * d3wp
    return
