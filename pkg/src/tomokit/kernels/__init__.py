"""Hot numerical kernels with a compiled core and a numpy fallback.

The compiled extension (``tomokit.kernels._core``, built from Cython) and the
pure-numpy module (``tomokit.kernels._pure``) export the same functions with
identical semantics:

``interp1(f, x0, dx, xq)``
    6-point Lagrange interpolation of uniformly sampled ``f``; the function is
    taken to be zero outside the sampled range.

``interp2(F, x0, dx, y0, dy, xq, yq)``
    Separable 6-point Lagrange interpolation on a uniform 2-d grid, zero
    outside.

``radon_row(W, q0, dq, p0, dp, xs, cos_t, sin_t, s)``
    Line integrals of a phase-space grid along the family of lines
    ``q cos(t) + p sin(t) = X`` for one angle, trapezoid rule over the line
    parameter ``s``.

``liouville_rhs(W, p, vq, dq, dp)`` / ``moyal_rhs(W, p, vq, vqqq, dq, dp)``
    Right-hand sides of the classical and quantum phase-space transport
    equations with 4th-order central differences and zero values outside the
    grid.

The backend is selected at import time: the compiled module wins when it is
importable, otherwise the numpy fallback is used.  ``set_backend`` exists for
tests and benchmarks that need to compare the two.
"""

from __future__ import annotations

from . import _pure

try:
    from . import _core

    _DEFAULT = "compiled"
except ImportError:  # pragma: no cover - depends on the build environment
    _core = None
    _DEFAULT = "python"

_impl = _core if _DEFAULT == "compiled" else _pure
BACKEND = _DEFAULT


def available_backends():
    out = ["python"]
    if _core is not None:
        out.insert(0, "compiled")
    return out


def set_backend(name):
    """Select the kernel backend ("compiled" or "python"). Returns the old name."""
    global _impl, BACKEND
    old = BACKEND
    if name == "compiled":
        if _core is None:
            raise RuntimeError("compiled kernels are not available")
        _impl = _core
    elif name == "python":
        _impl = _pure
    else:
        raise ValueError(f"unknown backend {name!r}")
    BACKEND = name
    return old


def lagrange6_weights(u):
    """Interpolation weights at fractional position u in [0, 1) (numpy path)."""
    return _pure._lagrange6_weights(u)


def interp1(f, x0, dx, xq):
    return _impl.interp1(f, x0, dx, xq)


def interp2(F, x0, dx, y0, dy, xq, yq):
    return _impl.interp2(F, x0, dx, y0, dy, xq, yq)


def radon_row(W, q0, dq, p0, dp, xs, cos_t, sin_t, s):
    return _impl.radon_row(W, q0, dq, p0, dp, xs, cos_t, sin_t, s)


def liouville_rhs(W, p, vq, dq, dp):
    return _impl.liouville_rhs(W, p, vq, dq, dp)


def moyal_rhs(W, p, vq, vqqq, dq, dp):
    return _impl.moyal_rhs(W, p, vq, vqqq, dq, dp)
