"""Hermite polynomials and normalized oscillator eigenfunctions.

``hermite_values`` returns the raw physicists' polynomials H_n, which
overflow double precision once n and |x| grow (H_n(x) ~ (2x)^n); callers in
that regime should use ``hermite_functions``, whose Gaussian-weighted,
unit-norm recurrence stays bounded for any n.
"""

from __future__ import annotations

import math

import numpy as np

__all__ = ["hermite_values", "hermite_functions"]


def hermite_values(n_max, x):
    """H_0..H_n_max at x (physicists' convention), shape (n_max+1,) + x.shape.

    Raises OverflowError when the recurrence leaves the representable range;
    use hermite_functions for large n or |x|.
    """
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    x = np.asarray(x, dtype=np.float64)
    out = np.empty((n_max + 1,) + x.shape, dtype=np.float64)
    out[0] = 1.0
    if n_max >= 1:
        out[1] = 2.0 * x
    for n in range(1, n_max):
        out[n + 1] = 2.0 * x * out[n] - 2.0 * n * out[n - 1]
    if not np.all(np.isfinite(out)):
        raise OverflowError(
            "Hermite recurrence overflowed; use hermite_functions, the "
            "scaled (unit-norm eigenfunction) representation"
        )
    return out


def hermite_functions(n_max, x):
    """Oscillator eigenfunctions psi_0..psi_n_max at x.

    psi_n(x) = H_n(x) exp(-x^2/2) / (pi^(1/4) 2^(n/2) sqrt(n!)), generated by
    the stabilized recurrence
    psi_{n+1} = sqrt(2/(n+1)) x psi_n - sqrt(n/(n+1)) psi_{n-1}.
    """
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    x = np.asarray(x, dtype=np.float64)
    out = np.empty((n_max + 1,) + x.shape, dtype=np.float64)
    out[0] = math.pi ** -0.25 * np.exp(-0.5 * x * x)
    if n_max >= 1:
        out[1] = math.sqrt(2.0) * x * out[0]
    for n in range(1, n_max):
        out[n + 1] = (math.sqrt(2.0 / (n + 1)) * x * out[n]
                      - math.sqrt(n / (n + 1.0)) * out[n - 1])
    return out
