"""Grid containers for quadrature tomograms and phase-space functions.

Units are dimensionless throughout: mass, oscillator frequency and the
quantum of action are all 1, so position, momentum and the quadrature
variable share one scale.

Conventions baked into these types:

- optical tomograms live on X in [-x_max, x_max] (symmetric, odd point count
  so X = 0 is sampled) and theta_j = j*pi/n_theta on the half-open [0, pi);
  the other half circle is defined by the reflection rule
  w(X, theta + pi) = w(-X, theta);
- phase-space grids are uniform in (q, p) with values[q_index, p_index];
- a symplectic tomogram M(X, mu, nu) is degree -1 homogeneous, so it is
  determined by an optical tomogram through polar reduction: with
  r = hypot(mu, nu), an angle theta in [0, pi) and a sign s carried onto X,
  M(X, mu, nu) = w(s*X/r, theta)/r.  ``polar_decompose`` fixes the branch.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, replace

import numpy as np

from .. import kernels

__all__ = [
    "GridSpec",
    "OpticalTomogramGrid",
    "WignerGrid",
    "FockMatrix",
    "SymplecticView",
    "polar_decompose",
    "save_grid",
    "load_grid",
]


@dataclass(frozen=True)
class GridSpec:
    """Axes for tomogram and phase-space grids.

    X is symmetric about 0 with an odd count (a sample lies at the center);
    theta covers [0, pi) half-open; q/p bounds default to the X bounds.
    """

    x_min: float = -7.0
    x_max: float = 7.0
    n_x: int = 281
    n_theta: int = 64
    q_min: float = -7.0
    q_max: float = 7.0
    n_q: int = 257
    p_min: float = -7.0
    p_max: float = 7.0
    n_p: int = 257

    def __post_init__(self):
        if not self.x_min == -self.x_max or self.x_max <= 0:
            raise ValueError("X range must be symmetric about 0")
        if self.n_x < 3 or self.n_x % 2 == 0:
            raise ValueError("n_x must be odd and >= 3")
        if self.n_theta < 4 or self.n_theta % 2:
            raise ValueError("n_theta must be even and >= 4")
        if self.n_q < 8 or self.n_p < 8:
            raise ValueError("phase-space grid needs at least 8 points per axis")
        if self.q_min >= self.q_max or self.p_min >= self.p_max:
            raise ValueError("empty phase-space range")

    @property
    def x(self):
        return np.linspace(self.x_min, self.x_max, self.n_x)

    @property
    def theta(self):
        return np.arange(self.n_theta) * (math.pi / self.n_theta)

    @property
    def q(self):
        return np.linspace(self.q_min, self.q_max, self.n_q)

    @property
    def p(self):
        return np.linspace(self.p_min, self.p_max, self.n_p)

    @property
    def dx(self):
        return (self.x_max - self.x_min) / (self.n_x - 1)

    @property
    def dtheta(self):
        return math.pi / self.n_theta

    @property
    def dq(self):
        return (self.q_max - self.q_min) / (self.n_q - 1)

    @property
    def dp(self):
        return (self.p_max - self.p_min) / (self.n_p - 1)

    def with_phase_grid(self, lo, hi, n_q, n_p=None):
        return replace(self, q_min=lo, q_max=hi, n_q=n_q,
                       p_min=lo, p_max=hi, n_p=n_p if n_p is not None else n_q)

    def describe_optical(self):
        return f"optical[{self.x_min:g},{self.x_max:g}]x{self.n_x},theta{self.n_theta}"

    def describe_phase(self):
        return (f"phase[{self.q_min:g},{self.q_max:g}]x{self.n_q}"
                f"x[{self.p_min:g},{self.p_max:g}]x{self.n_p}")


def polar_decompose(mu, nu):
    """Map (mu, nu) != (0, 0) to (r, theta, sign) with theta in [0, pi).

    r = hypot(mu, nu).  For nu > 0 the angle is atan2(nu, mu) and sign is +1;
    for nu < 0 the antipode is used (same angle in [0, pi), sign -1); on the
    nu = 0 line theta is 0 with sign +1 for mu > 0 and -1 for mu < 0, which
    is what degree -1 homogeneity under lambda = -1 forces.
    """
    mu = np.asarray(mu, dtype=np.float64)
    nu = np.asarray(nu, dtype=np.float64)
    r = np.hypot(mu, nu)
    if np.any(r == 0.0):
        raise ValueError("polar_decompose undefined at mu = nu = 0")
    raw = np.arctan2(nu, mu)
    sign = np.where(raw < 0.0, -1.0, 1.0)
    theta = np.where(raw < 0.0, raw + math.pi, raw)
    # atan2(0, mu<0) gives exactly pi: fold onto theta = 0 with the sign flip
    on_pi = theta >= math.pi - 1e-15
    theta = np.where(on_pi, 0.0, theta)
    sign = np.where(on_pi, -sign, sign)
    if np.ndim(mu) == 0 and np.ndim(nu) == 0:
        return float(r), float(theta), float(sign)
    return r, theta, sign


class OpticalTomogramGrid:
    """Samples of a quadrature distribution w(X, theta) on a GridSpec.

    values[j, i] = w(x[i], theta[j]).  Rows are extended to [0, 2pi) by the
    reflection rule when angular interpolation or Fourier analysis is needed.
    """

    def __init__(self, spec, values, flags=None):
        values = np.asarray(values, dtype=np.float64)
        if values.shape != (spec.n_theta, spec.n_x):
            raise ValueError(
                f"values shape {values.shape} does not match grid "
                f"({spec.n_theta}, {spec.n_x})"
            )
        if not np.all(np.isfinite(values)):
            raise ValueError("tomogram values must be finite")
        self.spec = spec
        self.values = values
        self.flags = list(flags) if flags else []
        self._theta_coeffs = None

    # -- quadrature ---------------------------------------------------------

    def row_integrals(self, weight=None):
        """Trapezoid integral of each theta row, optionally X-weighted."""
        vals = self.values if weight is None else self.values * weight[None, :]
        return np.trapezoid(vals, dx=self.spec.dx, axis=1)

    def normalization_defect(self):
        return float(np.abs(self.row_integrals() - 1.0).max())

    # -- evaluation ---------------------------------------------------------

    def extended_values(self):
        """Rows on the full circle [0, 2pi): the second half is X-reflected."""
        return np.vstack([self.values, self.values[:, ::-1]])

    def _coeffs(self):
        if self._theta_coeffs is None:
            ext = self.extended_values()
            self._theta_coeffs = np.fft.fft(ext, axis=0) / ext.shape[0]
        return self._theta_coeffs

    def eval_row(self, theta):
        """w on the X grid at an arbitrary angle, by trigonometric interpolation."""
        coeffs = self._coeffs()
        k = np.fft.fftfreq(coeffs.shape[0], d=1.0 / coeffs.shape[0])
        phases = np.exp(1j * k * float(theta))
        return (phases @ coeffs).real

    def eval_optical(self, x, theta):
        """w at arbitrary (X, theta); X interpolation is 6-point Lagrange."""
        row = self.eval_row(theta)
        return kernels.interp1(row, self.spec.x_min, self.spec.dx,
                               np.asarray(x, dtype=np.float64))

    def boundary_magnitude(self):
        return float(np.abs(self.values[:, [0, -1]]).max())


class WignerGrid:
    """Samples of a phase-space function on a uniform (q, p) grid."""

    def __init__(self, spec, values, flags=None):
        values = np.asarray(values, dtype=np.float64)
        if values.shape != (spec.n_q, spec.n_p):
            raise ValueError(
                f"values shape {values.shape} does not match grid "
                f"({spec.n_q}, {spec.n_p})"
            )
        if not np.all(np.isfinite(values)):
            raise ValueError("phase-space values must be finite")
        self.spec = spec
        self.values = values
        self.flags = list(flags) if flags else []

    def mass(self):
        return float(np.trapezoid(np.trapezoid(self.values, dx=self.spec.dp, axis=1),
                              dx=self.spec.dq))

    def eval_wigner(self, q, p):
        return kernels.interp2(self.values, self.spec.q_min, self.spec.dq,
                               self.spec.p_min, self.spec.dp,
                               np.asarray(q, dtype=np.float64),
                               np.asarray(p, dtype=np.float64))

    def boundary_magnitude(self):
        v = self.values
        return float(max(np.abs(v[0]).max(), np.abs(v[-1]).max(),
                         np.abs(v[:, 0]).max(), np.abs(v[:, -1]).max()))


class FockMatrix:
    """Hermitian matrix in the oscillator number basis (not necessarily positive)."""

    def __init__(self, mat, tol=1e-10):
        mat = np.asarray(mat, dtype=np.complex128)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise ValueError("expected a square matrix")
        scale = max(1.0, float(np.abs(mat).max()))
        if np.abs(mat - mat.conj().T).max() > tol * scale:
            raise ValueError("matrix is not Hermitian within tolerance")
        self.mat = 0.5 * (mat + mat.conj().T)

    @property
    def n_max(self):
        return self.mat.shape[0] - 1

    def trace(self):
        return float(self.mat.trace().real)

    def padded(self, n_max):
        """Same matrix embedded in a larger basis (or truncated to a smaller one)."""
        dim = n_max + 1
        cur = self.mat.shape[0]
        if dim == cur:
            return self
        out = np.zeros((dim, dim), dtype=np.complex128)
        m = min(dim, cur)
        out[:m, :m] = self.mat[:m, :m]
        return FockMatrix(out)


class SymplecticView:
    """Degree -1 homogeneous extension of an optical tomogram.

    eval_symplectic(X, mu, nu) = w(s*X/r, theta)/r with (r, theta, s) from
    ``polar_decompose``; homogeneity and the unit-circle identity
    M(X, cos t, sin t) = w(X, t) hold by construction.
    """

    def __init__(self, base):
        if not hasattr(base, "eval_optical"):
            raise TypeError("base must expose eval_optical(x, theta)")
        self.base = base

    def eval_symplectic(self, x, mu, nu):
        x = np.asarray(x, dtype=np.float64)
        r, theta, sign = polar_decompose(mu, nu)
        if np.ndim(r) == 0:
            return self.base.eval_optical(sign * x / r, theta) / r
        x, r, theta, sign = np.broadcast_arrays(x, r, theta, sign)
        out = np.empty(x.shape, dtype=np.float64)
        flat = out.reshape(-1)
        xf, rf, tf, sf = (a.reshape(-1) for a in (x, r, theta, sign))
        for i in range(flat.shape[0]):
            flat[i] = self.base.eval_optical(sf[i] * xf[i] / rf[i], tf[i]) / rf[i]
        return out

    def eval_optical(self, x, theta):
        return self.base.eval_optical(x, theta)


# -- file round trip ---------------------------------------------------------

_OPTICAL_KEYS = {"kind", "x_min", "x_max", "n_x", "n_theta", "data"}
_WIGNER_KEYS = {"kind", "x_min", "x_max", "n_q", "n_p", "data"}


def save_grid(grid, manifest_path, data_path=None):
    """Write a grid as a JSON manifest plus a row-major CSV payload."""
    manifest_path = str(manifest_path)
    if data_path is None:
        data_path = manifest_path[:-5] + ".csv" if manifest_path.endswith(".json") \
            else manifest_path + ".csv"
    data_path = str(data_path)
    if isinstance(grid, OpticalTomogramGrid):
        manifest = {
            "kind": "optical",
            "x_min": grid.spec.x_min,
            "x_max": grid.spec.x_max,
            "n_x": grid.spec.n_x,
            "n_theta": grid.spec.n_theta,
            "data": data_path,
        }
    elif isinstance(grid, WignerGrid):
        s = grid.spec
        if (s.q_min, s.q_max) != (s.p_min, s.p_max):
            raise ValueError("file format stores a square phase-space range")
        manifest = {
            "kind": "wigner",
            "x_min": s.q_min,
            "x_max": s.q_max,
            "n_q": s.n_q,
            "n_p": s.n_p,
            "data": data_path,
        }
    else:
        raise TypeError(f"cannot save {type(grid).__name__}")
    with open(data_path, "w", newline="") as fh:
        writer = csv.writer(fh)
        for row in grid.values:
            writer.writerow([repr(float(v)) for v in row])
    with open(manifest_path, "w") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return manifest_path


def load_grid(manifest_path):
    with open(manifest_path) as fh:
        manifest = json.load(fh)
    kind = manifest.get("kind")
    if kind == "optical":
        extra = set(manifest) - _OPTICAL_KEYS
        missing = _OPTICAL_KEYS - set(manifest)
    elif kind == "wigner":
        extra = set(manifest) - _WIGNER_KEYS
        missing = _WIGNER_KEYS - set(manifest)
    else:
        raise ValueError(f"unknown grid kind {kind!r}")
    if extra:
        raise ValueError(f"unknown manifest keys: {sorted(extra)}")
    if missing:
        raise ValueError(f"missing manifest keys: {sorted(missing)}")
    values = np.loadtxt(manifest["data"], delimiter=",", ndmin=2)
    if kind == "optical":
        spec = GridSpec(x_min=manifest["x_min"], x_max=manifest["x_max"],
                        n_x=manifest["n_x"], n_theta=manifest["n_theta"])
        return OpticalTomogramGrid(spec, values)
    lo, hi = manifest["x_min"], manifest["x_max"]
    spec = GridSpec(q_min=lo, q_max=hi, n_q=manifest["n_q"],
                    p_min=lo, p_max=hi, n_p=manifest["n_p"])
    return WignerGrid(spec, values)
