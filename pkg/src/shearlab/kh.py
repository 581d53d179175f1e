"""Linearized Kelvin-Helmholtz operators for a flat vortex sheet.

2d: one Fourier mode k of the sheet is a 2x2 linear system.  Two
conventions are provided because the first-order and the second-order
forms of the linearization disagree on the power of the sheet strength:
``first_order`` gives growth sqrt(Omega0) |2 pi k| and ``second_order``
gives |Omega0| |2 pi k|.

3d: the 4x4 matrix acting on (x3, w1, w2, w3) for a wavevector
k = |k| (cos theta, sin theta) and background density (w1, w2, 0), with
nonzero eigenvalues +-|k ^ w| / 2.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import mpmath
import numpy as np

from .errors import InvalidBackground, InvalidParameters, ZeroMode

__all__ = [
    "Mode2D",
    "mode2d_matrix",
    "growth_rate_2d",
    "evolve_mode2d",
    "estimate_growth_rate",
    "StabilityMatrix3D",
    "SpectrumReport",
    "assemble_3d_matrix",
    "predicted_spectrum",
    "spectrum_3d",
    "hausdorff_distance",
    "ellipticity_scan_2d",
    "ellipticity_scan_3d",
    "random_3d_samples",
]

Convention = Literal["first_order", "second_order"]
CONVENTIONS: tuple[str, ...] = ("first_order", "second_order")


@dataclass(frozen=True)
class Mode2D:
    k: int
    omega0: float
    state: tuple[complex, complex] = (1.0, 0.0)

    def __post_init__(self):
        if self.k == 0:
            raise ZeroMode("mode k = 0 carries no dynamics")


def mode2d_matrix(k: int, omega0: float, convention: Convention = "first_order") -> np.ndarray:
    """Generator M of d/dt (y_x, w) = M (y_x, w) for mode k at eps = 0."""
    if k == 0:
        raise ZeroMode("mode k = 0 carries no dynamics")
    d = abs(2 * np.pi * k)
    if convention == "first_order":
        return np.array([[0.0, omega0 * d], [d, 0.0]])
    if convention == "second_order":
        return np.array([[0.0, 1.0], [omega0**2 * d**2, 0.0]])
    raise InvalidParameters(f"unknown convention {convention!r}")


def growth_rate_2d(k: int, omega0: float, convention: Convention = "first_order") -> float:
    """Largest real part of the eigenvalues of the mode matrix, in closed form."""
    m = mode2d_matrix(k, omega0, convention)
    ab = m[0, 1] * m[1, 0]
    return float(np.sqrt(ab)) if ab > 0 else 0.0


def _expm_offdiag(m: np.ndarray, t: float) -> np.ndarray:
    """exp(t M) for M = [[0, a], [b, 0]] via M^2 = ab I."""
    a, b = m[0, 1], m[1, 0]
    ab = a * b
    if ab > 0:
        mu = np.sqrt(ab)
        c, s = np.cosh(mu * t), np.sinh(mu * t) / mu
    elif ab < 0:
        nu = np.sqrt(-ab)
        c, s = np.cos(nu * t), np.sin(nu * t) / nu
    else:
        c, s = 1.0, t
    return c * np.eye(2) + s * m


def evolve_mode2d(mode: Mode2D, convention: Convention, t: float) -> np.ndarray:
    """State at time t under the exact exponential of the 2x2 generator."""
    m = mode2d_matrix(mode.k, mode.omega0, convention)
    return _expm_offdiag(m, t) @ np.asarray(mode.state, dtype=complex)


def estimate_growth_rate(mode: Mode2D, convention: Convention, t_lo: float | None = None, t_hi: float | None = None) -> float:
    """Slope of log ||state(t)|| between t_lo and t_hi (defaults 4/sigma, 8/sigma)."""
    sigma = growth_rate_2d(mode.k, mode.omega0, convention)
    if sigma == 0 and (t_lo is None or t_hi is None):
        return 0.0
    t_lo = 4.0 / sigma if t_lo is None else t_lo
    t_hi = 8.0 / sigma if t_hi is None else t_hi
    a = np.linalg.norm(evolve_mode2d(mode, convention, t_lo))
    b = np.linalg.norm(evolve_mode2d(mode, convention, t_hi))
    return float((np.log(b) - np.log(a)) / (t_hi - t_lo))


@dataclass(frozen=True)
class StabilityMatrix3D:
    kmag: float
    theta: float
    omega0: tuple[float, float, float]

    @property
    def k_dot_w(self) -> float:
        w1, w2, _ = self.omega0
        return self.kmag * (w1 * np.cos(self.theta) + w2 * np.sin(self.theta))

    @property
    def k_wedge_w(self) -> float:
        w1, w2, _ = self.omega0
        return abs(self.kmag * (np.cos(self.theta) * w2 - np.sin(self.theta) * w1))

    @property
    def entries(self) -> np.ndarray:
        s, c = np.sin(self.theta), np.cos(self.theta)
        w1, w2, _ = self.omega0
        kw2 = self.kmag**2 * (w1**2 + w2**2)
        kd = self.k_dot_w
        return np.array(
            [
                [0, 0.5j * s, -0.5j * c, 0],
                [-0.5j * kw2 * s, 0, 0, 0.5 * kd * s],
                [0.5j * kw2 * c, 0, 0, -0.5 * kd * c],
                [0, -0.5 * kd * s, 0.5 * kd * c, 0],
            ],
            dtype=complex,
        )


@dataclass(frozen=True)
class SpectrumReport:
    eigenvalues: tuple[complex, ...]
    predicted: tuple[complex, ...]
    max_deviation: float
    trace: complex


def assemble_3d_matrix(kmag: float, theta: float, omega0) -> StabilityMatrix3D:
    w = tuple(float(v) for v in omega0)
    if len(w) == 2:
        w = (w[0], w[1], 0.0)
    if len(w) != 3:
        raise InvalidParameters("omega0 must have two or three components")
    if w[2] != 0:
        raise InvalidBackground("background vorticity density must be horizontal (third component 0)")
    if not kmag > 0:
        raise InvalidParameters("|k| must be positive")
    return StabilityMatrix3D(float(kmag), float(theta), w)


def _sorted(values) -> tuple[complex, ...]:
    return tuple(sorted((complex(v) for v in values), key=lambda z: (round(z.real, 12), round(z.imag, 12))))


def predicted_spectrum(m: StabilityMatrix3D) -> tuple[complex, ...]:
    h = 0.5 * m.k_wedge_w
    return _sorted([0.0, 0.0, -h, h])


def hausdorff_distance(a, b) -> float:
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    d = np.abs(a[:, None] - b[None, :])
    return float(max(d.min(axis=1).max(), d.min(axis=0).max()))


def _eig_mp(entries: np.ndarray, dps: int) -> list[complex]:
    # private context: the global mpmath precision is shared between threads
    ctx = mpmath.MPContext()
    ctx.dps = dps
    a = ctx.matrix([[ctx.mpc(complex(v)) for v in row] for row in entries])
    return [complex(v) for v in ctx.eig(a, left=False, right=False)]


def spectrum_3d(m: StabilityMatrix3D, method: Literal["mpmath", "numpy"] = "mpmath", dps: int = 50) -> SpectrumReport:
    """Eigenvalues of the assembled matrix against the predicted set {0, 0, +-|k ^ w|/2}.

    The default eigensolver works in ``dps`` decimal digits because the
    matrix is non-normal: along k || w it is nilpotent and a double-precision
    solver returns eigenvalues of size sqrt(eps) ~ 1e-8 instead of 0.
    """
    a = m.entries
    ev = _eig_mp(a, dps) if method == "mpmath" else np.linalg.eigvals(a)
    ev = _sorted(ev)
    pred = predicted_spectrum(m)
    return SpectrumReport(ev, pred, hausdorff_distance(ev, pred), complex(np.trace(a)))


def ellipticity_scan_2d(omega0: float, ks, convention: Convention = "first_order"):
    """Rows (k, sigma(k), sigma(k)/|2 pi k|) and the minimum ratio over k."""
    ks = list(ks)
    if len(ks) < 16:
        raise InvalidParameters("need at least 16 wavenumbers")
    rows = []
    for k in ks:
        s = growth_rate_2d(k, omega0, convention)
        rows.append((int(k), s, s / abs(2 * np.pi * k)))
    return rows, min(r[2] for r in rows)


def ellipticity_scan_3d(omega0, n_dirs: int = 64, kmag: float = 1.0, method: Literal["mpmath", "numpy"] = "mpmath"):
    """Scan theta over [0, 2 pi) and report min over theta of max|eig| / |k|.

    Returns (rows, min_value, theta_min) with theta_min reduced modulo pi
    (k and -k are the same direction line).
    """
    if n_dirs < 16:
        raise InvalidParameters("need at least 16 direction samples")
    rows = []
    for i in range(n_dirs):
        theta = 2 * np.pi * i / n_dirs
        rep = spectrum_3d(assemble_3d_matrix(kmag, theta, omega0), method)
        rows.append((theta, max(abs(v) for v in rep.eigenvalues) / kmag))
    i_min = int(np.argmin([r[1] for r in rows]))
    return rows, rows[i_min][1], float(rows[i_min][0] % np.pi)


def random_3d_samples(count: int, seed: int):
    """Seeded (|k|, theta, omega0) with |k| in [0.1, 10], theta in [0, 2 pi), omega0 in [-2, 2]^2."""
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        kmag = float(rng.uniform(0.1, 10.0))
        theta = float(rng.uniform(0.0, 2 * np.pi))
        w = rng.uniform(-2.0, 2.0, size=2)
        out.append((kmag, theta, (float(w[0]), float(w[1]), 0.0)))
    return out
