"""Quadrature of the weak Euler formulation on the torus.

Spatial integrals use the uniform tensor trapezoidal rule on an N^3 grid
shifted by a golden-ratio fraction of a cell, so that jumps at dyadic
locations never sit on a node.  Every candidate field handled here is
independent of x3, so the x3 sum of a Fourier mode exp(2 pi i k3 x3) is
done in closed form (it is exactly the grid average of that mode) and
only the (x1, x2) plane is sampled.

Time integrals use Gauss-Legendre panels.  For shear flows the panels are
split where x1 - t u1(x2) crosses a singular point of u3, so the velocity
is smooth in t on every panel and the time rule does not pollute the
spatial error being measured.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import InvalidParameters, QuadratureUnderResolved
from .field import ShearFlow
from .profiles import ProfileFunction

__all__ = [
    "GOLDEN_OFFSET",
    "TimeWindow",
    "TestFunction",
    "QuadratureSpec",
    "Factor1D",
    "weak_residual",
    "weak_residuals",
    "residual_study",
    "fubini_check",
    "divergence_residual",
    "generate_test_basis",
]

GOLDEN_OFFSET = (np.sqrt(5.0) - 1.0) / 2.0
_CHUNK = 1 << 14


@dataclass(frozen=True)
class TimeWindow:
    """w(t) = exp(s - s / (1 - (t/T)^2)) on [0, T), zero afterwards; w(0) = 1."""

    t_end: float = 1.0
    sharpness: float = 1.0

    def __post_init__(self):
        if self.t_end <= 0 or self.sharpness <= 0:
            raise InvalidParameters("time window needs t_end > 0 and sharpness > 0")

    def __call__(self, t):
        tau = np.asarray(t, dtype=float) / self.t_end
        inside = np.abs(tau) < 1
        d = np.where(inside, 1.0 - tau**2, 1.0)
        return np.where(inside, np.exp(self.sharpness - self.sharpness / d), 0.0)

    def derivative(self, t):
        tau = np.asarray(t, dtype=float) / self.t_end
        inside = np.abs(tau) < 1
        d = np.where(inside, 1.0 - tau**2, 1.0)
        w = np.where(inside, np.exp(self.sharpness - self.sharpness / d), 0.0)
        return w * (-2.0 * self.sharpness * tau / d**2) / self.t_end


@dataclass(frozen=True)
class TestFunction:
    """phi(x, t) = w(t) * sum_m Re(c_m exp(2 pi i k_m . x)), with k_m . c_m = 0."""

    __test__ = False  # not a pytest class

    wavevectors: tuple[tuple[int, int, int], ...]
    amplitudes: tuple[tuple[complex, complex, complex], ...]
    window: TimeWindow = TimeWindow()

    @classmethod
    def from_modes(cls, modes, window: TimeWindow | None = None) -> "TestFunction":
        """Build from (k, c) pairs, projecting each c onto the plane orthogonal to k."""
        ks, cs = [], []
        for k, c in modes:
            k = np.asarray(k, dtype=int)
            c = np.asarray(c, dtype=complex)
            if k.shape != (3,) or c.shape != (3,):
                raise InvalidParameters("wavevectors and amplitudes must be 3-vectors")
            kk = float(k @ k)
            if kk > 0:
                c = c - k * (k @ c) / kk
            ks.append(tuple(int(v) for v in k))
            cs.append(tuple(complex(v) for v in c))
        return cls(tuple(ks), tuple(cs), window or TimeWindow())

    def _phase(self, x1, x2, x3):
        k = np.asarray(self.wavevectors, dtype=float)
        x1, x2, x3 = np.broadcast_arrays(x1, x2, x3)
        arg = 2 * np.pi * (np.multiply.outer(k[:, 0], x1) + np.multiply.outer(k[:, 1], x2) + np.multiply.outer(k[:, 2], x3))
        return np.exp(1j * arg)

    def spatial(self, x1, x2, x3):
        """Spatial factor, shape (3, *shape)."""
        e = self._phase(x1, x2, x3)
        c = np.asarray(self.amplitudes)
        return np.real(np.tensordot(c.T, e, axes=1))

    def value(self, x1, x2, x3, t):
        return self.window(t) * self.spatial(x1, x2, x3)

    def time_derivative(self, x1, x2, x3, t):
        return self.window.derivative(t) * self.spatial(x1, x2, x3)

    def gradient(self, x1, x2, x3, t):
        """G[i, j] = d phi_i / d x_j, shape (3, 3, *shape)."""
        e = self._phase(x1, x2, x3)
        c = np.asarray(self.amplitudes)
        k = np.asarray(self.wavevectors, dtype=float)
        coef = 2j * np.pi * np.einsum("mi,mj->ijm", c, k)
        return self.window(t) * np.real(np.tensordot(coef, e, axes=1))

    def divergence(self, x1, x2, x3, t):
        g = self.gradient(x1, x2, x3, t)
        return g[0, 0] + g[1, 1] + g[2, 2]


@dataclass(frozen=True)
class QuadratureSpec:
    n: int = 64
    q: int = 16
    t_end: float = 1.0
    offset: float = GOLDEN_OFFSET

    def __post_init__(self):
        if self.n < 4 or self.q < 2:
            raise InvalidParameters("quadrature needs n >= 4 and q >= 2")
        if self.t_end <= 0:
            raise InvalidParameters("t_end must be positive")

    def nodes(self):
        return (np.arange(self.n) + self.offset) / self.n

    def plane(self):
        x = self.nodes()
        X1, X2 = np.meshgrid(x, x, indexing="ij")
        return X1.ravel(), X2.ravel()

    def x3_average(self, k3):
        """Trapezoid average of exp(2 pi i k3 x3) over the x3 nodes (exact)."""
        k3 = np.asarray(k3)
        return np.where(k3 % self.n == 0, np.exp(2j * np.pi * k3 * self.offset / self.n), 0.0)

    def refined(self, factor: int = 2) -> "QuadratureSpec":
        return QuadratureSpec(self.n * factor, self.q, self.t_end, self.offset)


def _time_panels(field, x1, x2, t_end, q, split):
    g, gw = np.polynomial.legendre.leggauss(q)
    g, gw = 0.5 * (g + 1.0), 0.5 * gw
    if split and hasattr(field, "time_breakpoints"):
        bp = field.time_breakpoints(x1, x2, t_end)
    else:
        bp = np.empty((x1.size, 0))
    edges = np.concatenate([np.zeros((x1.size, 1)), bp, np.full((x1.size, 1), t_end)], axis=1)
    a, b = edges[:, :-1], edges[:, 1:]
    tt = a[..., None] + (b - a)[..., None] * g
    ww = (b - a)[..., None] * gw
    return tt, ww


def weak_residuals(field, phis: Sequence[TestFunction], quad: QuadratureSpec, split_time: bool = True) -> np.ndarray:
    """Weak-form residuals R(phi) for each test function.

    R = int int [u . d_t phi + <u (x) u, grad phi>] dx dt + int u0 . phi(., 0) dx,
    which vanishes for a weak solution (the initial term carries the sign
    that results from integrating the time derivative by parts).
    """
    if not phis:
        return np.zeros(0)
    t_end = max(phi.window.t_end for phi in phis)
    if t_end > quad.t_end + 1e-12:
        raise InvalidParameters("test-function windows extend past the quadrature horizon")
    x1_all, x2_all = quad.plane()
    total = np.zeros(len(phis), dtype=complex)
    modes = []
    for phi in phis:
        k = np.asarray(phi.wavevectors, dtype=float)
        c = np.asarray(phi.amplitudes, dtype=complex)
        chi = quad.x3_average(np.asarray(phi.wavevectors)[:, 2])
        modes.append((k, c, chi))
    x3_node = quad.offset / quad.n
    for start in range(0, x1_all.size, _CHUNK):
        x1 = x1_all[start:start + _CHUNK]
        x2 = x2_all[start:start + _CHUNK]
        tt, ww = _time_panels(field, x1, x2, quad.t_end, quad.q, split_time)
        u = field.velocity(x1[:, None, None], x2[:, None, None], x3_node, tt)
        u0 = field.velocity(x1, x2, x3_node, 0.0)
        for i, phi in enumerate(phis):
            k, c, chi = modes[i]
            if not np.any(chi):
                continue
            w = phi.window(tt) * ww
            dw = phi.window.derivative(tt) * ww
            a = np.sum(u * dw, axis=(2, 3))  # int w' u dt, shape (3, n)
            b = np.einsum("ipq,jpq->ijp", u.reshape(3, x1.size, -1), (u * w).reshape(3, x1.size, -1))
            e = np.exp(2j * np.pi * (np.multiply.outer(k[:, 0], x1) + np.multiply.outer(k[:, 1], x2)))
            e *= chi[:, None]
            time_term = np.einsum("mi,in->mn", c, a)
            flux_term = 2j * np.pi * np.einsum("mi,ijn,mj->mn", c, b, k)
            init_term = phi.window(0.0) * np.einsum("mi,in->mn", c, u0)
            total[i] += np.sum(e * (time_term + flux_term + init_term))
    return np.real(total) / x1_all.size


def weak_residual(field, phi: TestFunction, quad: QuadratureSpec, check: bool = False, split_time: bool = True) -> float:
    """Residual for a single test function; ``check`` compares against 2N and warns."""
    r = float(weak_residuals(field, [phi], quad, split_time)[0])
    if check:
        r2 = float(weak_residuals(field, [phi], quad.refined(), split_time)[0])
        if abs(r2 - r) > 0.5 * max(abs(r), 1e-12):
            warnings.warn(
                f"weak residual changed from {r:.3e} to {r2:.3e} under N -> 2N",
                QuadratureUnderResolved,
                stacklevel=2,
            )
    return r


def residual_study(field, phis, ns, q: int = 16, t_end: float = 1.0):
    """Rows (phi_id, N, q, R) over a refinement sequence of grid sizes."""
    rows = []
    for n in ns:
        res = weak_residuals(field, phis, QuadratureSpec(n, q, t_end))
        rows.extend((i, n, q, float(r)) for i, r in enumerate(res))
    return rows


@dataclass(frozen=True)
class Factor1D:
    """amplitude * cos(2 pi k x + phase), a single-mode periodic factor."""

    k: int = 1
    phase: float = 0.0
    amplitude: float = 1.0

    def __call__(self, x):
        return self.amplitude * np.cos(2 * np.pi * self.k * np.asarray(x, dtype=float) + self.phase)


def fubini_check(
    u1: ProfileFunction,
    u3: ProfileFunction,
    factors: tuple[Factor1D, Factor1D, Factor1D],
    window: TimeWindow,
    quad: QuadratureSpec,
    split_time: bool = False,
) -> tuple[float, float]:
    """Both sides of the change-of-variables identity in x1 for the shear map.

    lhs = int u3(x1 - t u1(x2)) f1(x1) f2(x2) f3(x3) w(t)
    rhs = int u3(x1) f1(x1 + t u1(x2)) f2(x2) f3(x3) w(t)

    Both sides share one Gauss-Legendre rule in t.  Unsplit is the default
    because, after the x1 sum, the lhs integrand is smooth in t even when
    u3 oscillates without bound, whereas per-node panels would have to
    resolve that oscillation in t.
    """
    f1, f2, f3 = factors
    flow = ShearFlow(u1, u3)
    x1_all, x2_all = quad.plane()
    f3_mean = float(np.mean(f3(quad.nodes())))
    lhs = rhs = 0.0
    for start in range(0, x1_all.size, _CHUNK):
        x1 = x1_all[start:start + _CHUNK]
        x2 = x2_all[start:start + _CHUNK]
        a = np.asarray(u1(x2), dtype=float)[:, None, None]
        tt, ww = _time_panels(flow, x1, x2, window.t_end, quad.q, split_time)
        wt = window(tt) * ww
        left = u3(x1[:, None, None] - tt * a) * f1(x1)[:, None, None]
        right = np.asarray(u3(x1), dtype=float)[:, None, None] * f1(x1[:, None, None] + tt * a)
        lhs += float(np.sum(np.sum(left * wt, axis=(1, 2)) * f2(x2)))
        rhs += float(np.sum(np.sum(right * wt, axis=(1, 2)) * f2(x2)))
    scale = f3_mean / x1_all.size
    return lhs * scale, rhs * scale


def divergence_residual(field, t: float, n: int, max_mode: int = 3, offset: float = GOLDEN_OFFSET) -> float:
    """max over psi in {cos, sin}(2 pi k . x), |k|_inf <= max_mode, of |int u . grad psi dx|."""
    quad = QuadratureSpec(n, 2, 1.0, offset)
    x1, x2 = quad.plane()
    u = field.velocity(x1, x2, offset / n, t)
    r = np.arange(-max_mode, max_mode + 1)
    best = 0.0
    for k1 in r:
        e1 = np.exp(2j * np.pi * k1 * x1)
        for k2 in r:
            e = e1 * np.exp(2j * np.pi * k2 * x2)
            for k3 in r:
                if k1 == k2 == k3 == 0:
                    continue
                chi = quad.x3_average(k3)
                if chi == 0:
                    continue
                dot = k1 * u[0] + k2 * u[1] + k3 * u[2]
                val = 2j * np.pi * chi * np.mean(dot * e)
                best = max(best, abs(val.real), abs(val.imag))
    return float(best)


def generate_test_basis(
    max_mode: int, count: int, seed: int, t_end: float = 1.0, max_terms: int = 3, planar: bool = False
) -> list[TestFunction]:
    """Seeded family of divergence-free trigonometric test functions.

    Each member has 1..max_terms modes with |k|_inf <= max_mode, random
    complex amplitudes projected onto k-perp, and a window of random
    sharpness supported on [0, t_end).  Amplitudes are scaled so that the
    Euclidean lengths of the projected c_m sum to 1, hence |phi| <= 1.

    ``planar`` draws k3 = 0 only; modes with k3 != 0 integrate to exactly
    zero against any x3-independent field, so this keeps every member
    informative for shear flows.
    """
    if max_mode < 1:
        raise InvalidParameters("max_mode must be >= 1")
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        n_terms = int(rng.integers(1, max_terms + 1))
        modes = []
        while len(modes) < n_terms:
            k = rng.integers(-max_mode, max_mode + 1, size=3)
            if planar:
                k[2] = 0
            if not k.any():
                continue
            c = rng.normal(size=3) + 1j * rng.normal(size=3)
            modes.append((k, c))
        window = TimeWindow(t_end, float(rng.uniform(0.5, 2.0)))
        phi = TestFunction.from_modes(modes, window)
        total = sum(np.linalg.norm(c) for c in phi.amplitudes)
        amps = tuple(tuple(v / total for v in c) for c in phi.amplitudes)
        out.append(TestFunction(phi.wavevectors, amps, window))
    return out
