"""Shear flows u(x, t) = (u1(x2), 0, u3(x1 - t u1(x2))) and their derivatives."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .profiles import ProfileFunction, Step, profile_from_spec

__all__ = [
    "ShearFlow",
    "ControlField",
    "eval_velocity",
    "eval_vorticity",
    "eval_velocity_gradient",
    "example1_flow",
    "sample_velocity",
    "spectral_divergence",
]


@dataclass(frozen=True)
class ShearFlow:
    u1: ProfileFunction
    u3: ProfileFunction

    @classmethod
    def from_spec(cls, u1: dict, u3: dict) -> "ShearFlow":
        return cls(profile_from_spec(u1), profile_from_spec(u3))

    def velocity(self, x1, x2, x3, t):
        """Vectorized velocity, shape (3, *broadcast shape)."""
        x1, x2, x3, t = np.broadcast_arrays(*(np.asarray(a, dtype=float) for a in (x1, x2, x3, t)))
        a = np.asarray(self.u1(x2), dtype=float)
        b = np.asarray(self.u3(x1 - t * a), dtype=float)
        return np.stack([a, np.zeros_like(a), b])

    def vorticity(self, x1, x2, x3, t):
        x1, x2, x3, t = np.broadcast_arrays(*(np.asarray(a, dtype=float) for a in (x1, x2, x3, t)))
        s = x1 - t * self.u1(x2)
        d1 = np.asarray(self.u1.derivative(x2), dtype=float)
        d3 = np.asarray(self.u3.derivative(s), dtype=float)
        return np.stack([-t * d1 * d3, -d3, -d1])

    def gradient(self, x1, x2, x3, t):
        """Velocity gradient G[i, j] = d u_i / d x_j, shape (3, 3, *shape)."""
        x1, x2, x3, t = np.broadcast_arrays(*(np.asarray(a, dtype=float) for a in (x1, x2, x3, t)))
        s = x1 - t * self.u1(x2)
        d1 = np.asarray(self.u1.derivative(x2), dtype=float)
        d3 = np.asarray(self.u3.derivative(s), dtype=float)
        g = np.zeros((3, 3) + d1.shape)
        g[0, 1] = d1
        g[2, 0] = d3
        g[2, 1] = -t * d1 * d3
        return g

    def time_breakpoints(self, x1, x2, t_end):
        """Times in (0, t_end) where x1 - t u1(x2) crosses a singular point of u3.

        Returns an array of shape (n, K) padded with ``t_end``; at a fixed
        spatial node the velocity is smooth in t between consecutive entries.
        """
        x1 = np.asarray(x1, dtype=float).ravel()
        a = np.asarray(self.u1(np.asarray(x2, dtype=float).ravel()), dtype=float)
        pts = self.u3.singular_points()
        if not pts or t_end <= 0:
            return np.full((x1.size, 0), float(t_end))
        amax = float(np.max(np.abs(a))) if a.size else 0.0
        per_point = int(np.ceil(amax * t_end)) + 1
        sgn = np.sign(a)
        safe = np.where(a == 0, 1.0, a)
        cols = []
        for d in pts:
            base = np.where(a > 0, np.floor(x1 - d), np.ceil(x1 - d))
            for j in range(per_point):
                tc = (x1 - d - (base - sgn * j)) / safe
                cols.append(np.where((a != 0) & (tc > 0) & (tc < t_end), tc, t_end))
        return np.sort(np.stack(cols, axis=1), axis=1)


@dataclass(frozen=True)
class ControlField:
    """(f(x1), 0, 0): not divergence free unless f is constant."""

    f: ProfileFunction

    def velocity(self, x1, x2, x3, t):
        x1, x2, x3, t = np.broadcast_arrays(*(np.asarray(a, dtype=float) for a in (x1, x2, x3, t)))
        a = np.asarray(self.f(x1), dtype=float)
        return np.stack([a, np.zeros_like(a), np.zeros_like(a)])


def _point(x):
    p = np.asarray(x, dtype=float)
    if p.shape != (3,) or not np.all(np.isfinite(p)):
        raise ValueError("expected a finite 3-vector")
    return p


def eval_velocity(flow: ShearFlow, x, t: float) -> np.ndarray:
    p = _point(x)
    return flow.velocity(p[0], p[1], p[2], t)


def eval_vorticity(flow: ShearFlow, x, t: float) -> np.ndarray:
    """Curl of the velocity: (-t u1'(x2) u3'(s), -u3'(s), -u1'(x2)), s = x1 - t u1(x2)."""
    p = _point(x)
    return flow.vorticity(p[0], p[1], p[2], t)


def eval_velocity_gradient(flow: ShearFlow, x, t: float) -> np.ndarray:
    p = _point(x)
    return flow.gradient(p[0], p[1], p[2], t)


def example1_flow(alpha1=1.0, beta1=0.0, alpha3=1.0, beta3=0.0, xi1=0.5, xi2=0.5) -> ShearFlow:
    """Step/step shear flow whose vorticity lives on a piecewise-planar surface."""
    return ShearFlow(Step(alpha1, beta1, xi2), Step(alpha3, beta3, xi1))


def sample_velocity(flow, t: float, n: int) -> np.ndarray:
    """Velocity on the n^3 grid j/n, shape (3, n, n, n), axes ordered (x1, x2, x3)."""
    x = np.arange(n) / n
    X1, X2, X3 = np.meshgrid(x, x, x, indexing="ij")
    return flow.velocity(X1, X2, X3, t)


def spectral_divergence(flow, t: float, n: int) -> float:
    """Max abs of the pseudo-spectral divergence of the sampled field."""
    u = sample_velocity(flow, t, n)
    k = np.fft.fftfreq(n, 1.0 / n)
    k[n // 2] = 0.0
    div = np.zeros((n, n, n), dtype=complex)
    for axis in range(3):
        shape = [1, 1, 1]
        shape[axis] = n
        uh = np.fft.fftn(u[axis])
        div += 2j * np.pi * k.reshape(shape) * uh
    return float(np.max(np.abs(np.fft.ifftn(div))))
