"""Vortex sheets: Biot-Savart velocities, principal values and jump relations.

A 2d sheet is a curve r(lam) = (lam + X(lam), Y(lam)) with X, Y 1-periodic,
so it spans one period of the strip R/Z x R.  Its vorticity is
w(lam) |r'(lam)| dlam concentrated on the curve.  Off the sheet the
velocity is

    u(x) = (1 / 2 pi) int (Im P, Re P) w |r'| dlam,   P = pi cot(pi (zx - zr)),

the x1-periodized 2d kernel written with complex z = x1 + i x2.  On the
sheet the principal value uses the alternate-point trapezoidal rule.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import InvalidParameters, TooCloseToSheet
from .profiles import ProfileFunction

__all__ = [
    "SheetCurve2D",
    "biot_savart_2d",
    "average_velocity_on_sheet",
    "jump_check",
    "chord_arc_constant",
    "SingularSurface",
    "example1_surface",
    "example2_surface",
    "example2_vorticity",
    "flat_sheet_velocity_3d",
]


def _trig_eval(values: np.ndarray, lam) -> np.ndarray:
    """Trigonometric interpolant of samples on j/M, evaluated at lam (Nyquist split evenly)."""
    m = values.size
    c = np.fft.fft(values) / m
    k = np.fft.fftfreq(m, 1.0 / m)
    if m % 2 == 0:
        c = c.copy()
        c[m // 2] *= 0.5
        c = np.append(c, c[m // 2])
        k = np.append(k, m // 2)
    lam = np.asarray(lam, dtype=float)
    out = np.exp(2j * np.pi * np.multiply.outer(lam, k)) @ c
    return out.real


def _spectral_derivative(values: np.ndarray) -> np.ndarray:
    m = values.size
    k = np.fft.fftfreq(m, 1.0 / m)
    k[m // 2] = 0.0
    return np.real(np.fft.ifft(2j * np.pi * k * np.fft.fft(values)))


@dataclass(frozen=True, eq=False)
class SheetCurve2D:
    """Node data of a periodic sheet on lam_j = j / M.

    ``x`` and ``y`` hold the periodic parts X(lam_j), Y(lam_j); ``density``
    holds w(lam_j).  Derivatives are spectral.
    """

    x: np.ndarray
    y: np.ndarray
    density: np.ndarray

    def __post_init__(self):
        arrs = [np.asarray(a, dtype=float).ravel() for a in (self.x, self.y, self.density)]
        m = arrs[0].size
        if m < 8 or any(a.size != m for a in arrs):
            raise InvalidParameters("sheet needs at least 8 nodes and matching arrays")
        for name, a in zip(("x", "y", "density"), arrs):
            object.__setattr__(self, name, a)
        if np.min(self.speed) <= 0:
            raise InvalidParameters("sheet parameterization is not immersed")

    @property
    def m(self) -> int:
        return self.x.size

    @property
    def lam(self) -> np.ndarray:
        return np.arange(self.m) / self.m

    @property
    def points(self) -> np.ndarray:
        return np.stack([self.lam + self.x, self.y])

    @property
    def tangent(self) -> np.ndarray:
        return np.stack([1.0 + _spectral_derivative(self.x), _spectral_derivative(self.y)])

    @property
    def speed(self) -> np.ndarray:
        t = np.stack([1.0 + _spectral_derivative(self.x), _spectral_derivative(self.y)])
        return np.hypot(t[0], t[1])

    @classmethod
    def from_functions(cls, x_fn: Callable, y_fn: Callable, density, m: int) -> "SheetCurve2D":
        lam = np.arange(m) / m
        dens = density(lam) if callable(density) else np.full(m, float(density))
        return cls(np.broadcast_to(x_fn(lam), (m,)), np.broadcast_to(y_fn(lam), (m,)), dens)

    @classmethod
    def flat(cls, m: int, density=1.0, height: float = 0.0) -> "SheetCurve2D":
        return cls.from_functions(lambda s: 0.0 * s, lambda s: height + 0.0 * s, density, m)

    @classmethod
    def graph(cls, y_fn: Callable, m: int, density=1.0) -> "SheetCurve2D":
        """The graph x2 = y(x1) of a 1-periodic function."""
        return cls.from_functions(lambda s: 0.0 * s, y_fn, density, m)

    @classmethod
    def from_samples(cls, x, y, density) -> "SheetCurve2D":
        return cls(x, y, density)

    def at(self, lam):
        """Interpolated (point, unit tangent, speed, density) at arbitrary lam."""
        lam = float(lam)
        base = np.floor(lam)
        frac = lam - base
        px = frac + _trig_eval(self.x, frac) + base
        py = _trig_eval(self.y, frac)
        dx = 1.0 + _trig_eval(_spectral_derivative(self.x), frac)
        dy = _trig_eval(_spectral_derivative(self.y), frac)
        sp = float(np.hypot(dx, dy))
        return np.array([px, py]), np.array([dx, dy]) / sp, sp, float(_trig_eval(self.density, frac))

    def resampled(self, shift: float) -> "SheetCurve2D":
        """Same curve with nodes at shift + j/M (shift in [0, 1))."""
        lam = shift + self.lam
        px = _trig_eval(self.x, lam) + shift
        return SheetCurve2D(px, _trig_eval(self.y, lam), _trig_eval(self.density, lam))


def _kernel(zx, zr):
    return np.pi / np.tan(np.pi * (zx - zr))


def biot_savart_2d(sheet: SheetCurve2D, x, min_spacings: float = 3.0) -> np.ndarray:
    """Velocity induced at an off-sheet point by the periodic sheet."""
    x = np.asarray(x, dtype=float)
    pts = sheet.points
    dx = (x[0] - pts[0] + 0.5) % 1.0 - 0.5
    dist = float(np.min(np.hypot(dx, x[1] - pts[1])))
    floor = min_spacings * float(np.max(sheet.speed)) / sheet.m
    if dist < floor:
        raise TooCloseToSheet(f"distance {dist:.3g} below {floor:.3g}")
    zr = pts[0] + 1j * pts[1]
    p = _kernel(x[0] + 1j * x[1], zr)
    w = sheet.density * sheet.speed / sheet.m
    return np.array([np.sum(p.imag * w), np.sum(p.real * w)]) / (2 * np.pi)


def average_velocity_on_sheet(sheet: SheetCurve2D, lam: float) -> np.ndarray:
    """Principal-value velocity (u+ + u-)/2 at r(lam).

    Nodes are shifted so that lam is node 0; only nodes at odd offsets
    enter, with weight 2/M, which cancels the odd 1/z singularity.
    """
    s = float(lam) % 1.0
    sh = sheet.resampled(s) if s != 0.0 else sheet
    pts = sh.points
    zr = pts[0] + 1j * pts[1]
    odd = np.arange(sh.m) % 2 == 1
    p = _kernel(zr[0], zr[odd])
    w = 2.0 * sh.density[odd] * sh.speed[odd] / sh.m
    return np.array([np.sum(p.imag * w), np.sum(p.real * w)]) / (2 * np.pi)


@dataclass(frozen=True)
class JumpReport:
    normal_jump: float
    tangential_jump: float
    density_residual: float


def jump_check(sheet: SheetCurve2D, lam: float, delta: float) -> JumpReport:
    """Probe u at r(lam) +- delta n with n the left normal of the tangent.

    The + side is the one n points to.  The vorticity density is recovered
    as n ^ (u+ - u-) (2d cross product), and the residual is
    |n ^ (u+ - u-) - w(lam)| |r'(lam)|.
    """
    r, tau, sp, dens = sheet.at(lam)
    n = np.array([-tau[1], tau[0]])
    up = biot_savart_2d(sheet, r + delta * n)
    um = biot_savart_2d(sheet, r - delta * n)
    du = up - um
    cross = n[0] * du[1] - n[1] * du[0]
    return JumpReport(
        normal_jump=float(abs(du @ n)),
        tangential_jump=float(abs(du @ tau)),
        density_residual=float(abs(cross - dens) * sp),
    )


def chord_arc_constant(sheet: SheetCurve2D) -> float:
    """max over node pairs of |lam - lam'| / |r(lam) - r(lam')|, periodic images matched."""
    lam = sheet.lam
    pts = sheet.points
    dl = lam[:, None] - lam[None, :]
    shift = np.round(dl)
    dl = dl - shift
    d1 = pts[0][:, None] - pts[0][None, :] - shift
    d2 = pts[1][:, None] - pts[1][None, :]
    off = ~np.eye(sheet.m, dtype=bool)
    return float(np.max(np.abs(dl[off]) / np.hypot(d1[off], d2[off])))


@dataclass(frozen=True)
class SingularSurface:
    """Support of the singular vorticity of one of the explicit examples at time t."""

    kind: str
    t: float
    params: tuple = ()
    u1: ProfileFunction | None = None

    def pieces(self) -> list[dict]:
        """Planar pieces as {normal_axis, offset, x2_range} records (example1 only)."""
        if self.kind != "example1":
            raise InvalidParameters("only example1 surfaces are piecewise planar")
        a1, b1, _, _, xi1, xi2 = self.params
        return [
            {"normal_axis": "x2", "offset": xi2, "x2_range": None},
            {"normal_axis": "x1", "offset": xi1 + self.t * a1, "x2_range": (-np.inf, xi2)},
            {"normal_axis": "x1", "offset": xi1 + self.t * b1, "x2_range": (xi2, np.inf)},
        ]

    def contains(self, x, tol: float = 1e-12) -> bool:
        x = np.asarray(x, dtype=float)
        if self.kind == "example2":
            return bool(abs(x[0] - self.t * float(self.u1(x[1]))) <= tol)
        for p in self.pieces():
            if p["normal_axis"] == "x2":
                if abs(x[1] - p["offset"]) <= tol:
                    return True
            else:
                lo, hi = p["x2_range"]
                if lo - tol <= x[1] <= hi + tol and abs(x[0] - p["offset"]) <= tol:
                    return True
        return False

    def describe(self) -> str:
        if self.kind == "example2":
            return f"x1 = {self.t} * u1(x2)"
        lines = []
        for p in self.pieces():
            if p["normal_axis"] == "x2":
                lines.append(f"x2 = {p['offset']:.6g}")
            else:
                lo, hi = p["x2_range"]
                cond = f"x2 <= {hi:.6g}" if np.isinf(lo) else f"x2 >= {lo:.6g}"
                lines.append(f"x1 = {p['offset']:.6g}, {cond}")
        return "; ".join(lines)


def example1_surface(alpha1=1.0, beta1=0.0, alpha3=1.0, beta3=0.0, xi1=0.5, xi2=0.5, t=0.0) -> SingularSurface:
    """Singular support of the step/step shear flow: one horizontal and two vertical planar pieces."""
    if alpha1 < beta1:
        raise InvalidParameters("example1 requires alpha1 >= beta1")
    if alpha3 == beta3:
        raise InvalidParameters("example1 requires alpha3 != beta3")
    return SingularSurface("example1", float(t), (alpha1, beta1, alpha3, beta3, xi1, xi2))


def example2_surface(u1: ProfileFunction, t: float) -> SingularSurface:
    return SingularSurface("example2", float(t), (), u1)


@dataclass(frozen=True)
class Example2Vorticity:
    density: np.ndarray
    bulk: float
    tangency_residual: float


def example2_vorticity(u1: ProfileFunction, t: float, x2: float) -> Example2Vorticity:
    """Sheet density, absolutely continuous part and tangency residual on x1 = t u1(x2).

    The density direction is (t u1'(x2), 1, 0) normalized, which is the
    unit tangent field obtained from the curl of a shear flow whose u3
    jumps across the surface.
    """
    d = float(u1.derivative(x2))
    s = np.sqrt(1.0 + (t * d) ** 2)
    dens = np.array([t * d / s, 1.0 / s, 0.0])
    normal = np.array([1.0, -t * d, 0.0]) / s
    return Example2Vorticity(dens, -d, float(abs(dens @ normal)))


def flat_sheet_velocity_3d(omega_tilde, x3: float) -> np.ndarray:
    """Velocity of the flat sheet x3 = 0 with constant horizontal density omega_tilde.

    Reduces to the 2d flat sheet in the plane spanned by e3 and the
    direction orthogonal to omega_tilde: u = sgn(x3) omega_tilde x e3 / 2.
    """
    w = np.asarray(omega_tilde, dtype=float)
    if w.shape == (2,):
        w = np.append(w, 0.0)
    if w[2] != 0:
        raise InvalidParameters("density of a horizontal sheet must be horizontal")
    if x3 == 0:
        raise TooCloseToSheet("point lies on the sheet")
    return 0.5 * np.sign(x3) * np.cross(w, [0.0, 0.0, 1.0])
