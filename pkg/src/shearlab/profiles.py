"""Catalog of 1-periodic scalar profiles used as the u1, u3 building blocks.

Every profile is defined on the whole real line and has period 1.  Rough
kinds (cusp, step, sin_inverse, piecewise_constant) coincide with their
model singularity near the singular point and are blended to a constant by
a fixed C-infinity transition, so they are smooth everywhere else.

Derivatives are available in closed form where they exist.  Asking for a
derivative at a non-differentiable point raises ``NonDifferentiableProfile``
instead of silently regularizing.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, ClassVar

import numpy as np
from scipy.interpolate import CubicSpline

from .errors import InvalidParameters, NonDifferentiableProfile

__all__ = [
    "ProfileFunction",
    "Cusp",
    "Trig",
    "Step",
    "SinInverse",
    "PiecewiseConstant",
    "Sampled",
    "Scaled",
    "constant",
    "profile_from_spec",
    "smooth_step",
]


def wrap(x):
    """Map x to the representative in [-1/2, 1/2)."""
    return (np.asarray(x, dtype=float) + 0.5) % 1.0 - 0.5


def _psi(s):
    with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
        return np.where(s > 0, np.exp(-1.0 / np.where(s > 0, s, 1.0)), 0.0)


def _dpsi(s):
    with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
        safe = np.where(s > 0, s, 1.0)
        return np.where(s > 0, np.exp(-1.0 / safe) / safe**2, 0.0)


def smooth_step(tau):
    """C-infinity step: 0 for tau <= 0, 1 for tau >= 1."""
    tau = np.asarray(tau, dtype=float)
    a, b = _psi(tau), _psi(1.0 - tau)
    return a / (a + b)


def smooth_step_derivative(tau):
    tau = np.asarray(tau, dtype=float)
    a, b = _psi(tau), _psi(1.0 - tau)
    da, db = _dpsi(tau), -_dpsi(1.0 - tau)
    return (da * b - a * db) / (a + b) ** 2


def _blend(r, radius):
    """Blend weight b(r) and db/dr; b = 0 on r <= radius, 1 on r >= radius + (1/2 - radius)/2."""
    width = 0.5 * (0.5 - radius)
    tau = (r - radius) / width
    return smooth_step(tau), smooth_step_derivative(tau) / width


def _out(v):
    return v[()] if isinstance(v, np.ndarray) else v


class ProfileFunction:
    """Base class for 1-periodic profiles.

    Subclasses implement ``_value`` and ``_derivative`` on float arrays and
    declare their non-smooth points (within one period) via
    ``singular_points``.
    """

    kind: ClassVar[str] = ""
    period: ClassVar[float] = 1.0

    def __call__(self, x):
        return _out(self._value(np.asarray(x, dtype=float)))

    def derivative(self, x):
        x = np.asarray(x, dtype=float)
        bad = self._nondiff_mask(x)
        if np.any(bad):
            where = np.asarray(x)[bad].ravel()[0]
            raise NonDifferentiableProfile(
                f"{self.kind} profile has no derivative at x={where!r}"
            )
        return _out(self._derivative(x))

    def singular_points(self) -> tuple[float, ...]:
        """Points in [0, 1) where the profile is not smooth (jumps, kinks, oscillation)."""
        return ()

    def is_smooth(self) -> bool:
        return not self.singular_points()

    def scaled(self, factor: float) -> "ProfileFunction":
        return Scaled(self, float(factor))

    def spec(self) -> dict[str, Any]:
        raise NotImplementedError

    def _nondiff_mask(self, x):
        pts = self.singular_points()
        if not pts:
            return np.zeros(x.shape, dtype=bool)
        xm = x % 1.0
        return np.isin(xm, np.asarray(pts, dtype=float))

    def _value(self, x):
        raise NotImplementedError

    def _derivative(self, x):
        raise NotImplementedError


@dataclass(frozen=True)
class Cusp(ProfileFunction):
    """|xi|^alpha near 0, blended to the constant radius^alpha away from 0."""

    alpha: float
    radius: float = 0.25
    kind: ClassVar[str] = "cusp"

    def __post_init__(self):
        if not 0.0 < self.alpha <= 1.0:
            raise InvalidParameters(f"cusp exponent must lie in (0, 1], got {self.alpha}")
        if not 0.0 < self.radius < 0.5:
            raise InvalidParameters("cusp radius must lie in (0, 1/2)")

    def singular_points(self):
        return (0.0,)

    def _value(self, x):
        r = np.abs(wrap(x))
        b, _ = _blend(r, self.radius)
        c = self.radius**self.alpha
        return (1.0 - b) * r**self.alpha + b * c

    def _derivative(self, x):
        xi = wrap(x)
        r = np.abs(xi)
        b, db = _blend(r, self.radius)
        c = self.radius**self.alpha
        dr = (1.0 - b) * self.alpha * r ** (self.alpha - 1.0) + db * (c - r**self.alpha)
        return np.sign(xi) * dr

    def spec(self):
        return {"kind": self.kind, "alpha": self.alpha, "radius": self.radius}


@dataclass(frozen=True)
class Trig(ProfileFunction):
    """amplitude * sin(2 pi k x + phase)."""

    k: int = 1
    phase: float = 0.0
    amplitude: float = 1.0
    kind: ClassVar[str] = "trig"

    def __post_init__(self):
        if int(self.k) != self.k:
            raise InvalidParameters("trig mode k must be an integer")

    def _value(self, x):
        return self.amplitude * np.sin(2 * np.pi * self.k * x + self.phase)

    def _derivative(self, x):
        return self.amplitude * 2 * np.pi * self.k * np.cos(2 * np.pi * self.k * x + self.phase)

    def spec(self):
        return {"kind": self.kind, "k": self.k, "phase": self.phase, "amplitude": self.amplitude}


@dataclass(frozen=True)
class Step(ProfileFunction):
    """``left`` on [0, jump), ``right`` on [jump, 1), extended periodically.

    Right-continuous at both jumps (``jump`` and the wrap point 0).  With
    left=1, right=-1, jump=1/2 the profile coincides with sgn near 0.
    """

    left: float = 1.0
    right: float = 0.0
    jump: float = 0.5
    kind: ClassVar[str] = "step"

    def __post_init__(self):
        if not 0.0 < self.jump < 1.0:
            raise InvalidParameters("step jump location must lie in (0, 1)")

    def singular_points(self):
        return () if self.left == self.right else (0.0, float(self.jump))

    def _value(self, x):
        return np.where(x % 1.0 < self.jump, float(self.left), float(self.right))

    def _derivative(self, x):
        return np.zeros_like(x)

    def spec(self):
        return {"kind": self.kind, "left": self.left, "right": self.right, "jump": self.jump}


@dataclass(frozen=True)
class SinInverse(ProfileFunction):
    """sin(1/xi) on 0 < |xi| <= radius (0 at xi = 0), blended to 0 away from 0."""

    radius: float = 0.25
    kind: ClassVar[str] = "sin_inverse"

    def __post_init__(self):
        if not 0.0 < self.radius < 0.5:
            raise InvalidParameters("sin_inverse radius must lie in (0, 1/2)")

    def singular_points(self):
        return (0.0,)

    def _value(self, x):
        xi = wrap(x)
        b, _ = _blend(np.abs(xi), self.radius)
        with np.errstate(divide="ignore", invalid="ignore"):
            core = np.where(xi == 0, 0.0, np.sin(1.0 / np.where(xi == 0, 1.0, xi)))
        return (1.0 - b) * core

    def _derivative(self, x):
        xi = wrap(x)
        b, db = _blend(np.abs(xi), self.radius)
        inv = 1.0 / xi
        return -db * np.sign(xi) * np.sin(inv) - (1.0 - b) * np.cos(inv) * inv**2

    def spec(self):
        return {"kind": self.kind, "radius": self.radius}


@dataclass(frozen=True)
class PiecewiseConstant(ProfileFunction):
    """levels[i] on [breakpoints[i], breakpoints[i+1]); levels[-1] wraps through 0.

    With no breakpoints, ``levels`` holds the single constant value.
    """

    breakpoints: tuple[float, ...] = ()
    levels: tuple[float, ...] = (0.0,)
    kind: ClassVar[str] = "piecewise_constant"

    def __post_init__(self):
        bp = tuple(float(b) for b in self.breakpoints)
        lv = tuple(float(v) for v in self.levels)
        object.__setattr__(self, "breakpoints", bp)
        object.__setattr__(self, "levels", lv)
        if any(not 0.0 <= b < 1.0 for b in bp) or list(bp) != sorted(set(bp)):
            raise InvalidParameters("breakpoints must be strictly increasing in [0, 1)")
        if (not bp and len(lv) != 1) or (bp and len(lv) != len(bp)):
            raise InvalidParameters("need one level per breakpoint (or one level and no breakpoints)")

    def singular_points(self):
        n = len(self.breakpoints)
        return tuple(
            self.breakpoints[i] for i in range(n) if self.levels[i] != self.levels[i - 1]
        )

    def _value(self, x):
        if not self.breakpoints:
            return np.full_like(x, self.levels[0])
        idx = np.searchsorted(np.asarray(self.breakpoints), x % 1.0, side="right") - 1
        return np.asarray(self.levels)[idx]

    def _derivative(self, x):
        return np.zeros_like(x)

    def spec(self):
        return {"kind": self.kind, "breakpoints": list(self.breakpoints), "levels": list(self.levels)}


def constant(value: float) -> PiecewiseConstant:
    return PiecewiseConstant((), (float(value),))


@dataclass(frozen=True, eq=False)
class Sampled(ProfileFunction):
    """Periodic interpolant of samples on the grid j/n, j = 0..n-1.

    order 1 is piecewise linear (derivative refused at nodes), order 3 a
    periodic cubic spline.
    """

    values: np.ndarray
    order: int = 3
    kind: ClassVar[str] = "sampled"
    _spline: Any = field(init=False, repr=False)

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float).ravel()
        if v.size < 4 or not np.all(np.isfinite(v)):
            raise InvalidParameters("sampled profile needs at least 4 finite values")
        if self.order not in (1, 3):
            raise InvalidParameters("sampled interpolation order must be 1 or 3")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)
        nodes = np.arange(v.size + 1) / v.size
        closed = np.append(v, v[0])
        spline = CubicSpline(nodes, closed, bc_type="periodic") if self.order == 3 else None
        object.__setattr__(self, "_spline", spline)

    def _value(self, x):
        xm = x % 1.0
        if self._spline is not None:
            return self._spline(xm)
        n = self.values.size
        pos = xm * n
        i = np.floor(pos).astype(int) % n
        frac = pos - np.floor(pos)
        return (1 - frac) * self.values[i] + frac * self.values[(i + 1) % n]

    def _nondiff_mask(self, x):
        if self.order == 3:
            return np.zeros(x.shape, dtype=bool)
        pos = (x % 1.0) * self.values.size
        return pos == np.floor(pos)

    def _derivative(self, x):
        xm = x % 1.0
        if self._spline is not None:
            return self._spline(xm, 1)
        n = self.values.size
        i = np.floor(xm * n).astype(int) % n
        return (self.values[(i + 1) % n] - self.values[i]) * n

    def spec(self):
        return {"kind": self.kind, "values": self.values.tolist(), "order": self.order}


@dataclass(frozen=True)
class Scaled(ProfileFunction):
    base: ProfileFunction
    factor: float = 1.0

    @property
    def kind(self):  # type: ignore[override]
        return self.base.kind

    def singular_points(self):
        return self.base.singular_points()

    def _nondiff_mask(self, x):
        return self.base._nondiff_mask(x)

    def _value(self, x):
        return self.factor * self.base._value(x)

    def _derivative(self, x):
        return self.factor * self.base._derivative(x)

    def spec(self):
        return {**self.base.spec(), "scale": self.factor}


_CATALOG = {
    "cusp": Cusp,
    "trig": Trig,
    "step": Step,
    "sin_inverse": SinInverse,
    "piecewise_constant": PiecewiseConstant,
    "sampled": Sampled,
}


def profile_from_spec(spec: dict[str, Any]) -> ProfileFunction:
    """Build a profile from ``{"kind": ..., **params}``; an optional ``scale`` multiplies it.

    ``{"kind": "constant", "value": c}`` is accepted as shorthand for a
    piecewise_constant profile without breakpoints.
    """
    spec = dict(spec)
    try:
        kind = spec.pop("kind")
    except KeyError:
        raise InvalidParameters("profile spec needs a 'kind'") from None
    scale = spec.pop("scale", None)
    if kind == "constant":
        prof: ProfileFunction = constant(spec.pop("value", 0.0))
        if spec:
            raise InvalidParameters(f"unknown keys for constant profile: {sorted(spec)}")
    else:
        try:
            cls = _CATALOG[kind]
        except KeyError:
            raise InvalidParameters(f"unknown profile kind {kind!r}") from None
        if cls is PiecewiseConstant:
            spec = {k: tuple(v) if k in ("breakpoints", "levels") else v for k, v in spec.items()}
        try:
            prof = cls(**spec)
        except TypeError as exc:
            raise InvalidParameters(f"bad parameters for {kind}: {exc}") from None
    return prof.scaled(scale) if scale is not None else prof
