"""Fourier multipliers on the unit circle and the principal-value kernel expansion.

Coefficients follow numpy's FFT ordering and are normalized so that
f(x_j) = sum_k c_k exp(2 pi i k x_j) with x_j = j / N.  The Nyquist mode
is zeroed by every multiplier here because its sign is ambiguous.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import zeta

from .errors import ExpansionOrderTooHigh, InvalidParameters

__all__ = [
    "PeriodicGrid",
    "SpectralField",
    "hilbert_transform",
    "abs_derivative",
    "derivative",
    "pv_expansion_term",
    "pv_full_kernel",
    "selftest_table",
    "MAX_EXPANSION_ORDER",
]

MAX_EXPANSION_ORDER = 4


@dataclass(frozen=True)
class PeriodicGrid:
    n: int

    def __post_init__(self):
        if self.n < 8 or self.n & (self.n - 1):
            raise InvalidParameters("grid size must be a power of two >= 8")

    @property
    def spacing(self) -> float:
        return 1.0 / self.n

    def nodes(self) -> np.ndarray:
        return np.arange(self.n) / self.n

    def wavenumbers(self) -> np.ndarray:
        return np.fft.fftfreq(self.n, 1.0 / self.n)


@dataclass(frozen=True, eq=False)
class SpectralField:
    coeffs: np.ndarray
    real: bool = True

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=complex).ravel()
        PeriodicGrid(c.size)
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def from_grid(cls, values) -> "SpectralField":
        v = np.asarray(values)
        return cls(np.fft.fft(v) / v.size, not np.iscomplexobj(v))

    @classmethod
    def from_function(cls, fn, n: int) -> "SpectralField":
        return cls.from_grid(fn(PeriodicGrid(n).nodes()))

    @property
    def n(self) -> int:
        return self.coeffs.size

    @property
    def grid(self) -> PeriodicGrid:
        return PeriodicGrid(self.n)

    def wavenumbers(self) -> np.ndarray:
        return self.grid.wavenumbers()

    def to_grid(self) -> np.ndarray:
        v = np.fft.ifft(self.coeffs) * self.n
        return v.real if self.real else v

    def apply(self, multiplier) -> "SpectralField":
        m = np.asarray(multiplier, dtype=complex)
        m = np.where(self.wavenumbers() == -self.n // 2, 0.0, m)
        return SpectralField(self.coeffs * m, self.real)

    def inner(self, other: "SpectralField") -> float:
        """L2 inner product over one period."""
        return float(np.real(np.vdot(other.coeffs, self.coeffs)))


def _as_field(f) -> SpectralField:
    return f if isinstance(f, SpectralField) else SpectralField.from_grid(f)


def hilbert_transform(f) -> SpectralField:
    """Multiplier -i sgn(k); the mean and the Nyquist mode are annihilated."""
    f = _as_field(f)
    return f.apply(-1j * np.sign(f.wavenumbers()))


def abs_derivative(f) -> SpectralField:
    """Multiplier |2 pi k|."""
    f = _as_field(f)
    return f.apply(2 * np.pi * np.abs(f.wavenumbers()))


def derivative(f) -> SpectralField:
    """Multiplier 2 pi i k."""
    f = _as_field(f)
    return f.apply(2j * np.pi * f.wavenumbers())


def _periodic_power(s: int, z):
    """sum over integers m of (z + m)^(-s) for even s and z in (0, 1)."""
    return zeta(s, z) + zeta(s, 1.0 - z)


def _full_periodic(z, a):
    """sum over integers m of 1 / ((z + m)^2 + a^2), closed form (a > 0)."""
    a = np.maximum(a, 1e-300)
    # cosh(2 pi a) - cos(2 pi z) written without cancellation near z = a = 0
    den = 2.0 * (np.sinh(np.pi * a) ** 2 + np.sin(np.pi * z) ** 2)
    with np.errstate(over="ignore", invalid="ignore"):
        out = np.pi * np.sinh(2 * np.pi * a) / (a * den)
    return np.where(np.isfinite(out), out, np.pi / a)


def _alternate_point(n: int):
    """Index pairs (i, j) with j - i odd, plus z = (i - j)/n mod 1 and weight 2/n."""
    i = np.arange(n)[:, None]
    j = np.arange(n)[None, :]
    odd = ((j - i) % 2) == 1
    z = ((i - j) % n) / n
    return odd, z


def pv_expansion_term(f, y, n: int) -> SpectralField:
    """n-th coefficient of the eps^{2n} expansion of the sheet kernel.

    T_n(x) = (-1)^n / pi * PV int (f(x) - f(x')) (y(x) - y(x'))^{2n} / (x - x')^{2n+2} dx'

    with the real-line kernel periodized over integer images, evaluated by
    the alternate-point trapezoidal rule (nodes at odd offsets from x,
    weight 2/N), which cancels the odd singularity at x' = x.
    """
    if n < 0:
        raise InvalidParameters("expansion order must be >= 0")
    if n > MAX_EXPANSION_ORDER:
        raise ExpansionOrderTooHigh(f"order {n} exceeds {MAX_EXPANSION_ORDER}")
    f, y = _as_field(f), _as_field(y)
    if f.n != y.n:
        raise InvalidParameters("f and y must live on the same grid")
    fv, yv = f.to_grid(), y.to_grid()
    odd, z = _alternate_point(f.n)
    zs = np.where(odd, z, 0.5)
    kern = np.where(odd, _periodic_power(2 * n + 2, zs), 0.0)
    df = fv[:, None] - fv[None, :]
    dy = yv[:, None] - yv[None, :]
    vals = (-1) ** n * (2.0 / f.n) / np.pi * np.sum(df * dy ** (2 * n) * kern, axis=1)
    return SpectralField.from_grid(vals)


def pv_full_kernel(f, y, eps: float) -> SpectralField:
    """(1/pi) PV int (f(x) - f(x')) / ((x - x')^2 + eps^2 (y(x) - y(x'))^2) dx', periodized.

    Same alternate-point rule as ``pv_expansion_term``; the image sum is in
    closed form.
    """
    f, y = _as_field(f), _as_field(y)
    fv, yv = f.to_grid(), y.to_grid()
    odd, z = _alternate_point(f.n)
    a = eps * np.abs(yv[:, None] - yv[None, :])
    kern = np.where(odd, _full_periodic(np.where(odd, z, 0.5), a), 0.0)
    df = fv[:, None] - fv[None, :]
    return SpectralField.from_grid((2.0 / f.n) / np.pi * np.sum(df * kern, axis=1))


def selftest_table(n: int) -> list[tuple[int, complex, complex, float, float, float]]:
    """Rows (k, H multiplier, achieved H eigenvalue, |D| multiplier, achieved |D| eigenvalue, error).

    Each mode e_k = exp(2 pi i k x), 0 < |k| < N/2, is pushed through both
    operators on the grid; the achieved eigenvalue is read off as a
    least-squares ratio and the error is the max pointwise deviation.
    """
    grid = PeriodicGrid(n)
    x = grid.nodes()
    rows = []
    for k in list(range(1, n // 2)) + list(range(-n // 2 + 1, 0)):
        e = np.exp(2j * np.pi * k * x)
        fe = SpectralField.from_grid(e)
        he = hilbert_transform(fe).to_grid()
        de = abs_derivative(fe).to_grid()
        mh, md = -1j * np.sign(k), 2 * np.pi * abs(k)
        lam_h = np.vdot(e, he) / n
        lam_d = np.vdot(e, de) / n
        err = max(np.max(np.abs(he - mh * e)), np.max(np.abs(de - md * e)) / md)
        rows.append((k, complex(mh), complex(lam_h), float(md), float(lam_d.real), float(err)))
    return rows
