"""Regularity and size estimators for sampled profiles and shear flows.

Hoelder exponents come from the sup structure function
S(h) = max_x |f(x + h) - f(x)| fitted in log-log over dyadic h.  Energy
and W^{1,p} norms use the trapezoidal rule on the torus; Besov seminorms
use sharp dyadic Fourier cutoffs.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateData, InvalidParameters
from .field import ShearFlow
from .profiles import ProfileFunction
from .weak_form import GOLDEN_OFFSET

__all__ = [
    "Sampled1D",
    "ModulusEstimate",
    "structure_function",
    "structure_table",
    "holder_exponent",
    "holder_seminorm_lower",
    "cusp_trace",
    "field_holder_exponent",
    "chain_bound",
    "energy",
    "sobolev_w1p",
    "w1p_growth_fit",
    "normalize_w1p",
    "growth_witness",
    "besov_blocks",
    "besov_seminorm",
]

EXPONENT_CAP = 1.5


@dataclass(frozen=True, eq=False)
class Sampled1D:
    """Samples f(x0 + j*spacing), j = 0..n-1.

    ``periodic`` samples cover one period (x0 = 0, spacing = 1/n) and
    increments wrap around; non-periodic samples only pair nodes that are
    both inside the window.
    """

    values: np.ndarray
    spacing: float
    periodic: bool = True
    x0: float = 0.0

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float).ravel()
        if v.size < 2 or not np.all(np.isfinite(v)):
            raise InvalidParameters("need at least two finite samples")
        if self.spacing <= 0:
            raise InvalidParameters("spacing must be positive")
        object.__setattr__(self, "values", v)

    @property
    def n(self) -> int:
        return self.values.size

    @property
    def nodes(self) -> np.ndarray:
        return self.x0 + self.spacing * np.arange(self.n)

    @classmethod
    def from_profile(cls, f: ProfileFunction, n: int) -> "Sampled1D":
        """Periodic samples on the grid j/n (the grid contains 0)."""
        x = np.arange(n) / n
        return cls(np.asarray(f(x), dtype=float), 1.0 / n, True)

    @classmethod
    def from_callable(cls, fn, n: int, half_width: float) -> "Sampled1D":
        """Non-periodic samples of fn on j/n for |j/n| <= half_width."""
        m = int(np.floor(half_width * n + 1e-9))
        x = np.arange(-m, m + 1) / n
        return cls(np.asarray(fn(x), dtype=float), 1.0 / n, False, -m / n)


@dataclass(frozen=True)
class ModulusEstimate:
    exponent: float
    constant: float
    fit_residual: float
    h_range: tuple[float, float]
    levels: int
    degenerate: bool = False
    table: tuple[tuple[float, float], ...] = field(default=(), repr=False)


def _lag(f: Sampled1D, h: float) -> int:
    m = h / f.spacing
    lag = int(round(m))
    if lag < 1 or abs(m - lag) > 1e-9 * max(1.0, m):
        raise InvalidParameters(f"increment {h} is not a positive multiple of the grid spacing")
    return lag


def _increment_max(v: np.ndarray, lag: int, periodic: bool) -> float:
    if periodic:
        return float(np.max(np.abs(np.roll(v, -lag) - v)))
    if lag >= v.size:
        return 0.0
    return float(np.max(np.abs(v[lag:] - v[:-lag])))


def structure_function(f: Sampled1D, h: float) -> float:
    """S(h) = max over grid x of |f(x + h) - f(x)|."""
    return _increment_max(f.values, _lag(f, h), f.periodic)


def _dyadic(h_min: float, h_max: float) -> np.ndarray:
    j_hi = int(np.floor(-np.log2(h_min) + 1e-9))
    j_lo = int(np.ceil(-np.log2(h_max) - 1e-9))
    return 2.0 ** -np.arange(j_hi, j_lo - 1, -1)


def structure_table(f: Sampled1D, h_min: float, h_max: float) -> list[tuple[float, float]]:
    """(h, S(h)) rows over dyadic h in [h_min, h_max], increasing h."""
    return [(float(h), structure_function(f, h)) for h in _dyadic(h_min, h_max)]


def holder_exponent(f: Sampled1D, h_min: float | None = None, h_max: float | None = None) -> ModulusEstimate:
    """Least-squares slope of log S(h) against log h over dyadic h.

    Defaults to h in [4 dx, 256 dx], i.e. seven dyadic levels.  A function
    whose increments all vanish gets the cap exponent 1.5 and a
    ``DegenerateData`` warning.
    """
    h_min = 4 * f.spacing if h_min is None else h_min
    h_max = 64 * h_min if h_max is None else h_max
    if h_min < 4 * f.spacing * (1 - 1e-12):
        raise InvalidParameters("h_min must be at least four grid spacings")
    hs = _dyadic(h_min, h_max)
    if hs.size < 6:
        raise InvalidParameters(f"need at least 6 dyadic levels in [{h_min}, {h_max}], got {hs.size}")
    s = np.array([structure_function(f, h) for h in hs])
    table = tuple(zip(hs.tolist(), s.tolist()))
    rng = (float(hs[0]), float(hs[-1]))
    if np.all(s <= 0):
        warnings.warn("all increments vanish; exponent reported at the cap", DegenerateData, stacklevel=2)
        return ModulusEstimate(EXPONENT_CAP, 0.0, 0.0, rng, hs.size, True, table)
    if np.any(s <= 0):
        keep = s > 0
        hs, s = hs[keep], s[keep]
        if hs.size < 2:
            warnings.warn("too few non-zero increments for a fit", DegenerateData, stacklevel=2)
            return ModulusEstimate(EXPONENT_CAP, 0.0, 0.0, rng, hs.size, True, table)
    x, y = np.log(hs), np.log(s)
    (slope, icpt), res, *_ = np.polyfit(x, y, 1, full=True)
    rms = float(np.sqrt(res[0] / x.size)) if res.size else 0.0
    exponent = float(np.clip(slope, 0.0, EXPONENT_CAP))
    return ModulusEstimate(exponent, float(np.exp(icpt)), rms, rng, int(x.size), False, table)


def holder_seminorm_lower(f: Sampled1D, alpha: float, max_lag: int | None = None) -> float:
    """max over sampled pairs of |f(x) - f(y)| / d(x, y)^alpha.

    d is the periodic distance for periodic samples.  The result is a
    lower bound for the C^{0,alpha} seminorm of the underlying function.
    """
    if not 0.0 < alpha <= 1.0:
        raise InvalidParameters("alpha must lie in (0, 1]")
    top = f.n // 2 if f.periodic else f.n - 1
    if max_lag is not None:
        top = min(top, max_lag)
    best = 0.0
    for lag in range(1, top + 1):
        best = max(best, _increment_max(f.values, lag, f.periodic) / (lag * f.spacing) ** alpha)
    return best


def cusp_trace(flow: ShearFlow, t: float, n: int, x1: float = 0.0, half_width: float = 0.125) -> Sampled1D:
    """x2 -> u3(x1 - t u1(x2)) on |x2| <= half_width, grid j/n."""
    return Sampled1D.from_callable(lambda x2: flow.velocity(x1, x2, 0.0, t)[2], n, half_width)


def _is_flat(f: Sampled1D) -> bool:
    v = f.values
    return float(np.max(v) - np.min(v)) <= 1e-14 * max(1.0, float(np.max(np.abs(v))))


def field_holder_exponent(flow: ShearFlow, t: float, n: int, half_width: float = 0.125) -> tuple[float, dict[str, ModulusEstimate]]:
    """Smallest fitted exponent over the coordinate traces of the field near the origin.

    Traces: u1 along x2, u3 along x2 at x1 = 0, u3 along x1 at x2 = 0.
    Constant traces carry no regularity information and are skipped.
    """
    traces = {
        "u1_x2": Sampled1D.from_callable(lambda x: flow.velocity(0.0, x, 0.0, t)[0], n, half_width),
        "u3_x2": cusp_trace(flow, t, n, 0.0, half_width),
        "u3_x1": Sampled1D.from_callable(lambda x: flow.velocity(x, 0.0, 0.0, t)[2], n, half_width),
    }
    fits = {name: holder_exponent(tr) for name, tr in traces.items() if not _is_flat(tr)}
    if not fits:
        return EXPONENT_CAP, fits
    return min(f.exponent for f in fits.values()), fits


def chain_bound(flow: ShearFlow, t: float, alpha: float, n: int) -> tuple[float, float]:
    """(lhs, rhs) of [u3(. - t u1)]_{alpha^2} <= |t|^alpha [u3]_alpha [u1]_alpha^alpha.

    All seminorms are sampled lower bounds on the periodic grid j/n; the
    left side is the x2-trace at x1 = 0.
    """
    trace = Sampled1D(np.asarray(flow.velocity(0.0, np.arange(n) / n, 0.0, t)[2]), 1.0 / n, True)
    lhs = holder_seminorm_lower(trace, alpha**2)
    s3 = holder_seminorm_lower(Sampled1D.from_profile(flow.u3, n), alpha)
    s1 = holder_seminorm_lower(Sampled1D.from_profile(flow.u1, n), alpha)
    return lhs, abs(t) ** alpha * s3 * s1**alpha


def _plane(n: int, offset: float):
    x = (np.arange(n) + offset) / n
    return np.meshgrid(x, x, indexing="ij")


def energy(flow, t: float, n: int, richardson: bool = False, offset: float = GOLDEN_OFFSET) -> float:
    """Trapezoidal approximation of int |u(x, t)|^2 over the unit torus.

    With ``richardson`` the value 2 E(2n) - E(n) is returned, which removes
    the first-order error caused by jumps.
    """
    if richardson:
        return 2.0 * energy(flow, t, 2 * n, False, offset) - energy(flow, t, n, False, offset)
    X1, X2 = _plane(n, offset)
    u = flow.velocity(X1, X2, offset / n, t)
    return float(np.mean(np.sum(u**2, axis=0)))


def sobolev_w1p(flow: ShearFlow, t: float, p: float, n: int, offset: float = GOLDEN_OFFSET) -> float:
    """(int |u|^p + |grad u|^p dx)^(1/p), Euclidean / Frobenius pointwise norms."""
    if p < 1:
        raise InvalidParameters("p must be >= 1")
    X1, X2 = _plane(n, offset)
    u = flow.velocity(X1, X2, offset / n, t)
    g = flow.gradient(X1, X2, offset / n, t)
    un = np.sqrt(np.sum(u**2, axis=0))
    gn = np.sqrt(np.sum(g**2, axis=(0, 1)))
    return float(np.mean(un**p + gn**p) ** (1.0 / p))


def w1p_growth_fit(flow: ShearFlow, ts, p: float, n: int):
    """Sample W(t) and fit W^2 by a quadratic in t and W by a line.

    Returns (rows, quad_coeffs, slope) where rows are (t, W(t)),
    quad_coeffs is highest power first, and slope is the least-squares
    slope of W against t.
    """
    ts = np.asarray(ts, dtype=float)
    ws = np.array([sobolev_w1p(flow, t, p, n) for t in ts])
    quad = np.polyfit(ts, ws**2, 2)
    slope = float(np.polyfit(ts, ws, 1)[0])
    return list(zip(ts.tolist(), ws.tolist())), quad, slope


def normalize_w1p(flow: ShearFlow, p: float, n: int) -> ShearFlow:
    """Rescale u -> lam u(x, lam t) so the initial W^{1,p} norm is 1.

    Scaling both profiles by lam gives exactly that solution.
    """
    w0 = sobolev_w1p(flow, 0.0, p, n)
    if w0 == 0:
        raise InvalidParameters("zero flow cannot be normalized")
    lam = 1.0 / w0
    return ShearFlow(flow.u1.scaled(lam), flow.u3.scaled(lam))


def growth_witness(flow: ShearFlow, m: float, p: float, n: int, t_max: float = 1e6) -> tuple[float, float]:
    """Smallest dyadic T with W(T) > m for the normalized flow; returns (T, W(T))."""
    g = normalize_w1p(flow, p, n)
    t = 1.0
    while t <= t_max:
        w = sobolev_w1p(g, t, p, n)
        if w > m:
            return t, w
        t *= 2.0
    raise InvalidParameters(f"no growth beyond {m} up to t = {t_max}")


def _blocks(values: np.ndarray, j_max: int):
    n = values.size
    if 2 ** (j_max + 1) > n // 2:
        raise InvalidParameters("need 2^(j_max+1) <= N/2")
    c = np.fft.fft(values)
    k = np.abs(np.fft.fftfreq(n, 1.0 / n))
    for j in range(j_max + 1):
        mask = k == 0 if j == 0 else (k >= 2 ** (j - 1)) & (k < 2**j)
        yield j, np.real(np.fft.ifft(np.where(mask, c, 0.0)))


def besov_blocks(f: Sampled1D, s: float, j_max: int) -> list[tuple[int, float]]:
    """(j, 2^{js} ||Delta_j f||_inf) with Delta_0 = mean, Delta_j = {2^{j-1} <= |k| < 2^j}."""
    return [(j, float(2.0 ** (j * s) * np.max(np.abs(b)))) for j, b in _blocks(f.values, j_max)]


def besov_seminorm(f: Sampled1D, s: float, j_max: int) -> float:
    """sup over 0 <= j <= j_max of 2^{js} ||Delta_j f||_inf (a B^s_{inf,inf} estimate)."""
    return max(v for _, v in besov_blocks(f, s, j_max))
