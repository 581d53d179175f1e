"""The experiment catalog driven by the command-line runner.

Each experiment turns a validated config into tables (written as CSV and
plotted) and named checks against declared tolerances.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import kh, norms, sheet, spectral, weak_form
from .config import ExperimentConfig
from .errors import ConfigInvalid
from .field import ShearFlow, example1_flow
from .profiles import Cusp, SinInverse, Step, Trig, profile_from_spec

__all__ = ["Table", "Check", "Result", "CATALOG", "run_experiment", "validate_tolerances"]


@dataclass
class Table:
    name: str
    header: list[str]
    rows: list[tuple]
    x: str
    ys: list[str]
    group: str | None = None
    scale: str = "linear"


@dataclass
class Check:
    name: str
    value: float
    limit: float
    op: str = "<="

    @property
    def passed(self) -> bool:
        if not np.isfinite(self.value):
            return False
        return self.value <= self.limit if self.op == "<=" else self.value >= self.limit


@dataclass
class Result:
    tables: list[Table] = field(default_factory=list)
    checks: list[Check] = field(default_factory=list)


@dataclass(frozen=True)
class Entry:
    claim: str
    tolerances: dict[str, float]
    fn: Callable


CATALOG: dict[str, Entry] = {}


def _register(name: str, claim: str, **tolerances: float):
    def deco(fn):
        CATALOG[name] = Entry(claim, dict(tolerances), fn)
        return fn

    return deco


def validate_tolerances(cfg: ExperimentConfig) -> dict[str, float]:
    known = CATALOG[cfg.experiment].tolerances
    extra = set(cfg.tolerances) - set(known)
    if extra:
        raise ConfigInvalid(f"unknown tolerance keys for {cfg.experiment}: {sorted(extra)}")
    return {**known, **cfg.tolerances}


def _profile(spec, default):
    return profile_from_spec(spec) if spec is not None else default


def _pmap(fn, items, threads: int):
    if threads <= 1:
        return [fn(i) for i in items]
    with ThreadPoolExecutor(max_workers=threads) as ex:
        return list(ex.map(fn, items))


def run_experiment(cfg: ExperimentConfig, threads: int = 1) -> Result:
    tol = validate_tolerances(cfg)
    return CATALOG[cfg.experiment].fn(cfg, tol, threads)


def _example1_flow(cfg: ExperimentConfig) -> ShearFlow:
    if cfg.u1 is not None or cfg.u3 is not None:
        return ShearFlow(_profile(cfg.u1, Step()), _profile(cfg.u3, Step()))
    return example1_flow(**(cfg.example1 or {}))


@_register(
    "weak-check",
    "[weak-solution identity] weak-form residual of a shear flow vanishes under refinement",
    max_residual=1e-3,
    refinement_ratio=0.6,
    divergence=1e-3,
)
def _weak_check(cfg, tol, threads):
    flow = _example1_flow(cfg)
    ns = cfg.ns or [64, 128, 256]
    q = cfg.q or 16
    phis = weak_form.generate_test_basis(cfg.max_mode or 2, 20 if cfg.count is None else cfg.count, cfg.seed, planar=True)
    res = _pmap(lambda n: weak_form.weak_residuals(flow, phis, weak_form.QuadratureSpec(n, q)), ns, threads)
    rows = [(i, n, q, float(r)) for n, rr in zip(ns, res) for i, r in enumerate(rr)]
    summary = [(n, float(np.max(np.abs(rr))), float(np.sqrt(np.mean(rr**2)))) for n, rr in zip(ns, res)]
    out = Result()
    out.tables.append(Table("residuals", ["phi_id", "N", "q", "R"], rows, "N", ["R"], "phi_id", "loglog"))
    out.tables.append(Table("summary", ["N", "max_abs_R", "rms_R"], summary, "N", ["max_abs_R", "rms_R"], None, "loglog"))
    out.checks.append(Check(f"max_residual@N={ns[-1]}", summary[-1][1], tol["max_residual"]))
    for a, b in zip(summary[:-1], summary[1:]):
        out.checks.append(Check(f"refinement_ratio@N={a[0]}->{b[0]}", b[1] / a[1], tol["refinement_ratio"]))
    div = weak_form.divergence_residual(flow, 0.5, ns[-1])
    out.checks.append(Check(f"divergence@N={ns[-1]}", div, tol["divergence"]))
    return out


FUBINI_FACTORS = (weak_form.Factor1D(1), weak_form.Factor1D(1, -np.pi / 2), weak_form.Factor1D(0))


@_register("fubini", "[shear change of variables] x1 -> x1 - t u1(x2) leaves the space-time integral unchanged", difference=1e-4)
def _fubini(cfg, tol, threads):
    u1 = _profile(cfg.u1, Step())
    u3 = _profile(cfg.u3, SinInverse())
    ns = cfg.ns or [128, 256, 512]
    q = cfg.q or 16
    window = weak_form.TimeWindow(1.0)
    vals = _pmap(lambda n: weak_form.fubini_check(u1, u3, FUBINI_FACTORS, window, weak_form.QuadratureSpec(n, q)), ns, threads)
    rows = [(n, lhs, rhs, abs(lhs - rhs)) for n, (lhs, rhs) in zip(ns, vals)]
    out = Result()
    out.tables.append(Table("fubini", ["N", "lhs", "rhs", "abs_diff"], rows, "N", ["abs_diff"], None, "loglog"))
    out.checks.append(Check(f"difference@N={ns[-1]}", rows[-1][3], tol["difference"]))
    return out


def _chain_pairs(count: int, seed: int, alpha: float):
    rng = np.random.default_rng(seed)
    pairs = []
    for _ in range(count):
        profs = []
        for _ in range(2):
            if rng.random() < 0.5:
                profs.append(Cusp(float(rng.uniform(alpha, 1.0))))
            else:
                profs.append(Trig(int(rng.integers(1, 4)), float(rng.uniform(0, 2 * np.pi)), float(rng.uniform(0.05, 0.3))))
        pairs.append((profs[0], profs[1], float(rng.uniform(0.25, 2.0))))
    return pairs


@_register(
    "holder",
    "[Hoelder loss] exponent alpha at t = 0 drops to alpha^2 for t != 0; seminorm chain bound",
    exponent=0.02,
    chain_slack=1.1,
)
def _holder(cfg, tol, threads):
    n = cfg.n or 2**14
    alphas = cfg.alphas or [0.5, 0.7]
    times = cfg.times or [0.0, 0.5, 1.0, 2.0]
    cases = [(a, t) for a in alphas for t in times]

    def one(case):
        a, t = case
        flow = ShearFlow(_profile(cfg.u1, Cusp(a)), _profile(cfg.u3, Cusp(a)))
        e, fits = norms.field_holder_exponent(flow, t, n)
        return a, t, e, fits

    out = Result()
    rows, srows = [], []
    for a, t, e, fits in _pmap(one, cases, threads):
        expected = a if t == 0 else a * a
        fit = fits.get("u3_x2") or min(fits.values(), key=lambda f: f.exponent)
        rows.append((a, t, e, expected, fit.fit_residual))
        srows.extend((a, t, h, s) for h, s in fit.table)
        out.checks.append(Check(f"exponent@alpha={a},t={t}", abs(e - expected), tol["exponent"]))
    out.tables.append(Table("exponents", ["alpha", "t", "exponent", "expected", "fit_residual"], rows, "t", ["exponent", "expected"], "alpha"))
    out.tables.append(Table("structure", ["alpha", "t", "h", "S"], srows, "h", ["S"], "t", "loglog"))
    alpha = alphas[0]
    pairs = _chain_pairs(20 if cfg.count is None else cfg.count, cfg.seed, alpha)

    def chain(pair):
        u1, u3, t = pair
        return norms.chain_bound(ShearFlow(u1, u3), t, alpha, 2**12)

    crow = [(i, t, lhs, rhs, lhs / rhs if rhs > 0 else 0.0) for i, ((_, _, t), (lhs, rhs)) in enumerate(zip(pairs, _pmap(chain, pairs, threads)))]
    out.tables.append(Table("chain", ["pair", "t", "lhs", "rhs", "ratio"], crow, "pair", ["ratio"]))
    if crow:
        out.checks.append(Check("chain_slack", max(r[4] for r in crow), tol["chain_slack"]))
    return out


@_register(
    "energy",
    "[energy identity] energy is constant in time, also for sin(1/x) / sign data",
    rough_relative=1e-3,
    smooth_relative=1e-10,
)
def _energy(cfg, tol, threads):
    flow = ShearFlow(_profile(cfg.u1, SinInverse()), _profile(cfg.u3, Step(1.0, -1.0, 0.5)))
    n = cfg.n or 1024
    times = cfg.times or [0.0, 0.3, 1.0, 3.0]
    es = _pmap(lambda t: norms.energy(flow, t, n, richardson=True), times, threads)
    e0 = es[0]
    rows = [(t, e, abs(e - e0) / max(e0, 1e-300)) for t, e in zip(times, es)]
    smooth = ShearFlow(Trig(1), Trig(2, 0.3))
    s0 = norms.energy(smooth, 0.0, 16)
    srows = [(t, norms.energy(smooth, t, 16), abs(norms.energy(smooth, t, 16) - s0) / s0) for t in times]
    out = Result()
    out.tables.append(Table("energy", ["t", "E", "relative_deviation"], rows, "t", ["E"]))
    out.tables.append(Table("energy_smooth", ["t", "E", "relative_deviation"], srows, "t", ["E"]))
    out.checks.append(Check("rough_relative", max(r[2] for r in rows), tol["rough_relative"]))
    out.checks.append(Check("smooth_relative", max(r[2] for r in srows), tol["smooth_relative"]))
    return out


@_register(
    "w1p-growth",
    "[W1p growth] W^{1,p} norm of a smooth shear flow grows without bound (W^2 quadratic in t)",
    quadratic_coefficient=1e-6,
    slope_relative=0.02,
)
def _w1p(cfg, tol, threads):
    u1, u3 = _profile(cfg.u1, Trig(1)), _profile(cfg.u3, Trig(1))
    flow = ShearFlow(u1, u3)
    n = cfg.n or 16
    p = cfg.p or 2.0
    times = cfg.times or list(np.linspace(5.0, 50.0, 10))
    rows, quad, slope = norms.w1p_growth_fit(flow, times, p, n)
    x = np.arange(n) / n
    target = float(np.mean(np.asarray(u1.derivative(x)) ** 2) * np.mean(np.asarray(u3.derivative(x)) ** 2))
    w_small = [(t, norms.sobolev_w1p(flow, t, p, n)) for t in (0.0, 0.5, 1.0, 2.0)]
    out = Result()
    out.tables.append(Table("w1p", ["t", "W"], sorted(w_small + rows), "t", ["W"], None, "semilogy"))
    t_w, w_t = norms.growth_witness(flow, 10.0, p, n)
    out.tables.append(Table("witness", ["M", "T", "W_T"], [(10.0, t_w, w_t)], "M", ["W_T"]))
    out.checks.append(Check("quadratic_coefficient", abs(quad[0] - target), tol["quadratic_coefficient"]))
    rate = float(np.sqrt(target))
    out.checks.append(Check("slope_relative", abs(slope - rate) / rate, tol["slope_relative"]))
    return out


@_register(
    "besov",
    "[Besov criticality] dyadic B^s_{inf,inf} seminorm probe, compared with the Hoelder seminorm",
    harmonic=1e-12,
    besov_over_holder=10.0,
)
def _besov(cfg, tol, threads):
    n = cfg.n or 2**12
    alphas = cfg.alphas or [0.5]
    j_max = cfg.j_max or 9
    out = Result()
    rows, ratios = [], []
    for a in alphas:
        f = norms.Sampled1D.from_profile(_profile(cfg.u1, Cusp(a)), n)
        s = a if cfg.s is None else cfg.s
        blocks = norms.besov_blocks(f, s, j_max)
        rows.extend((a, j, v) for j, v in blocks)
        hl = norms.holder_seminorm_lower(f, a)
        ratios.append((a, max(v for _, v in blocks), hl))
    out.tables.append(Table("blocks", ["alpha", "j", "weighted_block_sup"], rows, "j", ["weighted_block_sup"], "alpha", "semilogy"))
    out.tables.append(Table("comparison", ["alpha", "besov", "holder_lower"], ratios, "alpha", ["besov", "holder_lower"]))
    x = np.arange(256) / 256
    h = norms.besov_seminorm(norms.Sampled1D(np.cos(2 * np.pi * 4 * x), 1 / 256), 1.0, 5)
    out.checks.append(Check("harmonic", abs(h - 8.0), tol["harmonic"]))
    for a, b, hl in ratios:
        out.checks.append(Check(f"besov_over_holder@alpha={a}", max(b / hl, hl / b), tol["besov_over_holder"]))
    return out


def _random_bandlimited(n: int, kmax: int, rng) -> spectral.SpectralField:
    c = np.zeros(n, dtype=complex)
    c[1 : kmax + 1] = rng.normal(size=kmax) + 1j * rng.normal(size=kmax)
    c[-kmax:] = np.conj(c[1 : kmax + 1][::-1])
    c[0] = rng.normal()
    return spectral.SpectralField(c)


@_register(
    "spectral-selftest",
    "[Hilbert / |D| multiplier identities] H = F^-1(-i sgn), |D| = d/dx H; PV expansion leading term",
    eigen=1e-12,
    identity=1e-12,
    pv_order0=1e-8,
)
def _spectral(cfg, tol, threads):
    n = cfg.n or 64
    rng = np.random.default_rng(cfg.seed)
    rows = spectral.selftest_table(n)
    out = Result()
    out.tables.append(
        Table(
            "eigen",
            ["k", "H_multiplier_im", "H_achieved_im", "D_multiplier", "D_achieved", "error"],
            [(k, mh.imag, lh.imag, md, ld, e) for k, mh, lh, md, ld, e in rows],
            "k",
            ["D_multiplier", "D_achieved"],
        )
    )
    out.checks.append(Check("eigen", max(r[-1] for r in rows), tol["eigen"]))
    f = _random_bandlimited(n, n // 4, rng)
    ident = np.max(np.abs(spectral.abs_derivative(f).to_grid() - spectral.derivative(spectral.hilbert_transform(f)).to_grid()))
    out.checks.append(Check("identity", float(ident / max(1.0, np.max(np.abs(f.to_grid()))) ), tol["identity"]))
    x = np.arange(n) / n
    y = np.sin(2 * np.pi * x)
    t0 = spectral.pv_expansion_term(f, y, 0).to_grid()
    d0 = float(np.max(np.abs(t0 - spectral.abs_derivative(f).to_grid())))
    out.checks.append(Check("pv_order0", d0, tol["pv_order0"]))
    # order-1 term against the full kernel is reported, not gated
    eps = 1e-2
    s0 = spectral.pv_expansion_term(y, y, 0).to_grid()
    s1 = spectral.pv_expansion_term(y, y, 1).to_grid()
    full = spectral.pv_full_kernel(y, y, eps).to_grid()
    quot = (full - s0) / eps**2
    out.tables.append(
        Table("pv_order1", ["x", "T1", "full_quotient", "difference"], [(float(a), float(b), float(c), float(c - b)) for a, b, c in zip(x, s1, quot)], "x", ["T1", "full_quotient"])
    )
    return out


@_register(
    "kh2d",
    "[2d linearized sheet system] mode growth sigma(k) ~ |k| (Hadamard instability), both Omega0 conventions",
    slope=0.01,
    exponential=1e-9,
    ellipticity_floor=1e-12,
)
def _kh2d(cfg, tol, threads):
    ks = cfg.ks or list(range(1, 17))
    omegas = cfg.omega0 or [1.0, 2.0]
    out = Result()
    rows = []
    rng = np.random.default_rng(cfg.seed)
    worst_exp = 0.0
    for conv in kh.CONVENTIONS:
        for om in omegas:
            sig = []
            for k in ks:
                state = tuple(rng.normal(size=2))
                mode = kh.Mode2D(k, om, state)
                est = kh.estimate_growth_rate(mode, conv)
                closed = kh.growth_rate_2d(k, om, conv)
                sig.append(est)
                rows.append((conv, om, k, closed, est))
                m = kh.mode2d_matrix(k, om, conv)
                lam, vec = np.linalg.eig(m)
                for t in (0.25 / max(closed, 1e-12), 1.0 / max(closed, 1e-12)):
                    oracle = (vec @ np.diag(np.exp(lam * t)) @ np.linalg.solve(vec, np.asarray(state, dtype=complex)))
                    got = kh.evolve_mode2d(mode, conv, t)
                    worst_exp = max(worst_exp, float(np.linalg.norm(got - oracle) / np.linalg.norm(oracle)))
            if om > 0:
                slope = np.polyfit(np.log(np.abs(ks)), np.log(sig), 1)[0]
                out.checks.append(Check(f"slope@{conv},omega0={om}", abs(slope - 1.0), tol["slope"]))
            _, floor = kh.ellipticity_scan_2d(om, ks, conv)
            out.checks.append(Check(f"ellipticity_floor@{conv},omega0={om}", floor, tol["ellipticity_floor"], ">="))
    out.checks.append(Check("exponential", worst_exp, tol["exponential"]))
    out.tables.append(Table("growth", ["convention", "omega0", "k", "sigma_closed", "sigma_estimated"], rows, "k", ["sigma_estimated"], "convention", "loglog"))
    return out


def _kh3d_row(sample):
    kmag, theta, w = sample
    rep = kh.spectrum_3d(kh.assemble_3d_matrix(kmag, theta, w))
    ev = [x for z in rep.eigenvalues for x in (z.real, z.imag)]
    pr = [z.real for z in rep.predicted]
    return (kmag, theta, w[0], w[1], *ev, *pr, rep.max_deviation, abs(rep.trace))


@_register(
    "kh3d",
    "[3d stability matrix] eigenvalues {0, 0, +-|k ^ w0|/2}; loss of ellipticity along k || w0",
    deviation=1e-10,
    trace=1e-12,
    degenerate=1e-10,
    ellipticity_min=1e-10,
)
def _kh3d(cfg, tol, threads):
    samples = kh.random_3d_samples(100 if cfg.count is None else cfg.count, cfg.seed)
    rows = _pmap(_kh3d_row, samples, threads)
    header = ["kmag", "theta", "w1", "w2"]
    header += [f"ev{i}_{p}" for i in range(4) for p in ("re", "im")]
    header += [f"pred{i}" for i in range(4)] + ["deviation", "abs_trace"]
    out = Result()
    out.tables.append(Table("spectra", header, rows, "theta", ["deviation"], None, "linear"))
    if rows:
        out.checks.append(Check("deviation", max(r[-2] for r in rows), tol["deviation"]))
        out.checks.append(Check("trace", max(r[-1] for r in rows), tol["trace"]))
    degenerate = [(2.0, 0.0, (1.0, 0.0, 0.0)), (0.5, np.pi, (-3.0, 0.0, 0.0)), (3.0, 0.0, (0.0, 0.0, 0.0))]
    dev = max(kh.spectrum_3d(kh.assemble_3d_matrix(*d)).max_deviation for d in degenerate)
    out.checks.append(Check("degenerate", dev, tol["degenerate"]))
    w = cfg.omega0 or [1.0, 0.0]
    scan, vmin, theta_min = kh.ellipticity_scan_3d((w[0], w[1], 0.0), 64)
    out.tables.append(Table("ellipticity", ["theta", "max_abs_eig_over_k"], scan, "theta", ["max_abs_eig_over_k"]))
    out.checks.append(Check("ellipticity_min", vmin, tol["ellipticity_min"]))
    return out


@_register(
    "sheet",
    "[sheet Biot-Savart law] flat-sheet velocities -+Omega0/2, principal value, jump relations",
    flat=1e-8,
    average=1e-8,
    linearization=1e-4,
    jump_ratio=0.6,
    chord_arc=1.1,
)
def _sheet(cfg, tol, threads):
    m = cfg.m or 256
    out = Result()
    flat = sheet.SheetCurve2D.flat(m)
    probes = [(0.1, 0.25), (0.6, 0.05), (0.3, -0.25), (0.85, -0.05)]
    frows = []
    err = 0.0
    for x1, x2 in probes:
        u = sheet.biot_savart_2d(flat, (x1, x2))
        exact = -0.5 if x2 > 0 else 0.5
        err = max(err, abs(u[0] - exact), abs(u[1]))
        frows.append((x1, x2, u[0], u[1], exact))
    out.tables.append(Table("flat", ["x1", "x2", "u1", "u2", "u1_exact"], frows, "x2", ["u1", "u1_exact"]))
    out.checks.append(Check("flat", err, tol["flat"]))
    avg = max(float(np.max(np.abs(sheet.average_velocity_on_sheet(flat, lam)))) for lam in (0.0, 0.37, 0.5))
    out.checks.append(Check("average", avg, tol["average"]))
    eps = 1e-3
    near = sheet.SheetCurve2D.graph(lambda s: eps * np.sin(2 * np.pi * s), m)
    v = np.array([sheet.average_velocity_on_sheet(near, lam) for lam in near.lam])
    pred = -0.5 * spectral.abs_derivative(near.y).to_grid()
    out.tables.append(Table("linearization", ["lam", "v1", "v2", "v1_linear"], list(zip(near.lam, v[:, 0], v[:, 1], pred)), "lam", ["v1", "v1_linear"]))
    out.checks.append(Check("linearization", float(np.max(np.abs(v[:, 0] - pred))), tol["linearization"]))
    wavy = sheet.SheetCurve2D.graph(lambda s: 0.05 * np.sin(2 * np.pi * s), m, lambda s: 1.0 + 0.3 * np.cos(2 * np.pi * s))
    deltas = cfg.deltas or [0.05, 0.025, 0.0125]
    jrows = []
    for d in deltas:
        rep = sheet.jump_check(wavy, 0.1, d)
        jrows.append((d, rep.normal_jump, rep.tangential_jump, rep.density_residual))
    out.tables.append(Table("jump", ["delta", "normal_jump", "tangential_jump", "density_residual"], jrows, "delta", ["normal_jump", "density_residual"], None, "loglog"))
    for a, b in zip(jrows[:-1], jrows[1:]):
        for col, name in ((1, "normal"), (3, "density")):
            ratio = (b[col] / a[col]) / (b[0] / a[0])
            out.checks.append(Check(f"jump_ratio@{name},delta={b[0]}", abs(ratio - 1.0), tol["jump_ratio"]))
    out.checks.append(Check("chord_arc", sheet.chord_arc_constant(near), tol["chord_arc"]))
    return out


@_register(
    "example1",
    "[step/step example] shear flow whose vorticity lives on the piecewise-planar surface Sigma(t)",
    membership=0.0,
    divergence=1e-3,
)
def _example1(cfg, tol, threads):
    params = {"alpha1": 1.0, "beta1": 0.0, "alpha3": 1.0, "beta3": 0.0, "xi1": 0.5, "xi2": 0.5, **(cfg.example1 or {})}
    times = cfg.times or [0.0, 0.25, 0.5, 1.0]
    rows = []
    bad = 0
    for t in times:
        surf = sheet.example1_surface(**params, t=t)
        for i, p in enumerate(surf.pieces()):
            lo, hi = p["x2_range"] or (-np.inf, np.inf)
            rows.append((t, i, p["normal_axis"], p["offset"], lo, hi))
        below = (params["xi1"] + t * params["alpha1"], params["xi2"] - 0.2, 0.0)
        above = (params["xi1"] + t * params["beta1"], params["xi2"] + 0.2, 0.0)
        off = (params["xi1"] + t * params["alpha1"], params["xi2"] + 0.2, 0.0)
        bad += (not surf.contains(below)) + (not surf.contains(above))
        if t * (params["alpha1"] - params["beta1"]) != 0:
            bad += surf.contains(off)
    out = Result()
    out.tables.append(Table("pieces", ["t", "piece", "normal_axis", "offset", "x2_lo", "x2_hi"], rows, "t", ["offset"], "piece"))
    out.checks.append(Check("membership", float(bad), tol["membership"]))
    flow = example1_flow(**params)
    n = cfg.n or 256
    drows = [(t, weak_form.divergence_residual(flow, t, n)) for t in times]
    out.tables.append(Table("divergence", ["t", "divergence_residual"], drows, "t", ["divergence_residual"]))
    out.checks.append(Check(f"divergence@N={n}", max(r[1] for r in drows), tol["divergence"]))
    return out


@_register(
    "example2",
    "[C1 sheet example] vorticity on Gamma(t) = {x1 = t u1(x2)} is tangent with unit density",
    tangency=1e-12,
    normalization=1e-14,
)
def _example2(cfg, tol, threads):
    u1 = _profile(cfg.u1, Trig(1))
    times = cfg.times or [0.0, 0.5, 1.0, 2.0]
    x2s = np.arange(cfg.n or 32) / (cfg.n or 32)
    rows = []
    for t in times:
        for x2 in x2s:
            v = sheet.example2_vorticity(u1, t, float(x2))
            norm_err = abs(float(np.hypot(v.density[0], v.density[1])) - 1.0)
            rows.append((t, float(x2), *v.density.tolist(), v.bulk, v.tangency_residual, norm_err))
    out = Result()
    out.tables.append(Table("density", ["t", "x2", "d1", "d2", "d3", "bulk", "tangency", "norm_error"], rows, "x2", ["d1"], "t"))
    out.checks.append(Check("tangency", max(r[6] for r in rows), tol["tangency"]))
    out.checks.append(Check("normalization", max(r[7] for r in rows), tol["normalization"]))
    return out
