"""Acceptance suite: one PASS/FAIL line per criterion at the stated tolerances.

Run with ``pytest tests/test_acceptance.py`` (lines appear in the terminal
summary) or directly with ``python3 tests/test_acceptance.py``.
"""
from __future__ import annotations

import filecmp
import sys

import numpy as np
import pytest

from shearlab import kh, norms, sheet, spectral, weak_form
from shearlab.cli import main as cli_main
from shearlab.config import EXPERIMENTS
from shearlab.experiments import FUBINI_FACTORS, _chain_pairs
from shearlab.field import ShearFlow, example1_flow
from shearlab.profiles import Cusp, SinInverse, Step, Trig

LINES: list[str] = []


def report(criterion: str, passed: bool, detail: str) -> None:
    line = f"{'PASS' if passed else 'FAIL'} criterion {criterion}: {detail}"
    LINES.append(line)
    print(line)
    assert passed, line


class TestCriterion1WeakResidual:
    def test_residual_and_refinement(self):
        flow = example1_flow()
        phis = weak_form.generate_test_basis(2, 20, 0, planar=True)
        r128 = weak_form.weak_residuals(flow, phis, weak_form.QuadratureSpec(128, 16))
        r256 = weak_form.weak_residuals(flow, phis, weak_form.QuadratureSpec(256, 16))
        m128, m256 = float(np.max(np.abs(r128))), float(np.max(np.abs(r256)))
        ok = m256 <= 1e-3 and m256 <= 0.6 * m128
        report("1", ok, f"max|R| N=256 {m256:.3e} <= 1e-3, ratio 256/128 {m256 / m128:.3f} <= 0.6")


class TestCriterion2Fubini:
    def test_difference(self):
        lhs, rhs = weak_form.fubini_check(Step(), SinInverse(), FUBINI_FACTORS, weak_form.TimeWindow(1.0), weak_form.QuadratureSpec(512, 16))
        d = abs(lhs - rhs)
        report("2", d <= 1e-4, f"|lhs - rhs| N=512 {d:.3e} <= 1e-4")


class TestCriterion3Energy:
    def test_rough_and_smooth(self):
        times = [0.0, 0.3, 1.0, 3.0]
        rough = ShearFlow(SinInverse(), Step(1.0, -1.0, 0.5))
        e = [norms.energy(rough, t, 1024, richardson=True) for t in times]
        dr = max(abs(v - e[0]) / e[0] for v in e)
        smooth = ShearFlow(Trig(1), Trig(2, 0.3, 0.7))
        s = [norms.energy(smooth, t, 16) for t in times]
        ds = max(abs(v - s[0]) / s[0] for v in s)
        report("3", dr <= 1e-3 and ds <= 1e-10, f"rough {dr:.3e} <= 1e-3, trig {ds:.3e} <= 1e-10")


class TestCriterion4Holder:
    def test_exponents(self):
        worst = 0.0
        for a in (0.5, 0.7):
            for t in (0.0, 0.5, 1.0, 2.0):
                e, _ = norms.field_holder_exponent(ShearFlow(Cusp(a), Cusp(a)), t, 2**14)
                worst = max(worst, abs(e - (a if t == 0 else a * a)))
        report("4a", worst <= 0.02, f"max |exponent - expected| {worst:.3e} <= 0.02")

    def test_chain_bound(self):
        ratios = []
        for u1, u3, t in _chain_pairs(20, 0, 0.5):
            lhs, rhs = norms.chain_bound(ShearFlow(u1, u3), t, 0.5, 2**12)
            ratios.append(lhs / rhs)
        worst = max(ratios)
        report("4b", worst <= 1.1, f"max chain ratio over 20 pairs {worst:.4f} <= 1.1")


class TestCriterion5W1p:
    def test_quadratic_and_slope(self):
        flow = ShearFlow(Trig(1), Trig(1))
        _, quad, slope = norms.w1p_growth_fit(flow, np.linspace(5.0, 50.0, 10), 2.0, 16)
        dq = abs(quad[0] - 4 * np.pi**4)
        ds = abs(slope - 2 * np.pi**2) / (2 * np.pi**2)
        report("5", dq <= 1e-6 and ds <= 0.02, f"|a2 - 4 pi^4| {dq:.3e} <= 1e-6, slope rel {ds:.3e} <= 0.02")


class TestCriterion6Spectral:
    n = 256

    def test_operators(self):
        rows = spectral.selftest_table(self.n)
        eig = max(r[-1] for r in rows)
        rng = np.random.default_rng(0)
        c = np.zeros(self.n, dtype=complex)
        c[1:65] = rng.normal(size=64) + 1j * rng.normal(size=64)
        c[-64:] = np.conj(c[1:65][::-1])
        f = spectral.SpectralField(c)
        ident = float(np.max(np.abs(spectral.abs_derivative(f).to_grid() - spectral.derivative(spectral.hilbert_transform(f)).to_grid())))
        y = np.sin(2 * np.pi * f.grid.nodes())
        t0 = spectral.pv_expansion_term(f, y, 0).to_grid()
        d0 = float(np.max(np.abs(t0 - spectral.abs_derivative(f).to_grid())))
        ok = eig <= 1e-12 and ident <= 1e-12 and d0 <= 1e-8
        report("6a", ok, f"eigen {eig:.1e} <= 1e-12, |D| - dH {ident:.1e} <= 1e-12, PV n=0 {d0:.1e} <= 1e-8")

    def test_order_one_against_full_kernel(self):
        eps = 1e-2
        x = np.arange(self.n) / self.n
        y = np.sin(2 * np.pi * x)
        s0 = spectral.pv_expansion_term(y, y, 0).to_grid()
        s1 = spectral.pv_expansion_term(y, y, 1).to_grid()
        full = spectral.pv_full_kernel(y, y, eps).to_grid()
        d = float(np.max(np.abs((full - s0) / eps**2 - s1)))
        report("6b", d <= 1e-4, f"PV n=1 vs full kernel at eps=1e-2: {d:.3e} <= 1e-4")


class TestCriterion7KH3D:
    def test_spectra(self):
        dev = tr = 0.0
        for kmag, theta, w in kh.random_3d_samples(100, 0):
            rep = kh.spectrum_3d(kh.assemble_3d_matrix(kmag, theta, w))
            dev, tr = max(dev, rep.max_deviation), max(tr, abs(rep.trace))
        degenerate = [(2.0, 0.0, (1.0, 0.0, 0.0)), (0.5, np.pi, (-3.0, 0.0, 0.0)), (1.0, np.pi / 2, (0.0, 2.0, 0.0))]
        dg = max(max(abs(v) for v in kh.spectrum_3d(kh.assemble_3d_matrix(*d)).eigenvalues) for d in degenerate)
        ok = dev <= 1e-10 and tr <= 1e-12 and dg <= 1e-10
        report("7", ok, f"deviation {dev:.1e} <= 1e-10, trace {tr:.1e} <= 1e-12, k || w0 max|eig| {dg:.1e}")


class TestCriterion8KH2D:
    def test_slope_and_exponential(self):
        ks = np.arange(1, 17)
        slopes = []
        worst = 0.0
        for conv in kh.CONVENTIONS:
            sig = [kh.estimate_growth_rate(kh.Mode2D(int(k), 1.5, (1.0, 0.3)), conv) for k in ks]
            slopes.append(float(np.polyfit(np.log(ks), np.log(sig), 1)[0]))
            for k in (1, 7, 16):
                m = kh.mode2d_matrix(k, 1.5, conv)
                lam, vec = np.linalg.eig(m)
                t = 2.0 / kh.growth_rate_2d(k, 1.5, conv)
                oracle = vec @ np.diag(np.exp(lam * t)) @ np.linalg.solve(vec, np.array([1.0, 0.3]))
                got = kh.evolve_mode2d(kh.Mode2D(k, 1.5, (1.0, 0.3)), conv, t)
                worst = max(worst, float(np.linalg.norm(got - oracle) / np.linalg.norm(oracle)))
        ok = all(abs(s - 1) <= 0.01 for s in slopes) and worst <= 1e-9
        report("8", ok, f"slopes {slopes[0]:.4f}, {slopes[1]:.4f} (1 +- 0.01), expm vs eigen {worst:.1e} <= 1e-9")


class TestCriterion9Sheet:
    def test_flat_and_average(self):
        flat = sheet.SheetCurve2D.flat(256)
        err = 0.0
        for x1, x2 in [(0.1, 0.25), (0.6, 0.05), (0.3, -0.25), (0.85, -0.05)]:
            u = sheet.biot_savart_2d(flat, (x1, x2))
            err = max(err, abs(u[0] - (-0.5 if x2 > 0 else 0.5)), abs(u[1]))
        avg = max(float(np.max(np.abs(sheet.average_velocity_on_sheet(flat, lam)))) for lam in (0.0, 0.37, 0.5))
        report("9a", err <= 1e-8 and avg <= 1e-8, f"flat sheet {err:.1e} <= 1e-8, on-sheet average {avg:.1e} <= 1e-8")

    def test_jump_linear_in_delta(self):
        wavy = sheet.SheetCurve2D.graph(lambda s: 0.05 * np.sin(2 * np.pi * s), 256, lambda s: 1.0 + 0.3 * np.cos(2 * np.pi * s))
        deltas = [0.05, 0.025, 0.0125]
        reps = [sheet.jump_check(wavy, 0.1, d) for d in deltas]
        slopes = [
            float(np.polyfit(np.log(deltas), np.log([getattr(r, name) for r in reps]), 1)[0])
            for name in ("normal_jump", "density_residual")
        ]
        ok = all(abs(s - 1) <= 0.1 for s in slopes)
        report("9b", ok, f"log-log slopes of jump residuals vs delta {slopes[0]:.3f}, {slopes[1]:.3f} (linear)")

    def test_example2_density(self):
        tang = norm = 0.0
        for t in (0.0, 0.5, 1.0, 2.0):
            for x2 in np.arange(32) / 32:
                v = sheet.example2_vorticity(Trig(1), t, float(x2))
                tang = max(tang, v.tangency_residual)
                norm = max(norm, abs(float(np.linalg.norm(v.density)) - 1.0))
        report("9c", tang <= 1e-12 and norm <= 1e-14, f"tangency {tang:.1e} <= 1e-12, |density| - 1 {norm:.1e} <= 1e-14")


class TestCriterion10Determinism:
    @pytest.mark.slow
    def test_rerun_byte_identical(self, tmp_path):
        mismatched = []
        for name in EXPERIMENTS:
            cfg = tmp_path / f"{name}.yaml"
            cfg.write_text(f"experiment: {name}\nseed: 3\n")
            dirs = [tmp_path / name / run for run in ("a", "b")]
            for d in dirs:
                cli_main(["run", "--config", str(cfg), "--out", str(d)])
            files = sorted(p.name for p in dirs[0].iterdir() if p.suffix in (".csv", ".json", ".svg") and p.name != "timing.json")
            _, bad, err = filecmp.cmpfiles(dirs[0], dirs[1], files, shallow=False)
            mismatched += [f"{name}/{f}" for f in bad + err]
        report("10", not mismatched, f"{len(EXPERIMENTS)} experiments rerun, mismatched files: {mismatched or 'none'}")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
