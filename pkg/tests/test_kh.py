import threading

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from shearlab.errors import InvalidBackground, InvalidParameters, ZeroMode
from shearlab.kh import (
    CONVENTIONS,
    Mode2D,
    assemble_3d_matrix,
    ellipticity_scan_2d,
    ellipticity_scan_3d,
    estimate_growth_rate,
    evolve_mode2d,
    growth_rate_2d,
    hausdorff_distance,
    mode2d_matrix,
    predicted_spectrum,
    random_3d_samples,
    spectrum_3d,
)


class TestMode2D:
    def test_zero_mode(self):
        with pytest.raises(ZeroMode):
            Mode2D(0, 1.0)
        with pytest.raises(ZeroMode):
            mode2d_matrix(0, 1.0)

    @pytest.mark.parametrize("k", [1, -3, 16])
    def test_closed_forms(self, k):
        d = 2 * np.pi * abs(k)
        assert growth_rate_2d(k, 4.0, "first_order") == pytest.approx(2.0 * d)
        assert growth_rate_2d(k, 4.0, "second_order") == pytest.approx(4.0 * d)

    def test_unknown_convention(self):
        with pytest.raises(InvalidParameters):
            mode2d_matrix(1, 1.0, "third")

    @pytest.mark.parametrize("conv", CONVENTIONS)
    def test_evolution_matches_eigendecomposition(self, conv):
        mode = Mode2D(5, 0.8, (0.3, -1.1))
        m = mode2d_matrix(5, 0.8, conv)
        lam, vec = np.linalg.eig(m)
        for t in (0.0, 0.01, 0.1):
            oracle = vec @ np.diag(np.exp(lam * t)) @ np.linalg.solve(vec, np.array([0.3, -1.1]))
            np.testing.assert_allclose(evolve_mode2d(mode, conv, t), oracle, rtol=1e-12)

    def test_negative_product_oscillates(self):
        m = mode2d_matrix(1, -1.0, "first_order")
        assert growth_rate_2d(1, -1.0) == 0.0
        mode = Mode2D(1, -1.0)
        period = 2 * np.pi / np.sqrt(-m[0, 1] * m[1, 0])
        np.testing.assert_allclose(evolve_mode2d(mode, "first_order", period), [1.0, 0.0], atol=1e-12)

    @pytest.mark.parametrize("conv", CONVENTIONS)
    def test_growth_slope_one(self, conv):
        ks = np.arange(1, 17)
        sig = [estimate_growth_rate(Mode2D(int(k), 2.0, (1.0, 0.5)), conv) for k in ks]
        assert np.polyfit(np.log(ks), np.log(sig), 1)[0] == pytest.approx(1.0, abs=1e-4)

    def test_ellipticity_2d(self):
        rows, floor = ellipticity_scan_2d(1.0, range(1, 17))
        assert floor == pytest.approx(1.0)
        with pytest.raises(InvalidParameters):
            ellipticity_scan_2d(1.0, range(1, 5))


class TestMatrix3D:
    def test_rejects_vertical_background(self):
        with pytest.raises(InvalidBackground):
            assemble_3d_matrix(1.0, 0.0, (1.0, 0.0, 0.5))
        with pytest.raises(InvalidParameters):
            assemble_3d_matrix(0.0, 0.0, (1.0, 0.0))

    @given(st.floats(0.1, 10), st.floats(0, 2 * np.pi), st.floats(-2, 2), st.floats(-2, 2))
    @settings(max_examples=25, deadline=None)
    def test_spectrum_matches_prediction(self, kmag, theta, w1, w2):
        rep = spectrum_3d(assemble_3d_matrix(kmag, theta, (w1, w2)))
        # generic parallel pairs are only parallel to round-off
        assert rep.max_deviation <= 1e-6 * max(1.0, kmag * np.hypot(w1, w2))
        assert abs(rep.trace) == 0.0

    def test_random_samples_tight(self):
        devs = [spectrum_3d(assemble_3d_matrix(*s)).max_deviation for s in random_3d_samples(20, 5)]
        assert max(devs) < 1e-10

    @pytest.mark.parametrize("sample", [(2.0, 0.0, (1.0, 0.0)), (0.5, np.pi, (-3.0, 0.0)), (1.0, np.pi / 2, (0.0, 2.0))])
    def test_degenerate_direction_is_nilpotent(self, sample):
        m = assemble_3d_matrix(*sample)
        assert m.k_wedge_w == pytest.approx(0.0, abs=1e-15)
        assert max(abs(v) for v in spectrum_3d(m).eigenvalues) < 1e-10

    def test_double_precision_is_not_enough_when_degenerate(self):
        m = assemble_3d_matrix(2.0, 0.0, (1.0, 0.0))
        assert spectrum_3d(m, "numpy").max_deviation > 1e-10

    def test_predicted_and_hausdorff(self):
        m = assemble_3d_matrix(1.0, np.pi / 2, (1.0, 0.0))
        np.testing.assert_allclose(predicted_spectrum(m), [-0.5, 0.0, 0.0, 0.5])
        assert hausdorff_distance([0, 1], [0, 1.5]) == 0.5

    def test_ellipticity_fails_along_w(self):
        _, vmin, theta = ellipticity_scan_3d((1.0, 0.0, 0.0), 32)
        assert vmin < 1e-10 and theta == pytest.approx(0.0)

    def test_thread_safe(self):
        samples = random_3d_samples(8, 1)
        serial = [spectrum_3d(assemble_3d_matrix(*s)).eigenvalues for s in samples]
        out = [None] * len(samples)

        def work(i):
            out[i] = spectrum_3d(assemble_3d_matrix(*samples[i]), dps=30 + i).eigenvalues

        threads = [threading.Thread(target=work, args=(i,)) for i in range(len(samples))]
        for th in threads:
            th.start()
        for th in threads:
            th.join()
        for a, b in zip(serial, out):
            assert hausdorff_distance(a, b) < 1e-14
