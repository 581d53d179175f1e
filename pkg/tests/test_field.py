import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from shearlab import (
    ShearFlow,
    eval_velocity,
    eval_velocity_gradient,
    eval_vorticity,
)
from shearlab.field import example1_flow, sample_velocity, spectral_divergence
from shearlab.profiles import Cusp, Step, Trig

SMOOTH = ShearFlow(Trig(1, 0.3), Trig(2, 0.1, 0.7))


def _fd_gradient(flow, x, t, h=1e-6):
    g = np.zeros((3, 3))
    for j in range(3):
        e = np.zeros(3)
        e[j] = h
        g[:, j] = (eval_velocity(flow, x + e, t) - eval_velocity(flow, x - e, t)) / (2 * h)
    return g


class TestVelocity:
    def test_formula(self):
        flow = ShearFlow(Trig(1), Trig(1))
        x, t = np.array([0.2, 0.1, 0.9]), 0.7
        a = np.sin(2 * np.pi * 0.1)
        np.testing.assert_allclose(eval_velocity(flow, x, t), [a, 0.0, np.sin(2 * np.pi * (0.2 - t * a))])

    def test_initial_data(self):
        flow = ShearFlow(Cusp(0.5), Step())
        assert eval_velocity(flow, [0.3, 0.1, 0.0], 0.0)[2] == Step()(0.3)

    def test_rejects_bad_point(self):
        with pytest.raises(ValueError):
            eval_velocity(SMOOTH, [0.1, 0.2], 0.0)
        with pytest.raises(ValueError):
            eval_velocity(SMOOTH, [0.1, np.nan, 0.0], 0.0)

    @given(st.floats(-2, 2), st.floats(-2, 2), st.floats(0, 3))
    @settings(max_examples=40, deadline=None)
    def test_periodic_in_space(self, x1, x2, t):
        x = np.array([x1, x2, 0.3])
        for shift in ([1, 0, 0], [0, 1, 0], [0, 0, 1]):
            np.testing.assert_allclose(eval_velocity(SMOOTH, x + shift, t), eval_velocity(SMOOTH, x, t), atol=1e-9)

    def test_shear_map_transport(self):
        # u3 is transported along x1 with speed u1(x2)
        x, t, dt = np.array([0.17, 0.41, 0.0]), 0.5, 0.3
        a = SMOOTH.u1(x[1])
        later = eval_velocity(SMOOTH, x + [dt * a, 0, 0], t + dt)
        assert later[2] == pytest.approx(eval_velocity(SMOOTH, x, t)[2], abs=1e-14)


class TestDerivatives:
    @pytest.mark.parametrize("t", [0.0, 0.4, 2.0])
    def test_gradient_matches_fd(self, t):
        x = np.array([0.13, 0.37, 0.5])
        np.testing.assert_allclose(eval_velocity_gradient(SMOOTH, x, t), _fd_gradient(SMOOTH, x, t), atol=1e-6)

    def test_vorticity_is_curl(self):
        x, t = np.array([0.61, 0.23, 0.2]), 1.3
        g = _fd_gradient(SMOOTH, x, t)
        curl = [g[2, 1] - g[1, 2], g[0, 2] - g[2, 0], g[1, 0] - g[0, 1]]
        np.testing.assert_allclose(eval_vorticity(SMOOTH, x, t), curl, atol=1e-6)

    def test_trace_free(self):
        g = eval_velocity_gradient(SMOOTH, [0.3, 0.8, 0.1], 0.9)
        assert np.trace(g) == 0.0


class TestDivergence:
    def test_smooth_flow_spectral_divergence(self):
        assert spectral_divergence(SMOOTH, 0.7, 32) < 1e-10

    def test_sample_shape(self):
        assert sample_velocity(SMOOTH, 0.0, 8).shape == (3, 8, 8, 8)

    def test_example1_flow_is_step_pair(self):
        flow = example1_flow(2.0, -1.0, 1.0, 0.0, 0.4, 0.6)
        assert flow.u1 == Step(2.0, -1.0, 0.6)
        assert flow.u3 == Step(1.0, 0.0, 0.4)


class TestTimeBreakpoints:
    def test_crossings_are_jumps_of_u3(self):
        flow = ShearFlow(Trig(1, 0.0, 0.8), Step(1.0, 0.0, 0.5))
        x1 = np.array([0.3, 0.9])
        x2 = np.array([0.2, 0.7])
        bp = flow.time_breakpoints(x1, x2, 2.0)
        a = flow.u1(x2)
        for i in range(2):
            for tc in bp[i][bp[i] < 2.0]:
                s = (x1[i] - tc * a[i]) % 1.0
                assert min(abs(s - 0.5), s, 1 - s) < 1e-12

    def test_smooth_u3_has_none(self):
        assert SMOOTH.time_breakpoints(np.array([0.1]), np.array([0.2]), 1.0).shape == (1, 0)
