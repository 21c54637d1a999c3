import time

import numpy as np
import pytest

from src.exceptions import \
    DegenerateAreaException, \
    NonFiniteValueException, \
    SpaceKindException
from src.dynamics import \
    FixedPointConvergenceException, \
    QuadraticOperator, \
    TRIPLE_JUMP, \
    PRESET_NAMES, \
    midpoint_step, \
    composed_step, \
    step_count, \
    integrate, \
    flow_field, \
    flow_map, \
    linear_generator, \
    linear_step_matrix, \
    as_scalar_field, \
    hamiltonian_vector_field, \
    flow_symplectic_check, \
    oracle_point, \
    preset_by_name, \
    linear_sigma_z
from src.phase_space import \
    PhasePoint, \
    SIGMA_X, \
    SIGMA_Y, \
    SIGMA_Z, \
    TangentVector, \
    coordinate_field, \
    observable, \
    poisson_bracket, \
    make_tangent, \
    quantum, \
    to_canonical, \
    from_canonical, \
    equal_up_to_phase
from test.test_data import SHORT_DT, FINE_DT, SQRT_HALF


class TestIntegrators:
    class TestStepCount:
        def test_rounding(self):
            """Tests the final time is rounded to the nearest multiple of dt"""
            assert step_count(1.0, 0.3) == 3
            assert step_count(1.0, 0.4) == 2
            assert step_count(0.0, 0.1) == 0

        @pytest.mark.parametrize("t, dt", [(1.0, 0.0), (1.0, -0.1), (-1.0, 0.1)])
        def test_invalid(self, t, dt):
            """Tests dt must be positive and t non-negative"""
            with pytest.raises(ValueError):
                step_count(t, dt)

    class TestMidpointStep:
        def test_linear_field(self):
            """Tests the midpoint step of x' = a x is the Cayley transform (1 + a dt/2)/(1 - a dt/2)"""
            x, _ = midpoint_step(lambda x: -0.5 * x, np.array([1.0]), 0.1)
            assert x[0] == pytest.approx((1 - 0.025) / (1 + 0.025), abs=1e-12)

        def test_rotation_keeps_norm(self):
            """Tests a rotation field keeps |x| exactly"""
            rotation = np.array([[0.0, 1.0], [-1.0, 0.0]])
            x = np.array([0.6, 0.8])
            for _ in range(100):
                x, _ = midpoint_step(lambda v: rotation @ v, x, 0.1)
            assert np.linalg.norm(x) == pytest.approx(1.0, abs=1e-12)

        def test_no_convergence(self):
            """Tests a step too large for the field stops after the iteration cap"""
            with pytest.raises(FixedPointConvergenceException):
                midpoint_step(lambda x: 10.0 * x, np.array([1.0]), 1.0)

        def test_non_finite(self):
            """Tests a field that produces NaN is reported"""
            with pytest.raises(NonFiniteValueException):
                midpoint_step(lambda x: np.full_like(x, np.nan), np.array([1.0]), 0.1)

        def test_order(self):
            """Tests only orders 2 and 4 exist"""
            with pytest.raises(ValueError):
                composed_step(lambda x: x, np.array([1.0]), 0.1, order=3)

        def test_triple_jump_weights(self):
            """Tests the composition weights add to one"""
            assert sum(TRIPLE_JUMP) == pytest.approx(1.0)

    class TestLinearFlow:
        def test_half_period(self):
            """Tests <sz> takes (1, 1)/sqrt(2) to (-i, i)/sqrt(2) at t = pi/2"""
            preset = linear_sigma_z()
            final = flow_map(preset.hamiltonian, preset.initial_point, np.pi / 2, np.pi / 2000)
            np.testing.assert_allclose(
                from_canonical(final), [-1j * SQRT_HALF, 1j * SQRT_HALF], atol=1e-7)

        def test_full_period(self):
            """Tests the state at t = pi is -(1, 1)/sqrt(2)"""
            preset = linear_sigma_z()
            final = flow_map(preset.hamiltonian, preset.initial_point, np.pi, np.pi / 2000)
            np.testing.assert_allclose(from_canonical(final), [-SQRT_HALF, -SQRT_HALF], atol=1e-7)

        def test_matches_exponential(self):
            """Tests a linear flow with off-diagonal H against exp(-i H t)"""
            op = QuadraticOperator(SIGMA_Z + 0.4 * SIGMA_X)
            x0 = to_canonical([0.6, 0.48 + 0.64j], quantum(2))
            final = flow_map(op, x0, 1.0, FINE_DT)
            equal, _, residual = equal_up_to_phase(final, oracle_point(op.operator, x0, 1.0), 1e-8)
            assert equal, residual

        def test_order_four_beats_order_two(self):
            """Tests the triple jump is more accurate than plain midpoint at equal dt"""
            preset = linear_sigma_z()
            exact = oracle_point(SIGMA_Z, preset.initial_point, 1.0).coords
            errors = [
                np.max(np.abs(flow_map(preset.hamiltonian, preset.initial_point, 1.0, 0.05, order).coords - exact))
                for order in (2, 4)
            ]
            assert errors[1] < errors[0] / 10

        def test_hbar(self):
            """Tests the flow of <H> at hbar != 1 is still exp(-i H t) on amplitudes"""
            x0 = to_canonical([0.6, 0.8], quantum(2, hbar=0.5))
            final = flow_map(QuadraticOperator(SIGMA_Z), x0, 0.5, FINE_DT)
            expected = np.array([0.6 * np.exp(-0.5j), 0.8 * np.exp(0.5j)])
            np.testing.assert_allclose(from_canonical(final), expected, atol=1e-8)

        def test_oracle_at_other_hbar(self):
            """Tests the oracle point follows the flow on a space with hbar != 1"""
            x0 = to_canonical([0.6, 0.48 + 0.64j], quantum(2, hbar=0.5))
            op = QuadraticOperator(SIGMA_Z + 0.4 * SIGMA_X)
            final = flow_map(op, x0, 1.0, FINE_DT)
            equal, _, residual = equal_up_to_phase(final, oracle_point(op.operator, x0, 1.0), 1e-8)
            assert equal, residual

        def test_generator(self, rng):
            """Tests the generator matrix reproduces the Hamiltonian vector field"""
            op = QuadraticOperator(SIGMA_Z + 0.4 * SIGMA_X)
            x0 = to_canonical([0.6, 0.8], quantum(2, hbar=2.0))
            generator = linear_generator(op, x0)
            point = PhasePoint(x0.space, rng.standard_normal(4))
            np.testing.assert_allclose(
                generator @ point.coords,
                hamiltonian_vector_field(op, point).components, atol=1e-14)

        @pytest.mark.parametrize("order", [2, 4])
        def test_closed_form_step(self, order):
            """Tests the Cayley step matrix solves the midpoint equations the iteration solves"""
            preset = linear_sigma_z()
            x0 = preset.initial_point
            step = linear_step_matrix(linear_generator(preset.hamiltonian, x0), 0.05, order)
            iterated, _ = composed_step(flow_field(preset.hamiltonian, x0), x0.coords, 0.05, order)
            np.testing.assert_allclose(step @ x0.coords, iterated, atol=1e-11)

        def test_closed_form_step_order(self):
            """Tests the step matrix accepts only orders 2 and 4"""
            with pytest.raises(ValueError):
                linear_step_matrix(np.eye(2), 0.1, order=3)

        def test_oracle_run_within_a_second(self):
            """Tests the sigma_z trajectory to t = pi at dt = 1e-3 matches the oracle quickly"""
            preset = linear_sigma_z()
            start = time.perf_counter()
            trajectory = integrate(preset.hamiltonian, preset.initial_point, np.pi, 1e-3)
            elapsed = time.perf_counter() - start
            reference = oracle_point(SIGMA_Z, preset.initial_point, trajectory.final_time)
            equal, _, residual = equal_up_to_phase(trajectory.final_point, reference, 1e-8)
            assert equal, residual
            assert elapsed < 1.0

    class TestTrajectory:
        @pytest.mark.parametrize("name", PRESET_NAMES)
        def test_samples(self, name):
            """Tests a trajectory keeps every step including t = 0"""
            preset = preset_by_name(name)
            trajectory = integrate(preset.hamiltonian, preset.initial_point, 0.5, 0.05)
            assert len(trajectory.points) == 11
            assert trajectory.times[-1] == pytest.approx(0.5)
            np.testing.assert_array_equal(trajectory.points[0].coords, preset.initial_point.coords)

        @pytest.mark.parametrize("name", PRESET_NAMES)
        def test_norm_conserved(self, name):
            """Tests every preset flow keeps the quantum norm"""
            preset = preset_by_name(name)
            trajectory = integrate(preset.hamiltonian, preset.initial_point, 1.0, SHORT_DT)
            assert trajectory.norm_drift < 1e-10

        @pytest.mark.parametrize("name", PRESET_NAMES)
        def test_energy_conserved(self, name):
            """Tests every preset flow keeps its energy"""
            preset = preset_by_name(name)
            trajectory = integrate(preset.hamiltonian, preset.initial_point, 1.0, FINE_DT)
            assert trajectory.energy_drift < 1e-8

        @pytest.mark.slow
        @pytest.mark.parametrize("name", PRESET_NAMES)
        def test_long_run_conservation(self, name):
            """Tests norm and energy stay within 1e-8 over t = 10 at dt = 1e-3"""
            preset = preset_by_name(name)
            trajectory = integrate(preset.hamiltonian, preset.initial_point, 10.0, FINE_DT)
            assert trajectory.final_time == pytest.approx(10.0)
            assert trajectory.norm_drift < 1e-8
            assert trajectory.energy_drift < 1e-8

        def test_zero_time(self):
            """Tests t = 0 gives the initial point alone"""
            preset = linear_sigma_z()
            trajectory = integrate(preset.hamiltonian, preset.initial_point, 0.0, SHORT_DT)
            assert len(trajectory.points) == 1
            assert trajectory.energy_drift == 0.0

        def test_wrong_space(self):
            """Tests the initial point must fit the Hamiltonian"""
            with pytest.raises(SpaceKindException):
                integrate(
                    QuadraticOperator(SIGMA_Z),
                    preset_by_name("meanfield-oscillator").initial_point,
                    1.0, SHORT_DT)

    class TestBracketAlongFlow:
        @staticmethod
        def _rate(values: np.ndarray, index: int, stride: int, dt: float) -> float:
            """d/dt of sampled values by central differences, refined once by Richardson."""
            near = (values[index + stride] - values[index - stride]) / (2 * stride * dt)
            far = (values[index + 2 * stride] - values[index - 2 * stride]) / (4 * stride * dt)
            return (4.0 * near - far) / 3.0

        @pytest.mark.parametrize("name", PRESET_NAMES)
        @pytest.mark.parametrize("op", [SIGMA_X, SIGMA_Y], ids=["sigma_x", "sigma_y"])
        def test_observable_rate(self, name, op):
            """Tests d<A>/dt along a trajectory equals {<A>, H} there"""
            preset = preset_by_name(name)
            trajectory = integrate(preset.hamiltonian, preset.initial_point, 0.5, FINE_DT)
            field = observable(op)
            values = np.array([field.value(point) for point in trajectory.points])
            rate = self._rate(values, 250, 10, FINE_DT)
            bracket = poisson_bracket(
                field, as_scalar_field(preset.hamiltonian), trajectory.points[250])
            assert rate == pytest.approx(bracket, abs=1e-6)

        def test_classical_rate(self):
            """Tests dq/dt along a hybrid trajectory equals {q, H}"""
            preset = preset_by_name("meanfield-oscillator")
            trajectory = integrate(preset.hamiltonian, preset.initial_point, 0.5, FINE_DT)
            field = coordinate_field(preset.initial_point.space, 0)
            values = np.array([field.value(point) for point in trajectory.points])
            rate = self._rate(values, 250, 10, FINE_DT)
            bracket = poisson_bracket(
                field, as_scalar_field(preset.hamiltonian), trajectory.points[250])
            assert rate == pytest.approx(bracket, abs=1e-6)

    class TestFlowSymplecticity:
        @pytest.mark.parametrize("name", PRESET_NAMES)
        def test_preserves_area(self, name, rng):
            """Tests every preset flow preserves the symplectic area of random tangents"""
            preset = preset_by_name(name)
            x0 = preset.initial_point
            n = x0.space.total_real_dim
            u = make_tangent(x0, rng.standard_normal(n))
            v = make_tangent(x0, rng.standard_normal(n))
            ratio = flow_symplectic_check(preset.hamiltonian, x0, u, v, 0.5, 0.05)
            assert ratio == pytest.approx(1.0, abs=1e-6)

        def test_degenerate(self):
            """Tests a tangent paired with itself is refused"""
            preset = linear_sigma_z()
            u = make_tangent(preset.initial_point, [1.0, 0.0, 0.0, 0.0])
            with pytest.raises(DegenerateAreaException):
                flow_symplectic_check(preset.hamiltonian, preset.initial_point, u, u, 0.5, 0.05)

        def test_tangent_elsewhere(self):
            """Tests tangents must be based at the initial point"""
            preset = linear_sigma_z()
            other = PhasePoint(quantum(2), np.array([1.0, 0.0, 0.0, 1.0]))
            u = make_tangent(preset.initial_point, [1.0, 0.0, 0.0, 0.0])
            v = TangentVector(other, np.array([0.0, 0.0, 1.0, 0.0]))
            with pytest.raises(SpaceKindException):
                flow_symplectic_check(preset.hamiltonian, preset.initial_point, u, v, 0.5, 0.05)
