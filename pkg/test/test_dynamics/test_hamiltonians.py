import numpy as np
import pytest

from hypothesis import given, settings

from src.exceptions import DimensionMismatchException, SpaceKindException
from src.dynamics import \
    QuadraticOperator, \
    ExpectationPolynomial, \
    make_term, \
    quantum_dim, \
    check_space, \
    energy, \
    gradient, \
    hamiltonian_vector_field, \
    as_scalar_field, \
    oscillator_coupling, \
    meanfield_oscillator, \
    weinberg_quadratic
from src.phase_space import \
    PhasePoint, \
    SIGMA_X, \
    SIGMA_Z, \
    HermitianOperator, \
    quantum, \
    hybrid, \
    to_canonical, \
    finite_difference_gradient, \
    observable, \
    poisson_bracket
from test.fixtures import states, hermitian_operators
from test.test_data import PLUS_STATE


class TestHamiltonians:
    class TestMakeTerm:
        def test_exponent_count(self):
            """Tests each factor needs exactly one exponent"""
            with pytest.raises(DimensionMismatchException):
                make_term(1.0, [SIGMA_X, SIGMA_Z], [1])

        def test_positive_exponents(self):
            """Tests exponents must be positive"""
            with pytest.raises(ValueError):
                make_term(1.0, [SIGMA_X], [0])

    class TestCheckSpace:
        def test_quantum_on_hybrid(self):
            """Tests a quantum Hamiltonian refuses a hybrid point"""
            with pytest.raises(SpaceKindException):
                check_space(QuadraticOperator(SIGMA_Z), hybrid(1, 2))

        def test_meanfield_on_quantum(self):
            """Tests a mean-field Hamiltonian refuses a pure quantum point"""
            with pytest.raises(SpaceKindException):
                check_space(oscillator_coupling(), quantum(2))

        def test_dimension(self):
            """Tests the quantum sector must match the operator dimension"""
            with pytest.raises(DimensionMismatchException):
                check_space(QuadraticOperator(SIGMA_Z), quantum(3))
            with pytest.raises(DimensionMismatchException):
                check_space(oscillator_coupling(), hybrid(2, 2))

        def test_mixed_polynomial_dimensions(self):
            """Tests polynomial factors must share one dimension"""
            h = ExpectationPolynomial((
                make_term(1.0, [SIGMA_Z], [1]),
                make_term(1.0, [HermitianOperator(np.eye(3))], [1])
            ))
            with pytest.raises(DimensionMismatchException):
                quantum_dim(h)

    class TestEnergy:
        def test_quadratic(self):
            """Tests <+|sz|+> = 0"""
            assert energy(QuadraticOperator(SIGMA_Z), to_canonical(PLUS_STATE, quantum(2))) \
                == pytest.approx(0.0)

        def test_polynomial(self):
            """Tests <sz> + 0.3 <sx>^2 at |+> is 0.3"""
            preset = weinberg_quadratic()
            assert energy(preset.hamiltonian, preset.initial_point) == pytest.approx(0.3)

        def test_meanfield(self):
            """Tests H = 1/2 + 1 + q <sx> at q = 1, p = 0 and psi = (1, 0)"""
            preset = meanfield_oscillator()
            assert energy(preset.hamiltonian, preset.initial_point) == pytest.approx(1.5)

    class TestGradient:
        @settings(deadline=None)
        @given(hermitian_operators(2), states(2))
        def test_quadratic(self, op, psi):
            """Tests the analytic gradient of <H> against central differences"""
            h = QuadraticOperator(op)
            point = to_canonical(psi, quantum(2))
            np.testing.assert_allclose(
                gradient(h, point),
                finite_difference_gradient(lambda x: energy(h, x), point),
                atol=1e-7)

        @settings(deadline=None)
        @given(states(2))
        def test_polynomial(self, psi):
            """Tests the chain rule through powers of expectation values"""
            h = ExpectationPolynomial((
                make_term(0.5, [SIGMA_Z], [3]),
                make_term(-1.2, [SIGMA_X, SIGMA_Z], [2, 1])
            ))
            point = to_canonical(psi, quantum(2))
            np.testing.assert_allclose(
                gradient(h, point),
                finite_difference_gradient(lambda x: energy(h, x), point),
                atol=1e-7)

        def test_meanfield(self, rng):
            """Tests the analytic mean-field gradient against central differences"""
            h = oscillator_coupling(0.8)
            for _ in range(5):
                point = PhasePoint(hybrid(1, 2), rng.standard_normal(6))
                np.testing.assert_allclose(
                    gradient(h, point),
                    finite_difference_gradient(lambda x: energy(h, x), point),
                    atol=1e-7)

        def test_meanfield_fallback(self, rng):
            """Tests a mean-field Hamiltonian without partials is differentiated numerically"""
            h = oscillator_coupling(0.8)
            bare = h._replace(classical_gradient=None, interaction_partials=None)
            point = PhasePoint(hybrid(1, 2), rng.standard_normal(6))
            np.testing.assert_allclose(gradient(bare, point), gradient(h, point), atol=1e-7)

    class TestVectorField:
        @settings(deadline=None)
        @given(hermitian_operators(2), states(2))
        def test_schrodinger(self, op, psi):
            """Tests the vector field of <H> is the real form of -i H psi"""
            for hbar in (1.0, 0.5):
                point = to_canonical(psi, quantum(2, hbar))
                field = hamiltonian_vector_field(QuadraticOperator(op), point)
                velocity = np.sqrt(hbar / 2) * (field.components[:2] + 1j * field.components[2:])
                np.testing.assert_allclose(velocity, -1j * op.entries @ psi, atol=1e-12)

        def test_classical_block(self):
            """Tests dq/dt = dH/dp and dp/dt = -dH/dq on the hybrid preset"""
            preset = meanfield_oscillator()
            field = hamiltonian_vector_field(preset.hamiltonian, preset.initial_point)
            # H_c = (p^2 + q^2)/2 and <sx> = 0 at (1, 0)
            np.testing.assert_allclose(field.components[:2], [0.0, -1.0])

        def test_bracket_with_energy(self):
            """Tests {<sz>, <H>} vanishes when H commutes with sz"""
            h = QuadraticOperator(SIGMA_Z * 2.0)
            point = to_canonical([0.6, 0.8j], quantum(2))
            assert poisson_bracket(observable(SIGMA_Z), as_scalar_field(h), point) \
                == pytest.approx(0.0, abs=1e-12)
