import numpy as np
import pytest

from hypothesis import given, settings

from src.exceptions import \
    DimensionMismatchException, \
    SpaceKindException, \
    NonFiniteValueException
from src.phase_space import \
    PhasePoint, \
    ScalarField, \
    SIGMA_Z, \
    quantum, \
    classical, \
    hybrid, \
    make_tangent, \
    to_canonical, \
    unit_symplectic_matrix, \
    poisson_tensor, \
    symplectic_matrix, \
    complex_structure, \
    symplectic_form, \
    riemann_metric, \
    expectation, \
    observable, \
    coordinate_field, \
    finite_difference_gradient, \
    field_gradient, \
    poisson_bracket
from test.fixtures import states, hermitian_operators
from test.test_data import PLUS_STATE


class TestGeometry:
    class TestMatrices:
        def test_unit_symplectic(self):
            """Tests the unit symplectic matrix squares to minus the identity"""
            omega = unit_symplectic_matrix(3)
            np.testing.assert_array_equal(omega @ omega, -np.eye(6))

        def test_complex_structure(self):
            """Tests J squares to minus the identity"""
            j = complex_structure(quantum(3))
            np.testing.assert_array_equal(j @ j, -np.eye(6))

        def test_complex_structure_quantum_only(self):
            """Tests J is only defined on quantum spaces"""
            with pytest.raises(SpaceKindException):
                complex_structure(hybrid(1, 2))

        @pytest.mark.parametrize("hbar", [1.0, 0.25, 3.0])
        def test_form_inverts_tensor(self, hbar):
            """Tests the form matrix and the Poisson tensor are inverse up to sign"""
            space = hybrid(2, 3, hbar)
            np.testing.assert_allclose(
                symplectic_matrix(space) @ poisson_tensor(space),
                -np.eye(space.total_real_dim), atol=1e-15)

    class TestForms:
        def test_antisymmetric(self, rng):
            """Tests omega(u, v) = -omega(v, u) and omega(u, u) = 0"""
            point = PhasePoint(hybrid(1, 2), rng.standard_normal(6))
            u = make_tangent(point, rng.standard_normal(6))
            v = make_tangent(point, rng.standard_normal(6))
            assert symplectic_form(u, v) == pytest.approx(-symplectic_form(v, u))
            assert symplectic_form(u, u) == pytest.approx(0.0)

        def test_basis_values(self):
            """Tests omega(e_x, e_y) = hbar on a single quantum mode"""
            point = PhasePoint(quantum(1, hbar=2.0), np.array([1.0, 0.0]))
            e_x = make_tangent(point, [1.0, 0.0])
            e_y = make_tangent(point, [0.0, 1.0])
            assert symplectic_form(e_x, e_y) == pytest.approx(2.0)

        def test_classical_sector(self):
            """Tests omega(e_q, e_p) = 1 on a classical mode"""
            point = PhasePoint(classical(1), np.zeros(2))
            assert symplectic_form(
                make_tangent(point, [1.0, 0.0]),
                make_tangent(point, [0.0, 1.0])) == pytest.approx(1.0)

        def test_metric_compatible(self, rng):
            """Tests g(u, v) = omega(u, J v)"""
            space = quantum(3, hbar=0.7)
            point = PhasePoint(space, rng.standard_normal(6))
            u = make_tangent(point, rng.standard_normal(6))
            v = make_tangent(point, rng.standard_normal(6))
            jv = make_tangent(point, complex_structure(space) @ v.components)
            assert riemann_metric(u, v) == pytest.approx(symplectic_form(u, jv))

        def test_bilinear(self, rng):
            """Tests omega is linear in each argument"""
            point = PhasePoint(hybrid(1, 2, 0.5), rng.standard_normal(6))
            u, v, w = (rng.standard_normal(6) for _ in range(3))
            a, b = 0.7, -1.9

            def _form(first, second):
                return symplectic_form(make_tangent(point, first), make_tangent(point, second))

            assert _form(a * u + b * v, w) == pytest.approx(a * _form(u, w) + b * _form(v, w), abs=1e-12)
            assert _form(w, a * u + b * v) == pytest.approx(a * _form(w, u) + b * _form(w, v), abs=1e-12)

        @pytest.mark.parametrize("hbar", [1.0, 0.3])
        def test_metric_positive_definite(self, hbar, rng):
            """Tests Gram matrices of the metric on random tangents are positive definite"""
            space = quantum(3, hbar)
            point = PhasePoint(space, rng.standard_normal(6))
            for _ in range(5):
                tangents = [make_tangent(point, rng.standard_normal(6)) for _ in range(4)]
                gram = np.array([[riemann_metric(u, v) for v in tangents] for u in tangents])
                np.testing.assert_allclose(gram, gram.T, atol=1e-12)
                assert np.linalg.eigvalsh(gram).min() > 0.0

        def test_different_spaces(self):
            """Tests the form refuses tangents on different spaces"""
            u = make_tangent(PhasePoint(quantum(1), np.zeros(2)), [1.0, 0.0])
            v = make_tangent(PhasePoint(classical(1), np.zeros(2)), [1.0, 0.0])
            with pytest.raises(SpaceKindException):
                symplectic_form(u, v)

    class TestObservables:
        def test_expectation(self):
            """Tests <+|sz|+> = 0 and <0|sz|0> = 1"""
            assert expectation(SIGMA_Z, to_canonical(PLUS_STATE, quantum(2))) == pytest.approx(0.0)
            assert expectation(SIGMA_Z, to_canonical([1.0, 0.0], quantum(2))) == pytest.approx(1.0)

        def test_expectation_dimension(self):
            """Tests the operator dimension must match the quantum sector"""
            with pytest.raises(DimensionMismatchException):
                expectation(SIGMA_Z, to_canonical([1.0, 0.0, 0.0], quantum(3)))

        def test_expectation_non_finite(self):
            """Tests a NaN point has no expectation"""
            point = PhasePoint(quantum(2), np.array([np.nan, 0.0, 1.0, 0.0]))
            with pytest.raises(NonFiniteValueException):
                expectation(SIGMA_Z, point)

        @settings(deadline=None)
        @given(hermitian_operators(2), states(2))
        def test_gradient(self, op, psi):
            """Tests the analytic gradient of <A> against central differences"""
            for hbar in (1.0, 0.5):
                point = to_canonical(psi, quantum(2, hbar))
                field = observable(op)
                np.testing.assert_allclose(
                    field.gradient(point),
                    finite_difference_gradient(field.value, point),
                    atol=1e-7)

        def test_coordinate_field_range(self):
            """Tests coordinate fields need an index inside the space"""
            with pytest.raises(DimensionMismatchException):
                coordinate_field(quantum(2), 4)

        def test_non_finite_gradient(self):
            """Tests a NaN gradient is reported"""
            field = ScalarField(lambda point: 0.0, lambda point: np.array([np.nan, 0.0]))
            with pytest.raises(NonFiniteValueException):
                field_gradient(field, PhasePoint(quantum(1), np.zeros(2)))

    class TestPoissonBracket:
        @pytest.mark.parametrize("hbar", [1.0, 0.5, 2.0])
        def test_canonical_quantum(self, hbar):
            """Tests {x_j, y_k} = delta_jk / hbar and {x_j, x_k} = 0"""
            space = quantum(2, hbar)
            point = PhasePoint(space, np.zeros(4))
            for j in range(2):
                for k in range(2):
                    x_j = coordinate_field(space, j)
                    y_k = coordinate_field(space, 2 + k)
                    x_k = coordinate_field(space, k)
                    expected = 1.0 / hbar if j == k else 0.0
                    assert poisson_bracket(x_j, y_k, point) == pytest.approx(expected)
                    assert poisson_bracket(x_j, x_k, point) == pytest.approx(0.0)

        def test_canonical_hybrid(self):
            """Tests {q, p} = 1 and classical and quantum coordinates commute"""
            space = hybrid(1, 1)
            point = PhasePoint(space, np.zeros(4))
            q, p, x, y = (coordinate_field(space, i) for i in range(4))
            assert poisson_bracket(q, p, point) == pytest.approx(1.0)
            assert poisson_bracket(x, y, point) == pytest.approx(1.0)
            assert poisson_bracket(q, x, point) == pytest.approx(0.0)
            assert poisson_bracket(p, y, point) == pytest.approx(0.0)

        def test_numerical_gradient(self, rng):
            """Tests fields without a gradient are differentiated numerically"""
            space = quantum(2)
            point = PhasePoint(space, rng.standard_normal(4))
            exact = observable(SIGMA_Z)
            numeric = ScalarField(exact.value)
            other = coordinate_field(space, 0)
            assert poisson_bracket(numeric, other, point) == \
                pytest.approx(poisson_bracket(exact, other, point), abs=1e-7)
