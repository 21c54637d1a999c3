import numpy as np
import pytest

from src.exceptions import SpaceKindException
from src.maps import \
    MapDefinition, \
    MAP_NAMES, \
    Method, \
    MissingJacobianException, \
    constant_gauge, \
    linear_gauge, \
    map_by_name, \
    self_replication, \
    initial_point, \
    tangent_from_params, \
    analytic_jacobian, \
    finite_difference_jacobian, \
    pushforward, \
    jacobian_disagreement, \
    perturbed
from src.phase_space import PhasePoint, quantum, make_tangent
from test.test_data import GENERIC_STATES, PARAM_PAIRS, PLUS_STATE

_MAPS = [map_by_name(name) for name in MAP_NAMES] + [
    self_replication(constant_gauge(1.3)),
    self_replication(linear_gauge(0.7)),
    self_replication(linear_gauge(-1.9))
]


def _random_point(map_: MapDefinition, rng: np.random.Generator) -> PhasePoint:
    return PhasePoint(map_.domain, rng.standard_normal(map_.domain.total_real_dim))


class TestJacobians:
    class TestAnalyticJacobian:
        @pytest.mark.parametrize("map_", _MAPS, ids=lambda m: m.name)
        def test_matches_differences(self, map_, rng):
            """Tests analytic and central difference Jacobians agree off the initial submanifold"""
            for _ in range(5):
                assert jacobian_disagreement(map_, _random_point(map_, rng)) < 1e-6

        @pytest.mark.parametrize("map_", _MAPS, ids=lambda m: m.name)
        def test_shape(self, map_, rng):
            """Tests the Jacobian is codomain x domain"""
            jacobian = analytic_jacobian(map_, _random_point(map_, rng))
            assert jacobian.shape == (map_.codomain.total_real_dim, map_.domain.total_real_dim)

        def test_missing(self):
            """Tests hand-built maps without a Jacobian are reported"""
            identity = MapDefinition("identity", quantum(1), quantum(1), lambda point: point)
            with pytest.raises(MissingJacobianException):
                analytic_jacobian(identity, PhasePoint(quantum(1), np.zeros(2)))
            with pytest.raises(MissingJacobianException):
                perturbed(identity, 1e-3)

        def test_finite_difference_of_identity(self):
            """Tests differences of the identity give the identity matrix"""
            identity = MapDefinition("identity", quantum(2), quantum(2), lambda point: point)
            np.testing.assert_allclose(
                finite_difference_jacobian(identity, PhasePoint(quantum(2), np.ones(4))),
                np.eye(4), atol=1e-9)

    class TestPerturbed:
        @pytest.mark.parametrize("offset", [1e-3, -1e-2])
        def test_offset_detected(self, offset, rng):
            """Tests a perturbed Jacobian disagrees with differences by about the offset"""
            map_ = perturbed(self_replication(), offset)
            disagreement = jacobian_disagreement(map_, _random_point(map_, rng))
            assert disagreement == pytest.approx(abs(offset), rel=1e-2)
            assert disagreement > 1e-6

    class TestPushforward:
        @pytest.mark.parametrize("map_", _MAPS, ids=lambda m: m.name)
        @pytest.mark.parametrize("obj", GENERIC_STATES)
        def test_methods_agree(self, map_, obj):
            """Tests analytic and finite difference pushforwards agree along object tangents"""
            point = initial_point(map_, obj)
            tangent = tangent_from_params(map_, obj, PARAM_PAIRS[1][0])
            analytic = pushforward(map_, point, tangent, Method.ANALYTIC)
            numerical = pushforward(map_, point, tangent, Method.FINITE_DIFFERENCE)
            np.testing.assert_allclose(analytic.components, numerical.components, atol=1e-8)
            np.testing.assert_allclose(analytic.base.coords, map_.forward(point).coords)

        @pytest.mark.parametrize("map_", _MAPS, ids=lambda m: m.name)
        @pytest.mark.parametrize("method, tolerance", [
            (Method.ANALYTIC, 1e-9),
            (Method.FINITE_DIFFERENCE, 1e-7)
        ], ids=["analytic", "fd"])
        def test_linear(self, map_, method, tolerance, rng):
            """Tests the pushforward of a u + b v is a push(u) + b push(v)"""
            point = _random_point(map_, rng)
            n = map_.domain.total_real_dim
            u, v = rng.standard_normal(n), rng.standard_normal(n)
            a, b = 0.7, -1.9

            def _push(components):
                return pushforward(map_, point, make_tangent(point, components), method).components

            combined = _push(a * u + b * v)
            np.testing.assert_allclose(combined, a * _push(u) + b * _push(v), atol=tolerance)

        def test_point_off_domain(self):
            """Tests the point must lie on the map's domain"""
            map_ = self_replication()
            point = PhasePoint(quantum(2), np.array([1.0, 0.0, 0.0, 0.0]))
            with pytest.raises(SpaceKindException):
                pushforward(map_, point, make_tangent(point, np.zeros(4)))

        def test_tangent_elsewhere(self):
            """Tests the tangent must be based at the given point"""
            map_ = self_replication()
            point = initial_point(map_, PLUS_STATE)
            tangent = tangent_from_params(map_, GENERIC_STATES[1], PARAM_PAIRS[0][0])
            with pytest.raises(SpaceKindException):
                pushforward(map_, point, tangent)
