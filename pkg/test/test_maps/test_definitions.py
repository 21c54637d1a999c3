import numpy as np
import pytest

from src.exceptions import NotNormalizedException, SpaceKindException
from src.maps import \
    MachineRule, \
    MapDefinition, \
    MAP_NAMES, \
    FIXED_MACHINE, \
    constant_gauge, \
    map_by_name, \
    self_replication, \
    quantum_cloning, \
    hybrid_cloning, \
    initial_point, \
    self_replication_map, \
    quantum_cloning_map, \
    hybrid_cloning_map, \
    clone_succeeded
from src.phase_space import \
    quantum, \
    hybrid, \
    from_canonical, \
    quantum_amplitudes, \
    is_normalized
from test.test_data import \
    PLUS_STATE, \
    THIRDS_STATE, \
    GENERIC_STATES, \
    BASIS_UP


class TestDefinitions:
    class TestMapByName:
        @pytest.mark.parametrize("name", MAP_NAMES)
        def test_known(self, name):
            """Tests every listed name resolves to a map of that name"""
            assert map_by_name(name).name == name

        def test_unknown(self):
            """Tests an unknown name raises a ValueError"""
            with pytest.raises(ValueError):
                map_by_name("teleportation")

        def test_hybrid_cloning_takes_no_gauge(self):
            """Tests a gauge phase passed with hybrid-cloning raises a ValueError"""
            with pytest.raises(ValueError):
                map_by_name("hybrid-cloning", constant_gauge(1.3))

        def test_spaces(self):
            """Tests the domains of the bundled maps"""
            assert self_replication().domain == quantum(4)
            assert quantum_cloning().domain == quantum(8)
            assert hybrid_cloning().domain == hybrid(2, 4)

    class TestInitialPoint:
        def test_self_replication(self):
            """Tests the object goes in amplitudes 0 and 2 with the target blank"""
            point = initial_point(self_replication(), THIRDS_STATE)
            np.testing.assert_allclose(
                from_canonical(point), [THIRDS_STATE[0], 0, THIRDS_STATE[1], 0], atol=1e-15)

        def test_quantum_cloning(self):
            """Tests target and machine both start in (1, 0)"""
            point = initial_point(quantum_cloning(), THIRDS_STATE)
            np.testing.assert_allclose(
                from_canonical(point),
                np.kron(np.kron(THIRDS_STATE, BASIS_UP), BASIS_UP), atol=1e-15)

        def test_hybrid_machine_start(self):
            """Tests a classical machine starts at complex coordinates (1, 0)"""
            point = initial_point(hybrid_cloning(), PLUS_STATE)
            np.testing.assert_allclose(point.classical_coords, [np.sqrt(2), 0, 0, 0])
            assert is_normalized(point)

        def test_rejects_unnormalized(self):
            """Tests the object state must be normalized"""
            with pytest.raises(NotNormalizedException):
                initial_point(self_replication(), (1.0, 1.0))

        def test_needs_embedding(self):
            """Tests hand-built maps without an initial submanifold are refused"""
            identity = MapDefinition("identity", quantum(2), quantum(2), lambda point: point)
            with pytest.raises(SpaceKindException):
                initial_point(identity, PLUS_STATE)

    class TestImages:
        def test_self_replication_plus(self):
            """Tests (1, 1)/sqrt(2) replicates to the uniform two-qubit state"""
            image = self_replication_map(PLUS_STATE)
            np.testing.assert_allclose(from_canonical(image), [0.5] * 4)

        def test_gauge_phase(self):
            """Tests a constant gauge multiplies the image by exp(i theta)"""
            image = self_replication_map(PLUS_STATE, constant_gauge(0.4))
            np.testing.assert_allclose(from_canonical(image), [0.5 * np.exp(0.4j)] * 4)

        @pytest.mark.parametrize("obj", GENERIC_STATES)
        def test_quantum_cloning(self, obj):
            """Tests the machine ends in the conjugate of the object"""
            image = quantum_cloning_map(obj)
            alpha, beta = obj
            expected = np.kron(np.kron(obj, obj), np.conj([alpha, beta]))
            np.testing.assert_allclose(from_canonical(image), expected, atol=1e-15)
            assert is_normalized(image)

        def test_quantum_cloning_checks_machine(self):
            """Tests an unnormalized final machine state is refused"""
            bad = MachineRule(
                "bad",
                lambda alpha, beta: np.array([1.0, 1.0]),
                lambda alpha, beta: np.zeros((4, 2), dtype=complex))
            with pytest.raises(NotNormalizedException):
                quantum_cloning_map(PLUS_STATE, bad)

        def test_hybrid_cloning(self):
            """Tests the classical machine ends at (Im a + i Re a, Im b + i Re b)"""
            image = hybrid_cloning_map(PLUS_STATE)
            np.testing.assert_allclose(image.classical_coords, [0, 0, 1, 1], atol=1e-15)
            np.testing.assert_allclose(quantum_amplitudes(image), [0.5] * 4)

    class TestCloneSucceeded:
        @pytest.mark.parametrize("name", MAP_NAMES)
        @pytest.mark.parametrize("obj", GENERIC_STATES)
        def test_every_map_clones(self, name, obj):
            """Tests each map leaves object (x) object once the machine is traced out"""
            assert clone_succeeded(map_by_name(name), obj)

        def test_fixed_machine(self):
            """Tests a fixed machine still produces the clone"""
            assert clone_succeeded(quantum_cloning(FIXED_MACHINE), THIRDS_STATE)
