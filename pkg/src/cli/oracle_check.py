import logging
from typing import List, NamedTuple, Optional

import numpy as np

import config
from ..dynamics import \
    PRESET_NAMES, \
    bracket_commutator_residual, \
    flow_symplectic_check, \
    preset_by_name, \
    random_hermitian, \
    random_state
from ..maps import \
    EXPECTED_RATIOS, \
    MAP_NAMES, \
    MapDefinition, \
    ZeroTangentException, \
    closed_form_area, \
    constant_gauge, \
    jacobian_disagreement, \
    linear_gauge, \
    map_by_name, \
    perturbed, \
    sample_object_state, \
    sample_tangent_params, \
    self_replication, \
    sweep_ratios, \
    tangent_from_params
from ..phase_space import \
    PhasePoint, \
    TangentVector, \
    quantum, \
    symplectic_form, \
    to_canonical
from .command import \
    Command, \
    CommandResult, \
    EXIT_SUCCESS, \
    EXIT_FAILURE, \
    default_ratio_tolerance
from .verify import method_from_name

log = logging.getLogger(__name__)

# Dimension of the random operators in the bracket gate
BRACKET_DIM = 3


class Gate(NamedTuple):
    """One pass/fail check: the worst value seen against its threshold."""
    name: str
    value: Optional[float]
    threshold: float
    passed: bool
    skipped: bool = False

    def to_record(self) -> dict:
        return self._asdict()


def _below(name: str, value: float, threshold: float) -> Gate:
    return Gate(name, value, threshold, bool(value < threshold))


def _skipped(name: str, threshold: float) -> Gate:
    return Gate(name, None, threshold, True, skipped=True)


class OracleCheckCommand(Command):
    """
    Runs every numerical cross-check the library has: analytic against
    finite-difference Jacobians, the closed form of the tangent skew
    product, the bracket/commutator identity, the area ratio of every
    map and the symplecticity of every preset flow.

    With --method fd the maps are stripped of their analytic Jacobians
    and the Jacobian gates are skipped. --perturb adds a constant to every
    analytic Jacobian entry, which the Jacobian gates must catch.
    """
    @property
    def analytic(self) -> bool:
        return self.config.method == "analytic"

    def _maps(self) -> List[MapDefinition]:
        maps = [map_by_name(name) for name in MAP_NAMES]
        maps += [
            self_replication(constant_gauge(self.config.theta))._replace(
                name="self-replication (constant gauge)"),
            self_replication(linear_gauge(self.config.theta))._replace(
                name="self-replication (smooth gauge)")
        ]
        if not self.analytic:
            return [map_._replace(analytic_jacobian=None) for map_ in maps]
        if self.config.perturb:
            return [perturbed(map_, self.config.perturb) for map_ in maps]
        return maps

    def _jacobian_gates(self, maps: List[MapDefinition], rng: np.random.Generator) -> List[Gate]:
        threshold = config.tolerances.jacobian
        gates = []
        for map_ in maps:
            name = f"jacobian: {map_.name}"
            if not self.analytic:
                gates.append(_skipped(name, threshold))
                continue
            worst = max(
                jacobian_disagreement(
                    map_,
                    PhasePoint(map_.domain, rng.standard_normal(map_.domain.total_real_dim)))
                for _ in range(self.config.n))
            gates.append(_below(name, worst, threshold))
        return gates

    def _ratio_gates(self, maps: List[MapDefinition]) -> List[Gate]:
        tolerance = self.config.tolerance or default_ratio_tolerance(self.config.method)
        gates = []
        for map_ in maps:
            base_name = map_.name.split(" ")[0]
            expected = EXPECTED_RATIOS.get(base_name)
            result = sweep_ratios(
                map_,
                self.config.n,
                seed=self.config.seed,
                method=method_from_name(self.config.method),
                jobs=self.config.jobs)
            ratios = np.array([verdict.ratio for verdict in result.verdicts])

            if expected is None:
                deviation = float(np.max(np.abs(ratios - 1.0)))
                gates.append(Gate(
                    f"ratio: {map_.name} deviates from 1",
                    deviation,
                    config.tolerances.control_deviation,
                    bool(deviation > config.tolerances.control_deviation)))
            else:
                deviation = float(np.max(np.abs(ratios - expected)))
                gates.append(_below(f"ratio: {map_.name} = {expected:g}", deviation, tolerance))
        return gates

    def _closed_form_gate(self, rng: np.random.Generator) -> Gate:
        map_ = self_replication()
        worst = 0.0
        for _ in range(self.config.n):
            obj = sample_object_state(rng)
            pg, ph = sample_tangent_params(rng), sample_tangent_params(rng)
            try:
                area = symplectic_form(
                    tangent_from_params(map_, obj, pg, normalize=False),
                    tangent_from_params(map_, obj, ph, normalize=False))
            except ZeroTangentException:
                continue
            worst = max(worst, abs(area - closed_form_area(obj, pg, ph)))
        return _below("closed-form tangent area", worst, config.tolerances.closed_form)

    def _bracket_gate(self, rng: np.random.Generator) -> Gate:
        space = quantum(BRACKET_DIM)
        worst = max(
            bracket_commutator_residual(
                random_hermitian(rng, BRACKET_DIM),
                random_hermitian(rng, BRACKET_DIM),
                to_canonical(random_state(rng, BRACKET_DIM), space))
            for _ in range(self.config.n))
        return _below("bracket/commutator identity", worst, config.tolerances.bracket)

    def _flow_gates(self, rng: np.random.Generator) -> List[Gate]:
        gates = []
        for name in PRESET_NAMES:
            preset = preset_by_name(name)
            x0 = preset.initial_point
            u = TangentVector(x0, rng.standard_normal(x0.space.total_real_dim))
            v = TangentVector(x0, rng.standard_normal(x0.space.total_real_dim))
            ratio = flow_symplectic_check(
                preset.hamiltonian, x0, u, v, self.config.t_final, self.config.dt)
            gates.append(_below(
                f"flow symplectic: {name}",
                abs(ratio - 1.0),
                config.tolerances.flow_symplectic))
        return gates

    def run(self) -> CommandResult:
        rng = np.random.default_rng(self.config.seed)
        maps = self._maps()

        gates = self._jacobian_gates(maps, rng)
        gates += self._ratio_gates(maps)
        gates.append(self._closed_form_gate(rng))
        gates.append(self._bracket_gate(rng))
        gates += self._flow_gates(rng)

        failed = [gate.name for gate in gates if not gate.passed]
        for gate in gates:
            if gate.skipped:
                log.info(f"gate skipped: {gate.name}")
            elif gate.passed:
                log.info(f"gate passed: {gate.name} ({gate.value:.3e} vs {gate.threshold:.1e})")
            else:
                log.error(f"gate FAILED: {gate.name} ({gate.value:.3e} vs {gate.threshold:.1e})")

        summary = {
            "method": self.config.method,
            "perturb": self.config.perturb,
            "gates": len(gates),
            "skipped": sum(gate.skipped for gate in gates),
            "failed_gates": failed,
            "pass": not failed
        }
        return CommandResult(
            exit_code=EXIT_SUCCESS if not failed else EXIT_FAILURE,
            summary=summary,
            instances=[gate.to_record() for gate in gates])


__all__ = [
    "Gate",
    "OracleCheckCommand"
]
