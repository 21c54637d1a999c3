import logging

import numpy as np
import pandas as pd

import config
from ..dynamics import \
    MeanFieldHybrid, \
    delta_ensemble, \
    two_point_ensemble, \
    ensemble_trajectories, \
    purity_series, \
    density_matrix, \
    final_ensemble, \
    preset_by_name
from ..phase_space import quantum_amplitudes
from .command import \
    Command, \
    CommandResult, \
    ConfigException, \
    OutputFormat, \
    EXIT_SUCCESS, \
    EXIT_FAILURE

log = logging.getLogger(__name__)

INITIAL_DISTRIBUTIONS = ("delta", "two-point")


class EnsembleCommand(Command):
    """
    Evolves a hybrid ensemble under a mean-field preset and reports the
    purity of the quantum density matrix over time.

    A delta initial distribution must stay pure; a two-point mixture of
    classical positions must lose purity.
    """
    @property
    def supported_formats(self):
        return (OutputFormat.JSON, OutputFormat.CSV)

    def _initial_ensemble(self, preset):
        psi = quantum_amplitudes(preset.initial_point)
        if self.config.initial == "delta":
            if self.config.weights is not None:
                raise ConfigException(
                    "weights", list(self.config.weights), "a delta distribution takes no weights")
            return delta_ensemble(preset.initial_point)

        weights = self.config.weights or config.ensemble.two_point_weights
        if len(weights) != len(config.ensemble.two_point_positions):
            raise ConfigException(
                "weights",
                list(weights),
                f"expected {len(config.ensemble.two_point_positions)} weights")
        return two_point_ensemble(psi, weights=weights)

    def run(self) -> CommandResult:
        preset = preset_by_name(self.config.preset)
        if not isinstance(preset.hamiltonian, MeanFieldHybrid):
            raise ConfigException(
                "preset", preset.name, "ensembles need a mean-field hybrid preset")
        if self.config.initial not in INITIAL_DISTRIBUTIONS:
            raise ConfigException(
                "initial", self.config.initial, f"expected one of {INITIAL_DISTRIBUTIONS}")

        e0 = self._initial_ensemble(preset)
        trajectories = ensemble_trajectories(
            preset.hamiltonian, e0, self.config.t_final, self.config.dt, self.config.jobs)
        purities = purity_series(trajectories, e0.weights)
        rho = density_matrix(final_ensemble(e0, trajectories)).entries

        if self.config.initial == "delta":
            deviation = float(np.max(np.abs(purities - 1.0)))
            passed = deviation <= config.tolerances.purity
        else:
            deviation = float(1.0 - purities[-1])
            passed = deviation > config.tolerances.purity

        summary = {
            "preset": preset.name,
            "initial": self.config.initial,
            "members": len(e0.members),
            "final_time": trajectories[0].final_time,
            "final_purity": float(purities[-1]),
            "min_purity": float(np.min(purities)),
            "max_purity_deviation": deviation,
            "below_mixing_threshold": bool(purities[-1] < config.ensemble.mixing_threshold),
            "final_density_matrix": {"re": rho.real, "im": rho.imag},
            "pass": passed
        }
        log.info(f"ensemble {self.config.initial}: final purity {purities[-1]:.12g}")

        frame = pd.DataFrame({"t": trajectories[0].times, "purity": purities})
        return CommandResult(
            exit_code=EXIT_SUCCESS if passed else EXIT_FAILURE,
            summary=summary,
            instances=frame.to_dict(orient="records"),
            frame=frame)


__all__ = [
    "INITIAL_DISTRIBUTIONS",
    "EnsembleCommand"
]
