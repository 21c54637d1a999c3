import logging

import numpy as np
import pandas as pd

import config
from ..dynamics import QuadraticOperator, integrate, oracle_point, preset_by_name
from ..phase_space import equal_up_to_phase
from .command import \
    Command, \
    CommandResult, \
    OutputFormat, \
    EXIT_SUCCESS, \
    EXIT_FAILURE
from .reports import coordinate_labels

log = logging.getLogger(__name__)


class EvolveCommand(Command):
    """
    Integrates a preset Hamiltonian and reports the trajectory with its
    energy and norm. Linear presets are also compared with the matrix
    exponential at the final time.
    """
    @property
    def supported_formats(self):
        return (OutputFormat.JSON, OutputFormat.CSV)

    def run(self) -> CommandResult:
        preset = preset_by_name(self.config.preset)
        trajectory = integrate(
            preset.hamiltonian,
            preset.initial_point,
            self.config.t_final,
            self.config.dt)

        gate = config.tolerances.conservation
        summary = {
            "preset": preset.name,
            "final_time": trajectory.final_time,
            "steps": len(trajectory.points) - 1,
            "energy_drift": trajectory.energy_drift,
            "norm_drift": trajectory.norm_drift,
            "conservation_tolerance": gate
        }
        passed = trajectory.energy_drift < gate and trajectory.norm_drift < gate

        if isinstance(preset.hamiltonian, QuadraticOperator):
            reference = oracle_point(
                preset.hamiltonian.operator,
                preset.initial_point,
                trajectory.final_time)
            matches, theta, residual = equal_up_to_phase(
                trajectory.final_point, reference, config.tolerances.flow_oracle)
            summary.update(oracle_residual=residual, oracle_phase=theta, oracle_pass=matches)
            passed = passed and matches

        summary["pass"] = passed
        log.info(
            f"evolve {preset.name}: energy drift {trajectory.energy_drift:.3e}, " \
            f"norm drift {trajectory.norm_drift:.3e}")

        labels = coordinate_labels(preset.initial_point.space)
        frame = pd.DataFrame(
            np.array([point.coords for point in trajectory.points]),
            columns=labels)
        frame.insert(0, "t", trajectory.times)
        frame["energy"] = trajectory.energies
        frame["norm"] = trajectory.norms

        return CommandResult(
            exit_code=EXIT_SUCCESS if passed else EXIT_FAILURE,
            summary=summary,
            instances=frame.to_dict(orient="records"),
            frame=frame)


__all__ = ["EvolveCommand"]
