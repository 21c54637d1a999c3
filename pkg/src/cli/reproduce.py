import logging
from typing import List

import numpy as np
import pandas as pd

import config
from ..maps import \
    constant_gauge, \
    linear_gauge, \
    self_replication, \
    sweep_ratios, \
    zero_gauge
from .command import \
    Command, \
    CommandResult, \
    OutputFormat, \
    EXIT_SUCCESS, \
    EXIT_FAILURE
from .ensemble import EnsembleCommand
from .verify import VerifyCommand

log = logging.getLogger(__name__)

# Maps checked by the headline run, in report order
HEADLINE_MAPS = (
    "self-replication",
    "quantum-cloning",
    "quantum-cloning-fixed-machine",
    "hybrid-cloning"
)

# Time by which the two-point mixture must have lost purity
MIXING_TIME = 2.0

# Smooth gauge coefficient used by the gauge independence row
SMOOTH_GAUGE_COEFFICIENT = 0.7

# Largest ratio change allowed between gauges
GAUGE_TOLERANCE = 1e-9


class ReproduceCommand(Command):
    """
    Runs the headline checks in one go: the area ratio of every map, gauge
    independence of the self-replication ratio, and purity of the delta
    and two-point mean-field ensembles. Prints a table of the results.
    """
    def _verify_rows(self) -> List[dict]:
        rows = []
        for map_name in HEADLINE_MAPS:
            sub_config = self.config._replace(
                command="verify",
                map_name=map_name,
                output_format=OutputFormat.JSON)
            summary = VerifyCommand(sub_config).run().summary
            rows.append({
                "check": f"area ratio: {map_name}",
                "expected": summary["expected_ratio"],
                "observed": f"{summary['observed_min']:.12g} .. {summary['observed_max']:.12g}",
                "pass": summary["pass"]
            })
        return rows

    def _gauge_row(self) -> dict:
        gauges = (
            zero_gauge(),
            constant_gauge(self.config.theta),
            linear_gauge(SMOOTH_GAUGE_COEFFICIENT)
        )
        ratios = [
            np.array([
                verdict.ratio
                for verdict in sweep_ratios(
                    self_replication(gauge),
                    self.config.n,
                    seed=self.config.seed,
                    jobs=self.config.jobs).verdicts
            ])
            for gauge in gauges
        ]
        spread = max(float(np.max(np.abs(r - ratios[0]))) for r in ratios[1:])
        return {
            "check": "gauge independence: self-replication",
            "expected": "ratio unchanged",
            "observed": f"max change {spread:.3e}",
            "pass": spread <= GAUGE_TOLERANCE
        }

    def _ensemble_rows(self) -> List[dict]:
        rows = []
        for initial in ("delta", "two-point"):
            sub_config = self.config._replace(
                command="ensemble",
                preset="meanfield-oscillator",
                initial=initial,
                t_final=MIXING_TIME,
                output_format=OutputFormat.JSON)
            summary = EnsembleCommand(sub_config).run().summary
            if initial == "delta":
                expected = "purity = 1"
                passed = summary["pass"]
            else:
                expected = f"purity < {config.ensemble.mixing_threshold}"
                passed = summary["below_mixing_threshold"]
            rows.append({
                "check": f"ensemble purity: {initial}",
                "expected": expected,
                "observed": f"final {summary['final_purity']:.12g}",
                "pass": passed
            })
        return rows

    def run(self) -> CommandResult:
        rows = self._verify_rows()
        rows.append(self._gauge_row())
        rows += self._ensemble_rows()

        table = pd.DataFrame(rows, columns=["check", "expected", "observed", "pass"])
        log.info("Headline results:\n" + table.to_string(index=False))

        passed = bool(table["pass"].all())
        summary = {
            "checks": len(rows),
            "failed_checks": [row["check"] for row in rows if not row["pass"]],
            "pass": passed,
            "table": table.to_string(index=False)
        }
        return CommandResult(
            exit_code=EXIT_SUCCESS if passed else EXIT_FAILURE,
            summary=summary,
            instances=rows)


__all__ = [
    "HEADLINE_MAPS",
    "MIXING_TIME",
    "ReproduceCommand"
]
