import logging

import numpy as np

import config
from ..maps import \
    EXPECTED_RATIOS, \
    Method, \
    GaugeSpec, \
    constant_gauge, \
    linear_gauge, \
    map_by_name, \
    sweep_ratios, \
    zero_gauge
from .command import \
    Command, \
    CommandResult, \
    ConfigException, \
    RunConfig, \
    EXIT_SUCCESS, \
    EXIT_FAILURE, \
    default_ratio_tolerance

log = logging.getLogger(__name__)

GAUGE_NAMES = ("zero", "constant", "smooth")


def gauge_from_config(run_config: RunConfig) -> GaugeSpec:
    """
    zero, constant (theta) or smooth (theta * Re alpha), from --gauge and --theta.
    """
    if run_config.gauge == "zero":
        return zero_gauge()
    if run_config.gauge == "constant":
        return constant_gauge(run_config.theta)
    if run_config.gauge == "smooth":
        return linear_gauge(run_config.theta)
    raise ConfigException("gauge", run_config.gauge, f"expected one of {GAUGE_NAMES}")


def method_from_name(name: str) -> Method:
    return Method.ANALYTIC if name == "analytic" else Method.FINITE_DIFFERENCE


class VerifyCommand(Command):
    """
    Sweeps the symplectic area ratio of one map over seeded random
    instances and compares every ratio against the map's expected value.

    The fixed-machine control has no expected ratio; it passes when at
    least one instance deviates from 1 by more than the control threshold.
    """
    @property
    def expected_ratio(self):
        return EXPECTED_RATIOS[self.config.map_name]

    @property
    def tolerance(self) -> float:
        if self.config.tolerance is not None:
            return self.config.tolerance
        return default_ratio_tolerance(self.config.method)

    def run(self) -> CommandResult:
        if self.config.map_name == "hybrid-cloning" and self.config.gauge != "zero":
            raise ConfigException(
                "gauge", self.config.gauge, "hybrid-cloning takes no gauge phase")
        map_ = map_by_name(self.config.map_name, gauge_from_config(self.config))
        result = sweep_ratios(
            map_,
            self.config.n,
            seed=self.config.seed,
            method=method_from_name(self.config.method),
            jobs=self.config.jobs,
            expected=self.expected_ratio)

        ratios = np.array([verdict.ratio for verdict in result.verdicts])
        if self.expected_ratio is None:
            deviation = float(np.max(np.abs(ratios - 1.0)))
            passed = deviation > config.tolerances.control_deviation
            expected = "none"
        else:
            deviation = float(np.max(np.abs(ratios - self.expected_ratio)))
            passed = deviation <= self.tolerance
            expected = self.expected_ratio

        summary = {
            "map": map_.name,
            "expected_ratio": expected,
            "observed_min": result.summary.minimum,
            "observed_max": result.summary.maximum,
            "observed_mean": result.summary.mean,
            "max_deviation": deviation,
            "count": result.summary.count,
            "tolerance": self.tolerance,
            "pass": passed
        }
        if passed:
            log.info(f"verify {map_.name}: pass (max deviation {deviation:.3e})")
        else:
            log.warning(f"verify {map_.name}: FAIL (max deviation {deviation:.3e})")

        instances = [
            dict(verdict.to_record(), index=i)
            for i, verdict in enumerate(result.verdicts)
        ]
        return CommandResult(
            exit_code=EXIT_SUCCESS if passed else EXIT_FAILURE,
            summary=summary,
            instances=instances)


__all__ = [
    "GAUGE_NAMES",
    "gauge_from_config",
    "method_from_name",
    "VerifyCommand"
]
