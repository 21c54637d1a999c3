from enum import Enum
from typing import NamedTuple, Optional, Tuple

import pandas as pd

import config

EXIT_SUCCESS = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


class OutputFormat(Enum):
    JSON = "json"
    CSV = "csv"


class RunConfig(NamedTuple):
    """
    Represents every parameter a command was run with, after defaults
    and the seed environment variable have been resolved.

    Embedded in every report so a run can be repeated exactly.
    """
    command: str
    seed: int
    jobs: int = 1
    output: Optional[str] = None
    output_format: OutputFormat = OutputFormat.JSON
    map_name: Optional[str] = None
    n: int = 1000
    method: str = "analytic"
    tolerance: Optional[float] = None
    gauge: str = "zero"
    theta: float = 1.3
    preset: Optional[str] = None
    t_final: float = 1.0
    dt: float = 1e-3
    initial: str = "delta"
    weights: Optional[Tuple[float, ...]] = None
    perturb: float = 0.0

    def to_record(self) -> dict:
        record = self._asdict()
        record["output_format"] = self.output_format.value
        record["weights"] = None if self.weights is None else list(self.weights)
        return record


class CommandResult(NamedTuple):
    """
    What a command hands back to the front end: its exit code, a summary
    block, per-instance records and, for time series, a table for CSV output.
    """
    exit_code: int
    summary: dict
    instances: list
    frame: Optional[pd.DataFrame] = None


class Command:
    """
    Parent class for all commands run from the command line.
    """
    @property
    def name(self) -> str:
        """
        Returns the name the command is invoked by.

        Returns:
            str: The subcommand name, e.g. 'verify'
        """
        return self._config.command

    @property
    def config(self) -> RunConfig:
        """
        Returns the resolved configuration this command runs with.

        Returns:
            RunConfig: The command's configuration
        """
        return self._config

    @property
    def supported_formats(self) -> Tuple[OutputFormat, ...]:
        """
        Returns the output formats this command can write. Commands which
        produce a time series support CSV as well as JSON.
        """
        return (OutputFormat.JSON,)

    def run(self) -> CommandResult:
        """
        Executes the command.

        Raises:
            NotImplementedError: Raised if a subclass doesn't implement run()
        """
        raise NotImplementedError(
            f"Command class {self.__class__.__name__} doesn't implement run()")

    def __init__(self, run_config: RunConfig) -> None:
        self._config = run_config
        if run_config.output_format not in self.supported_formats:
            raise ConfigException(
                "format",
                run_config.output_format.value,
                f"'{run_config.command}' writes only " \
                f"{', '.join(f.value for f in self.supported_formats)}")


class ConfigException(Exception):
    """
    Represents an instance in which a command was given a parameter value
    it can't run with. The front end turns this into exit code 2.
    """
    def __init__(
            self,
            parameter: str,
            value: object,
            reason: str) -> None:
        """
        Args:
            parameter (str): The name of the offending parameter
            value (object): The value it was given
            reason (str): What the value should have been
        """
        message = \
            f'Invalid value {value!r} for \'{parameter}\': {reason}'
        super().__init__(message)


def default_ratio_tolerance(method: str) -> float:
    """The ratio gate for a pushforward method when --tol isn't given."""
    return config.tolerances.ratio_analytic \
        if method == "analytic" \
        else config.tolerances.ratio_finite_difference


__all__ = [
    "EXIT_SUCCESS",
    "EXIT_FAILURE",
    "EXIT_USAGE",
    "OutputFormat",
    "RunConfig",
    "CommandResult",
    "Command",
    "ConfigException",
    "default_ratio_tolerance"
]
