"""
Command line front end: runs the ratio sweeps, flow and ensemble
experiments and oracle checks, and writes machine-readable reports.

Exit codes are 0 for success, 1 when a scientific check or integration
fails and 2 for usage or configuration errors.
"""
import argparse
import logging
import os
from typing import Mapping, Optional, Sequence

import config
from ..exceptions import \
    DegenerateAreaException, \
    NonFiniteValueException
from ..dynamics import \
    PRESET_NAMES, \
    EmptyEnsembleException, \
    EnsembleMemberException, \
    EnsembleWeightsException, \
    FixedPointConvergenceException
from ..maps import \
    MAP_NAMES, \
    RejectionSamplingException, \
    ZeroTangentException
from .command import \
    Command, \
    CommandResult, \
    ConfigException, \
    OutputFormat, \
    RunConfig, \
    EXIT_SUCCESS, \
    EXIT_FAILURE, \
    EXIT_USAGE
from .ensemble import EnsembleCommand, INITIAL_DISTRIBUTIONS
from .evolve import EvolveCommand
from .oracle_check import Gate, OracleCheckCommand
from .reports import build_report, render_csv, render_json, write_result
from .reproduce import ReproduceCommand
from .verify import GAUGE_NAMES, VerifyCommand

log = logging.getLogger(__name__)

COMMANDS = {
    "verify": VerifyCommand,
    "evolve": EvolveCommand,
    "ensemble": EnsembleCommand,
    "oracle-check": OracleCheckCommand,
    "reproduce-paper": ReproduceCommand
}

METHODS = ("analytic", "fd")
LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR")

# Failures of the science rather than of the invocation
_RUN_FAILURES = (
    FixedPointConvergenceException,
    NonFiniteValueException,
    EnsembleMemberException,
    RejectionSamplingException,
    DegenerateAreaException,
    ZeroTangentException
)

# Failures of the invocation
_USAGE_FAILURES = (
    ConfigException,
    EnsembleWeightsException,
    EmptyEnsembleException,
    OSError
)


def _add_sampling_options(parser: argparse.ArgumentParser, default_n: int) -> None:
    parser.add_argument(
        "-n", type=int, default=default_n,
        help=f"number of random instances (default: {default_n})")
    parser.add_argument(
        "--method", choices=METHODS, default="analytic",
        help="pushforward by analytic Jacobian or finite differences")
    parser.add_argument(
        "--tol", dest="tolerance", type=float, default=None,
        help="ratio tolerance (default: 1e-6 analytic, 1e-5 fd)")
    parser.add_argument(
        "--theta", type=float, default=1.3,
        help="constant gauge phase, or coefficient of the smooth gauge")


def _add_time_options(parser: argparse.ArgumentParser, default_t: float, default_dt: float) -> None:
    parser.add_argument(
        "--t", dest="t_final", type=float, default=default_t,
        help=f"final time, rounded to a multiple of dt (default: {default_t})")
    parser.add_argument(
        "--dt", type=float, default=default_dt,
        help=f"integrator step (default: {default_dt})")


def build_parser() -> argparse.ArgumentParser:
    env_var = config.sampling.seed_env_var
    parser = argparse.ArgumentParser(
        prog="sympltk",
        description="Symplectic checks of cloning maps and Hamiltonian flows "
                    "on quantum and hybrid phase spaces.",
        epilog=f"When --seed is omitted the seed is read from ${env_var}, "
               f"falling back to {config.sampling.default_seed}.")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--seed", type=int, default=None,
        help=f"random seed (default: ${env_var} or {config.sampling.default_seed})")
    common.add_argument("--jobs", type=int, default=1, help="worker threads")
    common.add_argument("-o", "--output", default=None, help="report path (default: stdout)")
    common.add_argument(
        "--format", dest="output_format", choices=[f.value for f in OutputFormat],
        default=OutputFormat.JSON.value, help="report format")
    common.add_argument(
        "--log-level", choices=LOG_LEVELS, default=config.logging.level)

    commands = parser.add_subparsers(dest="command", required=True)

    verify = commands.add_parser(
        "verify", parents=[common],
        help="sweep the symplectic area ratio of a map")
    verify.add_argument("--map", dest="map_name", choices=MAP_NAMES, required=True)
    verify.add_argument("--gauge", choices=GAUGE_NAMES, default="zero")
    _add_sampling_options(verify, default_n=1000)

    evolve = commands.add_parser(
        "evolve", parents=[common],
        help="integrate a preset Hamiltonian flow")
    evolve.add_argument("--preset", choices=PRESET_NAMES, required=True)
    _add_time_options(evolve, default_t=1.0, default_dt=1e-3)

    ensemble = commands.add_parser(
        "ensemble", parents=[common],
        help="evolve a hybrid ensemble and report purity")
    ensemble.add_argument("--preset", choices=PRESET_NAMES, default="meanfield-oscillator")
    ensemble.add_argument("--initial", choices=INITIAL_DISTRIBUTIONS, default="delta")
    ensemble.add_argument(
        "--weights", type=float, nargs="+", default=None,
        help="weights of the two-point mixture (must sum to 1)")
    _add_time_options(ensemble, default_t=2.0, default_dt=1e-3)

    oracle = commands.add_parser(
        "oracle-check", parents=[common],
        help="run the Jacobian, closed-form, bracket, ratio and flow gates")
    _add_sampling_options(oracle, default_n=100)
    oracle.add_argument(
        "--perturb", type=float, default=0.0,
        help="add this to every analytic Jacobian entry (gate sensitivity check)")
    _add_time_options(oracle, default_t=1.0, default_dt=1e-2)

    reproduce = commands.add_parser(
        "reproduce-paper", parents=[common],
        help="run every headline check and print a table")
    _add_sampling_options(reproduce, default_n=1000)
    _add_time_options(reproduce, default_t=2.0, default_dt=1e-3)

    return parser


def resolve_seed(seed: Optional[int], environ: Mapping[str, str]) -> int:
    """
    --seed wins, then the environment variable, then the configured default.

    Raises:
        ConfigException: Raised if the environment variable isn't an integer
    """
    if seed is not None:
        return seed
    env_var = config.sampling.seed_env_var
    if env_var in environ:
        try:
            return int(environ[env_var])
        except ValueError:
            raise ConfigException(env_var, environ[env_var], "expected an integer seed")
    return config.sampling.default_seed


def run_config_from_args(args: argparse.Namespace, environ: Mapping[str, str] = os.environ) -> RunConfig:
    """
    Builds and validates the RunConfig for parsed arguments.

    Raises:
        ConfigException: Raised for out-of-range values
    """
    values = {k: v for k, v in vars(args).items() if k in RunConfig._fields}
    values["seed"] = resolve_seed(args.seed, environ)
    values["output_format"] = OutputFormat(args.output_format)
    if values.get("weights") is not None:
        values["weights"] = tuple(values["weights"])
    run_config = RunConfig(**values)

    if run_config.n < 1:
        raise ConfigException("n", run_config.n, "need at least one instance")
    if run_config.jobs < 1:
        raise ConfigException("jobs", run_config.jobs, "need at least one worker")
    if not run_config.dt > 0:
        raise ConfigException("dt", run_config.dt, "must be positive")
    if run_config.t_final < 0:
        raise ConfigException("t", run_config.t_final, "must be non-negative")
    if run_config.tolerance is not None and not run_config.tolerance > 0:
        raise ConfigException("tol", run_config.tolerance, "must be positive")
    return run_config


def _status_line(run_config: RunConfig, result: CommandResult) -> str:
    status = "pass" if result.exit_code == EXIT_SUCCESS else "FAIL"
    table = result.summary.get("table")
    return table + f"\n{status}" if table else f"{run_config.command}: {status}"


def main(argv: Optional[Sequence[str]] = None, environ: Mapping[str, str] = os.environ) -> int:
    """
    Parses arguments, runs one command and writes its report.

    Returns:
        int: The exit code (0 success, 1 failure, 2 usage error)
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse exits 2 on usage errors and 0 after --help
        return int(e.code or 0)

    logging.basicConfig(level=args.log_level, format=config.logging.format)

    try:
        run_config = run_config_from_args(args, environ)
        result = COMMANDS[run_config.command](run_config).run()
        write_result(run_config, result, run_config.output)
    except _USAGE_FAILURES as e:
        log.error(f"{args.command}: {e}")
        return EXIT_USAGE
    except _RUN_FAILURES as e:
        log.error(f"{args.command} failed: {e}")
        return EXIT_FAILURE

    if run_config.output is not None:
        print(_status_line(run_config, result))
    return result.exit_code


__all__ = [
    "COMMANDS",
    "METHODS",
    "Command",
    "CommandResult",
    "ConfigException",
    "OutputFormat",
    "RunConfig",
    "Gate",
    "EXIT_SUCCESS",
    "EXIT_FAILURE",
    "EXIT_USAGE",
    "build_parser",
    "build_report",
    "render_csv",
    "render_json",
    "resolve_seed",
    "run_config_from_args",
    "main"
]
