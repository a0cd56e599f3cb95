import argparse

from src.errors import ConfigurationError
from src.scenario.comparison import DEFAULT_COMPARISON_TOLERANCE
from src.scenario.sweep import SweepParameter


def positive_float_type(value: str) -> float:
    """
    Custom type for step sizes and tolerances that must be strictly positive.
    """
    try:
        number = float(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"Invalid number: {value}")
    if not number > 0:
        raise argparse.ArgumentTypeError(f"Expected a positive number, got {value}")
    return number


def sweep_parameter_type(value: str) -> SweepParameter:
    """
    Custom type for parsing a sweep range such as link.alpha_db_per_km=0.2:0.4:2.
    """
    try:
        return SweepParameter.parse(value)
    except ConfigurationError as e:
        raise argparse.ArgumentTypeError(str(e))


def command_line_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description="SolitonJitter parameters")
    parser.add_argument("-v", "--verbose", action="store_true", help="Log debug messages")
    subparsers = parser.add_subparsers(dest="command", required=True, help="Command to execute")

    ########################################
    # run
    run = subparsers.add_parser("run", help="Propagate a scenario and write its tables")
    run.add_argument("scenario", type=str, help="Scenario file or bundled scenario name")
    run.add_argument("-o", "--out", required=False, type=str, help="Output directory")
    run.add_argument("--dz", required=False, type=positive_float_type, help="Override the step size in metres")
    run.add_argument(
        "--check-convergence",
        action="store_true",
        help="Repeat the run with dz/2 and report the change in the final squeezing ratio",
    )

    ########################################
    # sweep
    sweep = subparsers.add_parser("sweep", help="Run a scenario template over parameter ranges")
    sweep.add_argument("template", type=str, help="Scenario file or bundled scenario name")
    sweep.add_argument(
        "-p",
        "--param",
        required=True,
        action="append",
        type=sweep_parameter_type,
        help="Range as section.key=lo:hi:n; repeat for a grid",
    )
    sweep.add_argument("-o", "--out", required=False, type=str, help="Output directory")

    ########################################
    # compare-analytic
    compare = subparsers.add_parser("compare-analytic", help="Check the jitter engine against a closed form")
    compare.add_argument("scenario", type=str, help="Scenario file naming an analytic regime")
    compare.add_argument("-o", "--out", required=False, type=str, help="Output directory")
    compare.add_argument(
        "-t",
        "--tolerance",
        required=False,
        type=positive_float_type,
        default=DEFAULT_COMPARISON_TOLERANCE,
        help="Maximum accepted relative deviation",
    )

    return parser
