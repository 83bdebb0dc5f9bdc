"""
Run a scenario file and report its verdicts.
"""

from ..report import run_scenario
from ..scenario import ScenarioError, load_scenario
from .common import (
    add_budget,
    add_format,
    add_options,
    add_report,
    add_resolution,
    emit,
    fail_invalid,
    finish,
    resolve_budget,
)


def run_scenario_file(path, overrides=None, budget=None, resolution=None):
    """
    Load and run the scenario at ``path``.

    :raises ScenarioError: for unreadable or invalid scenario documents.
    :returns: a `ScenarioResult`.
    """
    scenario = load_scenario(path, overrides)
    return run_scenario(scenario, budget=budget, resolution=resolution)


def subparser_hook(subparsers):
    """ Hook to add subparser for this command. """
    subparser = subparsers.add_parser("run", description=__doc__, help=main.__doc__)
    subparser.set_defaults(func=main)
    subparser.add_argument("file", help="Scenario file (.json, .yaml or .yml).")
    add_budget(subparser)
    add_format(subparser)
    add_options(subparser)
    add_report(subparser)
    add_resolution(subparser)


def main(args):
    """ Run a scenario file and report its verdicts. """
    try:
        result = run_scenario_file(
            args.file,
            overrides=args.options,
            budget=resolve_budget(args),
            resolution=args.resolution,
        )
    except ScenarioError as e:
        fail_invalid(e)
    emit(result, args)
    finish(result.exit_code)
