"""
Scan exception sets of a scenario and print their trail tables.
"""

from ..scenario import ScenarioError, load_scenario
from ..util import get_config, get_settings, print_stats_table
from ..verifier import exception_set, smallness_assessment
from .common import add_budget, add_config, add_resolution, fail_invalid, fraction

TRAIL_COLUMNS = ["n", "count", "certified", "ratio", "partial_sum"]


def _pick(flag, scenario, name, fallback):
    if flag:
        return flag
    if name in (scenario.record or {}).get("parameters", {}):
        return scenario.parameters[name]
    return fallback


def print_trails(ctx, epsilons, horizons, resolution, budget):
    """ One table per ``(ε, N)``; returns the smallness verdicts. """
    verdicts = []
    for epsilon in epsilons:
        for horizon in horizons:
            report = exception_set(ctx.digits, epsilon, horizon, resolution, budget)
            verdict = smallness_assessment(report, ctx.ideal)
            rows = [
                {
                    "n": p.n,
                    "count": p.count,
                    "certified": p.certified,
                    "ratio": f"{float(p.ratio):.4f}",
                    "partial_sum": "" if p.partial_sum is None else f"{float(p.partial_sum):.4f}",
                }
                for p in report.trail(ctx.ideal)
            ]
            print_stats_table(
                f"ε = {epsilon}, N = {horizon}: {verdict.value} "
                f"({verdict.evidence.get('trend')})",
                rows,
                TRAIL_COLUMNS,
                "r",
            )
            if report.unresolved:
                print(f"{len(report.unresolved)} indices unresolved")
            verdicts.append(verdict)
    return verdicts


def subparser_hook(subparsers):
    """ Hook to add subparser for this command. """
    subparser = subparsers.add_parser("norms", description=__doc__, help=main.__doc__)
    subparser.set_defaults(func=main)
    subparser.add_argument("scenario", help="Scenario file (.json, .yaml or .yml).")
    subparser.add_argument(
        "--eps",
        type=fraction,
        action="append",
        help="Threshold ε in (0, 1/2].  May be repeated.",
    )
    subparser.add_argument(
        "--N",
        dest="horizons",
        type=int,
        action="append",
        help="Largest index scanned.  May be repeated.",
    )
    add_budget(subparser)
    add_config(subparser)
    add_resolution(subparser)


def main(args):
    """ Print exception set trails for a scenario. """
    try:
        scenario = load_scenario(args.scenario)
    except ScenarioError as e:
        fail_invalid(e)
    settings = get_settings({"budget": args.budget}, get_config(args.config))
    epsilons = _pick(args.eps, scenario, "epsilons", settings["epsilons"])
    horizons = _pick(args.horizons, scenario, "horizons", settings["checkpoints"])
    resolution = args.resolution or _pick(None, scenario, "resolution", settings["resolution"])
    try:
        print_trails(scenario.context(), epsilons, horizons, resolution, settings["budget"])
    except ValueError as e:
        fail_invalid(e)
