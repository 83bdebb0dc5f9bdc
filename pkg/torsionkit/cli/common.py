"""
Functions for adding common CLI arguments to argparse sub-commands.
"""
import argparse
import copy
import os
import sys

from ruamel import yaml

from ..report import EXIT_INVALID, summary_lines
from ..scenario import ScenarioError, parse_document
from ..util import BUDGET_ENV_VAR, colour_verdict, die, get_budget, parse_fraction


def _load_yaml_scalar(text):
    yml = yaml.YAML(typ="safe", pure=True)
    return yml.load(text)


class _StoreDictAction(argparse.Action):
    """Action for storing key=val option strings as a single dict."""

    def __init__(
        self,
        option_strings,
        dest,
        nargs=None,
        const=None,
        default=None,
        type=None,
        choices=None,
        required=False,
        help=None,
        metavar=None,
    ):
        if nargs == 0:
            raise ValueError("nargs for store_dict actions must be > 0")
        if const is not None and nargs != "?":
            raise ValueError('nargs must be "?" to supply const')
        super().__init__(
            option_strings=option_strings,
            dest=dest,
            nargs=nargs,
            const=const,
            default=default,
            type=type,
            choices=choices,
            required=required,
            help=help,
            metavar=metavar,
        )

    def __call__(self, parser, namespace, values, option_string=None):
        if getattr(namespace, self.dest, None) is None:
            setattr(namespace, self.dest, {})
        # Only doing a copy here because that's what _AppendAction does
        items = copy.copy(getattr(namespace, self.dest))
        if "=" not in values:
            parser.error(f"{option_string} expects key=value; given: {values!r}")
        key, val = values.split("=", 1)
        items[key] = _load_yaml_scalar(val)
        setattr(namespace, self.dest, items)


def inline_record(text):
    """
    Parse an inline spec from the command line: YAML flow syntax such as
    ``"{kind: constant, b: 3}"`` or a bare word like ``fin``.
    """
    try:
        return parse_document(text, "yaml")
    except ScenarioError as e:
        raise argparse.ArgumentTypeError(str(e))


def fraction(text):
    try:
        return parse_fraction(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e))


def add_budget(parser):
    """ Add --budget option to parser """
    parser.add_argument(
        "--budget",
        type=int,
        help="Number of digits a single norm computation may refine.  "
        f"Overrides ${BUDGET_ENV_VAR} and the config file.",
    )


def add_config(parser):
    """ Add --config option to parser """
    parser.add_argument(
        "--config", help="Specify path to torsionkit.json", type=argparse.FileType("r")
    )


def add_format(parser):
    """ Add --format option to parser """
    parser.add_argument(
        "--format",
        choices=("text", "json"),
        default="text",
        help="Print a human summary or the JSON report. (default: %(default)s)",
    )


def add_options(parser):
    """ Add --option options to parser """
    parser.add_argument(
        "-o",
        "--option",
        dest="options",
        action=_StoreDictAction,
        help="Scenario parameter override.  For example, "
        '"-o horizons=[500]" or "-o epsilons=[1/4,1/10]".  May be repeated '
        "for multiple parameters.",
    )


def add_report(parser):
    """ Add --report option to parser """
    parser.add_argument("--report", help="Write the JSON report to this path.")


def add_resolution(parser):
    """ Add --resolution option to parser """
    parser.add_argument(
        "--resolution",
        type=fraction,
        help="Width below which a norm interval counts as resolved, "
        "e.g. 1/1000000000.",
    )


def resolve_budget(args):
    """
    Budget from ``--budget`` or the environment, `None` when neither is set
    so the scenario's own value applies.
    """
    if args.budget is None and not os.environ.get(BUDGET_ENV_VAR):
        return None
    return get_budget(args.budget)


def emit(result, args):
    """ Print ``result`` in the requested format and write its report. """
    if args.report:
        with open(args.report, "w") as fp:
            fp.write(result.dumps())
    if args.format == "json":
        print(result.dumps())
        return
    for line in summary_lines(result):
        head, sep, rest = line.partition(": ")
        if head in ("pass", "fail"):
            line = f"{colour_verdict(head)}{sep}{rest}"
        print(line)


def fail_invalid(error):
    die(str(error), EXIT_INVALID)


def finish(code):
    sys.stdout.flush()
    sys.exit(code)
