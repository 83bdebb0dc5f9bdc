"""
Reproduce one of the built-in examples and check its known outcome.
"""

from ..catalog import REPRODUCIBLE
from ..report import reproduce
from .common import add_budget, add_format, add_report, add_resolution, emit, finish, resolve_budget


def subparser_hook(subparsers):
    """ Hook to add subparser for this command. """
    subparser = subparsers.add_parser(
        "reproduce", description=__doc__, help=main.__doc__
    )
    subparser.set_defaults(func=main)
    subparser.add_argument(
        "example", choices=REPRODUCIBLE, help="Built-in example to run."
    )
    add_budget(subparser)
    add_format(subparser)
    add_report(subparser)
    add_resolution(subparser)


def main(args):
    """ Reproduce a built-in example. """
    result = reproduce(args.example, budget=resolve_budget(args), resolution=args.resolution)
    emit(result, args)
    finish(result.exit_code)
