"""
This module provides the base tkit command and a load hook for dynamically
adding other subcommands.  The "load_subparsers" function searches for modules
in the torsionkit/cli directory that have a "subparser_hook" method. The
"subparser_hook" accepts the tkit subparsers object and adds its subparser as
needed.
"""

import argparse
import importlib
import logging
import os
import pkgutil
import sys

from ..version import __version__

LOG_LEVELS = ("debug", "info", "warning", "error", "critical")


def load_subparsers(subparsers):
    """
    searches modules in torsionkit/cli for a 'subparser_hook' method and calls
    the 'subparser_hook' method on the tkit subparsers object.
    """
    for _, mod_name, is_pkg in pkgutil.iter_modules([os.path.dirname(__file__)]):
        if not is_pkg and mod_name != "tkit":
            module = importlib.import_module(f"torsionkit.cli.{mod_name}")
            # check for the subparser hook
            if hasattr(module, "subparser_hook"):
                module.subparser_hook(subparsers)


def build_parser():
    parser = argparse.ArgumentParser(
        description="Decide and verify topological torsion of points on the "
        "circle group.",
        epilog="tkit runs scenario files describing a ratio sequence, a digit "
        "expansion and an ideal of subsets of ℕ, and reports the condition "
        "verdicts, the decision with the rule that produced it and exact "
        "norm checks.  Exit codes: 0 definitive, 1 failed expectation, "
        "2 unknown, 3 contradiction, 4 invalid input.",
    )
    subparsers = parser.add_subparsers(title="sub-commands")
    parser.add_argument(
        "--version", action="version", version=f"%(prog)s {__version__}"
    )
    parser.add_argument(
        "--log-level",
        choices=LOG_LEVELS,
        default="warning",
        help="Logging level for torsionkit. (default: %(default)s)",
    )
    load_subparsers(subparsers)

    def _help_command(args):
        """Print help information about other commands.

        Does the same thing as adding --help flag to sub-command calls.
        """
        subparsers.choices[args.sub_command].print_help()
        sys.exit(1)

    help_parser = subparsers.add_parser(
        "help",
        description=_help_command.__doc__,
        help=_help_command.__doc__.splitlines()[0],
    )
    help_parser.add_argument(
        "sub_command",
        help="The command to provide help for.",
        choices=sorted(subparsers.choices.keys()),
    )
    help_parser.set_defaults(func=_help_command)
    return parser


def main(argv=None):
    """main entry point for tkit"""
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=getattr(logging, args.log_level.upper()),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )

    if hasattr(args, "func"):
        args.func(args)
    else:
        parser.print_help()
        sys.exit(1)


if __name__ == "__main__":
    main()
