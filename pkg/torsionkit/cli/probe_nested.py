"""
Probe whether an ideal is nested using a left nested pair of sequences.
"""

import argparse

import simplejson as json

from ..ideals import ideal_from_record, nestedness_probe
from ..intsets import pair_from_record
from ..report import EXIT_OK, EXIT_UNKNOWN
from ..util import colour_verdict, get_config
from ..verdict import to_jsonable
from .common import add_config, add_format, finish, inline_record


def ideal_spec(text):
    record = inline_record(text)
    try:
        return ideal_from_record(record)
    except (KeyError, TypeError, ValueError) as e:
        raise argparse.ArgumentTypeError(f"Invalid ideal spec {text!r}: {e}")


def pair_spec(text):
    """ ``{lefts: ..., rights: ..., start: n}`` with rules or ``{values: [...]}``. """
    try:
        return pair_from_record(inline_record(text))
    except (TypeError, ValueError) as e:
        raise argparse.ArgumentTypeError(f"Invalid pair {text!r}: {e}")


def subparser_hook(subparsers):
    """ Hook to add subparser for this command. """
    subparser = subparsers.add_parser(
        "probe-nested", description=__doc__, help=main.__doc__
    )
    subparser.set_defaults(func=main)
    subparser.add_argument(
        "ideal",
        type=ideal_spec,
        help='Ideal: fin, density or an inline record such as '
        '"{family: wave, parameters: {q: 3/5}}".',
    )
    subparser.add_argument(
        "pair",
        type=pair_spec,
        help='Left nested pair, e.g. "{lefts: [1, 1, 1], rights: [1, 2, 2], start: 1}".',
    )
    subparser.add_argument(
        "--window", type=int, help="Indices checked for the nested chain."
    )
    add_config(subparser)
    add_format(subparser)


def main(args):
    """ Probe nestedness of an ideal. """
    window = args.window or get_config(args.config)["window"]
    verdict = nestedness_probe(args.ideal, [args.pair], window)
    if args.format == "json":
        print(json.dumps(to_jsonable(verdict), indent=2, sort_keys=True, ensure_ascii=False))
    else:
        print(f"ideal {args.ideal.render()}, pair {args.pair.render()}")
        print(f"nested: {colour_verdict(verdict.value)} ({verdict.rule})")
    finish(EXIT_UNKNOWN if verdict.unknown else EXIT_OK)
