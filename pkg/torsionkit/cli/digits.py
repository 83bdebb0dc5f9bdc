"""
Print the Cantor digits of a rational and the interval they pin it to.
"""

import argparse

import simplejson as json

from ..expansion import circle_norm, eval_with_tail, extract_digits
from ..scale import ratio_from_record
from ..util import get_config, get_settings, print_stats_table
from .common import (
    add_budget,
    add_config,
    add_format,
    add_resolution,
    fail_invalid,
    fraction,
    inline_record,
)


def ratio_spec(text):
    """ A bare integer ``b`` means the constant ratio ``b``. """
    record = inline_record(text)
    if isinstance(record, int) and not isinstance(record, bool):
        record = {"kind": "constant", "b": record}
    try:
        return ratio_from_record(record)
    except (KeyError, TypeError, ValueError) as e:
        raise argparse.ArgumentTypeError(f"Invalid ratio spec {text!r}: {e}")


def digit_rows(x, ratio, n, resolution, budget):
    """ One row per index ``1 ≤ k ≤ n`` with ``b_k``, ``c_k`` and ``‖u_k x‖``. """
    d = extract_digits(x, ratio, n)
    rows = []
    for k in range(1, n + 1):
        norm = circle_norm(d, k, resolution, budget)
        rows.append(
            {"k": k, "b_k": ratio.ratio_at(k), "c_k": d.digit(k), "norm": norm.render()}
        )
    return d, rows


def display_digits(x, ratio, n, resolution, budget, fmt="text"):
    d, rows = digit_rows(x, ratio, n, resolution, budget)
    interval = eval_with_tail(d, n)
    if fmt == "json":
        record = {
            "x": str(x),
            "ratio": ratio.render(),
            "digits": [row["c_k"] for row in rows],
            "interval": [str(interval.low), str(interval.high)],
            "norms": [row["norm"] for row in rows],
        }
        print(json.dumps(record, indent=2, sort_keys=True, ensure_ascii=False))
        return
    print_stats_table(
        f"Digits of {x} under {ratio.render()}",
        rows,
        ["k", "b_k", "c_k", "norm"],
        "r",
    )
    print(f"x ∈ [{interval.low}, {interval.high}]")


def subparser_hook(subparsers):
    """ Hook to add subparser for this command. """
    subparser = subparsers.add_parser("digits", description=__doc__, help=main.__doc__)
    subparser.set_defaults(func=main)
    subparser.add_argument("x", type=fraction, help="A rational in [0, 1), e.g. 1/2.")
    subparser.add_argument(
        "ratio",
        type=ratio_spec,
        help='Ratio sequence: an integer for a constant ratio or an inline '
        'record such as "{kind: affine, a: 1, c: 1}".',
    )
    subparser.add_argument("n", type=int, help="Number of digits to print.")
    add_budget(subparser)
    add_config(subparser)
    add_format(subparser)
    add_resolution(subparser)


def main(args):
    """ Print Cantor digits of a rational. """
    settings = get_settings({"budget": args.budget}, get_config(args.config))
    resolution = args.resolution or settings["resolution"]
    try:
        display_digits(args.x, args.ratio, args.n, resolution, settings["budget"], args.format)
    except ValueError as e:
        fail_invalid(e)
