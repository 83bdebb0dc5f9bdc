import argparse
import unittest
from fractions import Fraction

import pytest

from torsionkit.cli import common


class CliCommonTests(unittest.TestCase):
    """Tests torsionkit/cli/common"""

    maxDiff = 1000

    def setUp(self):
        self.parser = argparse.ArgumentParser()
        common.add_options(self.parser)
        common.add_budget(self.parser)
        common.add_resolution(self.parser)

    def test_store_dict_parses_yaml_values(self):
        args = self.parser.parse_args(
            ["-o", "horizons=[500, 1000]", "-o", "colour=true", "--option", "budget=64"]
        )
        self.assertEqual(args.options, {"horizons": [500, 1000], "colour": True, "budget": 64})

    def test_store_dict_keeps_rationals_as_text(self):
        args = self.parser.parse_args(["-o", "epsilons=[1/4,1/10]"])
        self.assertEqual(args.options, {"epsilons": ["1/4", "1/10"]})

    def test_store_dict_needs_key_value(self):
        with self.assertRaises(SystemExit):
            self.parser.parse_args(["-o", "horizons"])

    def test_resolution(self):
        args = self.parser.parse_args(["--resolution", "1e-6"])
        self.assertEqual(args.resolution, Fraction(1, 10 ** 6))
        with self.assertRaises(SystemExit):
            self.parser.parse_args(["--resolution", "tiny"])

    def test_inline_record(self):
        self.assertEqual(common.inline_record("{kind: constant, b: 3}"), {"kind": "constant", "b": 3})
        self.assertEqual(common.inline_record("fin"), "fin")
        with self.assertRaises(argparse.ArgumentTypeError):
            common.inline_record("{kind: [")


@pytest.mark.parametrize(
    "budget,env,expected", [(None, None, None), (None, "32", 32), (8, "32", 8)]
)
def test_resolve_budget(monkeypatch, budget, env, expected):
    if env is None:
        monkeypatch.delenv("TORSIONKIT_BUDGET", raising=False)
    else:
        monkeypatch.setenv("TORSIONKIT_BUDGET", env)
    assert common.resolve_budget(argparse.Namespace(budget=budget)) == expected


def test_fail_invalid_exits_with_invalid_input(capsys):
    with pytest.raises(SystemExit) as raised:
        common.fail_invalid(ValueError("bad ratio"))
    assert raised.value.code == 4
    assert "bad ratio" in capsys.readouterr().out
