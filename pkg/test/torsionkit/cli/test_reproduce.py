import argparse
from fractions import Fraction
from unittest.mock import patch

import pytest
import simplejson as json

from torsionkit.cli.reproduce import main, subparser_hook


def parse(argv):
    parser = argparse.ArgumentParser()
    subparsers = parser.add_subparsers()
    subparser_hook(subparsers)
    return parser.parse_args(argv)


def test_subparser_hook():
    parser = argparse.ArgumentParser()
    subparsers = parser.add_subparsers()
    subparser_hook(subparsers)

    subcommands = parser._optionals._actions[1].choices.keys()
    assert "reproduce" in subcommands


def test_unknown_example_is_rejected():
    with pytest.raises(SystemExit):
        parse(["reproduce", "Exa99"])


@patch("torsionkit.cli.reproduce.reproduce", autospec=True)
def test_main_args_passed(reproduce_mock, monkeypatch):
    monkeypatch.delenv("TORSIONKIT_BUDGET", raising=False)
    reproduce_mock.return_value.exit_code = 2
    reproduce_mock.return_value.dumps.return_value = "{}"

    with pytest.raises(SystemExit) as raised:
        main(parse("reproduce ce --resolution 1/1000 --format json".split()))
    assert raised.value.code == 2
    reproduce_mock.assert_called_with("ce", budget=None, resolution=Fraction(1, 1000))


def test_prufer_json(capsys):
    with pytest.raises(SystemExit) as raised:
        main(parse(["reproduce", "prufer", "--format", "json"]))
    assert raised.value.code == 0
    record = json.loads(capsys.readouterr().out)
    assert record["decision"]["value"] == "NotIn"
    assert record["verification"]["status"] == "CONSISTENT"
