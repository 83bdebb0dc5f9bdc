import argparse

import pytest
import simplejson as json

from torsionkit.cli.probe_nested import ideal_spec, main, pair_spec, subparser_hook
from torsionkit.ideals import FinIdeal, WaveIdeal
from torsionkit.util import reset_config

WAVE = "{family: wave, parameters: {q: 3/5}}"
WAVE_PAIR = "{lefts: [1, 1, 1], rights: [1, 2, 2], start: 1}"


@pytest.fixture(autouse=True)
def fresh_config(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    reset_config()
    yield
    reset_config()


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
    assert "probe-nested" in subcommands


def test_specs():
    assert isinstance(ideal_spec("fin"), FinIdeal)
    assert isinstance(ideal_spec(WAVE), WaveIdeal)
    assert pair_spec(WAVE_PAIR).left_at(1) == 3
    with pytest.raises(argparse.ArgumentTypeError):
        ideal_spec("{family: ultrafilter}")
    with pytest.raises(argparse.ArgumentTypeError):
        pair_spec("{lefts: [1, 1, 1]}")


def test_wave_ideal_is_not_nested(capsys):
    with pytest.raises(SystemExit) as raised:
        main(parse(["probe-nested", WAVE, WAVE_PAIR, "--format", "json"]))
    assert raised.value.code == 0
    record = json.loads(capsys.readouterr().out)
    assert record["value"] == "Fails"


def test_fin_is_nested_by_rule(capsys):
    with pytest.raises(SystemExit) as raised:
        main(parse(["probe-nested", "fin", WAVE_PAIR]))
    assert raised.value.code == 0
    assert "nested: " in capsys.readouterr().out


def test_broken_chain_is_unknown():
    ideal = (
        "{family: summable, parameters: {weights: "
        "{rule: explicit, name: inverse_factorial, divergent: true}}}"
    )
    pair = "{lefts: {values: [0, 3]}, rights: {values: [2, 4]}}"
    with pytest.raises(SystemExit) as raised:
        main(parse(["probe-nested", ideal, pair]))
    assert raised.value.code == 2
