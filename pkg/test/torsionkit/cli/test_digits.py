import argparse
from fractions import Fraction

import pytest
import simplejson as json

from torsionkit.cli.digits import digit_rows, main, ratio_spec, subparser_hook
from torsionkit.scale import AffineRatio, ConstantRatio
from torsionkit.util import reset_config


@pytest.fixture(autouse=True)
def fresh_config(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    monkeypatch.delenv("TORSIONKIT_BUDGET", raising=False)
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
    assert "digits" in subcommands


def test_ratio_spec():
    assert ratio_spec("3").to_record() == ConstantRatio(3).to_record()
    assert ratio_spec("{kind: affine, a: 1, c: 1}").to_record() == AffineRatio().to_record()
    with pytest.raises(argparse.ArgumentTypeError):
        ratio_spec("1")
    with pytest.raises(argparse.ArgumentTypeError):
        ratio_spec("{kind: spiral}")


def test_digit_rows():
    _, rows = digit_rows(Fraction(1, 3), ConstantRatio(2), 4, Fraction(1, 10 ** 9), 64)
    assert [row["c_k"] for row in rows] == [0, 1, 0, 1]
    assert {row["norm"] for row in rows} == {"1/3"}


def test_main_json(capsys):
    main(parse(["digits", "1/2", "3", "4", "--format", "json"]))
    record = json.loads(capsys.readouterr().out)
    assert record["digits"] == [1, 1, 1, 1]
    assert record["interval"] == ["40/81", "41/81"]


def test_main_table(capsys):
    main(parse(["digits", "5/6", "{kind: affine, a: 1, c: 1}", "2"]))
    out = capsys.readouterr().out
    assert "# Digits of 5/6" in out
    assert "x ∈ [5/6, 1]" in out


def test_x_out_of_range():
    with pytest.raises(SystemExit) as raised:
        main(parse(["digits", "3/2", "2", "4"]))
    assert raised.value.code == 4
