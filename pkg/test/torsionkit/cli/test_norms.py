import argparse
from fractions import Fraction

import pytest

from torsionkit.catalog import build
from torsionkit.cli.norms import main, print_trails, subparser_hook
from torsionkit.util import reset_config

FINITE = """\
schema: 1
name: finite-support
ratio: {kind: constant, b: 2}
digits: {source: pattern, pieces: [{set: {form: finite, elements: [1, 3]}, value: 1}]}
ideal: fin
checks: [verify]
parameters:
  epsilons: [1/4]
  horizons: [20]
"""


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
    assert "norms" in subcommands


def test_repeated_thresholds():
    args = parse(["norms", "s.yaml", "--eps", "1/4", "--eps", "1/10", "--N", "100"])
    assert args.eps == [Fraction(1, 4), Fraction(1, 10)]
    assert args.horizons == [100]


def test_print_trails(capsys):
    ctx = build("prufer").context()
    verdicts = print_trails(ctx, [Fraction(1, 4)], [50], Fraction(1, 10 ** 9), 64)
    assert len(verdicts) == 1
    assert verdicts[0].unknown
    out = capsys.readouterr().out
    assert "# ε = 1/4, N = 50: Unknown (NotSmall)" in out
    assert "1.0000" in out


def test_main_uses_scenario_parameters(tmp_path, capsys):
    path = tmp_path / "finite.yaml"
    path.write_text(FINITE)
    main(parse(["norms", str(path)]))
    out = capsys.readouterr().out
    assert "N = 20: Holds (Small)" in out
    assert "unresolved" not in out


def test_missing_scenario(tmp_path):
    with pytest.raises(SystemExit) as raised:
        main(parse(["norms", str(tmp_path / "nowhere.yaml")]))
    assert raised.value.code == 4
