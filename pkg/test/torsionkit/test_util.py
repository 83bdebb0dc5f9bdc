"""
Tests for settings, budgets and table output
"""

import io
import unittest
from fractions import Fraction

import pytest

from torsionkit.util import (
    DEFAULTS,
    get_budget,
    get_config,
    get_settings,
    parse_fraction,
    print_stats_table,
    reset_config,
)


@pytest.fixture(autouse=True)
def fresh_config(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    monkeypatch.delenv("TORSIONKIT_BUDGET", raising=False)
    reset_config()
    yield
    reset_config()


class ParseFractionTests(unittest.TestCase):
    maxDiff = 1000

    def test_forms(self):
        self.assertEqual(parse_fraction("3/5"), Fraction(3, 5))
        self.assertEqual(parse_fraction(" 0.25 "), Fraction(1, 4))
        self.assertEqual(parse_fraction("1e-9"), Fraction(1, 10 ** 9))
        self.assertEqual(parse_fraction(0.1), Fraction(1, 10))
        self.assertEqual(parse_fraction(7), 7)

    def test_rejects(self):
        for value in (True, "a half", "1/0", None):
            with self.assertRaises(ValueError):
                parse_fraction(value)


def test_defaults_without_a_config_file():
    assert get_config() == DEFAULTS
    settings = get_settings()
    assert settings["epsilons"] == [Fraction(1, 4), Fraction(1, 10), Fraction(1, 100)]
    assert settings["resolution"] == Fraction(1, 10 ** 9)
    assert settings["budget"] == 512


def test_config_file_and_overrides(capsys):
    config = get_config(io.StringIO('{"budget": 64, "window": 50, "colour": "no"}'))
    assert config["budget"] == 64
    assert "Ignoring unknown settings: colour" in capsys.readouterr().out
    settings = get_settings({"budget": None, "window": 10})
    assert settings["budget"] == 64
    assert settings["window"] == 10


def test_config_file_in_working_directory(tmp_path):
    (tmp_path / "torsionkit.json").write_text('{"checkpoints": [100]}')
    assert get_settings()["checkpoints"] == [100]


def test_budget_precedence(monkeypatch, capsys):
    config = dict(DEFAULTS, budget=100)
    assert get_budget(None, config) == 100
    monkeypatch.setenv("TORSIONKIT_BUDGET", "256")
    assert get_budget(None, config) == 256
    assert get_budget(8, config) == 8
    monkeypatch.setenv("TORSIONKIT_BUDGET", "lots")
    assert get_budget(None, config) == 100
    assert "is not an integer" in capsys.readouterr().out


def test_print_stats_table(capsys):
    print_stats_table("Digits", [{"k": 1, "c_k": 2}], ["k", "c_k"], "r")
    out = capsys.readouterr().out
    assert out.startswith("# Digits")
    assert "c_k" in out
