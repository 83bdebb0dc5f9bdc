"""
Tests for scenario documents
"""

import unittest
from fractions import Fraction

import pytest
import simplejson as json

from torsionkit.catalog import CATALOG
from torsionkit.ideals import WaveIdeal
from torsionkit.scenario import (
    CHECKS,
    Scenario,
    ScenarioError,
    load_scenario,
    parse_document,
)

PRUFER = {
    "schema": 1,
    "name": "prufer",
    "ratio": {"kind": "constant", "b": 3},
    "digits": {"source": "pattern", "pieces": [{"set": "positive", "value": 1}]},
    "ideal": "density",
    "checks": ["decide"],
    "expect": {"decide": "NotIn"},
}

PRUFER_YAML = """\
schema: 1
name: prufer
ratio: {kind: constant, b: 3}
digits:
  source: pattern
  pieces:
    - {set: positive, value: 1}
ideal: density
checks: [decide]
parameters:
  epsilons: [1/4, 1/10]
"""


def with_fields(**fields):
    record = dict(PRUFER)
    record.update(fields)
    return record


class ParseDocumentTests(unittest.TestCase):
    maxDiff = 1000

    def test_json_errors_carry_a_position(self):
        with self.assertRaises(ScenarioError) as raised:
            parse_document('{\n  "schema": 1,\n  "name": \n}')
        self.assertEqual(raised.exception.line, 4)
        self.assertIn("line 4", str(raised.exception))

    def test_yaml_errors_carry_a_position(self):
        with self.assertRaises(ScenarioError) as raised:
            parse_document("schema: 1\nname: [unclosed\n", "yaml")
        self.assertIsNotNone(raised.exception.line)

    def test_yaml(self):
        record = parse_document(PRUFER_YAML, "yaml")
        self.assertEqual(record["ratio"], {"kind": "constant", "b": 3})


class FromRecordTests(unittest.TestCase):
    maxDiff = 1000

    def test_minimal(self):
        scenario = Scenario.from_record(PRUFER)
        self.assertEqual(scenario.name, "prufer")
        self.assertEqual(scenario.checks, ["decide"])
        self.assertEqual(scenario.parameters["epsilons"], [Fraction(1, 4)])
        self.assertEqual(scenario.parameters["budget"], 512)

    def test_all_checks(self):
        scenario = Scenario.from_record(with_fields(checks="all"))
        self.assertEqual(scenario.checks, list(CHECKS))

    def test_schema_and_required_fields(self):
        with self.assertRaises(ScenarioError):
            Scenario.from_record(with_fields(schema=2))
        record = dict(PRUFER)
        del record["digits"]
        with self.assertRaisesRegex(ScenarioError, "digits"):
            Scenario.from_record(record)
        with self.assertRaises(ScenarioError):
            Scenario.from_record(["not", "a", "mapping"])

    def test_unresolved_reference(self):
        record = with_fields(
            digits={"source": "pattern", "pieces": [{"set": "missing", "value": 1}]}
        )
        with self.assertRaisesRegex(ScenarioError, "Unresolved reference"):
            Scenario.from_record(record)

    def test_invalid_builders_become_scenario_errors(self):
        with self.assertRaisesRegex(ScenarioError, "Invalid ratio"):
            Scenario.from_record(with_fields(ratio={"kind": "constant", "b": 1}))
        with self.assertRaisesRegex(ScenarioError, "Invalid ideal"):
            Scenario.from_record(with_fields(ideal={"family": "wave", "parameters": {"q": "1/3"}}))

    def test_parameter_validation(self):
        bad = [
            {"epsilons": ["3/4"]},
            {"horizons": []},
            {"horizons": [0]},
            {"budget": 0},
            {"resolution": "0"},
            {"colour": "red"},
            {"epsilons": ["a quarter"]},
        ]
        for parameters in bad:
            with self.assertRaises(ScenarioError):
                Scenario.from_record(with_fields(parameters=parameters))

    def test_unknown_check(self):
        with self.assertRaises(ScenarioError):
            Scenario.from_record(with_fields(checks=["decide", "guess"]))

    def test_named_sets_pairs_and_partitions(self):
        scenario = Scenario.from_record(CATALOG["counterexample-wave"])
        self.assertIsInstance(scenario.ideal, WaveIdeal)
        self.assertEqual(len(scenario.pairs), 1)
        self.assertEqual(scenario.pairs[0].left_at(1), 3)
        self.assertIn("W+", scenario.sets)
        split = Scenario.from_record(CATALOG["ax1p-b"])
        self.assertIsNotNone(split.partition)
        self.assertEqual(split.context().partition, split.partition)


@pytest.mark.parametrize("suffix", [".json", ".yaml"])
def test_load_scenario(tmp_path, suffix):
    path = tmp_path / f"prufer{suffix}"
    if suffix == ".json":
        path.write_text(json.dumps(PRUFER))
    else:
        path.write_text(PRUFER_YAML)
    scenario = load_scenario(str(path), overrides={"horizons": [20]})
    assert scenario.name == "prufer"
    assert scenario.parameters["horizons"] == [20]


def test_load_missing_file(tmp_path):
    with pytest.raises(ScenarioError):
        load_scenario(str(tmp_path / "nowhere.json"))
