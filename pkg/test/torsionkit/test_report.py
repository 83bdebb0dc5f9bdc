"""
Tests for scenario runs, reports and exit codes
"""

import unittest

import pytest
import simplejson as json

from torsionkit.catalog import CATALOG, REPRODUCIBLE, build, scenario_record
from torsionkit.conditions import IN, Decision
from torsionkit.report import (
    EXIT_CONTRADICTION,
    EXIT_EXPECTATION,
    EXIT_OK,
    EXIT_UNKNOWN,
    REPORT_SCHEMA,
    ScenarioResult,
    reproduce,
    run_scenario,
    summary_lines,
)
from torsionkit.scenario import Scenario
from torsionkit.verifier import CONTRADICTION, VerificationReport

PRUFER = {
    "schema": 1,
    "name": "prufer-decide",
    "ratio": {"kind": "constant", "b": 3},
    "digits": {"source": "pattern", "pieces": [{"set": "positive", "value": 1}]},
    "ideal": "density",
    "checks": ["decide"],
    "expect": {"decide": "NotIn"},
}


def scenario(**fields):
    record = dict(PRUFER)
    record.update(fields)
    return Scenario.from_record(record)


@pytest.mark.parametrize("example_id", REPRODUCIBLE)
def test_catalog_reproduces(example_id):
    result = reproduce(example_id)
    failed = [a for a in result.assertions if not a["pass"]]
    assert failed == []
    assert result.exit_code == EXIT_OK
    if result.verification is not None:
        assert result.verification.status != CONTRADICTION


def test_catalog_lookup():
    assert len(REPRODUCIBLE) >= 8
    assert scenario_record("ce") is CATALOG["ce"]
    assert build("prufer").name == "prufer"
    with pytest.raises(KeyError):
        scenario_record("Exa99")


class ExitCodeTests(unittest.TestCase):
    maxDiff = 1000

    def test_met_expectations(self):
        result = run_scenario(scenario())
        self.assertEqual(result.exit_code, EXIT_OK)
        self.assertEqual(
            result.assertions,
            [{"check": "decide", "expected": "NotIn", "observed": "NotIn", "pass": True}],
        )

    def test_failed_expectation(self):
        result = run_scenario(scenario(expect={"decide": "In", "conditions": {"ii": "Fails"}}))
        self.assertEqual(result.exit_code, EXIT_EXPECTATION)
        self.assertEqual(result.assertions[1]["observed"], None)

    def test_unknown_decision(self):
        result = run_scenario(
            scenario(
                ideal={"family": "density", "declared_flags": {"translation_invariant": False}},
                expect={},
            )
        )
        self.assertEqual(result.decision.value, "Unknown")
        self.assertEqual(result.exit_code, EXIT_UNKNOWN)

    def test_contradiction_wins(self):
        s = scenario(expect={"decide": "In"})
        result = ScenarioResult(s, s.context())
        result.decision = Decision(IN, "rule")
        result.verification = VerificationReport(result.decision, [], CONTRADICTION)
        result.assertions = [{"check": "decide", "pass": False}]
        self.assertEqual(result.exit_code, EXIT_CONTRADICTION)


class ReportTests(unittest.TestCase):
    maxDiff = 1000

    def test_record(self):
        result = run_scenario(scenario(checks=["conditions", "decide"]))
        record = result.to_record(timestamp=False)
        self.assertEqual(record["schema"], REPORT_SCHEMA)
        self.assertEqual(record["scenario"], "prufer-decide")
        self.assertEqual(record["decision"]["value"], "NotIn")
        self.assertEqual(record["conditions"]["ii"]["value"], "Fails")
        self.assertEqual(record["exit_code"], EXIT_OK)
        self.assertNotIn("generated", record)
        self.assertEqual(json.loads(result.dumps(timestamp=False)), record)

    def test_summary_lines(self):
        lines = summary_lines(run_scenario(scenario()))
        self.assertTrue(lines[0].startswith("scenario prufer-decide"))
        self.assertIn("pass: decide expected NotIn, observed NotIn", lines)
        self.assertIn("decision: NotIn (Corollary b-boundedreal: b-bounded sequence: torsion iff T_x)", lines)

    def test_budget_override(self):
        result = reproduce("prufer", budget=16)
        self.assertEqual(result.exit_code, EXIT_OK)
