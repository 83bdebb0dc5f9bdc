"""
Tests for three-valued verdicts
"""

import unittest
from fractions import Fraction

from torsionkit.verdict import (
    Verdict,
    conjunction,
    fails,
    holds,
    to_jsonable,
    unknown,
)


class VerdictTests(unittest.TestCase):
    maxDiff = 1000

    def test_definitive_verdicts_need_a_rule(self):
        with self.assertRaises(ValueError):
            Verdict("Holds")
        with self.assertRaises(ValueError):
            Verdict("Maybe", "some rule")
        self.assertTrue(unknown().unknown)

    def test_compares_to_value_strings(self):
        self.assertEqual(holds("r"), "Holds")
        self.assertEqual(fails("r"), "Fails")
        self.assertNotEqual(unknown(), "Holds")

    def test_conjunction_fails_fast(self):
        verdict = conjunction(
            [("a", holds("r")), ("b", unknown()), ("c", fails("r"))], "all"
        )
        self.assertTrue(verdict.fails)
        self.assertEqual(verdict.evidence["failing"], "c")

    def test_conjunction_unknown_lists_blockers(self):
        verdict = conjunction([("a", holds("r")), ("b", unknown())], "all")
        self.assertTrue(verdict.unknown)
        self.assertEqual(verdict.evidence["blocking"], ["b"])

    def test_conjunction_keeps_catalog_relativity(self):
        relative = holds("r", catalog_relative=True)
        verdict = conjunction([("a", holds("r")), ("b", relative)], "all")
        self.assertTrue(verdict.holds)
        self.assertTrue(verdict.catalog_relative)
        self.assertFalse(conjunction([("a", holds("r"))], "all").catalog_relative)

    def test_to_jsonable(self):
        record = to_jsonable(
            {"q": Fraction(3, 5), "v": holds("rule", bound=Fraction(1, 2)), "s": {3, 1}}
        )
        self.assertEqual(
            record,
            {
                "q": "3/5",
                "v": {"value": "Holds", "rule": "rule", "evidence": {"bound": "1/2"}},
                "s": [1, 3],
            },
        )
