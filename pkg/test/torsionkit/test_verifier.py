"""
Tests for exception sets and the consistency check
"""

import unittest
from collections import namedtuple
from fractions import Fraction

from torsionkit.catalog import build
from torsionkit.conditions import IN, NOT_IN, UNDECIDED, Decision
from torsionkit.expansion import PatternDigits
from torsionkit.ideals import density
from torsionkit.intsets import POSITIVE, FiniteSet
from torsionkit.scale import ConstantRatio
from torsionkit.verifier import (
    CONSISTENT,
    CONTRADICTION,
    INCONCLUSIVE,
    NOT_SMALL,
    SMALL,
    STABLE,
    UNCLEAR,
    VANISHING,
    ExceptionReport,
    consistency,
    exception_set,
    run_verification,
    smallness_assessment,
    trend,
)

Point = namedtuple("Point", "ratio")


def points(*ratios):
    return [Point(Fraction(r)) for r in ratios]


class ExceptionSetTests(unittest.TestCase):
    maxDiff = 1000

    def test_finite_support_is_certified(self):
        d = PatternDigits(ConstantRatio(2), [(FiniteSet([1, 3]), 1)])
        report = exception_set(d, Fraction(1, 4), 20)
        self.assertEqual(report.members, (0, 1, 2))
        self.assertEqual(report.unresolved, ())
        self.assertEqual(report.certificate, (2, 3, 0))
        verdict = smallness_assessment(report, density())
        self.assertTrue(verdict.holds)
        self.assertEqual(verdict.evidence["trend"], SMALL)

    def test_prufer_exceptions_are_everything(self):
        d = PatternDigits(ConstantRatio(3), [(POSITIVE, 1)])
        report = exception_set(d, Fraction(1, 4), 50)
        self.assertEqual(len(report.members), 51)
        self.assertFalse(report.certified_finite)
        self.assertEqual([p.ratio for p in report.trail()], [1, 1, 1])
        self.assertEqual(smallness_assessment(report, density()).evidence["trend"], NOT_SMALL)

    def test_nowc_exceptions_thin_out(self):
        ctx = build("NoWC").context()
        report = exception_set(ctx.digits, Fraction(1, 4), 10 ** 4)
        self.assertLessEqual(len(report.pessimistic), Fraction(5, 100) * 10 ** 4)
        trail = report.trail()
        self.assertEqual([p.n for p in trail], [1000, 3000, 10000])
        ratios = [p.ratio for p in trail]
        self.assertEqual(ratios, sorted(ratios, reverse=True))
        self.assertLess(ratios[-1], ratios[0])

    def test_invalid_arguments(self):
        d = PatternDigits(ConstantRatio(3), [(POSITIVE, 1)])
        with self.assertRaises(ValueError):
            exception_set(d, Fraction(3, 4), 10)
        with self.assertRaises(ValueError):
            exception_set(d, Fraction(1, 4), 0)


class TrendTests(unittest.TestCase):
    maxDiff = 1000

    def test_labels(self):
        self.assertEqual(trend(points("1/10", "1/20", "1/40")), VANISHING)
        self.assertEqual(trend(points(0, 0, 0)), VANISHING)
        self.assertEqual(trend(points(1, 1, 1)), NOT_SMALL)
        self.assertEqual(trend(points("1/100", "1/100", "1/95")), STABLE)
        self.assertEqual(trend(points("1/100", "1/30", "1/90")), UNCLEAR)
        self.assertEqual(trend([]), UNCLEAR)


class ConsistencyTests(unittest.TestCase):
    maxDiff = 1000

    def rows(self, report):
        ideal = density()
        return [(report, smallness_assessment(report, ideal), ideal)]

    def test_torsion_against_persistent_exceptions(self):
        report = ExceptionReport(Fraction(1, 4), 10, range(11), [])
        self.assertEqual(consistency(Decision(IN, "rule"), self.rows(report)), CONTRADICTION)
        self.assertEqual(consistency(Decision(NOT_IN, "rule"), self.rows(report)), CONSISTENT)

    def test_non_torsion_against_finite_exceptions(self):
        report = ExceptionReport(Fraction(1, 4), 10, [0, 1], [], certificate=(1, 2, Fraction(0)))
        self.assertEqual(consistency(Decision(NOT_IN, "rule"), self.rows(report)), CONTRADICTION)
        self.assertEqual(consistency(Decision(IN, "rule"), self.rows(report)), CONSISTENT)

    def test_unknown_decisions_are_inconclusive(self):
        report = ExceptionReport(Fraction(1, 4), 10, [], [])
        self.assertEqual(consistency(Decision(UNDECIDED), self.rows(report)), INCONCLUSIVE)


class RunVerificationTests(unittest.TestCase):
    maxDiff = 1000

    def test_prufer(self):
        ctx = build("prufer").context()
        result = run_verification(ctx, [Fraction(1, 4)], [50])
        self.assertEqual(result.decision.value, NOT_IN)
        self.assertEqual(result.status, CONSISTENT)
        self.assertEqual({row["ratio"] for row in result.table()}, {"1.0000"})
        self.assertEqual(result.to_record()["status"], CONSISTENT)

    def test_nowc(self):
        ctx = build("NoWC").context()
        result = run_verification(ctx, [Fraction(1, 4)], [10 ** 4])
        self.assertEqual(result.decision.value, IN)
        self.assertEqual(result.status, CONSISTENT)
