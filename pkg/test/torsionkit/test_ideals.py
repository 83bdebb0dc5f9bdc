"""
Tests for ideal specifications, weights and probes
"""

import unittest
from fractions import Fraction

import pytest

from torsionkit.ideals import (
    DensityIdeal,
    FinIdeal,
    ImproperIdealError,
    PowerWeights,
    WaveWeights,
    density,
    density_alpha,
    fin,
    ideal_from_record,
    nestedness_probe,
    submeasure_partial,
    summable,
    translation_invariance_check,
    wave_gamma,
)
from torsionkit.intsets import EVENS, FiniteSet, IntervalUnion, NestedPair, QuadraticRule, image, residue

NOWC = IntervalUnion([4, 0, 0], [4, 4, 1])
SQUARES = image(QuadraticRule(1, 0, 0), 1)
Q = Fraction(3, 5)


def w(n):
    return n * n + 1


def z(n):
    return n * n + n + 1


class WaveWeightTests(unittest.TestCase):
    maxDiff = 1000

    def setUp(self):
        self.weights = WaveWeights(Q)

    def test_centres_and_block_starts(self):
        for n in range(51):
            self.assertEqual(self.weights(z(n)), 1)
            self.assertEqual(self.weights(w(n)), Q ** n)

    def test_worked_values(self):
        self.assertEqual(self.weights(0), 1)
        self.assertEqual(self.weights(13), 1)
        self.assertEqual(self.weights(10), Q ** 3)
        self.assertEqual(self.weights(12), Q)
        self.assertEqual(WaveWeights.block_index(16), 3)
        self.assertEqual(WaveWeights.block_index(17), 4)

    def test_q_must_lie_strictly_between_one_half_and_one(self):
        for q in (Fraction(1, 2), 1, Fraction(1, 3)):
            with self.assertRaises(ValueError):
                WaveWeights(q)

    def test_partial_sums(self):
        ideal = wave_gamma(Q)
        self.assertLessEqual(submeasure_partial(ideal, ideal.W, w(50)), 1 / (1 - Q))
        self.assertEqual(submeasure_partial(ideal, ideal.Z, z(50)), 51)

    def test_block(self):
        self.assertEqual(wave_gamma(Q).block(2), FiniteSet(range(5, 10)))


class PowerWeightTests(unittest.TestCase):
    maxDiff = 1000

    def test_convergent_exponent_is_improper(self):
        with self.assertRaises(ImproperIdealError):
            PowerWeights(2)
        with self.assertRaises(ImproperIdealError):
            summable({"rule": "power", "p": "3/2"})

    def test_irrational_weights_are_bracketed(self):
        weights = PowerWeights(Fraction(1, 2))
        self.assertFalse(weights.exact)
        self.assertEqual(weights.bounds(3), (Fraction(1, 2), Fraction(1, 2)))
        low, high = weights.bounds(1)
        self.assertEqual((low, high), (Fraction(1, 2), Fraction(1)))
        bracket = submeasure_partial(weights, FiniteSet([0, 3]), 10)
        self.assertEqual(bracket.low, Fraction(3, 2))

    def test_harmonic_membership(self):
        ideal = summable({"rule": "power", "p": 1})
        self.assertTrue(ideal.membership(SQUARES).holds)
        self.assertTrue(ideal.membership(NOWC).fails)


class MembershipTests(unittest.TestCase):
    maxDiff = 1000

    def test_fin(self):
        ideal = fin()
        self.assertTrue(ideal.membership(FiniteSet([1, 5, 9])).holds)
        self.assertTrue(ideal.membership(EVENS).fails)

    def test_density(self):
        ideal = density()
        self.assertTrue(ideal.membership(SQUARES).holds)
        verdict = ideal.membership(NOWC)
        self.assertTrue(verdict.fails)
        self.assertEqual(verdict.evidence["limit"], Fraction(1, 2))
        self.assertTrue(ideal.membership(residue(5, {1})).fails)

    def test_wave(self):
        ideal = wave_gamma(Q)
        self.assertTrue(ideal.membership(ideal.W).holds)
        self.assertTrue(ideal.membership(ideal.Z).fails)
        self.assertTrue(ideal.membership(EVENS).fails)

    def test_verdicts_name_set_and_ideal(self):
        verdict = density().membership(SQUARES)
        self.assertEqual(verdict.evidence["ideal"], "𝕀_d")
        self.assertIn("set", verdict.evidence)


class DensityTrailTests(unittest.TestCase):
    maxDiff = 1000

    def test_nowc_trail_tends_to_one_half(self):
        trail = density_alpha(NOWC, 1, [10 ** 4, 10 ** 5, 10 ** 6])
        self.assertEqual(trail.limit, Fraction(1, 2))
        for point in trail.points:
            self.assertTrue(Fraction(2, 5) <= point.low <= Fraction(3, 5))

    def test_fractional_exponent(self):
        trail = density_alpha(SQUARES, Fraction(1, 2), [100])
        self.assertEqual(trail.points[0].low, 1)
        self.assertEqual(trail.points[0].high, 1)
        self.assertEqual(trail.limit, 1)

    def test_exponent_range(self):
        with self.assertRaises(ValueError):
            density_alpha(SQUARES, 2, [100])
        with self.assertRaises(ValueError):
            DensityIdeal(0)


class FlagTests(unittest.TestCase):
    maxDiff = 1000

    def test_defaults(self):
        self.assertEqual(fin().nested, "yes")
        self.assertEqual(summable({"rule": "power", "p": 1}).nested, "undeclared")
        wave = wave_gamma(Q)
        self.assertEqual(wave.nested, "no")
        self.assertTrue(wave.translation_invariant)
        self.assertEqual(wave.flags["nested_witness"].left_at(1), z(1))

    def test_declare(self):
        ideal = density(flags={"nested": False})
        self.assertEqual(ideal.nested, "no")
        with self.assertRaises(ValueError):
            fin().declare(shiny=True)
        with self.assertRaises(ValueError):
            fin().declare(nested="perhaps")

    def test_from_record(self):
        self.assertIsInstance(ideal_from_record("fin"), FinIdeal)
        self.assertIsInstance(ideal_from_record("d"), DensityIdeal)
        wave = ideal_from_record({"family": "wave", "parameters": {"q": "3/5"}})
        self.assertEqual(wave.q, Q)
        self.assertEqual(wave.to_record()["family"], "wave")
        with self.assertRaises(ValueError):
            ideal_from_record({"family": "ultrafilter"})


class ProbeTests(unittest.TestCase):
    maxDiff = 1000

    def test_translation_invariance(self):
        self.assertTrue(translation_invariance_check(fin()).holds)
        self.assertTrue(translation_invariance_check(wave_gamma(Q)).holds)
        opaque = summable({"rule": "explicit", "name": "inverse_factorial"})
        verdict = translation_invariance_check(opaque, k_max=20)
        self.assertTrue(verdict.unknown)
        self.assertEqual(verdict.evidence["sampled_max"], Fraction(1, 1))

    def test_wave_pair_witnesses_non_nestedness(self):
        ideal = wave_gamma(Q)
        verdict = nestedness_probe(ideal, [ideal.witness_pair])
        self.assertTrue(verdict.fails)
        self.assertEqual(verdict.evidence["witness"].left_at(1), z(1))
        self.assertEqual(verdict.evidence["witness"].right_at(1), w(2))

    def test_nested_by_rule(self):
        self.assertTrue(nestedness_probe(density(), []).holds)
        self.assertTrue(nestedness_probe(fin(), []).holds)

    def test_inconclusive_pairs_are_listed(self):
        ideal = summable({"rule": "explicit", "name": "inverse_factorial", "divergent": True})
        broken = NestedPair((0, 3), (2, 4))
        verdict = nestedness_probe(ideal, [broken])
        self.assertTrue(verdict.unknown)
        self.assertTrue(verdict.evidence["pairs"][0]["chain"].fails)


@pytest.mark.parametrize("n", [1, 2, 7, 30])
def test_wave_block_contains_its_centre(n):
    block = wave_gamma(Q).block(n)
    assert block.member(z(n))
    assert block.member(w(n)) and not block.member(w(n + 1))
