"""
Tests for digit streams, evaluation and circle norms
"""

import unittest
from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from torsionkit.expansion import (
    HALF,
    BMinus,
    PatternDigits,
    UndefinedComponentsError,
    atomic_components,
    circle_norm,
    complement_digits,
    digit_equiv,
    digits_from_record,
    eval_with_tail,
    extract_digits,
    flat_truncation,
    fractional_part,
    is_atomic,
    limit_profile,
    mask_digits,
    modify,
    norm_envelope,
)
from torsionkit.ideals import density, fin
from torsionkit.intsets import (
    EVENS,
    ODDS,
    POSITIVE,
    FiniteSet,
    IntervalUnion,
    QuadraticRule,
    image,
    residue,
)
from torsionkit.scale import AffineRatio, ConstantRatio, PiecewiseRatio, PrefixRatio

RESOLUTION = Fraction(1, 10 ** 9)
NOWC = IntervalUnion([4, 0, 0], [4, 4, 1])
SQUARES = image(QuadraticRule(1, 0, 0), 1)

ratios = st.one_of(
    st.builds(ConstantRatio, st.integers(2, 10)),
    st.builds(AffineRatio, st.integers(1, 3), st.integers(1, 4)),
    st.builds(PrefixRatio, st.lists(st.integers(2, 9), max_size=5), st.integers(2, 6)),
    st.builds(PiecewiseRatio, st.sampled_from([EVENS, ODDS]), st.integers(2, 4), st.integers(3, 9)),
)


@st.composite
def rationals(draw):
    q = draw(st.integers(1, 10 ** 4))
    p = draw(st.integers(0, q - 1))
    return Fraction(p, q)


@settings(max_examples=500, deadline=None)
@given(rationals(), ratios)
def test_eval_with_tail_contains_x(x, seq):
    d = extract_digits(x, seq)
    for n in range(1, 41):
        interval = eval_with_tail(d, n)
        assert interval.low <= x < interval.high
        assert interval.high - interval.low == Fraction(1, seq.scale_at(n))
        assert interval.exact == x


def atomic_stream():
    return PatternDigits(ConstantRatio(2), [(residue(3, {2}), 1)])


def nowc_stream():
    return PatternDigits(ConstantRatio(2), [(NOWC, "b-1")])


class PatternDigitsTests(unittest.TestCase):
    maxDiff = 1000

    def test_digits_and_supports(self):
        d = nowc_stream()
        self.assertEqual(d.digits(10), [1, 0, 0, 1, 1, 1, 1, 1, 1, 0])
        S, S_b = d.supports()
        self.assertEqual([n for n in range(12) if S.member(n)], [1, 4, 5, 6, 7, 8, 9])
        self.assertEqual([n for n in range(12) if S_b.member(n)], [1, 4, 5, 6, 7, 8, 9])

    def test_overlapping_pieces_rejected(self):
        with self.assertRaises(ValueError):
            PatternDigits(ConstantRatio(3), [(EVENS, 1), (residue(4, {0}), 2)])

    def test_digit_too_large_rejected(self):
        with self.assertRaises(ValueError):
            PatternDigits(ConstantRatio(2), [(EVENS, 2)])

    def test_trailing_maximal_digits_rejected(self):
        with self.assertRaises(ValueError):
            PatternDigits(ConstantRatio(2), [(POSITIVE, "b-1")])

    def test_from_record(self):
        refs = {"S": residue(3, {2})}
        d = digits_from_record(
            {"source": "pattern", "pieces": [{"set": "S", "value": 1}]}, ConstantRatio(2), refs
        )
        self.assertEqual(d.digits(6), [0, 1, 0, 0, 1, 0])
        with self.assertRaises(ValueError):
            digits_from_record({"source": "oracle"}, ConstantRatio(2))


class NormTests(unittest.TestCase):
    maxDiff = 1000

    def test_prufer_norm_is_one_half(self):
        d = PatternDigits(ConstantRatio(3), [(POSITIVE, 1)])
        for k in range(51):
            interval = circle_norm(d, k, RESOLUTION)
            self.assertTrue(interval.exact)
            self.assertEqual(interval.low, HALF)

    def test_factorial_scale_norm_bound(self):
        d = PatternDigits(AffineRatio(1, 1), [(ODDS, 1)])
        for k in range(5, 201):
            interval = circle_norm(d, k, RESOLUTION)
            self.assertTrue(interval.resolved)
            self.assertLessEqual(interval.high, Fraction(1, k + 1))
            self.assertEqual(norm_envelope(d, k), Fraction(1, k + 1))

    def test_atomic_fractional_parts(self):
        d = atomic_stream()
        for n in range(101):
            value = fractional_part(d, 3 * n + 1)
            self.assertEqual(value, Fraction(4, 7))
            self.assertTrue(Fraction(1, 2) <= value <= Fraction(5, 6))

    def test_finite_support_has_zero_tail(self):
        d = PatternDigits(ConstantRatio(2), [(FiniteSet([1, 3]), 1)])
        self.assertEqual(eval_with_tail(d, 1).exact, Fraction(5, 8))
        self.assertEqual(circle_norm(d, 3, RESOLUTION).low, 0)
        self.assertEqual(norm_envelope(d, 3), 0)

    def test_rational_norms(self):
        d = extract_digits(Fraction(1, 3), ConstantRatio(2))
        self.assertEqual(circle_norm(d, 4, RESOLUTION).low, Fraction(1, 3))
        self.assertEqual(norm_envelope(d, 0), Fraction(1, 3))

    def test_target_stops_refinement(self):
        d = PatternDigits(AffineRatio(1, 1), [(ODDS, 1)])
        interval = circle_norm(d, 10, Fraction(1, 10 ** 30), target=Fraction(1, 4))
        self.assertLess(interval.high, Fraction(1, 4))

    def test_negative_index_rejected(self):
        with self.assertRaises(ValueError):
            circle_norm(atomic_stream(), -1, RESOLUTION)


class DerivedStreamTests(unittest.TestCase):
    maxDiff = 1000

    def test_complement_sums_to_one(self):
        d = atomic_stream()
        c = complement_digits(d)
        self.assertEqual(eval_with_tail(d, 1).exact, Fraction(2, 7))
        self.assertEqual(eval_with_tail(d, 6).exact + eval_with_tail(c, 6).exact, 1)
        r = extract_digits(Fraction(3, 7), AffineRatio())
        with self.assertRaises(ValueError):
            complement_digits(r)

    def test_is_atomic(self):
        self.assertTrue(is_atomic(atomic_stream()).holds)
        verdict = is_atomic(nowc_stream())
        self.assertTrue(verdict.fails)

    def test_atomic_components(self):
        left, right = atomic_components(nowc_stream())
        self.assertEqual(left.digit(3), 1)
        self.assertEqual(left.digit(15), 1)
        self.assertEqual(right.digit(1), 1)
        self.assertEqual(right.digit(9), 1)
        self.assertEqual(right.digit(8), 0)
        prufer = PatternDigits(ConstantRatio(3), [(POSITIVE, 1)])
        with self.assertRaises(UndefinedComponentsError):
            atomic_components(prufer)

    def test_atomic_components_recover_flat_truncation(self):
        d = PatternDigits(ConstantRatio(3), [(EVENS, "b-1")])
        left, right = atomic_components(d)
        flat = flat_truncation(d)
        for n in (2, 4, 10):
            low = eval_with_tail(left, n).low - eval_with_tail(right, n).low
            self.assertEqual(eval_with_tail(flat, n).low, low)
        # 1 ∈ S_b: the first block starts at index 1
        left, right = atomic_components(nowc_stream())
        flat = flat_truncation(nowc_stream())
        low = eval_with_tail(left, 9).low - eval_with_tail(right, 9).low
        self.assertEqual(eval_with_tail(flat, 9).low, low + 1)

    def test_flat_truncation(self):
        d = PatternDigits(ConstantRatio(3), [(EVENS, "b-1"), (ODDS, 1)])
        flat = flat_truncation(d)
        self.assertEqual(flat.digits(4), [0, 2, 0, 2])
        self.assertIs(flat_truncation(nowc_stream()).__class__, PatternDigits)

    def test_factorial_odd_digits_have_one_maximal_index(self):
        # b_1 = 2, so the first digit is maximal; S_b is finite and hence
        # empty modulo Fin
        d = PatternDigits(AffineRatio(1, 1), [(ODDS, 1)])
        S, S_b = d.supports()
        self.assertEqual(S, ODDS)
        self.assertEqual(S_b, FiniteSet([1]))
        self.assertTrue(S_b.is_finite())
        flat = flat_truncation(d)
        self.assertEqual(flat.digits(6), [1, 0, 0, 0, 0, 0])
        self.assertEqual(eval_with_tail(flat, 6).low, Fraction(1, 2))

    def test_patch_is_equivalent_modulo_small_sets(self):
        d = nowc_stream()
        patched = modify(d, SQUARES, 0)
        self.assertEqual(patched.digit(4), 0)
        self.assertEqual(patched.digit(5), 1)
        self.assertTrue(digit_equiv(d, patched, density()).holds)
        # covers only bound the disagreement from above
        self.assertTrue(digit_equiv(d, patched, fin()).unknown)
        with self.assertRaises(ValueError):
            digit_equiv(d, PatternDigits(ConstantRatio(3), [(POSITIVE, 1)]), fin())

    def test_mask(self):
        d = PatternDigits(ConstantRatio(3), [(POSITIVE, 1)])
        masked = mask_digits(d, EVENS)
        self.assertEqual(masked.digits(4), [0, 1, 0, 1])

    def test_limit_profile(self):
        seq = PiecewiseRatio(ODDS, 2, {"rule": "linear", "a": 1, "c": 0})
        d = PatternDigits(seq, [(ODDS, "b-1"), (EVENS, BMinus(2))])
        profile = limit_profile(d)
        self.assertEqual(profile.region, ODDS)
        self.assertTrue(profile.good_one.member(4))
        self.assertTrue(profile.good_one.member(3))
        self.assertFalse(profile.good_zero.member(4))
