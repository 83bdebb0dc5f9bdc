"""
Tests for the membership conditions and the decision procedure
"""

import unittest

import pytest

from torsionkit.catalog import REPRODUCIBLE, build
from torsionkit.conditions import (
    CITATIONS,
    IN,
    NOT_IN,
    RULE_BOUNDED_SEQUENCE,
    RULE_DIVERGENT_MOD,
    RULE_NESTED,
    RULE_RIGHT_BOUNDARY,
    RULE_SPLITTING,
    RULE_T,
    RULES,
    UNDECIDED,
    Decision,
    TorsionContext,
    check_i_ii_iii,
    check_splitting,
    decide,
    evaluate_all,
    t_x,
)
from torsionkit.expansion import PatternDigits
from torsionkit.ideals import density, summable
from torsionkit.intsets import EVENS, POSITIVE, IntervalUnion
from torsionkit.scale import ConstantRatio
from torsionkit.verdict import conjunction

NOWC = IntervalUnion([4, 0, 0], [4, 4, 1])


def context(example_id):
    return build(example_id).context()


class DecisionTests(unittest.TestCase):
    maxDiff = 1000

    def test_definitive_decisions_need_a_rule(self):
        with self.assertRaises(ValueError):
            Decision(IN)
        with self.assertRaises(ValueError):
            Decision("Maybe", "rule")
        self.assertFalse(Decision(UNDECIDED).definitive)

    def test_record(self):
        record = Decision(NOT_IN, RULE_T, [(RULE_T, "note")]).to_record()
        self.assertEqual(record["value"], NOT_IN)
        self.assertEqual(record["trail"], [{"rule": RULE_T, "note": "note"}])


class CatalogDecisionTests(unittest.TestCase):
    maxDiff = 1000

    def test_ce_is_torsion_although_basic_conditions_fail(self):
        ctx = context("ce")
        for verdict in check_i_ii_iii(ctx):
            self.assertTrue(verdict.fails)
        decision = decide(ctx)
        self.assertEqual(decision.value, IN)
        self.assertEqual(decision.rule, RULE_DIVERGENT_MOD)
        self.assertEqual(decision.citation, "Theorem Last:corollary")

    def test_nowc_by_t(self):
        ctx = context("NoWC")
        self.assertTrue(t_x(ctx).holds)
        decision = decide(ctx)
        self.assertEqual((decision.value, decision.rule), (IN, RULE_T))
        self.assertEqual(decision.citation, "Theorem in")

    def test_prufer_by_bounded_sequence(self):
        decision = decide(context("prufer"))
        self.assertEqual((decision.value, decision.rule), (NOT_IN, RULE_BOUNDED_SEQUENCE))
        self.assertEqual(decision.citation, "Corollary b-boundedreal")
        self.assertEqual(decision.to_record()["citation"], "Corollary b-boundedreal")

    def test_atomic_by_right_boundary(self):
        decision = decide(context("atomic-PropoNew"))
        self.assertEqual((decision.value, decision.rule), (NOT_IN, RULE_RIGHT_BOUNDARY))
        self.assertEqual(decision.citation, "Lemma rem:nested*")

    def test_patched_nowc_keeps_its_decision(self):
        decision = decide(context("nowc-patched"))
        self.assertEqual(decision.value, decide(context("NoWC")).value)


class GatingTests(unittest.TestCase):
    maxDiff = 1000

    def test_rules_without_their_hypotheses_are_skipped(self):
        digits = PatternDigits(ConstantRatio(2), [(NOWC, "b-1")])
        ctx = TorsionContext(digits, density(flags={"translation_invariant": False}))
        decision = decide(ctx)
        self.assertEqual(decision.value, UNDECIDED)
        self.assertIn((RULE_T, "skipped: ideal lacks translation_invariant"), decision.trail)

    def test_nested_rule_needs_a_declared_nested_ideal(self):
        digits = PatternDigits(ConstantRatio(3), [(POSITIVE, 1)])
        ctx = TorsionContext(digits, summable({"rule": "power", "p": 1}))
        decision = decide(ctx)
        self.assertEqual((decision.value, decision.rule), (NOT_IN, RULE_BOUNDED_SEQUENCE))
        self.assertIn((RULE_NESTED, "skipped: ideal lacks nested"), decision.trail)


class SplittingTests(unittest.TestCase):
    maxDiff = 1000

    def test_declared_partition(self):
        ctx = context("ax1p-b")
        verdict = check_splitting(ctx, *ctx.partition)
        self.assertTrue(verdict.holds)
        self.assertEqual(decide(ctx).rule, RULE_SPLITTING)

    def test_restricted_list_is_reported_alongside(self):
        # (i_x) fails for x_B, so the restricted list fails while the
        # verdict from (1_x)-(3_x) holds
        ctx = context("ax1p-b")
        verdict = check_splitting(ctx, *ctx.partition)
        self.assertTrue(verdict.holds)
        self.assertEqual(verdict.rule, "(1_x), (2_x) and (3_x)")
        restricted = verdict.evidence["restricted"]
        self.assertTrue(restricted.fails)
        self.assertEqual(restricted.rule, "A_{x_B} and (I_{x_D})")
        self.assertIs(verdict.evidence["agree"], False)

    def test_partition_must_cover_n_once(self):
        ctx = context("ax1p-b")
        with self.assertRaises(ValueError):
            check_splitting(ctx, EVENS, EVENS)


def test_evaluate_all_reports_every_condition():
    found = evaluate_all(context("NoWC"))
    assert set(found) == {
        "i", "ii", "iii", "a1", "a2", "star", "T", "A", "I", "II", "limit", "b", "catalog",
    }


@pytest.mark.parametrize("example_id", REPRODUCIBLE)
def test_implication_chain(example_id):
    found = evaluate_all(context(example_id))
    if found["T"].holds:
        assert not found["A"].fails
    basic = conjunction([("i", found["i"]), ("ii", found["ii"])], "(i_x) and (ii_x)")
    if basic.holds:
        assert not found["a1"].fails
    if found["iii"].holds:
        assert not found["a2"].fails


@pytest.mark.parametrize("example_id", REPRODUCIBLE)
def test_a1_matches_basic_conditions_on_bbounded_support(example_id):
    ctx = context(example_id)
    if not ctx.classify(ctx.S).bbounded:
        pytest.skip("support is not b-bounded")
    found = evaluate_all(ctx)
    basic = conjunction([("i", found["i"]), ("ii", found["ii"])], "(i_x) and (ii_x)")
    a1 = found["a1"]
    if isinstance(ctx.ratio, ConstantRatio):
        assert a1.value == basic.value
    else:
        assert not (a1.holds and basic.fails)
        assert not (a1.fails and basic.holds)


def test_every_rule_has_a_citation():
    assert set(CITATIONS) == set(RULES)
    assert Decision(UNDECIDED).citation is None
