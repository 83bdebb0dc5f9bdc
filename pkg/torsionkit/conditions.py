"""
Membership conditions for ``x̄ ∈ t_𝐮^𝕀(𝕋)`` and the decision procedure.

All checkers take a :class:`TorsionContext`.  When the ratio sequence knows
its bounded region ``R`` (``b`` bounded on ``R``, ``b_n → ∞`` off ``R``),
every b-bounded set is contained in ``R`` up to a finite set and every
b-divergent set in ``R*``.  The universally quantified conditions then reduce
to a single membership query on a maximal witness and their verdicts are
definitive.  Without ``R`` they are evaluated against the witness catalog and
a ``Holds`` is marked ``catalog_relative``.
"""
import logging
import threading

from .expansion import PatternDigits, mask_digits
from .intsets import (
    boundaries,
    complement,
    difference,
    intersect,
    shift,
    union,
)
from .scale import UNKNOWN as UNCLASSIFIED, classify_bbound
from .verdict import conjunction, fails, holds, to_jsonable, unknown

log = logging.getLogger(__name__)

IN = "In"
NOT_IN = "NotIn"
UNDECIDED = "Unknown"

# decision rules, in priority order
RULE_SUPPORT_SMALL = "support in the ideal"
RULE_BSUPPORT_LARGE = "b-support in the dual filter"
RULE_RIGHT_BOUNDARY = "b-bounded right boundary outside the ideal"
RULE_LEFT_BOUNDARY = "b-bounded shifted left boundary outside the ideal"
RULE_T = "T_x is sufficient"
RULE_NESTED = "nested ideal with (i_x) and (ii_x)"
RULE_BOUNDED_SEQUENCE = "b-bounded sequence: torsion iff T_x"
RULE_BOUNDED_MOD = "support b-bounded mod the ideal: torsion iff A_x"
RULE_DIVERGENT_MOD = "support b-divergent mod the ideal: torsion iff (I_x) and (II_x)"
RULE_N_DIVERGENT = "ℕ b-divergent mod the ideal: torsion iff (I_x)"
RULE_SPLITTING = "splitting partition: torsion iff (1_x), (2_x) and (3_x)"

RULES = (
    RULE_SUPPORT_SMALL,
    RULE_BSUPPORT_LARGE,
    RULE_RIGHT_BOUNDARY,
    RULE_LEFT_BOUNDARY,
    RULE_T,
    RULE_NESTED,
    RULE_BOUNDED_SEQUENCE,
    RULE_BOUNDED_MOD,
    RULE_DIVERGENT_MOD,
    RULE_N_DIVERGENT,
    RULE_SPLITTING,
)

# citation label reported next to each rule
CITATIONS = {
    RULE_SUPPORT_SMALL: "Lemma Lemma2.2",
    RULE_BSUPPORT_LARGE: "Corollary Coro1:May14",
    RULE_RIGHT_BOUNDARY: "Lemma rem:nested*",
    RULE_LEFT_BOUNDARY: "Lemma lambda-1",
    RULE_T: "Theorem in",
    RULE_NESTED: "Corollary CoroGhosh(2)",
    RULE_BOUNDED_SEQUENCE: "Corollary b-boundedreal",
    RULE_BOUNDED_MOD: "Theorem Nuovo:Th",
    RULE_DIVERGENT_MOD: "Theorem Last:corollary",
    RULE_N_DIVERGENT: "Corollary NmodI",
    RULE_SPLITTING: "Corollary alleq*",
}

# ideal properties each rule assumes
TI, P_IDEAL, NESTED = "translation_invariant", "p_ideal", "nested"
REQUIREMENTS = {
    RULE_SUPPORT_SMALL: (TI,),
    RULE_BSUPPORT_LARGE: (),
    RULE_RIGHT_BOUNDARY: (TI, P_IDEAL),
    RULE_LEFT_BOUNDARY: (TI, P_IDEAL),
    RULE_T: (TI,),
    RULE_NESTED: (TI, P_IDEAL, NESTED),
    RULE_BOUNDED_SEQUENCE: (TI, P_IDEAL),
    RULE_BOUNDED_MOD: (TI, P_IDEAL),
    RULE_DIVERGENT_MOD: (TI, P_IDEAL),
    RULE_N_DIVERGENT: (TI, P_IDEAL),
    RULE_SPLITTING: (TI, P_IDEAL),
}

INEXACT_LIMITS = "digit limits are only known on S_b"


class TorsionContext:
    """
    The data every condition looks at: the digit stream (and through it the
    ratio sequence), the ideal, the witness catalog and evaluation settings.

    :param digits:       a `DigitStream`.
    :param ideal:        an `IdealSpec`.
    :param witnesses:    extra `SymbolicSet` witnesses for the universally
                         quantified conditions.
    :param partition:    optional declared ``(B, D)`` splitting partition.
    :param certificates: optional `dict`; ``"I"`` maps to a set ``D ⊆ S``
                         along which ``φ(c_n/b_n) → 0`` is declared.
    """

    def __init__(
        self,
        digits,
        ideal,
        witnesses=(),
        partition=None,
        certificates=None,
        window=2000,
        checkpoints=(100, 1000),
    ):
        self.digits = digits
        self.ideal = ideal
        self.user_witnesses = tuple(witnesses)
        self.partition = partition
        self.certificates = dict(certificates or {})
        self.window = window
        self.checkpoints = tuple(checkpoints)
        self._memo = {}
        self._lock = threading.RLock()

    @property
    def ratio(self):
        return self.digits.ratio

    def _cached(self, name, build):
        with self._lock:
            if name not in self._memo:
                self._memo[name] = build()
            return self._memo[name]

    @property
    def S(self):
        return self._supports().support

    @property
    def S_b(self):
        return self._supports().b_support

    def _supports(self):
        return self._cached("supports", lambda: self.digits.supports(self.window))

    @property
    def boundaries(self):
        return self._cached("boundaries", lambda: boundaries(self.S))

    @property
    def rho(self):
        return self.boundaries.right

    @property
    def lam(self):
        return self.boundaries.left

    @property
    def region(self):
        """ The bounded region ``R`` of the ratio sequence, or `None`. """
        return self._cached("region", self.ratio.bounded_region)

    @property
    def profile(self):
        return self._cached("profile", lambda: self.digits.limit_profile(self.window))

    @property
    def exact_limits(self):
        """
        Whether the limit profile describes every index: for pattern digits
        over a known region, or whenever ``b`` is bounded everywhere.
        """
        if self.region is None:
            return False
        return isinstance(self.digits, PatternDigits) or self.region.is_cofinite() is True

    def member(self, a):
        """ Memoized ``a ∈ 𝕀``. """
        key = ("member", a.key)
        return self._cached(key, lambda: self.ideal.membership(a, self.checkpoints))

    def classify(self, a):
        key = ("classify", a.key)
        return self._cached(key, lambda: classify_bbound(self.ratio, a, self.window))

    def witnesses(self):
        """ The catalog: ``ρ(S)``, ``λ(S) − 1``, ``S``, the region cuts and extras. """
        catalog = [("ρ(S)", self.rho), ("λ(S)−1", shift(self.lam, -1)), ("S", self.S)]
        if self.region is not None:
            catalog.append(("R∩S", intersect(self.region, self.S)))
            catalog.append(("R∖S", difference(self.region, self.S)))
        catalog.extend((a.render(), a) for a in self.user_witnesses)
        return catalog

    def render(self):
        return f"{self.digits.render()} under {self.ideal.render()}"


class Decision:
    """
    Outcome of :func:`decide`.

    :ivar value: ``"In"``, ``"NotIn"`` or ``"Unknown"``.
    :ivar rule:  the rule that fired, `None` for ``Unknown``.
    :ivar citation: the label of the statement behind ``rule``.
    :ivar trail: list of ``(rule, note)`` pairs for every rule consulted.
    """

    __slots__ = ("value", "rule", "trail", "catalog_relative")

    def __init__(self, value, rule=None, trail=(), catalog_relative=False):
        if value not in (IN, NOT_IN, UNDECIDED):
            raise ValueError(f"Decision must be In, NotIn or Unknown; given: {value!r}")
        if value != UNDECIDED and not rule:
            raise ValueError(f"A definitive decision needs a rule; given: {value!r}")
        self.value = value
        self.rule = rule
        self.trail = list(trail)
        self.catalog_relative = catalog_relative

    @property
    def citation(self):
        return CITATIONS.get(self.rule)

    @property
    def definitive(self):
        return self.value != UNDECIDED

    @property
    def blocking(self):
        """ Sub-verdicts that kept rules from firing. """
        return [(rule, note) for rule, note in self.trail if getattr(note, "unknown", False)]

    def to_record(self):
        return {
            "value": self.value,
            "rule": self.rule,
            "citation": self.citation,
            "catalog_relative": self.catalog_relative,
            "trail": [{"rule": rule, "note": to_jsonable(note)} for rule, note in self.trail],
        }

    def __repr__(self):
        return f"Decision({self.value}, {self.rule!r})"


def _limit_gate(verdict, ctx, rule):
    """ Demote a limit failure to Unknown when the profile is not exact. """
    if verdict.fails and not ctx.exact_limits:
        return unknown(rule, reason=INEXACT_LIMITS, observed=verdict)
    return verdict


def _vacuous(rule, premise, check):
    """
    ``if premise ∉ 𝕀 then check``: vacuous when the premise holds, otherwise
    the check decides.
    """
    if check.holds:
        return holds(rule, check=check)
    if premise.holds:
        return holds(rule, vacuous=True, premise=premise)
    if check.fails:
        return fails(rule, check=check, premise=premise)
    return unknown(rule, check=check, premise=premise)


# ---------------------------------------------------------------------------
# (i_x), (ii_x), (iii_x)
# ---------------------------------------------------------------------------


def check_i(ctx):
    """ ``S + 1 ⊆^𝕀 S``, i.e. ``ρ(S) ∈ 𝕀``. """
    return _relabel(ctx.member(ctx.rho), "(i_x) ρ(S) ∈ 𝕀")


def check_ii(ctx):
    """ ``S_b ⊆_𝕀 S``, i.e. ``S ∖ S_b ∈ 𝕀``. """
    return _relabel(ctx.member(difference(ctx.S, ctx.S_b)), "(ii_x) S ∖ S_b ∈ 𝕀")


def check_iii(ctx):
    """ ``S − 1 ⊆^𝕀 S``, i.e. ``λ(S) ∈ 𝕀``. """
    return _relabel(ctx.member(ctx.lam), "(iii_x) λ(S) ∈ 𝕀")


def _relabel(verdict, rule):
    if verdict.holds:
        return holds(rule, membership=verdict)
    if verdict.fails:
        return fails(rule, membership=verdict)
    return unknown(rule, membership=verdict)


def check_i_ii_iii(ctx):
    return check_i(ctx), check_ii(ctx), check_iii(ctx)


def t_x(ctx):
    i, ii, iii = check_i_ii_iii(ctx)
    return conjunction([("i", i), ("ii", ii), ("iii", iii)], "T_x")


def a_x(ctx):
    i, ii = check_i(ctx), check_ii(ctx)
    a2 = check_a2(ctx)
    return conjunction([("i", i), ("ii", ii), ("a2", a2)], "A_x")


# ---------------------------------------------------------------------------
# (a1_x), (a2_x), (⋆)
# ---------------------------------------------------------------------------


def _bbounded_large(ctx, a):
    """ Witness ``a`` qualifies: b-bounded and not in 𝕀. """
    cls = ctx.classify(a)
    if not cls.bbounded:
        return None if cls.tag == UNCLASSIFIED else False
    large = ctx.member(a)
    if large.fails:
        return True
    return None if large.unknown else False


def check_a2(ctx):
    """
    (a2_x) in its (†) form: every b-bounded ``A ∉ 𝕀`` with ``A ∩ S ∈ 𝕀`` has
    ``(A + 1) ∩ S ∈ 𝕀``.

    With a known region the maximal witness is ``R ∖ S`` and
    ``(R ∖ S + 1) ∩ S = λ(S) ∩ (R + 1)``.
    """
    rule = "(a2_x)"
    if ctx.region is not None:
        premise = ctx.member(difference(ctx.region, ctx.S))
        check = ctx.member(intersect(ctx.lam, shift(ctx.region, 1)))
        return _vacuous(rule, premise, check).with_evidence(witness="R ∖ S")
    return _catalog(ctx, rule, _a2_on)


def _a2_on(ctx, a):
    if not ctx.member(intersect(a, ctx.S)).holds:
        return None
    return ctx.member(intersect(shift(a, 1), ctx.S))


def check_a1(ctx):
    """
    (a1_x): every b-bounded ``A ∉ 𝕀`` with ``A ⊆^𝕀 S`` has ``A + 1 ⊆^𝕀 S``,
    ``A ⊆^𝕀 S_b`` and ``(c_{n+1} + 1)/b_{n+1} → 1`` along some
    ``A' ⊆_𝕀 A``.

    The maximal witness is ``R ∩ S``.  Without a region and for b-bounded
    ``S``, (a1_x) is the conjunction of (i_x) and (ii_x).
    """
    rule = "(a1_x)"
    if ctx.region is not None:
        a = intersect(ctx.region, ctx.S)
        parts = _a1_parts(ctx, a)
        check = conjunction(parts, rule)
        return _vacuous(rule, ctx.member(a), check).with_evidence(witness="R ∩ S")
    if ctx.classify(ctx.S).bbounded:
        i, ii = check_i(ctx), check_ii(ctx)
        return conjunction([("i", i), ("ii", ii)], rule).with_evidence(
            note="(a1_x) ⟺ (i_x) and (ii_x) for b-bounded S"
        )
    return _catalog(ctx, rule, _a1_on)


def _a1_parts(ctx, a):
    good_one = ctx.profile.good_one
    step = ctx.member(difference(shift(a, 1), ctx.S))
    flat = ctx.member(difference(a, ctx.S_b))
    limit = _limit_gate(ctx.member(difference(shift(a, 1), good_one)), ctx, "(c+1)/b → 1")
    return [("A+1 ⊆^𝕀 S", step), ("A ⊆^𝕀 S_b", flat), ("(c+1)/b → 1", limit)]


def _a1_on(ctx, a):
    if not ctx.member(difference(a, ctx.S)).holds:
        return None
    return conjunction(_a1_parts(ctx, a), "(a1_x)")


def check_star(ctx):
    """
    (⋆): like (a1_x) with the limit replaced by ``A ∩ (S_b − 1) ⊆_𝕀 A``.
    Strictly stronger than (a1_x).
    """
    rule = "(⋆)"
    if ctx.region is None:
        return _catalog(ctx, rule, _star_on)
    a = intersect(ctx.region, ctx.S)
    check = conjunction(_star_parts(ctx, a), rule)
    return _vacuous(rule, ctx.member(a), check).with_evidence(witness="R ∩ S")


def _star_parts(ctx, a):
    step = ctx.member(difference(shift(a, 1), ctx.S))
    flat = ctx.member(difference(a, ctx.S_b))
    follow = ctx.member(difference(a, shift(ctx.S_b, -1)))
    return [("A+1 ⊆^𝕀 S", step), ("A ⊆^𝕀 S_b", flat), ("A ∩ (S_b−1) ⊆_𝕀 A", follow)]


def _star_on(ctx, a):
    if not ctx.member(difference(a, ctx.S)).holds:
        return None
    return conjunction(_star_parts(ctx, a), "(⋆)")


def check_a1_a2(ctx):
    return check_a1(ctx), check_a2(ctx), check_star(ctx)


def _catalog(ctx, rule, evaluate, qualifies=_bbounded_large):
    """
    Evaluate a universal condition on every qualifying catalog witness.
    ``evaluate`` returns `None` when the witness misses the premise.
    """
    results = {}
    pending = []
    for name, a in ctx.witnesses():
        ok = qualifies(ctx, a)
        if ok is False:
            continue
        if ok is None:
            pending.append(name)
            continue
        verdict = evaluate(ctx, a)
        if verdict is None:
            continue
        results[name] = verdict
        if verdict.fails:
            log.debug("%s refuted by witness %s", rule, name)
            return fails(rule, witness=name, check=verdict, catalog=list(results))
    if pending or any(v.unknown for v in results.values()):
        return unknown(rule, pending=pending, results=results)
    return holds(rule, catalog_relative=True, results=results)


def catalog_report(ctx):
    """ (a1_x), (a2_x) and (⋆) on every catalog witness, for evidence. """
    report = {}
    for name, a in ctx.witnesses():
        entry = {"bbounded_large": _bbounded_large(ctx, a)}
        if entry["bbounded_large"]:
            for label, evaluate in (("a1", _a1_on), ("a2", _a2_on), ("star", _star_on)):
                verdict = evaluate(ctx, a)
                entry[label] = "premise not met" if verdict is None else verdict.value
        report[name] = entry
    return report


# ---------------------------------------------------------------------------
# (I_x), (II_x), (b_x)
# ---------------------------------------------------------------------------


def limit_subcheck(ctx):
    """
    ``∃ D ⊆_𝕀 S`` infinite with ``φ(c_n/b_n) → 0`` along ``D``: holds when
    ``S ∖ good_φ ∈ 𝕀`` and ``S ∩ good_φ`` is infinite.
    """
    rule = "φ(c/b) → 0 along D ⊆_𝕀 S"
    declared = ctx.certificates.get("I")
    if declared is not None:
        rest = ctx.member(difference(ctx.S, declared))
        if rest.holds:
            return holds(rule, declared=declared.render(), rest=rest)
    good_phi = ctx.profile.good_phi
    along = intersect(ctx.S, good_phi)
    rest = ctx.member(difference(ctx.S, good_phi))
    finite = along.is_finite()
    if rest.holds and finite is False:
        return holds(rule, along=along.render(), rest=rest)
    if rest.fails or finite is True:
        return _limit_gate(fails(rule, rest=rest, along_finite=finite), ctx, rule)
    return unknown(rule, rest=rest, along_finite=finite)


def check_I(ctx):
    """ (I_x): ``S ∈ 𝕀`` or the limit sub-check. """
    rule = "(I_x)"
    small = ctx.member(ctx.S)
    sub = limit_subcheck(ctx)
    if small.holds:
        return holds(rule, support_small=small, limit_subcheck=sub)
    if sub.holds:
        return holds(rule, limit_subcheck=sub)
    if sub.fails and small.fails:
        return fails(rule, support_small=small, limit_subcheck=sub)
    return unknown(rule, support_small=small, limit_subcheck=sub)


def check_II(ctx):
    """
    (II_x): every ``D ∉ 𝕀`` with ``D ⊆^𝕀 S`` and ``D − 1`` b-bounded has
    ``c_n/b_n → 0`` along some ``D' ⊆_𝕀 D``.  The maximal witness is
    ``S ∩ (R + 1)``.
    """
    rule = "(II_x)"
    if ctx.region is not None:
        d = intersect(ctx.S, shift(ctx.region, 1))
        check = _limit_gate(ctx.member(difference(d, ctx.profile.good_zero)), ctx, rule)
        return _vacuous(rule, ctx.member(d), check).with_evidence(witness="S ∩ (R+1)")
    return _catalog(ctx, rule, _II_on, qualifies=_shift_bbounded_large)


def _shift_bbounded_large(ctx, d):
    cls = ctx.classify(shift(d, -1))
    if not cls.bbounded:
        return None if cls.tag == UNCLASSIFIED else False
    large = ctx.member(d)
    return True if large.fails else (None if large.unknown else False)


def _II_on(ctx, d):
    if not ctx.member(difference(d, ctx.S)).holds:
        return None
    return _limit_gate(ctx.member(difference(d, ctx.profile.good_zero)), ctx, "(II_x)")


def check_I_II(ctx):
    return check_I(ctx), check_II(ctx)


def check_b(ctx):
    """
    (b_x): every b-divergent ``A ∉ 𝕀`` has ``φ(c_n/b_n) → 0`` along some
    ``B ⊆_𝕀 A``.  The maximal witness is ``R*``; digits vanish off ``S``.
    """
    rule = "(b_x)"
    if ctx.region is None:
        return unknown(rule, reason="bounded region unknown")
    a = complement(ctx.region)
    bad = difference(intersect(a, ctx.S), ctx.profile.good_phi)
    check = _limit_gate(ctx.member(bad), ctx, rule)
    return _vacuous(rule, ctx.member(a), check).with_evidence(witness="R*")


# ---------------------------------------------------------------------------
# Splitting
# ---------------------------------------------------------------------------


def _validate_partition(ctx, B, D):
    overlap = intersect(B, D).is_empty()
    missing = complement(union(B, D)).is_empty()
    if overlap is None or missing is None:
        for n in range(ctx.window + 1):
            if B.member(n) == D.member(n):
                raise ValueError(f"B and D do not partition ℕ at index {n}")
    elif not (overlap and missing):
        raise ValueError(f"{B.render()} and {D.render()} do not partition ℕ")
    evidence = {}
    if ctx.region is not None:
        bounded = ctx.member(difference(B, ctx.region))
        divergent = ctx.member(intersect(D, ctx.region))
        if bounded.fails:
            raise ValueError(f"B = {B.render()} is not b-bounded mod the ideal")
        if divergent.fails:
            raise ValueError(f"D = {D.render()} is not b-divergent mod the ideal")
        evidence = {"B_bounded_mod": bounded, "D_divergent_mod": divergent}
    return evidence


def splitting_conditions(ctx, B, D):
    """ The list (1_x)', (1_x)'', (1_x)''', (2_x), (3_x) as named verdicts. """
    S, S_b, profile = ctx.S, ctx.S_b, ctx.profile
    bs = intersect(B, S)
    one_a = ctx.member(shift(intersect(ctx.rho, B), 1))
    one_b = ctx.member(difference(bs, S_b))
    one_c = _vacuous(
        "(1_x)'''",
        ctx.member(bs),
        _limit_gate(ctx.member(difference(shift(bs, 1), profile.good_one)), ctx, "(1_x)'''"),
    )
    b_out = difference(B, S)
    two = _vacuous(
        "(2_x)",
        ctx.member(b_out),
        _limit_gate(
            ctx.member(intersect(shift(b_out, 1), difference(S, profile.good_zero))),
            ctx,
            "(2_x)",
        ),
    )
    ds = intersect(D, S)
    three = _vacuous(
        "(3_x)",
        ctx.member(ds),
        _limit_gate(ctx.member(difference(ds, profile.good_phi)), ctx, "(3_x)"),
    )
    return [("1'", one_a), ("1''", one_b), ("1'''", one_c), ("2", two), ("3", three)]


def restricted_conditions(ctx, B, D):
    """ A_{x_B} and (I_{x_D}) on the masked streams. """
    x_b = TorsionContext(
        mask_digits(ctx.digits, B), ctx.ideal, window=ctx.window, checkpoints=ctx.checkpoints
    )
    x_d = TorsionContext(
        mask_digits(ctx.digits, D), ctx.ideal, window=ctx.window, checkpoints=ctx.checkpoints
    )
    return [("A_{x_B}", a_x(x_b)), ("(I_{x_D})", check_I(x_d))]


def check_splitting(ctx, B, D):
    """
    Conditions for a splitting partition ``ℕ = B ⊔ D`` (``B`` b-bounded and
    ``D`` b-divergent mod 𝕀).

    The verdict comes from the list (1_x)(2_x)(3_x); the restricted-stream
    list ``A_{x_B}`` and ``(I_{x_D})`` is attached as evidence together with
    whether both lists agree.

    :raises ValueError: if ``B`` and ``D`` are not a valid partition.
    """
    validation = _validate_partition(ctx, B, D)
    rule = "(1_x), (2_x) and (3_x)"
    verdict = conjunction(splitting_conditions(ctx, B, D), rule)
    restricted = conjunction(restricted_conditions(ctx, B, D), "A_{x_B} and (I_{x_D})")
    agree = verdict.value == restricted.value
    if not agree:
        log.debug("splitting lists disagree: %r vs %r", verdict, restricted)
    return verdict.with_evidence(
        B=B.render(), D=D.render(), restricted=restricted, agree=agree, **validation
    )


def auto_partition(ctx):
    """ ``(R, R*)`` when the region is known and nontrivial, else `None`. """
    region = ctx.region
    if region is None or region.is_empty() is not False or region.is_cofinite() is not False:
        return None
    return region, complement(region)


# ---------------------------------------------------------------------------
# decide
# ---------------------------------------------------------------------------


def _missing(ctx, rule):
    flags = ctx.ideal.flags
    missing = []
    for flag in REQUIREMENTS[rule]:
        if flag == NESTED:
            if flags[NESTED] != "yes":
                missing.append(flag)
        elif not flags[flag]:
            missing.append(flag)
    return missing


def _as_decision(verdict, rule, trail):
    trail.append((rule, verdict))
    if verdict.holds:
        return Decision(IN, rule, trail, catalog_relative=verdict.catalog_relative)
    if verdict.fails:
        return Decision(NOT_IN, rule, trail)
    return None


def _rules(ctx):
    """ Yield ``(rule, thunk)``; a thunk returns a Decision value or a note. """
    S, region = ctx.S, ctx.region

    def support_small():
        v = ctx.member(S)
        return (IN if v.holds else None), v

    def bsupport_large():
        v = ctx.member(complement(ctx.S_b))
        return (IN if v.holds else None), v

    def right_boundary():
        cls = ctx.classify(ctx.rho)
        if not cls.bbounded:
            return None, cls
        v = ctx.member(ctx.rho)
        return (NOT_IN if v.fails else None), v

    def left_boundary():
        cls = ctx.classify(shift(ctx.lam, -1))
        if not cls.bbounded:
            return None, cls
        v = ctx.member(ctx.lam)
        return (NOT_IN if v.fails else None), v

    def t_sufficient():
        v = t_x(ctx)
        return (IN if v.holds else None), v

    def nested():
        v = conjunction([("i", check_i(ctx)), ("ii", check_ii(ctx))], "(i_x) and (ii_x)")
        return (IN if v.holds else None), v

    def bounded_sequence():
        if region is None or region.is_cofinite() is not True:
            return None, "sequence not known to be b-bounded"
        return "verdict", t_x(ctx)

    def bounded_mod():
        if region is not None:
            premise = ctx.member(difference(S, region))
        elif ctx.classify(S).bbounded:
            premise = holds("S is b-bounded")
        else:
            return None, "b-boundedness of S unknown"
        if not premise.holds:
            return None, premise
        return "verdict", a_x(ctx)

    def divergent_mod():
        if region is not None:
            premise = ctx.member(intersect(S, region))
        elif ctx.classify(S).bdivergent:
            premise = holds("S is b-divergent")
        else:
            return None, "b-divergence of S unknown"
        if not premise.holds:
            return None, premise
        I, II = check_I_II(ctx)
        return "verdict", conjunction([("I", I), ("II", II)], "(I_x) and (II_x)")

    def n_divergent():
        if region is None:
            return None, "bounded region unknown"
        premise = ctx.member(region)
        if not premise.holds:
            return None, premise
        return "verdict", check_I(ctx)

    def splitting():
        partition = ctx.partition or auto_partition(ctx)
        if partition is None:
            return None, "no splitting partition"
        return "verdict", check_splitting(ctx, *partition)

    return [
        (RULE_SUPPORT_SMALL, support_small),
        (RULE_BSUPPORT_LARGE, bsupport_large),
        (RULE_RIGHT_BOUNDARY, right_boundary),
        (RULE_LEFT_BOUNDARY, left_boundary),
        (RULE_T, t_sufficient),
        (RULE_NESTED, nested),
        (RULE_BOUNDED_SEQUENCE, bounded_sequence),
        (RULE_BOUNDED_MOD, bounded_mod),
        (RULE_DIVERGENT_MOD, divergent_mod),
        (RULE_N_DIVERGENT, n_divergent),
        (RULE_SPLITTING, splitting),
    ]


def decide(ctx):
    """
    Decide ``x̄ ∈ t_𝐮^𝕀(𝕋)`` by trying the rules in :data:`RULES` order.

    A rule whose ideal hypotheses are not declared is skipped.  Sufficient
    rules fire on ``Holds``, necessary ones on ``Fails``, and characterizing
    rules on any definitive verdict.  An ``Unknown`` moves on to the next
    rule.
    """
    trail = []
    for rule, thunk in _rules(ctx):
        missing = _missing(ctx, rule)
        if missing:
            trail.append((rule, f"skipped: ideal lacks {', '.join(missing)}"))
            continue
        outcome, note = thunk()
        log.debug("decide %s: %s -> %s", ctx.render(), rule, outcome)
        if outcome == "verdict":
            decision = _as_decision(note, rule, trail)
            if decision is not None:
                return decision
            continue
        trail.append((rule, note))
        if outcome == IN:
            return Decision(IN, rule, trail)
        if outcome == NOT_IN:
            return Decision(NOT_IN, rule, trail)
    return Decision(UNDECIDED, None, trail)


def evaluate_all(ctx):
    """
    Every condition at once, for reports: the basic ones, T_x, A_x, the
    limit sub-check of (I_x), (b_x) and the catalog table.
    """
    i, ii, iii = check_i_ii_iii(ctx)
    a1, a2, star = check_a1_a2(ctx)
    I, II = check_I_II(ctx)
    return {
        "i": i,
        "ii": ii,
        "iii": iii,
        "a1": a1,
        "a2": a2,
        "star": star,
        "T": conjunction([("i", i), ("ii", ii), ("iii", iii)], "T_x"),
        "A": conjunction([("i", i), ("ii", ii), ("a2", a2)], "A_x"),
        "I": I,
        "II": II,
        "limit": limit_subcheck(ctx),
        "b": check_b(ctx),
        "catalog": catalog_report(ctx),
    }

