"""
Arithmetic sequences ``u_0 = 1, u_n = b_1⋯b_n`` and their ratio sequences.

A :class:`RatioSequence` is drawn from a closed family of kinds
(:class:`ConstantRatio`, :class:`AffineRatio`, :class:`PiecewiseRatio`,
:class:`PrefixRatio`) whose behaviour is known for every index, plus an
opaque :class:`CallbackRatio` that is only trusted pointwise.  The closed
kinds expose their *bounded region* ``R``: ``b`` is bounded on ``R`` and
tends to infinity along ``ℕ∖R``.
"""
import logging
import threading

from .intsets import (
    EMPTY,
    NATURALS,
    POSITIVE,
    FiniteSet,
    HorizonError,
    complement,
    difference,
    intersect,
    set_from_record,
    union,
)

log = logging.getLogger(__name__)


def _check_positive_index(n):
    if not isinstance(n, int) or isinstance(n, bool):
        raise TypeError(f"Ratio indices must be integers; given: {n!r}")
    if n < 1:
        raise ValueError(f"Ratios b_n are defined for n ≥ 1; given: {n!r}")


def _check_scale_index(n):
    if not isinstance(n, int) or isinstance(n, bool):
        raise TypeError(f"Scale indices must be integers; given: {n!r}")
    if n < 0:
        raise ValueError(f"Scale indices must be nonnegative; given: {n!r}")


def first_positive(a, limit=1 << 24):
    """ Smallest ``n ≥ 1`` in ``a``, or `None` if there is none below ``limit``. """
    if a.is_empty():
        return None
    upto = 64
    while upto <= limit:
        try:
            for n in a.elements(upto):
                if n >= 1:
                    return n
        except HorizonError:
            return None
        upto *= 4
    return None


# ---------------------------------------------------------------------------
# Value rules n ↦ b_n
# ---------------------------------------------------------------------------


class ConstantRule:
    kind = "constant"
    diverges = False

    def __init__(self, c):
        if not isinstance(c, int) or isinstance(c, bool):
            raise TypeError(f"Constant ratio must be an integer; given: {c!r}")
        self.c = c

    def __call__(self, n):
        return self.c

    @property
    def bound(self):
        return self.c

    def min_from(self, n):
        return self.c

    def level(self, ceiling):
        return POSITIVE if self.c <= ceiling else EMPTY

    def render(self):
        return str(self.c)

    def to_record(self):
        return {"rule": "constant", "c": self.c}


class LinearRule:
    """ ``b_n = a·n + c`` with ``a ≥ 0``. """

    kind = "linear"

    def __init__(self, a, c):
        for name, v in (("a", a), ("c", c)):
            if not isinstance(v, int) or isinstance(v, bool):
                raise TypeError(f"Linear ratio coefficient {name} must be an integer; given: {v!r}")
        if a < 0:
            raise ValueError(f"Linear ratio rules must be nondecreasing; given a={a!r}")
        self.a, self.c = a, c

    def __call__(self, n):
        return self.a * n + self.c

    @property
    def diverges(self):
        return self.a > 0

    @property
    def bound(self):
        return None if self.a else self.c

    def min_from(self, n):
        return self(max(n, 1))

    def level(self, ceiling):
        if not self.a:
            return POSITIVE if self.c <= ceiling else EMPTY
        top = (ceiling - self.c) // self.a
        return FiniteSet(range(1, top + 1)) if top >= 1 else EMPTY

    def render(self):
        if not self.a:
            return str(self.c)
        head = "n" if self.a == 1 else f"{self.a}n"
        if not self.c:
            return head
        return f"{head}{'+' if self.c > 0 else '-'}{abs(self.c)}"

    def to_record(self):
        return {"rule": "linear", "a": self.a, "c": self.c}


class PowerRule:
    """ ``b_n = base^n``. """

    kind = "power"
    diverges = True
    bound = None

    def __init__(self, base):
        if not isinstance(base, int) or isinstance(base, bool) or base < 2:
            raise ValueError(f"Power ratio base must be an integer ≥ 2; given: {base!r}")
        self.base = base

    def __call__(self, n):
        return self.base ** n

    def min_from(self, n):
        return self(max(n, 1))

    def level(self, ceiling):
        top, value = 0, self.base
        while value <= ceiling:
            top += 1
            value *= self.base
        return FiniteSet(range(1, top + 1))

    def render(self):
        return f"{self.base}^n"

    def to_record(self):
        return {"rule": "power", "base": self.base}


def rule_from_record(record):
    """ ``2`` or ``{"rule": "constant"|"linear"|"power", ...}``. """
    if isinstance(record, (ConstantRule, LinearRule, PowerRule)):
        return record
    if isinstance(record, int) and not isinstance(record, bool):
        return ConstantRule(record)
    if not isinstance(record, dict):
        raise ValueError(f"Ratio rule must be an integer or a record; given: {record!r}")
    kind = record.get("rule")
    if kind == "constant":
        return ConstantRule(record["c"])
    if kind == "linear":
        return LinearRule(record.get("a", 1), record.get("c", 0))
    if kind == "power":
        return PowerRule(record["base"])
    raise ValueError(f"Unknown ratio rule: {kind!r}")


def _check_rule_on(rule, domain, what):
    first = first_positive(domain)
    if first is not None and rule(first) < 2:
        raise ValueError(
            f"Ratio rule {rule.render()} gives b_{first} = {rule(first)} < 2 on {what}"
        )


# ---------------------------------------------------------------------------
# Ratio sequences
# ---------------------------------------------------------------------------


class RatioSequence:
    """
    Base class.  Subclasses implement :meth:`_ratio`; everything else has a
    conservative default.
    """

    kind = None

    def __init__(self):
        self._memo = [1]
        self._lock = threading.Lock()

    def _ratio(self, n):
        raise NotImplementedError

    def ratio_at(self, n):
        """ ``b_n`` for ``n ≥ 1``. """
        _check_positive_index(n)
        return self._ratio(n)

    def scale_at(self, n):
        """ ``u_n`` exactly; products are memoized. """
        _check_scale_index(n)
        memo = self._memo
        if n < len(memo):
            return memo[n]
        with self._lock:
            while len(memo) <= n:
                memo.append(memo[-1] * self.ratio_at(len(memo)))
            return memo[n]

    def bounded_region(self):
        """ The set ``R`` (see module docs), or `None` when unknown. """
        return None

    def region_bound(self):
        """ ``sup {b_n : n ∈ R, n ≥ 1}`` (2 when that set is empty). """
        return None

    def level_set(self, ceiling):
        """ ``{n ≥ 1 : b_n ≤ ceiling}``, or `None` when unknown. """
        return None

    def min_beyond(self, k):
        """ A lower bound for ``b_n`` over all ``n > k``, or `None`. """
        return None

    def render(self):
        raise NotImplementedError

    def to_record(self):
        raise NotImplementedError

    def __repr__(self):
        return f"<{type(self).__name__} {self.render()}>"


class ConstantRatio(RatioSequence):
    kind = "constant"

    def __init__(self, b):
        super().__init__()
        if not isinstance(b, int) or isinstance(b, bool) or b < 2:
            raise ValueError(f"Constant ratio must be an integer ≥ 2; given: {b!r}")
        self.b = b

    def _ratio(self, n):
        return self.b

    def scale_at(self, n):
        _check_scale_index(n)
        return self.b ** n

    def bounded_region(self):
        return NATURALS

    def region_bound(self):
        return self.b

    def level_set(self, ceiling):
        return ConstantRule(self.b).level(ceiling)

    def min_beyond(self, k):
        return self.b

    def render(self):
        return f"b_n = {self.b}"

    def to_record(self):
        return {"kind": "constant", "b": self.b}


class AffineRatio(RatioSequence):
    """ ``b_n = a·n + c``; the default is the factorial scale ``u_n = (n+1)!``. """

    kind = "affine"

    def __init__(self, a=1, c=1):
        super().__init__()
        self.rule = LinearRule(a, c)
        if a < 1 or a + c < 2:
            raise ValueError(f"Affine ratio needs a ≥ 1 and b_1 ≥ 2; given a={a!r}, c={c!r}")

    def _ratio(self, n):
        return self.rule(n)

    def bounded_region(self):
        return EMPTY

    def region_bound(self):
        return 2

    def level_set(self, ceiling):
        return self.rule.level(ceiling)

    def min_beyond(self, k):
        return self.rule.min_from(k + 1)

    def render(self):
        return f"b_n = {self.rule.render()}"

    def to_record(self):
        return {"kind": "affine", "a": self.rule.a, "c": self.rule.c}


class PiecewiseRatio(RatioSequence):
    """
    ``b_n = on(n)`` for ``n ∈ T`` and ``b_n = off(n)`` otherwise.

    :param region: `SymbolicSet` ``T``.
    :param on:     value rule on ``T``.
    :param off:    value rule on ``T*``.
    """

    kind = "piecewise"

    def __init__(self, region, on, off):
        super().__init__()
        self.region = region
        self.on = rule_from_record(on)
        self.off = rule_from_record(off)
        _check_rule_on(self.on, region, region.render())
        _check_rule_on(self.off, complement(region), f"{region.render()}*")

    def _ratio(self, n):
        return self.on(n) if self.region.member(n) else self.off(n)

    def bounded_region(self):
        on_bounded = not self.on.diverges
        off_bounded = not self.off.diverges
        if on_bounded and off_bounded:
            return NATURALS
        if on_bounded:
            return self.region
        if off_bounded:
            return complement(self.region)
        return EMPTY

    def region_bound(self):
        bounds = [r.bound for r in (self.on, self.off) if not r.diverges]
        return max(bounds) if bounds else 2

    def level_set(self, ceiling):
        inside = intersect(self.region, self.on.level(ceiling))
        outside = intersect(complement(self.region), self.off.level(ceiling))
        return union(inside, outside)

    def min_beyond(self, k):
        return min(self.on.min_from(k + 1), self.off.min_from(k + 1))

    def render(self):
        return (
            f"b_n = {self.on.render()} on {self.region.render()}, "
            f"{self.off.render()} elsewhere"
        )

    def to_record(self):
        return {
            "kind": "piecewise",
            "set": self.region.to_record(),
            "on": self.on.to_record(),
            "off": self.off.to_record(),
        }


class PrefixRatio(RatioSequence):
    """ Explicit ``b_1, …, b_p`` followed by a value rule for ``n > p``. """

    kind = "prefix"

    def __init__(self, prefix, tail):
        super().__init__()
        prefix = tuple(prefix)
        for i, b in enumerate(prefix, 1):
            if not isinstance(b, int) or isinstance(b, bool) or b < 2:
                raise ValueError(f"Ratio b_{i} must be an integer ≥ 2; given: {b!r}")
        self.prefix = prefix
        self.tail = rule_from_record(tail)
        if self.tail(len(prefix) + 1) < 2:
            raise ValueError(f"Tail rule {self.tail.render()} drops below 2")

    def _ratio(self, n):
        if n <= len(self.prefix):
            return self.prefix[n - 1]
        return self.tail(n)

    def bounded_region(self):
        if self.tail.diverges:
            return FiniteSet(range(len(self.prefix) + 1))
        return NATURALS

    def region_bound(self):
        bound = max(self.prefix, default=2)
        if not self.tail.diverges:
            bound = max(bound, self.tail.bound)
        return bound

    def level_set(self, ceiling):
        p = len(self.prefix)
        head = FiniteSet(i for i, b in enumerate(self.prefix, 1) if b <= ceiling)
        return union(head, difference(self.tail.level(ceiling), FiniteSet(range(p + 1))))

    def min_beyond(self, k):
        rest = [b for i, b in enumerate(self.prefix, 1) if i > k]
        return min(rest + [self.tail.min_from(max(k + 1, len(self.prefix) + 1))])

    def render(self):
        shown = ", ".join(str(b) for b in self.prefix)
        return f"b = ({shown}), then {self.tail.render()}"

    def to_record(self):
        return {"kind": "prefix", "prefix": list(self.prefix), "tail": self.tail.to_record()}


class CallbackRatio(RatioSequence):
    """ An opaque ratio function; trusted pointwise only. """

    kind = "callback"

    def __init__(self, func, name="callback"):
        super().__init__()
        if not callable(func):
            raise TypeError(f"CallbackRatio needs a callable; given: {func!r}")
        self.func = func
        self.name = name

    def _ratio(self, n):
        b = self.func(n)
        if not isinstance(b, int) or b < 2:
            raise ValueError(f"Ratio callback {self.name} gave b_{n} = {b!r}; need an integer ≥ 2")
        return b

    def render(self):
        return f"b_n = {self.name}(n)"

    def to_record(self):
        return {"kind": "callback", "name": self.name}


def equal_set(seq, value):
    """ ``{n ≥ 1 : b_n = value}``, or `None` when the level sets are unknown. """
    upper = seq.level_set(value)
    lower = seq.level_set(value - 1)
    if upper is None or lower is None:
        return None
    return difference(upper, lower)


def ratio_at(seq, n):
    return seq.ratio_at(n)


def scale_at(seq, n):
    return seq.scale_at(n)


def ratio_from_record(record, refs=None):
    """
    Build a ratio sequence from ``{"kind": ..., ...}``.  Set references in
    ``piecewise`` records are resolved through ``refs``.
    """
    if isinstance(record, RatioSequence):
        return record
    if not isinstance(record, dict) or "kind" not in record:
        raise ValueError(f"Ratio record needs a 'kind' field; given: {record!r}")
    kind = record["kind"]
    if kind == "constant":
        return ConstantRatio(record["b"])
    if kind == "affine":
        return AffineRatio(record.get("a", 1), record.get("c", 1))
    if kind == "piecewise":
        region = set_from_record(record["set"], refs)
        return PiecewiseRatio(region, record["on"], record["off"])
    if kind == "prefix":
        return PrefixRatio(record["prefix"], record["tail"])
    raise ValueError(f"Unknown ratio kind: {kind!r}")


# ---------------------------------------------------------------------------
# b-bounded classification
# ---------------------------------------------------------------------------

BBOUNDED = "BBounded"
BDIVERGENT = "BDivergent"
MIXED = "Mixed"
UNKNOWN = "Unknown"


class BClassification:
    __slots__ = ("tag", "bound", "evidence")

    def __init__(self, tag, bound=None, evidence=None):
        if tag not in (BBOUNDED, BDIVERGENT, MIXED, UNKNOWN):
            raise ValueError(f"Unknown classification tag: {tag!r}")
        self.tag = tag
        self.bound = bound
        self.evidence = evidence or {}

    @property
    def bbounded(self):
        return self.tag == BBOUNDED

    @property
    def bdivergent(self):
        return self.tag == BDIVERGENT

    def render(self):
        if self.tag == BBOUNDED:
            return f"BBounded(C={self.bound})"
        return self.tag

    def to_record(self):
        return {"tag": self.tag, "bound": self.bound, "evidence": self.evidence}

    def __repr__(self):
        return f"BClassification({self.render()})"


def _finite_elements(a):
    core, cutoff = a.normal_form()
    top = max(cutoff, core.max_element)
    return [n for n in range(top + 1) if a.member(n)]


def _max_ratio(seq, elements):
    values = [seq.ratio_at(n) for n in elements if n >= 1]
    return max(values, default=2)


def classify_bbound(seq, a, window):
    """
    Classify ``a`` as b-bounded, b-divergent, mixed or unknown.

    Exact whenever ``a``'s finiteness against the bounded region of ``seq`` is
    structurally decidable.  Otherwise ``b_n`` is inspected on ``a(window)``
    and the result is `Unknown`, with the observed values as evidence.
    """
    if window < 1:
        raise ValueError(f"Window must be at least 1; given: {window!r}")
    if a.is_finite():
        return BClassification(
            BBOUNDED, _max_ratio(seq, _finite_elements(a)), {"rule": "finite set"}
        )
    region = seq.bounded_region()
    if region is not None:
        outside = difference(a, region)
        inside = intersect(a, region)
        out_finite, in_finite = outside.is_finite(), inside.is_finite()
        evidence = {"region": region.render()}
        if out_finite:
            extra = _max_ratio(seq, _finite_elements(outside))
            bound = max(seq.region_bound(), extra)
            return BClassification(BBOUNDED, bound, dict(evidence, rule="a ∖ R finite"))
        if in_finite:
            return BClassification(BDIVERGENT, None, dict(evidence, rule="a ∩ R finite"))
        if out_finite is False and in_finite is False:
            return BClassification(MIXED, None, dict(evidence, rule="a meets R and R* infinitely"))
    try:
        seen = [(n, seq.ratio_at(n)) for n in a.elements(window) if n >= 1]
    except HorizonError:
        seen = [(n, seq.ratio_at(n)) for n in a.elements(a.horizon) if n >= 1]
    log.debug("classify_bbound fell back to window %d for %s", window, a.render())
    half = window // 2
    early = [b for n, b in seen if n <= half]
    late = [b for n, b in seen if n > half]
    return BClassification(
        UNKNOWN,
        None,
        {
            "rule": "window inspection",
            "window": window,
            "max_ratio": max((b for _, b in seen), default=None),
            "min_early": min(early, default=None),
            "min_late": min(late, default=None),
        },
    )
