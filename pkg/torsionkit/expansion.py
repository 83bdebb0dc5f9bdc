"""
Digit streams ``x = Σ_{n≥1} c_n/u_n`` with ``0 ≤ c_n < b_n``, exact evaluation
with tail bounds, circle norms ``‖u_k x‖``, supports and the derived streams
(♭-truncation, atomic components, complements, patches and masks).

Every stream answers ``digit(n)`` for ``n ≥ 1``.  The pattern kinds also know
their supports symbolically; opaque kinds fall back to explicit prefixes.
"""
import logging
import threading
from collections import namedtuple
from fractions import Fraction
from math import gcd

from .intsets import (
    EMPTY,
    POSITIVE,
    CofiniteSet,
    FiniteSet,
    HorizonError,
    LazySet,
    PrefixSet,
    ResidueSet,
    boundaries,
    complement,
    difference,
    intersect,
    isolated_points_only,
    residue,
    set_from_record,
    shift,
    union,
)
from .scale import ConstantRatio, equal_set
from .util import parse_fraction
from .verdict import fails, holds, unknown

log = logging.getLogger(__name__)

HALF = Fraction(1, 2)
DEFAULT_BUDGET = 512
DEFAULT_WINDOW = 2000


class UndefinedComponentsError(ValueError):
    """Raised when atomic components are requested for a finite b-support."""


def _prefix_set(predicate, window):
    return PrefixSet((n for n in range(1, window + 1) if predicate(n)), window)


# ---------------------------------------------------------------------------
# Value rules: the digit c_n as a function of n and b_n
# ---------------------------------------------------------------------------


class ValueRule:
    """
    ``limit_class`` names what ``c_n/b_n`` tends to where ``b_n → ∞``:
    ``"zero"``, ``"one"`` or `None` (neither).
    """

    limit_class = None

    def value(self, n, b):
        raise NotImplementedError

    def support(self, piece, ratio, window):
        """ Indices of ``piece`` where the digit is nonzero. """
        raise NotImplementedError

    def b_support(self, piece, ratio, window):
        """ Indices of ``piece`` where the digit equals ``b_n − 1``. """
        raise NotImplementedError

    def not_one(self, piece, ratio, window):
        """ Indices of ``piece`` with a digit outside ``{0, 1}``, or `None`. """
        return None

    def check_valid(self, piece, ratio):
        pass

    @property
    def key(self):
        return self.to_record()

    def __eq__(self, other):
        if not isinstance(other, ValueRule):
            return NotImplemented
        return self.key == other.key

    def __hash__(self):
        return hash(repr(self.key))

    def __repr__(self):
        return f"<{type(self).__name__} {self.render()}>"


class ConstantValue(ValueRule):
    limit_class = "zero"

    def __init__(self, c):
        if not isinstance(c, int) or isinstance(c, bool) or c < 0:
            raise ValueError(f"Constant digit must be a nonnegative integer; given: {c!r}")
        self.c = c

    def value(self, n, b):
        if self.c >= b:
            raise ValueError(f"Digit c_{n} = {self.c} is not below b_{n} = {b}")
        return self.c

    def support(self, piece, ratio, window):
        return EMPTY if self.c == 0 else piece

    def b_support(self, piece, ratio, window):
        if self.c == 0:
            return EMPTY
        hits = equal_set(ratio, self.c + 1)
        if hits is None:
            return intersect(piece, _prefix_set(lambda n: ratio.ratio_at(n) == self.c + 1, window))
        return intersect(piece, hits)

    def not_one(self, piece, ratio, window):
        return EMPTY if self.c <= 1 else piece

    def check_valid(self, piece, ratio):
        if self.c == 0:
            return
        too_small = ratio.level_set(self.c)
        if too_small is not None and intersect(piece, too_small).is_empty() is False:
            raise ValueError(
                f"Digit {self.c} on {piece.render()} meets indices with b_n ≤ {self.c}"
            )

    def render(self):
        return str(self.c)

    def to_record(self):
        return {"value": "constant", "c": self.c}


class BMinus(ValueRule):
    """ ``c_n = max(b_n − k, 0)``. """

    limit_class = "one"

    def __init__(self, k=1):
        if not isinstance(k, int) or isinstance(k, bool) or k < 1:
            raise ValueError(f"BMinus offset must be a positive integer; given: {k!r}")
        self.k = k

    def value(self, n, b):
        return max(b - self.k, 0)

    def support(self, piece, ratio, window):
        if self.k == 1:
            return piece
        low = ratio.level_set(self.k)
        if low is None:
            return intersect(piece, _prefix_set(lambda n: ratio.ratio_at(n) > self.k, window))
        return difference(piece, low)

    def b_support(self, piece, ratio, window):
        return piece if self.k == 1 else EMPTY

    def not_one(self, piece, ratio, window):
        ones = equal_set(ratio, self.k + 1)
        zeros = ratio.level_set(self.k)
        if ones is None or zeros is None:
            return None
        return difference(piece, union(ones, zeros))

    def render(self):
        return f"b-{self.k}"

    def to_record(self):
        return {"value": "bminus", "k": self.k}


class FloorHalfB(ValueRule):
    """ ``c_n = ⌊b_n/2⌋``. """

    def value(self, n, b):
        return b // 2

    def support(self, piece, ratio, window):
        return piece

    def b_support(self, piece, ratio, window):
        twos = equal_set(ratio, 2)
        if twos is None:
            return intersect(piece, _prefix_set(lambda n: ratio.ratio_at(n) == 2, window))
        return intersect(piece, twos)

    def not_one(self, piece, ratio, window):
        small = ratio.level_set(3)
        return None if small is None else difference(piece, small)

    def render(self):
        return "floor(b/2)"

    def to_record(self):
        return {"value": "floor_half"}


class ComplementValue(ValueRule):
    """ ``c_n = b_n − 1 − base(n)``. """

    def __init__(self, base):
        self.base = base

    @property
    def limit_class(self):
        return {"zero": "one", "one": "zero"}.get(self.base.limit_class)

    def value(self, n, b):
        return b - 1 - self.base.value(n, b)

    def support(self, piece, ratio, window):
        return difference(piece, self.base.b_support(piece, ratio, window))

    def b_support(self, piece, ratio, window):
        return difference(piece, self.base.support(piece, ratio, window))

    def render(self):
        return f"b-1-({self.base.render()})"

    def to_record(self):
        return {"value": "complement", "base": self.base.to_record()}


class PrefixValue(ValueRule):
    """ Explicit digits ``c_1, …, c_p`` then ``tail`` for ``n > p``. """

    def __init__(self, digits, tail):
        self.digits = tuple(digits)
        for c in self.digits:
            if not isinstance(c, int) or c < 0:
                raise ValueError(f"Explicit digits must be nonnegative integers; given: {c!r}")
        self.tail = tail

    @property
    def limit_class(self):
        return self.tail.limit_class

    @property
    def _head(self):
        return FiniteSet(range(len(self.digits) + 1))

    def value(self, n, b):
        if n <= len(self.digits):
            c = self.digits[n - 1]
            if c >= b:
                raise ValueError(f"Digit c_{n} = {c} is not below b_{n} = {b}")
            return c
        return self.tail.value(n, b)

    def support(self, piece, ratio, window):
        head = FiniteSet(n for n, c in enumerate(self.digits, 1) if c and piece.member(n))
        return union(head, difference(self.tail.support(piece, ratio, window), self._head))

    def b_support(self, piece, ratio, window):
        head = FiniteSet(
            n for n, c in enumerate(self.digits, 1)
            if piece.member(n) and c == ratio.ratio_at(n) - 1
        )
        return union(head, difference(self.tail.b_support(piece, ratio, window), self._head))

    def not_one(self, piece, ratio, window):
        rest = self.tail.not_one(piece, ratio, window)
        if rest is None:
            return None
        head = FiniteSet(n for n, c in enumerate(self.digits, 1) if c > 1 and piece.member(n))
        return union(head, difference(rest, self._head))

    def render(self):
        return f"({', '.join(map(str, self.digits))}) then {self.tail.render()}"

    def to_record(self):
        return {"value": "prefix", "digits": list(self.digits), "tail": self.tail.to_record()}


def value_from_record(record):
    """ ``1``, ``"b-1"``, ``"floor(b/2)"`` or ``{"value": ..., ...}``. """
    if isinstance(record, ValueRule):
        return record
    if isinstance(record, int) and not isinstance(record, bool):
        return ConstantValue(record)
    if record == "b-1":
        return BMinus(1)
    if record == "floor(b/2)":
        return FloorHalfB()
    if not isinstance(record, dict):
        raise ValueError(f"Digit value must be an integer or a record; given: {record!r}")
    kind = record.get("value")
    if kind == "constant":
        return ConstantValue(record["c"])
    if kind == "bminus":
        return BMinus(record.get("k", 1))
    if kind == "floor_half":
        return FloorHalfB()
    if kind == "complement":
        return ComplementValue(value_from_record(record["base"]))
    if kind == "prefix":
        return PrefixValue(record["digits"], value_from_record(record["tail"]))
    raise ValueError(f"Unknown digit value rule: {kind!r}")


# ---------------------------------------------------------------------------
# Streams
# ---------------------------------------------------------------------------

Supports = namedtuple("Supports", "support b_support")
LimitProfile = namedtuple("LimitProfile", "good_one good_zero good_phi region")


class DigitStream:
    """
    Base class.  Derived streams carry ``origin = (base, changed, exact)``:
    their digits agree with ``base`` off the set ``changed``, and differ on all
    of it when ``exact`` is true.
    """

    kind = None
    origin = None

    def __init__(self, ratio):
        self.ratio = ratio

    def digit(self, n):
        raise NotImplementedError

    def digits(self, upto, start=1):
        return [self.digit(n) for n in range(start, upto + 1)]

    def supports(self, window=DEFAULT_WINDOW):
        S = _prefix_set(lambda n: self.digit(n) != 0, window)
        S_b = _prefix_set(lambda n: self.digit(n) == self.ratio.ratio_at(n) - 1, window)
        return Supports(S, S_b)

    def tail_value(self, k):
        """ Exact ``{u_k x} = Σ_{n>k} c_n u_k/u_n`` when the tail is recognised. """
        return None

    def norm_envelope(self, k):
        """ A bound on ``‖u_j x‖`` valid for every ``j ≥ k``, or `None`. """
        return None

    def limit_profile(self, window=DEFAULT_WINDOW):
        S, S_b = self.supports(window)
        return LimitProfile(S_b, EMPTY, EMPTY, None)

    def render(self):
        raise NotImplementedError

    def to_record(self):
        raise NotImplementedError

    def __repr__(self):
        return f"<{type(self).__name__} {self.render()}>"


def _eventual_period(sets):
    """
    ``(n0, p)`` such that membership in every set is ``p``-periodic on
    ``[n0, ∞)``, or `None`.
    """
    n0, period = 1, 1
    for s in sets:
        nf = s.normal_form()
        if nf is None:
            return None
        core, cutoff = nf
        if isinstance(core, FiniteSet):
            cutoff = max(cutoff, core.max_element)
        elif isinstance(core, CofiniteSet):
            cutoff = max([cutoff] + list(core.excluded))
        elif isinstance(core, ResidueSet):
            period = period * core.modulus // gcd(period, core.modulus)
        else:
            return None
        n0 = max(n0, cutoff + 1)
    return n0, period


def _backward_tail(stream, k, anchor, anchor_value):
    """ Walk ``t_j = (c_{j+1} + t_{j+1}) / b_{j+1}`` down from ``anchor`` to ``k``. """
    value = anchor_value
    for j in range(anchor - 1, k - 1, -1):
        value = (stream.digit(j + 1) + value) / stream.ratio.ratio_at(j + 1)
    return value


class PatternDigits(DigitStream):
    """
    Digits given piecewise: ``c_n = rule(n, b_n)`` on each piece set, 0 off
    the pieces.

    :param ratio:  governing `RatioSequence`.
    :param pieces: list of ``(SymbolicSet, ValueRule)``; the sets must be
                   disjoint.  Index 0 is dropped from every set.
    """

    kind = "pattern"

    def __init__(self, ratio, pieces, origin=None):
        super().__init__(ratio)
        cleaned = []
        for piece, rule in pieces:
            rule = value_from_record(rule)
            if piece.member(0):
                piece = intersect(piece, POSITIVE)
            if piece.is_empty():
                continue
            rule.check_valid(piece, ratio)
            cleaned.append((piece, rule))
        for i, (p, _) in enumerate(cleaned):
            for q, _ in cleaned[i + 1:]:
                if intersect(p, q).is_empty() is False:
                    raise ValueError(f"Digit pieces {p.render()} and {q.render()} overlap")
        self.pieces = tuple(cleaned)
        self.origin = origin
        self._supports = None
        self._lock = threading.Lock()
        if self.supports().b_support.is_cofinite():
            raise ValueError(
                "Digits equal b_n − 1 from some index on; that is not a canonical expansion"
            )

    def digit(self, n):
        if n < 1:
            raise ValueError(f"Digits are indexed from 1; given: {n!r}")
        for piece, rule in self.pieces:
            if piece.member(n):
                return rule.value(n, self.ratio.ratio_at(n))
        return 0

    def supports(self, window=DEFAULT_WINDOW):
        with self._lock:
            if self._supports is None:
                S = EMPTY
                S_b = EMPTY
                for piece, rule in self.pieces:
                    S = union(S, rule.support(piece, self.ratio, window))
                    S_b = union(S_b, rule.b_support(piece, self.ratio, window))
                self._supports = Supports(S, S_b)
            return self._supports

    def tail_value(self, k):
        S = self.supports().support
        if S.is_finite():
            core, cutoff = S.normal_form()
            top = max(cutoff, core.max_element, 0)
            if k >= top:
                return Fraction(0)
            return _backward_tail(self, k, top, Fraction(0))
        if not isinstance(self.ratio, ConstantRatio):
            return None
        periodic = _eventual_period([piece for piece, _ in self.pieces])
        if periodic is None:
            return None
        n0, p = periodic
        anchor = max(k, n0 - 1)
        b = self.ratio.b
        block = 0
        for i in range(1, p + 1):
            block = block * b + self.digit(anchor + i)
        anchor_value = Fraction(block, b ** p - 1)
        return _backward_tail(self, k, anchor, anchor_value)

    def norm_envelope(self, k):
        S = self.supports().support
        if S.is_finite():
            core, cutoff = S.normal_form()
            if k >= max(cutoff, core.max_element, 0):
                return Fraction(0)
            return None
        if not all(isinstance(rule, ConstantValue) for _, rule in self.pieces):
            return None
        low = self.ratio.min_beyond(k)
        if low is None:
            return None
        c_max = max(rule.c for _, rule in self.pieces)
        return min(Fraction(c_max, low - 1), HALF)

    def limit_profile(self, window=DEFAULT_WINDOW):
        S, S_b = self.supports(window)
        region = self.ratio.bounded_region()
        if region is None:
            return LimitProfile(S_b, EMPTY, EMPTY, None)
        to_one, to_zero = EMPTY, EMPTY
        for piece, rule in self.pieces:
            tail = difference(rule.support(piece, self.ratio, window), region)
            if rule.limit_class == "one":
                to_one = union(to_one, tail)
            elif rule.limit_class == "zero":
                to_zero = union(to_zero, tail)
        return LimitProfile(union(S_b, to_one), to_zero, union(to_zero, to_one), region)

    def render(self):
        parts = [f"{rule.render()} on {piece.render()}" for piece, rule in self.pieces]
        return "c_n = " + ("; ".join(parts) if parts else "0")

    def to_record(self):
        return {
            "source": "pattern",
            "pieces": [
                {"set": piece.to_record(), "value": rule.to_record()}
                for piece, rule in self.pieces
            ],
        }


class RationalDigits(DigitStream):
    """
    Greedy digits of an exact rational: ``r_0 = x``, ``c_n = ⌊b_n r_{n−1}⌋``,
    ``r_n = b_n r_{n−1} − c_n``.  ``r_n`` is ``{u_n x}``.
    """

    kind = "rational"
    period_search_limit = 20000

    def __init__(self, x, ratio, n_max=0):
        super().__init__(ratio)
        x = Fraction(x)
        if not 0 <= x < 1:
            raise ValueError(f"Digit extraction needs 0 ≤ x < 1; given: {x!r}")
        self.x = x
        self._digits = [0]
        self._rests = [x]
        self._lock = threading.Lock()
        self._period = False
        self._ensure(n_max)

    def _ensure(self, n):
        if n < len(self._digits):
            return
        with self._lock:
            while len(self._digits) <= n:
                m = len(self._digits)
                scaled = self._rests[-1] * self.ratio.ratio_at(m)
                c = scaled.numerator // scaled.denominator
                self._digits.append(c)
                self._rests.append(scaled - c)

    def digit(self, n):
        if n < 1:
            raise ValueError(f"Digits are indexed from 1; given: {n!r}")
        self._ensure(n)
        return self._digits[n]

    def remainder(self, n):
        self._ensure(n)
        return self._rests[n]

    def eventual_period(self):
        """
        ``(s, p)``: ``r_{n+p} = r_n`` for ``n ≥ s`` (``p = 0`` when the digits
        terminate at ``s``), or `None` when the ratio is not constant and the
        digits do not terminate within the search limit.
        """
        if self._period is not False:
            return self._period
        result = None
        seen = {}
        constant = isinstance(self.ratio, ConstantRatio)
        for n in range(self.period_search_limit):
            r = self.remainder(n)
            if r == 0:
                result = (n, 0)
                break
            if constant:
                if r in seen:
                    result = (seen[r], n - seen[r])
                    break
                seen[r] = n
        self._period = result
        return result

    def supports(self, window=DEFAULT_WINDOW):
        period = self.eventual_period()
        if period is None:
            return super().supports(window)
        s, p = period
        b = self.ratio.ratio_at

        def build(predicate):
            head = FiniteSet(n for n in range(1, s + 1) if predicate(n))
            if p == 0:
                return head
            cycle = {n % p for n in range(s + 1, s + p + 1) if predicate(n)}
            tail = residue(p, cycle)
            return union(head, difference(tail, FiniteSet(range(s + 1))))

        return Supports(
            build(lambda n: self.digit(n) != 0),
            build(lambda n: self.digit(n) == b(n) - 1),
        )

    def tail_value(self, k):
        return self.remainder(k)

    def norm_envelope(self, k):
        period = self.eventual_period()
        if period is None:
            return None
        s, p = period
        if p == 0:
            return Fraction(0) if k >= s else None
        rests = [self.remainder(n) for n in range(k, max(k, s) + p)]
        return max(min(r, 1 - r) for r in rests)

    def render(self):
        return f"digits of {self.x}"

    def to_record(self):
        return {"source": "rational", "x": str(self.x)}


class ModifiedDigits(DigitStream):
    """ ``base`` with the digits on ``patch`` replaced by ``rule``. """

    kind = "modified"

    def __init__(self, base, patch, rule):
        super().__init__(base.ratio)
        self.base = base
        self.patch = patch
        self.rule = value_from_record(rule)
        self.origin = (base, patch, False)

    def digit(self, n):
        if self.patch.member(n):
            return self.rule.value(n, self.ratio.ratio_at(n))
        return self.base.digit(n)

    def supports(self, window=DEFAULT_WINDOW):
        S, S_b = self.base.supports(window)
        piece = intersect(self.patch, POSITIVE)
        return Supports(
            union(difference(S, self.patch), self.rule.support(piece, self.ratio, window)),
            union(difference(S_b, self.patch), self.rule.b_support(piece, self.ratio, window)),
        )

    def render(self):
        return f"{self.base.render()} with {self.rule.render()} on {self.patch.render()}"

    def to_record(self):
        return {
            "source": "modified",
            "base": self.base.to_record(),
            "patch": self.patch.to_record(),
            "value": self.rule.to_record(),
        }


class MaskedDigits(ModifiedDigits):
    """ ``base`` restricted to ``mask`` (digits zeroed elsewhere). """

    kind = "masked"

    def __init__(self, base, mask):
        super().__init__(base, complement(mask), ConstantValue(0))
        self.mask = mask

    def render(self):
        return f"{self.base.render()} masked to {self.mask.render()}"

    def to_record(self):
        return {"source": "masked", "base": self.base.to_record(), "mask": self.mask.to_record()}


def modify(d, patch, rule):
    """ Replace the digits of ``d`` on ``patch`` by ``rule``. """
    rule = value_from_record(rule)
    if isinstance(d, PatternDigits):
        pieces = [(difference(piece, patch), r) for piece, r in d.pieces]
        pieces.append((patch, rule))
        return PatternDigits(d.ratio, pieces, origin=(d, patch, False))
    return ModifiedDigits(d, patch, rule)


def mask_digits(d, mask):
    """ Keep the digits of ``d`` on ``mask`` only (``x_B`` for ``B = mask``). """
    if isinstance(d, PatternDigits):
        pieces = [(intersect(piece, mask), r) for piece, r in d.pieces]
        return PatternDigits(d.ratio, pieces, origin=(d, complement(mask), False))
    return MaskedDigits(d, mask)


def extract_digits(x, seq, n_max=0):
    """
    Greedy Cantor digits of the exact rational ``x ∈ [0, 1)`` under ``seq``;
    the first ``n_max`` digits are computed eagerly.
    """
    return RationalDigits(x, seq, n_max)


def complement_digits(d):
    """
    The stream with ``c'_n = b_n − 1 − c_n``; its value plus the value of ``d``
    is exactly 1.

    :raises ValueError: when the support of ``d`` is finite (the complement
                        would end in digits ``b_n − 1``).
    """
    S = d.supports().support
    if S.is_finite():
        raise ValueError("Complement digits need an infinite support")
    if isinstance(d, RationalDigits):
        return RationalDigits(1 - d.x, d.ratio)
    if isinstance(d, PatternDigits):
        covered = EMPTY
        pieces = []
        for piece, rule in d.pieces:
            covered = union(covered, piece)
            pieces.append((piece, ComplementValue(rule)))
        pieces.append((difference(POSITIVE, covered), BMinus(1)))
        return PatternDigits(d.ratio, pieces)
    raise TypeError(f"Complement digits need a pattern or rational stream; given: {d!r}")


def digits_from_record(record, ratio, refs=None):
    """ Build a stream from ``{"source": ..., ...}``. """
    if isinstance(record, DigitStream):
        return record
    if not isinstance(record, dict) or "source" not in record:
        raise ValueError(f"Digit record needs a 'source' field; given: {record!r}")
    source = record["source"]
    if source == "pattern":
        pieces = [
            (set_from_record(p["set"], refs), value_from_record(p["value"]))
            for p in record.get("pieces", ())
        ]
        return PatternDigits(ratio, pieces)
    if source == "rational":
        return extract_digits(parse_fraction(record["x"]), ratio)
    if source == "modified":
        base = digits_from_record(record["base"], ratio, refs)
        return modify(base, set_from_record(record["patch"], refs), record["value"])
    if source == "masked":
        base = digits_from_record(record["base"], ratio, refs)
        return mask_digits(base, set_from_record(record["mask"], refs))
    if source == "complement":
        return complement_digits(digits_from_record(record["base"], ratio, refs))
    raise ValueError(f"Unknown digit source: {source!r}")


# ---------------------------------------------------------------------------
# Evaluation
# ---------------------------------------------------------------------------

TailInterval = namedtuple("TailInterval", "low high exact")


class NormInterval(namedtuple("NormInterval", "low high resolved steps")):
    """ ``‖u_k x‖ ∈ [low, high] ⊆ [0, 1/2]``. """

    __slots__ = ()

    @property
    def width(self):
        return self.high - self.low

    @property
    def exact(self):
        return self.low == self.high

    def render(self):
        if self.exact:
            return str(self.low)
        return f"[{float(self.low):.6g}, {float(self.high):.6g}]"


def eval_with_tail(d, n):
    """
    ``[s_n, s_n + 1/u_n]`` with ``s_n = Σ_{i≤n} c_i/u_i``; ``exact`` is the
    value of ``x`` when the tail is recognised, else `None`.
    """
    if n < 1:
        raise ValueError(f"Evaluation needs n ≥ 1; given: {n!r}")
    num, scale = 0, 1
    for i in range(1, n + 1):
        b = d.ratio.ratio_at(i)
        num = num * b + d.digit(i)
        scale *= b
    low = Fraction(num, scale)
    tail = d.tail_value(n)
    exact = None if tail is None else low + tail / scale
    return TailInterval(low, low + Fraction(1, scale), exact)


def _fold(low, high):
    if high <= HALF:
        return low, high
    if low >= HALF:
        return 1 - high, 1 - low
    return min(low, 1 - high), HALF


def fractional_part(d, k):
    """ Exact ``{u_k x}``, or `None` when the tail is not recognised. """
    return d.tail_value(k)


def circle_norm(d, k, resolution, budget=DEFAULT_BUDGET, target=None):
    """
    Interval for ``‖u_k x‖``.

    ``{u_k x}`` is refined one digit at a time until the folded interval is
    narrower than ``resolution``, or lies entirely on one side of ``target``
    when one is given, or ``budget`` digits have been used.
    """
    if k < 0:
        raise ValueError(f"Norm index must be nonnegative; given: {k!r}")
    if resolution <= 0:
        raise ValueError(f"Resolution must be positive; given: {resolution!r}")
    exact = d.tail_value(k)
    if exact is not None:
        value = min(exact, 1 - exact)
        return NormInterval(value, value, True, 0)
    num, scale = 0, 1
    low, high = Fraction(0), HALF
    for step in range(1, budget + 1):
        m = k + step
        try:
            c = d.digit(m)
        except HorizonError:
            return NormInterval(low, high, False, step - 1)
        b = d.ratio.ratio_at(m)
        num = num * b + c
        scale *= b
        low, high = _fold(Fraction(num, scale), Fraction(num + 1, scale))
        if high - low < resolution:
            return NormInterval(low, high, True, step)
        if target is not None and (low >= target or high < target):
            return NormInterval(low, high, False, step)
    log.debug("circle_norm at k=%d exhausted a budget of %d digits", k, budget)
    return NormInterval(low, high, False, budget)


def norm_envelope(d, k):
    return d.norm_envelope(k)


def supports(d, window=DEFAULT_WINDOW):
    return d.supports(window)


def limit_profile(d, window=DEFAULT_WINDOW):
    return d.limit_profile(window)


# ---------------------------------------------------------------------------
# Truncation, atomic components, equivalence
# ---------------------------------------------------------------------------


def flat_truncation(d, window=DEFAULT_WINDOW):
    """ ``x^♭``: digits ``b_n − 1`` on ``S_b`` and 0 elsewhere. """
    S, S_b = d.supports(window)
    if S == S_b:
        return d
    return PatternDigits(d.ratio, [(S_b, BMinus(1))], origin=(d, difference(S, S_b), True))


def atomic_components(d, window=DEFAULT_WINDOW):
    """
    ``(α^{(l)}, α^{(r)})`` with digits 1 on ``{l_n − 1}`` and on ``{r_n}`` for
    the maximal blocks ``[l_n, r_n]`` of ``S_b``, so that ``x^♭ = α^{(l)} −
    α^{(r)}``. The identity is exact unless ``1 ∈ S_b``; then the term
    ``1/u_0 = 1`` of the first block has no digit and the two sides differ by 1.
    """
    S, S_b = d.supports(window)
    if S_b.is_finite() or S_b.is_empty():
        raise UndefinedComponentsError(
            f"Atomic components need an infinite b-support; S_b = {S_b.render()}"
        )
    if S.is_cofinite():
        raise UndefinedComponentsError("Atomic components need a support that is not cofinite")
    left, right, _ = boundaries(S_b)
    lefts = intersect(shift(left, -1), POSITIVE)
    return (
        PatternDigits(d.ratio, [(lefts, ConstantValue(1))]),
        PatternDigits(d.ratio, [(right, ConstantValue(1))]),
    )


def is_atomic(d, window=DEFAULT_WINDOW):
    """ Holds iff every nonzero digit is 1 and the support has isolated points. """
    rule = "atomic: nonzero digits equal 1 on isolated points"
    S, _ = d.supports(window)
    if isinstance(d, PatternDigits):
        not_one = EMPTY
        for piece, value in d.pieces:
            part = value.not_one(piece, d.ratio, window)
            if part is None:
                not_one = None
                break
            not_one = union(not_one, part)
        isolated = isolated_points_only(S)
        if not_one is not None and not_one.is_empty() is False:
            witness = next(iter(not_one.elements(window)), None)
            return fails(rule, witness=witness, digit=None if witness is None else d.digit(witness))
        if isolated is False:
            pair = next((n for n in S.elements(window) if S.member(n + 1)), None)
            return fails(rule, consecutive=pair)
        if not_one is not None and not_one.is_empty() and isolated:
            return holds(rule, analytic=True)
    upto = window
    if isinstance(d, RationalDigits):
        period = d.eventual_period()
        if period is not None:
            upto = period[0] + 2 * max(period[1], 1) + 1
    previous = False
    for n in range(1, upto + 1):
        c = d.digit(n)
        if c > 1:
            return fails(rule, witness=n, digit=c)
        if c and previous:
            return fails(rule, consecutive=n - 1)
        previous = bool(c)
    if isinstance(d, RationalDigits) and d.eventual_period() is not None:
        return holds(rule, analytic=True, checked=upto)
    return unknown(rule, checked=window)


def disagreement_set(d1, d2, window=DEFAULT_WINDOW):
    """
    ``{n : c_n(d1) ≠ c_n(d2)}``; exact when one stream is the ♭-truncation of
    the other, otherwise lazy with structural covers.
    """
    if d1 is d2:
        return EMPTY
    covers = []
    for a, b in ((d1, d2), (d2, d1)):
        if b.origin is not None and b.origin[0] is a:
            _, changed, exact = b.origin
            if exact:
                return changed
            covers.append(changed)
    if isinstance(d1, PatternDigits) and isinstance(d2, PatternDigits):
        cover = EMPTY
        all1 = EMPTY
        all2 = EMPTY
        for p, r in d1.pieces:
            all1 = union(all1, p)
        for q, s in d2.pieces:
            all2 = union(all2, q)
        for p, r in d1.pieces:
            for q, s in d2.pieces:
                if r != s:
                    cover = union(cover, intersect(p, q))
        S1 = d1.supports(window).support
        S2 = d2.supports(window).support
        cover = union(cover, union(difference(S1, all2), difference(S2, all1)))
        covers.append(cover)
    return LazySet(
        f"Δ({d1.render()}, {d2.render()})",
        lambda n: n >= 1 and d1.digit(n) != d2.digit(n),
        covers,
    )


def digit_equiv(d1, d2, ideal, window=DEFAULT_WINDOW):
    """ ``x ≡_𝕀 y``: the disagreement set lies in the ideal. """
    if d1.ratio is not d2.ratio and d1.ratio.to_record() != d2.ratio.to_record():
        raise ValueError(
            f"Digit equivalence needs one ratio sequence; given "
            f"{d1.ratio.render()!r} and {d2.ratio.render()!r}"
        )
    delta = disagreement_set(d1, d2, window)
    verdict = ideal.membership(delta)
    return verdict.with_evidence(disagreement=delta.render())
