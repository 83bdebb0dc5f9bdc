"""
Symbolic subsets of ℕ.

A :class:`SymbolicSet` answers membership and counting queries and also knows
its structural form, so that boundaries, finiteness and ideal membership can
be decided exactly instead of sampled.  Primitive forms are

* :class:`FiniteSet` and :class:`CofiniteSet`,
* :class:`ResidueSet` (a union of residue classes),
* :class:`IntervalUnion` (blocks ``[l(j), r(j)]`` with affine or quadratic
  index rules),
* :class:`PrefixSet` (explicit elements valid up to a horizon).

Algebra nodes (union, intersection, difference, complement, shift) are built
through the module level factories, which simplify eagerly.  Every node that
eventually agrees with a primitive form reports it through
:meth:`SymbolicSet.normal_form` as ``(core, cutoff)``: beyond ``cutoff`` the
node and ``core`` have the same elements.
"""
import bisect
import itertools
import logging
import threading
from collections import namedtuple
from fractions import Fraction
from math import gcd

from .verdict import fails, holds

log = logging.getLogger(__name__)


class HorizonError(ValueError):
    """Raised when a prefix-only set is queried beyond its horizon."""


def _lcm(a, b):
    return a * b // gcd(a, b)


def _check_index(n):
    if not isinstance(n, int) or isinstance(n, bool):
        raise TypeError(f"Set queries take integer indices; given: {n!r}")


class QuadraticRule:
    """
    An index rule ``j ↦ a·j² + b·j + c`` with integer coefficients.

    Used as generator of :class:`IntervalUnion` blocks and of
    :class:`NestedPair` sequences.
    """

    __slots__ = ("a", "b", "c")

    def __init__(self, a=0, b=1, c=0):
        for name, coeff in (("a", a), ("b", b), ("c", c)):
            if not isinstance(coeff, int) or isinstance(coeff, bool):
                raise TypeError(
                    f"Rule coefficient {name} must be an integer; given: {coeff!r}"
                )
        self.a, self.b, self.c = a, b, c

    @classmethod
    def from_record(cls, record):
        if isinstance(record, QuadraticRule):
            return record
        if isinstance(record, dict):
            return cls(record.get("a", 0), record.get("b", 0), record.get("c", 0))
        if isinstance(record, (list, tuple)) and len(record) == 3:
            return cls(*record)
        raise ValueError(f"Index rule must be [a, b, c] or {{a, b, c}}; given: {record!r}")

    def __call__(self, j):
        return (self.a * j + self.b) * j + self.c

    @property
    def degree(self):
        if self.a:
            return 2
        if self.b:
            return 1
        return 0

    @property
    def lead(self):
        return self.a or self.b or self.c

    @property
    def is_zero(self):
        return not (self.a or self.b or self.c)

    @property
    def key(self):
        return (self.a, self.b, self.c)

    def __eq__(self, other):
        if not isinstance(other, QuadraticRule):
            return NotImplemented
        return self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __add__(self, other):
        if isinstance(other, QuadraticRule):
            return QuadraticRule(self.a + other.a, self.b + other.b, self.c + other.c)
        return QuadraticRule(self.a, self.b, self.c + other)

    def __sub__(self, other):
        if isinstance(other, QuadraticRule):
            return QuadraticRule(self.a - other.a, self.b - other.b, self.c - other.c)
        return QuadraticRule(self.a, self.b, self.c - other)

    def advance(self, k=1):
        """ The rule ``j ↦ self(j + k)``. """
        a, b, c = self.a, self.b, self.c
        return QuadraticRule(a, 2 * a * k + b, a * k * k + b * k + c)

    def _vertex_candidates(self, j0):
        candidates = {j0}
        if self.a > 0:
            # floor and ceil of -b / 2a
            num, den = -self.b, 2 * self.a
            low = num // den
            candidates.update(j for j in (low, low + 1) if j >= j0)
        return candidates

    def min_from(self, j0):
        """ Minimum of the rule over integers ``j ≥ j0``, or `None` if unbounded. """
        if self.a < 0 or (self.a == 0 and self.b < 0):
            return None
        return min(self(j) for j in self._vertex_candidates(j0))

    def zeros_from(self, j0):
        """ Integer zeros ``j ≥ j0`` of a rule that is nonnegative there. """
        if self.is_zero:
            raise ValueError("The zero rule has infinitely many zeros")
        return sorted(j for j in self._vertex_candidates(j0) if self(j) == 0)

    def first_at_least(self, value, j0):
        """
        Smallest ``j ≥ j0`` with ``self(j) ≥ value``; the rule must be
        nondecreasing on ``[j0, ∞)``.
        """
        if self(j0) >= value:
            return j0
        if self.degree == 0:
            raise ValueError(f"Constant rule {self.render()} never reaches {value}")
        lo, step = j0, 1
        hi = j0 + step
        while self(hi) < value:
            lo = hi
            step *= 2
            hi = j0 + step
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if self(mid) >= value:
                hi = mid
            else:
                lo = mid
        return hi

    def partial_sum(self, j0, j1):
        """ Exact ``Σ_{j0 ≤ j < j1} self(j)`` by Faulhaber's formulas. """
        if j1 <= j0:
            return 0

        def s1(n):
            return n * (n - 1) // 2

        def s2(n):
            return (n - 1) * n * (2 * n - 1) // 6

        return (
            self.a * (s2(j1) - s2(j0))
            + self.b * (s1(j1) - s1(j0))
            + self.c * (j1 - j0)
        )

    def render(self, var="j"):
        terms = []
        for coeff, power in ((self.a, 2), (self.b, 1), (self.c, 0)):
            if not coeff:
                continue
            mono = {2: f"{var}²", 1: var, 0: ""}[power]
            if power and abs(coeff) == 1:
                text = mono
            else:
                text = f"{abs(coeff)}{mono}"
            sign = "-" if coeff < 0 else "+"
            terms.append((sign, text))
        if not terms:
            return "0"
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, text in terms[1:]:
            out += f"{sign}{text}"
        return out

    def to_record(self):
        return [self.a, self.b, self.c]

    def __repr__(self):
        return f"QuadraticRule({self.a}, {self.b}, {self.c})"


class SymbolicSet:
    """
    Base class of all set forms.

    Subclasses implement :meth:`member`, :meth:`key`, :meth:`render` and
    :meth:`to_record`; counting and enumeration fall back to scanning.
    """

    horizon = None
    primitive = False

    def __init__(self):
        self._supersets = frozenset()

    # -- identity --------------------------------------------------------
    @property
    def key(self):
        raise NotImplementedError

    def __eq__(self, other):
        if not isinstance(other, SymbolicSet):
            return NotImplemented
        return self is other or self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"<{type(self).__name__} {self.render()}>"

    # -- queries ---------------------------------------------------------
    def member(self, n):
        raise NotImplementedError

    def __contains__(self, n):
        return n >= 0 and self.member(n)

    def _check_horizon(self, n):
        if self.horizon is not None and n > self.horizon:
            raise HorizonError(
                f"{self.render()} is only known up to {self.horizon}; queried {n}"
            )

    def count(self, n):
        """ ``|A ∩ [0, n]|``. """
        if n < 0:
            return 0
        self._check_horizon(n)
        nf = self.normal_form()
        if nf is not None:
            core, cutoff = nf
            if n <= cutoff:
                return sum(1 for i in range(n + 1) if self.member(i))
            head = sum(1 for i in range(cutoff + 1) if self.member(i))
            return head + core.count(n) - core.count(cutoff)
        return sum(1 for i in range(n + 1) if self.member(i))

    def elements(self, upto):
        """ Iterate the elements ``≤ upto`` in increasing order. """
        self._check_horizon(upto)
        return (i for i in range(upto + 1) if self.member(i))

    def normal_form(self):
        """ ``(core, cutoff)`` with ``core`` primitive, or `None`. """
        return None

    def is_finite(self):
        nf = self.normal_form()
        if nf is None:
            return None
        return isinstance(nf[0], FiniteSet)

    def is_cofinite(self):
        nf = self.normal_form()
        if nf is None:
            return None
        return isinstance(nf[0], CofiniteSet)

    def is_empty(self):
        nf = self.normal_form()
        if nf is None:
            return None
        core, cutoff = nf
        if not isinstance(core, FiniteSet):
            return False
        return not any(self.member(i) for i in range(max(cutoff, core.max_element) + 1))

    def known_subset_of(self, other):
        """ Structural (never sampled) test of ``self ⊆ other``. """
        if self == other or other == NATURALS or self == EMPTY:
            return True
        if other.key in self._supersets:
            return True
        return False

    def render(self):
        raise NotImplementedError

    def to_record(self):
        raise NotImplementedError

    # -- operators -------------------------------------------------------
    def __or__(self, other):
        return union(self, other)

    def __and__(self, other):
        return intersect(self, other)

    def __sub__(self, other):
        return difference(self, other)

    def __invert__(self):
        return complement(self)

    def shift(self, k):
        return shift(self, k)


def _with_supersets(result, *supersets):
    result._supersets = result._supersets | {s.key for s in supersets}
    return result


class FiniteSet(SymbolicSet):
    primitive = True

    def __init__(self, elements=()):
        super().__init__()
        items = sorted(set(elements))
        for item in items:
            _check_index(item)
            if item < 0:
                raise ValueError(f"Sets live in ℕ; given negative element {item!r}")
        self.items = tuple(items)

    @property
    def key(self):
        return ("finite", self.items)

    def member(self, n):
        i = bisect.bisect_left(self.items, n)
        return i < len(self.items) and self.items[i] == n

    def count(self, n):
        return bisect.bisect_right(self.items, n)

    def elements(self, upto):
        return iter(self.items[: bisect.bisect_right(self.items, upto)])

    def normal_form(self):
        return self, -1

    def is_finite(self):
        return True

    def is_cofinite(self):
        return False

    def is_empty(self):
        return not self.items

    @property
    def max_element(self):
        return self.items[-1] if self.items else -1

    def render(self):
        if not self.items:
            return "∅"
        return "{" + ", ".join(str(i) for i in self.items) + "}"

    def to_record(self):
        return {"form": "finite", "elements": list(self.items)}


class CofiniteSet(SymbolicSet):
    primitive = True

    def __init__(self, excluded=()):
        super().__init__()
        items = sorted(set(excluded))
        for item in items:
            _check_index(item)
            if item < 0:
                raise ValueError(f"Sets live in ℕ; given negative element {item!r}")
        self.excluded = tuple(items)

    @property
    def key(self):
        return ("cofinite", self.excluded)

    def member(self, n):
        if n < 0:
            return False
        i = bisect.bisect_left(self.excluded, n)
        return not (i < len(self.excluded) and self.excluded[i] == n)

    def count(self, n):
        if n < 0:
            return 0
        return n + 1 - bisect.bisect_right(self.excluded, n)

    def elements(self, upto):
        return (i for i in range(upto + 1) if self.member(i))

    def normal_form(self):
        return self, -1

    def is_finite(self):
        return False

    def is_cofinite(self):
        return True

    def is_empty(self):
        return False

    def render(self):
        if not self.excluded:
            return "ℕ"
        return "ℕ∖{" + ", ".join(str(i) for i in self.excluded) + "}"

    def to_record(self):
        return {"form": "cofinite", "excluded": list(self.excluded)}


EMPTY = FiniteSet(())
NATURALS = CofiniteSet(())
POSITIVE = CofiniteSet((0,))


class ResidueSet(SymbolicSet):
    """ ``{n : n mod m ∈ R}``; build through :func:`residue`. """

    primitive = True

    def __init__(self, modulus, residues):
        super().__init__()
        self.modulus = modulus
        self.residues = tuple(sorted(residues))

    @property
    def key(self):
        return ("residue", self.modulus, self.residues)

    def member(self, n):
        return n >= 0 and (n % self.modulus) in self.residues

    def count(self, n):
        if n < 0:
            return 0
        m = self.modulus
        return sum((n - r) // m + 1 for r in self.residues if r <= n)

    def elements(self, upto):
        m = self.modulus
        for base in range(0, upto + 1, m):
            for r in self.residues:
                if base + r > upto:
                    return
                yield base + r

    def normal_form(self):
        return self, -1

    def is_finite(self):
        return False

    def is_cofinite(self):
        return False

    def is_empty(self):
        return False

    @property
    def density(self):
        return Fraction(len(self.residues), self.modulus)

    def render(self):
        if len(self.residues) == 1:
            r = self.residues[0]
            return f"{self.modulus}ℕ+{r}" if r else f"{self.modulus}ℕ"
        rs = ",".join(str(r) for r in self.residues)
        return f"{{n ≡ {rs} mod {self.modulus}}}"

    def to_record(self):
        return {"form": "residue", "modulus": self.modulus, "residues": list(self.residues)}


def residue(modulus, residues):
    """ Build ``{n : n mod modulus ∈ residues}`` in its smallest period. """
    _check_index(modulus)
    if modulus < 1:
        raise ValueError(f"Residue modulus must be positive; given: {modulus!r}")
    rs = {r % modulus for r in residues}
    if not rs:
        return EMPTY
    if len(rs) == modulus:
        return NATURALS
    for d in range(1, modulus):
        if modulus % d:
            continue
        small = {r % d for r in rs}
        if {r for r in range(modulus) if r % d in small} == rs:
            return ResidueSet(d, small)
    return ResidueSet(modulus, rs)


EVENS = residue(2, {0})
ODDS = residue(2, {1})


class IntervalUnion(SymbolicSet):
    """
    ``⋃_{j ≥ start} [l(j), r(j)]`` for affine or quadratic index rules.

    :param lefts:  `QuadraticRule` for the left ends ``l(j)``.
    :param rights: `QuadraticRule` for the right ends ``r(j)``.
    :param start:  first block index.
    """

    primitive = True

    def __init__(self, lefts, rights, start=0):
        super().__init__()
        lefts = QuadraticRule.from_record(lefts)
        rights = QuadraticRule.from_record(rights)
        _check_index(start)
        if start < 0:
            raise ValueError(f"Block index must start in ℕ; given: {start!r}")
        if lefts(start) < 0:
            raise ValueError(f"First block starts below 0: l({start}) = {lefts(start)}")
        width = rights - lefts
        low = width.min_from(start)
        if low is None or low < 0:
            raise ValueError(
                f"Blocks need l(j) ≤ r(j); {lefts.render()} vs {rights.render()}"
            )
        spacing = lefts.advance(1) - rights
        low = spacing.min_from(start)
        if low is None or low < 1:
            raise ValueError(
                f"Blocks need r(j) < l(j+1); {lefts.render()} vs {rights.render()}"
            )
        self.lefts, self.rights, self.start = lefts, rights, start

    @property
    def key(self):
        return ("interval_union", self.lefts.key, self.rights.key, self.start)

    @property
    def lengths(self):
        return self.rights - self.lefts + 1

    def _blocks_reaching(self, n):
        """ Number of blocks with ``l(j) ≤ n``. """
        if n < self.lefts(self.start):
            return 0
        return self.lefts.first_at_least(n + 1, self.start) - self.start

    def member(self, n):
        k = self._blocks_reaching(n)
        if not k:
            return False
        return n <= self.rights(self.start + k - 1)

    def count(self, n):
        k = self._blocks_reaching(n)
        if not k:
            return 0
        last = self.start + k - 1
        full = self.lengths.partial_sum(self.start, last)
        return full + min(n, self.rights(last)) - self.lefts(last) + 1

    def blocks(self, upto):
        for j in itertools.count(self.start):
            lo = self.lefts(j)
            if lo > upto:
                return
            yield lo, self.rights(j)

    def elements(self, upto):
        for lo, hi in self.blocks(upto):
            yield from range(lo, min(hi, upto) + 1)

    def normal_form(self):
        gap = self.lefts.advance(1) - self.rights - 1
        if gap.is_zero:
            return CofiniteSet(range(self.lefts(self.start))), -1
        zeros = gap.zeros_from(self.start)
        if not zeros:
            return self, -1
        first = zeros[-1] + 1
        core = IntervalUnion(self.lefts, self.rights, first)
        return core, self.lefts(first) - 1

    def is_finite(self):
        return False

    def is_empty(self):
        return False

    def known_subset_of(self, other):
        if super().known_subset_of(other):
            return True
        if isinstance(other, IntervalUnion) and other.start <= self.start:
            # block j of self sits inside block j of other
            lo = (self.lefts - other.lefts).min_from(self.start)
            hi = (other.rights - self.rights).min_from(self.start)
            return lo is not None and hi is not None and lo >= 0 and hi >= 0
        return False

    def render(self):
        l, r = self.lefts.render(), self.rights.render()
        body = f"[{l}]" if self.lefts == self.rights else f"[{l}, {r}]"
        return f"⋃_{{j≥{self.start}}} {body}"

    def to_record(self):
        return {
            "form": "interval_union",
            "lefts": self.lefts.to_record(),
            "rights": self.rights.to_record(),
            "start": self.start,
        }


def image(rule, start=0):
    """ The set ``{rule(j) : j ≥ start}`` of a strictly increasing rule. """
    return IntervalUnion(rule, rule, start)


class PrefixSet(SymbolicSet):
    """ Explicit elements, valid only for indices ``≤ horizon``. """

    def __init__(self, elements, horizon):
        super().__init__()
        _check_index(horizon)
        items = sorted(set(e for e in elements if e <= horizon))
        if items and items[0] < 0:
            raise ValueError(f"Sets live in ℕ; given negative element {items[0]!r}")
        self.items = tuple(items)
        self.horizon = horizon

    @property
    def key(self):
        return ("prefix", self.items, self.horizon)

    def member(self, n):
        if n < 0:
            return False
        self._check_horizon(n)
        i = bisect.bisect_left(self.items, n)
        return i < len(self.items) and self.items[i] == n

    def count(self, n):
        self._check_horizon(n)
        return bisect.bisect_right(self.items, n)

    def elements(self, upto):
        self._check_horizon(upto)
        return iter(self.items[: bisect.bisect_right(self.items, upto)])

    def render(self):
        shown = ", ".join(str(i) for i in self.items[:8])
        more = ", …" if len(self.items) > 8 else ""
        return f"{{{shown}{more}}}≤{self.horizon}"

    def to_record(self):
        return {"form": "prefix", "elements": list(self.items), "horizon": self.horizon}


# ---------------------------------------------------------------------------
# Algebra nodes
# ---------------------------------------------------------------------------


class _Node(SymbolicSet):
    op = None

    def __init__(self, *children):
        super().__init__()
        self.children = children
        horizons = [c.horizon for c in children if c.horizon is not None]
        self.horizon = min(horizons) if horizons else None
        self._count_lock = threading.Lock()
        self._count_memo = (-1, 0)
        self._nf = False

    @property
    def key(self):
        return (self.op,) + tuple(c.key for c in self.children)

    def normal_form(self):
        if self._nf is False:
            self._nf = self._normal_form()
        return self._nf

    def _normal_form(self):
        return None

    def count(self, n):
        if n < 0:
            return 0
        self._check_horizon(n)
        if self.normal_form() is not None:
            return super().count(n)
        with self._count_lock:
            last, total = self._count_memo
            if n < last:
                return sum(1 for i in range(n + 1) if self.member(i))
            total += sum(1 for i in range(last + 1, n + 1) if self.member(i))
            self._count_memo = (n, total)
            return total

    def elements(self, upto):
        self._check_horizon(upto)
        nf = self.normal_form()
        if nf is None or nf[1] >= upto:
            return (i for i in range(upto + 1) if self.member(i))
        core, cutoff = nf
        head = [i for i in range(cutoff + 1) if self.member(i)]
        tail = (i for i in core.elements(upto) if i > cutoff)
        return itertools.chain(head, tail)


class UnionSet(_Node):
    op = "union"

    def member(self, n):
        return any(c.member(n) for c in self.children)

    def _normal_form(self):
        return _combine_nodes("union", *self.children)

    def is_finite(self):
        a, b = (c.is_finite() for c in self.children)
        if a is False or b is False:
            return False
        if a and b:
            return True
        return super().is_finite()

    def render(self):
        a, b = self.children
        return f"({a.render()} ∪ {b.render()})"

    def to_record(self):
        return {"form": "union", "args": [c.to_record() for c in self.children]}


class IntersectionSet(_Node):
    op = "intersect"

    def member(self, n):
        return all(c.member(n) for c in self.children)

    def _normal_form(self):
        return _combine_nodes("intersect", *self.children)

    def is_finite(self):
        a, b = (c.is_finite() for c in self.children)
        if a or b:
            return True
        return super().is_finite()

    def known_subset_of(self, other):
        if super().known_subset_of(other):
            return True
        return any(c.known_subset_of(other) for c in self.children)

    def render(self):
        a, b = self.children
        return f"({a.render()} ∩ {b.render()})"

    def to_record(self):
        return {"form": "intersect", "args": [c.to_record() for c in self.children]}


class DifferenceSet(_Node):
    op = "diff"

    def member(self, n):
        a, b = self.children
        return a.member(n) and not b.member(n)

    def _normal_form(self):
        return _combine_nodes("diff", *self.children)

    def is_finite(self):
        if self.children[0].is_finite():
            return True
        return super().is_finite()

    def known_subset_of(self, other):
        return super().known_subset_of(other) or self.children[0].known_subset_of(other)

    def render(self):
        a, b = self.children
        return f"({a.render()} ∖ {b.render()})"

    def to_record(self):
        return {"form": "diff", "args": [c.to_record() for c in self.children]}


class ComplementSet(_Node):
    op = "complement"

    def member(self, n):
        return n >= 0 and not self.children[0].member(n)

    def _normal_form(self):
        nf = self.children[0].normal_form()
        if nf is None:
            return None
        core, cutoff = nf
        ccore, ccut = _complement_primitive(core)
        return ccore, max(cutoff, ccut)

    def is_finite(self):
        cof = self.children[0].is_cofinite()
        return cof if cof is not None else super().is_finite()

    def render(self):
        return f"{self.children[0].render()}*"

    def to_record(self):
        return {"form": "complement", "args": [self.children[0].to_record()]}


class ShiftSet(_Node):
    op = "shift"

    def __init__(self, child, k):
        super().__init__(child)
        self.k = k
        if child.horizon is not None:
            self.horizon = max(child.horizon + k, -1)

    @property
    def key(self):
        return ("shift", self.k, self.children[0].key)

    def member(self, n):
        m = n - self.k
        return n >= 0 and m >= 0 and self.children[0].member(m)

    def _normal_form(self):
        nf = self.children[0].normal_form()
        if nf is None:
            return None
        core, cutoff = nf
        score, scut = _shift_primitive(core, self.k)
        return score, max(cutoff + self.k, scut)

    def is_finite(self):
        return self.children[0].is_finite()

    def render(self):
        sign = "+" if self.k >= 0 else "−"
        return f"({self.children[0].render()} {sign} {abs(self.k)})"

    def to_record(self):
        return {"form": "shift", "k": self.k, "args": [self.children[0].to_record()]}


class BoundarySet(_Node):
    """
    Lazy λ(A) (``kind="left"``) or ρ(A) (``kind="right"``) of a set without a
    normal form.  Carries a structural superset in ``covers``.
    """

    op = "boundary"

    def __init__(self, kind, base):
        super().__init__(base)
        self.kind = kind
        self._covers = None
        _with_supersets(self, base)

    @property
    def key(self):
        return ("boundary", self.kind, self.children[0].key)

    def member(self, n):
        base = self.children[0]
        if not base.member(n):
            return False
        neighbour = n - 1 if self.kind == "left" else n + 1
        return neighbour < 0 or not base.member(neighbour)

    @property
    def covers(self):
        if self._covers is None:
            self._covers = _boundary_covers(self.kind, self.children[0])
        return self._covers

    def render(self):
        sym = "λ" if self.kind == "left" else "ρ"
        return f"{sym}({self.children[0].render()})"

    def to_record(self):
        return {"form": "boundary", "kind": self.kind, "args": [self.children[0].to_record()]}


class LazySet(SymbolicSet):
    """
    A set given by a membership callback, with optional structural covers
    (supersets).  Used for digit disagreement sets.
    """

    def __init__(self, name, predicate, covers=(), horizon=None):
        super().__init__()
        self.name = name
        self.predicate = predicate
        self.covers = tuple(covers)
        self.horizon = horizon

    @property
    def key(self):
        return ("lazy", self.name)

    def member(self, n):
        if n < 0:
            return False
        self._check_horizon(n)
        return bool(self.predicate(n))

    def is_finite(self):
        if any(c.is_finite() for c in self.covers):
            return True
        return None

    def render(self):
        return self.name

    def to_record(self):
        return {"form": "lazy", "name": self.name}


# ---------------------------------------------------------------------------
# Primitive combination
# ---------------------------------------------------------------------------


def _complement_primitive(p):
    """ Complement of a primitive as ``(core, cutoff)``. """
    if isinstance(p, FiniteSet):
        return CofiniteSet(p.items), -1
    if isinstance(p, CofiniteSet):
        return FiniteSet(p.excluded), -1
    if isinstance(p, ResidueSet):
        rest = set(range(p.modulus)) - set(p.residues)
        return residue(p.modulus, rest), -1
    if isinstance(p, IntervalUnion):
        core, cutoff = p.normal_form()
        if core is not p:
            ccore, ccut = _complement_primitive(core)
            return ccore, max(cutoff, ccut)
        gaps = IntervalUnion(p.rights + 1, p.lefts.advance(1) - 1, p.start)
        head = p.lefts(p.start)
        if head == 0:
            return gaps, -1
        return gaps, head - 1
    raise TypeError(f"Not a primitive set: {p!r}")


def _shift_primitive(p, k):
    if isinstance(p, FiniteSet):
        return FiniteSet(i + k for i in p.items if i + k >= 0), -1
    if isinstance(p, CofiniteSet):
        if k >= 0:
            return CofiniteSet(list(range(k)) + [i + k for i in p.excluded]), -1
        return CofiniteSet(i + k for i in p.excluded if i + k >= 0), -1
    if isinstance(p, ResidueSet):
        moved = residue(p.modulus, {r + k for r in p.residues})
        return moved, (k - 1 if k > 0 else -1)
    if isinstance(p, IntervalUnion):
        first = p.start
        if k < 0:
            first = p.lefts.first_at_least(-k, p.start)
        core = IntervalUnion(p.lefts + k, p.rights + k, first)
        straddles = first > p.start and p.rights(first - 1) + k >= 0
        return core, (core.lefts(first) - 1 if straddles else -1)
    raise TypeError(f"Not a primitive set: {p!r}")


def _join(op, p, q):
    """
    Combine primitives ``p`` and ``q``.  Returns ``(core, cutoff)`` or
    `None` when the result has no primitive form.
    """
    if op == "union":
        if isinstance(q, FiniteSet) and not isinstance(p, FiniteSet):
            p, q = q, p
        if isinstance(q, CofiniteSet) and not isinstance(p, (FiniteSet, CofiniteSet)):
            p, q = q, p
        if isinstance(p, FiniteSet):
            if isinstance(q, FiniteSet):
                return FiniteSet(p.items + q.items), -1
            if isinstance(q, CofiniteSet):
                return CofiniteSet(e for e in q.excluded if not p.member(e)), -1
            return q, p.max_element
        if isinstance(p, CofiniteSet):
            return CofiniteSet(e for e in p.excluded if not q.member(e)), -1
        if isinstance(p, ResidueSet) and isinstance(q, ResidueSet):
            m = _lcm(p.modulus, q.modulus)
            return residue(m, {r for r in range(m) if p.member(r) or q.member(r)}), -1
        if p == q:
            return p, -1
        if isinstance(p, IntervalUnion) and p.known_subset_of(q):
            return q, -1
        if isinstance(q, IntervalUnion) and q.known_subset_of(p):
            return p, -1
        return None
    if op == "intersect":
        if isinstance(q, FiniteSet) and not isinstance(p, FiniteSet):
            p, q = q, p
        if isinstance(q, CofiniteSet) and not isinstance(p, (FiniteSet, CofiniteSet)):
            p, q = q, p
        if isinstance(p, FiniteSet):
            return FiniteSet(i for i in p.items if q.member(i)), -1
        if isinstance(p, CofiniteSet):
            if isinstance(q, CofiniteSet):
                return CofiniteSet(p.excluded + q.excluded), -1
            return q, (p.excluded[-1] if p.excluded else -1)
        if isinstance(p, ResidueSet) and isinstance(q, ResidueSet):
            m = _lcm(p.modulus, q.modulus)
            return residue(m, {r for r in range(m) if p.member(r) and q.member(r)}), -1
        if p == q:
            return p, -1
        if isinstance(p, IntervalUnion) and p.known_subset_of(q):
            return p, -1
        if isinstance(q, IntervalUnion) and q.known_subset_of(p):
            return q, -1
        return None
    if op == "diff":
        if isinstance(p, FiniteSet):
            return FiniteSet(i for i in p.items if not q.member(i)), -1
        if isinstance(q, FiniteSet):
            if isinstance(p, CofiniteSet):
                return CofiniteSet(p.excluded + q.items), -1
            return p, q.max_element
        if isinstance(q, CofiniteSet):
            return FiniteSet(e for e in q.excluded if p.member(e)), -1
        if p == q or p.known_subset_of(q):
            return EMPTY, -1
        if isinstance(p, CofiniteSet):
            ccore, ccut = _complement_primitive(q)
            head = p.excluded[-1] if p.excluded else -1
            return ccore, max(ccut, head)
        if isinstance(p, ResidueSet) and isinstance(q, ResidueSet):
            m = _lcm(p.modulus, q.modulus)
            return residue(m, {r for r in range(m) if p.member(r) and not q.member(r)}), -1
        return None
    raise ValueError(f"Unknown set operation: {op!r}")


def _combine_nodes(op, a, b):
    na, nb = a.normal_form(), b.normal_form()
    if na is None or nb is None:
        return None
    joined = _join(op, na[0], nb[0])
    if joined is None:
        return None
    core, cutoff = joined
    return core, max(na[1], nb[1], cutoff)


# ---------------------------------------------------------------------------
# Factories
# ---------------------------------------------------------------------------


def _exact_join(op, a, b):
    if a.primitive and b.primitive:
        joined = _join(op, a, b)
        if joined is not None and joined[1] < 0:
            return joined[0]
    return None


def union(a, b):
    if a == b or b.known_subset_of(a):
        return a
    if a.known_subset_of(b):
        return b
    exact = _exact_join("union", a, b)
    if exact is not None:
        return exact
    return UnionSet(a, b)


def intersect(a, b):
    if a == b or a.known_subset_of(b):
        return a
    if b.known_subset_of(a):
        return b
    for x, y in ((a, b), (b, a)):
        # absorption: x ∩ (x ∪ z) = x
        if isinstance(y, UnionSet) and x in y.children:
            return x
    exact = _exact_join("intersect", a, b)
    if exact is not None:
        return exact
    return _with_supersets(IntersectionSet(a, b), a, b)


def difference(a, b):
    if a.known_subset_of(b):
        return EMPTY
    if b == EMPTY:
        return a
    if isinstance(b, ShiftSet) and b.children[0] == a and abs(b.k) == 1:
        left, right = _boundaries(a)
        return left if b.k == 1 else right
    if isinstance(a, ShiftSet) and a.children[0] == b and abs(a.k) == 1:
        left, right = _boundaries(b)
        return shift(right, 1) if a.k == 1 else shift(left, -1)
    exact = _exact_join("diff", a, b)
    if exact is not None:
        return exact
    return _with_supersets(DifferenceSet(a, b), a)


def complement(a):
    if isinstance(a, ComplementSet):
        return a.children[0]
    if isinstance(a, UnionSet):
        x, y = a.children
        return intersect(complement(x), complement(y))
    if isinstance(a, IntersectionSet):
        x, y = a.children
        return union(complement(x), complement(y))
    if isinstance(a, DifferenceSet):
        x, y = a.children
        return union(complement(x), y)
    if a.primitive:
        core, cutoff = _complement_primitive(a)
        if cutoff < 0:
            return core
    return ComplementSet(a)


def shift(a, k):
    _check_index(k)
    if k == 0 or a == EMPTY:
        return a
    if isinstance(a, ShiftSet) and (a.k >= 0) == (k >= 0):
        return shift(a.children[0], a.k + k)
    if a.primitive:
        core, cutoff = _shift_primitive(a, k)
        if cutoff < 0:
            return core
    return ShiftSet(a, k)


def algebra(op, a, b_or_k=None):
    """
    Dispatch one of ``union``, ``intersect``, ``diff``, ``complement``,
    ``shift`` by name.
    """
    if op == "union":
        return union(a, b_or_k)
    if op in ("intersect", "intersection"):
        return intersect(a, b_or_k)
    if op in ("diff", "difference"):
        return difference(a, b_or_k)
    if op == "complement":
        return complement(a)
    if op == "shift":
        return shift(a, b_or_k)
    raise ValueError(f"Unknown set operation: {op!r}")


def _patched(core, cutoff, head):
    """ The set equal to ``head`` on ``[0, cutoff]`` and to ``core`` beyond. """
    if cutoff < 0 or list(core.elements(cutoff)) == list(head):
        return core
    body = core
    if cutoff >= 0 and core.count(cutoff):
        body = difference(core, FiniteSet(range(cutoff + 1)))
    if head:
        return union(FiniteSet(head), body)
    return body


def member_count(a, n):
    """ ``(n ∈ A, |A(n)|)``. """
    _check_index(n)
    return a.member(n), a.count(n)


# ---------------------------------------------------------------------------
# Boundaries
# ---------------------------------------------------------------------------


def _primitive_boundaries(p):
    if isinstance(p, FiniteSet):
        items = set(p.items)
        left = FiniteSet(i for i in items if i - 1 not in items)
        right = FiniteSet(i for i in items if i + 1 not in items)
        return left, right
    if isinstance(p, CofiniteSet):
        excl = set(p.excluded)
        top = (p.excluded[-1] if p.excluded else 0) + 2
        members = [i for i in range(top + 1) if i not in excl]
        left = FiniteSet(i for i in members if i == 0 or i - 1 in excl)
        right = FiniteSet(i for i in members if i + 1 in excl)
        return left, right
    if isinstance(p, ResidueSet):
        m, rs = p.modulus, set(p.residues)
        left = residue(m, {r for r in rs if (r - 1) % m not in rs})
        right = residue(m, {r for r in rs if (r + 1) % m not in rs})
        if 0 in rs and (m - 1) in rs:
            left = union(FiniteSet((0,)), left)
        return left, right
    if isinstance(p, IntervalUnion):
        return image(p.lefts, p.start), image(p.rights, p.start)
    raise TypeError(f"Not a primitive set: {p!r}")


def _boundaries(a):
    nf = a.normal_form()
    if nf is None:
        if isinstance(a, ShiftSet):
            left, right = _boundaries(a.children[0])
            k = a.k
            if k < 0 and a.children[0].member(-k):
                return union(FiniteSet((0,)), shift(left, k)), shift(right, k)
            return shift(left, k), shift(right, k)
        if isinstance(a, ComplementSet):
            inner = a.children[0]
            left, right = _boundaries(inner)
            head = () if inner.member(0) else (0,)
            new_left = shift(right, 1)
            if head:
                new_left = union(FiniteSet(head), new_left)
            return new_left, shift(difference(left, FiniteSet((0,))), -1)
        return (
            _with_supersets(BoundarySet("left", a), a),
            _with_supersets(BoundarySet("right", a), a),
        )
    core, cutoff = nf
    core_left, core_right = _primitive_boundaries(core)
    edge = cutoff + 1
    head_left = [n for n in range(edge + 1) if a.member(n) and (n == 0 or not a.member(n - 1))]
    head_right = [n for n in range(edge + 1) if a.member(n) and not a.member(n + 1)]
    left = _patched(core_left, edge, head_left)
    right = _patched(core_right, edge, head_right)
    return _with_supersets(left, a), _with_supersets(right, a)


def _boundary_covers(kind, a):
    """ Structural supersets of λ(a) / ρ(a) for nodes without normal form. """
    pick = 0 if kind == "left" else 1
    if isinstance(a, (UnionSet, IntersectionSet)):
        x, y = a.children
        return (union(_boundaries(x)[pick], _boundaries(y)[pick]),)
    if isinstance(a, DifferenceSet):
        x, y = a.children
        xl, xr = _boundaries(x)
        yl, yr = _boundaries(y)
        if kind == "left":
            return (union(xl, shift(yr, 1)),)
        return (union(xr, shift(yl, -1)),)
    if isinstance(a, LazySet):
        return tuple(a.covers)
    return ()


BoundaryTriple = namedtuple("BoundaryTriple", "left right isolated")


def boundaries(a):
    """
    ``(λ(A), ρ(A), i(A))`` with ``λ = A∖(A+1)``, ``ρ = A∖(A−1)`` and
    ``i = λ∩ρ``.

    :raises ValueError: if ``A`` is (structurally) empty.
    """
    if a.is_empty():
        raise ValueError("Boundaries are defined for nonempty sets only")
    left, right = _boundaries(a)
    return BoundaryTriple(left, right, intersect(left, right))


def isolated_points_only(a):
    """
    Tri-state: `True` when no two consecutive integers lie in ``A``.
    """
    nf = a.normal_form()
    if nf is None:
        return None
    core, cutoff = nf
    if any(a.member(n) and a.member(n + 1) for n in range(cutoff + 2)):
        return False
    if isinstance(core, FiniteSet):
        return all(core.items[i + 1] - core.items[i] > 1 for i in range(len(core.items) - 1))
    if isinstance(core, CofiniteSet):
        return False
    if isinstance(core, ResidueSet):
        rs = set(core.residues)
        return all((r + 1) % core.modulus not in rs for r in rs)
    if isinstance(core, IntervalUnion):
        return core.lefts == core.rights
    return None


Block = namedtuple("Block", "low high open_ended")


def blocks(a, window):
    """
    Maximal intervals of ``A ∩ [0, window]``.  The last block is flagged
    ``open_ended`` when it touches the window and may continue past it.
    """
    _check_index(window)
    if window < 0:
        raise ValueError(f"Window must be nonnegative; given: {window!r}")
    found = []
    nf = a.normal_form()
    if nf is not None and isinstance(nf[0], IntervalUnion) and nf[1] < 0:
        pairs = [(lo, min(hi, window)) for lo, hi in nf[0].blocks(window)]
    else:
        pairs = []
        run_start = prev = None
        for n in a.elements(window):
            if prev is not None and n == prev + 1:
                prev = n
                continue
            if run_start is not None:
                pairs.append((run_start, prev))
            run_start = prev = n
        if run_start is not None:
            pairs.append((run_start, prev))
    for i, (lo, hi) in enumerate(pairs):
        open_ended = False
        if i == len(pairs) - 1 and hi == window:
            try:
                open_ended = a.member(window + 1)
            except HorizonError:
                open_ended = True
        found.append(Block(lo, hi, open_ended))
    return found


# ---------------------------------------------------------------------------
# Left nested pairs
# ---------------------------------------------------------------------------


class NestedPair:
    """
    A pair of strictly increasing sequences ``(l_n)``, ``(r_n)`` indexed from
    ``start``.  Both are `QuadraticRule` (closed form, infinite) or both are
    explicit integer sequences (finite).
    """

    def __init__(self, lefts, rights, start=0):
        self.lefts = self._coerce(lefts, "lefts")
        self.rights = self._coerce(rights, "rights")
        if isinstance(self.lefts, QuadraticRule) != isinstance(self.rights, QuadraticRule):
            raise TypeError("NestedPair sequences must both be rules or both be explicit")
        _check_index(start)
        self.start = start
        for name, seq in (("lefts", self.lefts), ("rights", self.rights)):
            if isinstance(seq, QuadraticRule):
                step = (seq.advance(1) - seq).min_from(start)
                if step is None or step < 1:
                    raise ValueError(f"{name} rule {seq.render()} is not strictly increasing")
            elif any(seq[i + 1] <= seq[i] for i in range(len(seq) - 1)):
                raise ValueError(f"{name} sequence {seq!r} is not strictly increasing")

    @staticmethod
    def _coerce(seq, name):
        if isinstance(seq, (QuadraticRule, dict)):
            return QuadraticRule.from_record(seq)
        if isinstance(seq, (list, tuple)):
            return tuple(seq)
        raise TypeError(f"NestedPair {name} must be a rule or a sequence; given: {seq!r}")

    @property
    def closed_form(self):
        return isinstance(self.lefts, QuadraticRule)

    @property
    def length(self):
        """ Number of indices, `None` for closed-form pairs. """
        if self.closed_form:
            return None
        return min(len(self.lefts), len(self.rights))

    def left_at(self, n):
        if self.closed_form:
            return self.lefts(n)
        return self.lefts[n - self.start]

    def right_at(self, n):
        if self.closed_form:
            return self.rights(n)
        return self.rights[n - self.start]

    def lefts_set(self):
        if self.closed_form:
            return image(self.lefts, self.start)
        return FiniteSet(self.lefts[: self.length])

    def rights_set(self):
        if self.closed_form:
            return image(self.rights, self.start)
        return FiniteSet(self.rights[: self.length])

    def render(self):
        def show(seq):
            if isinstance(seq, QuadraticRule):
                return seq.render("n")
            return "(" + ", ".join(str(x) for x in seq[:5]) + (", …)" if len(seq) > 5 else ")")

        return f"(l_n = {show(self.lefts)}, r_n = {show(self.rights)}; n ≥ {self.start})"

    def to_record(self):
        def rec(seq):
            return seq.to_record() if isinstance(seq, QuadraticRule) else {"values": list(seq)}

        return {"lefts": rec(self.lefts), "rights": rec(self.rights), "start": self.start}

    def __repr__(self):
        return f"NestedPair{self.render()}"


def _pair_sequence(seq, name):
    if isinstance(seq, dict) and "values" in seq:
        return tuple(seq["values"])
    if isinstance(seq, (QuadraticRule, dict)) or (isinstance(seq, list) and len(seq) == 3):
        return QuadraticRule.from_record(seq)
    if isinstance(seq, (list, tuple)):
        return tuple(seq)
    raise TypeError(f"Pair {name} must be a rule or {{values: [...]}}; given: {seq!r}")


def pair_from_record(record):
    """
    Build a `NestedPair` from ``{lefts, rights, start}``.  A sequence is an
    index rule ``[a, b, c]`` or ``{a, b, c}``, or explicit integers under
    ``{values: [...]}``.
    """
    if isinstance(record, NestedPair):
        return record
    if not isinstance(record, dict) or not {"lefts", "rights"} <= set(record):
        raise ValueError(f"A pair needs lefts and rights; given: {record!r}")
    return NestedPair(
        _pair_sequence(record["lefts"], "lefts"),
        _pair_sequence(record["rights"], "rights"),
        record.get("start", 0),
    )


NESTED_CHAIN = "left nested chain l_n ≤ r_n < l_{n+1} − 1"


def validate_left_nested(pair, window):
    """
    Check ``l_n ≤ r_n < l_{n+1} − 1``.  Closed-form pairs are decided for all
    ``n ≥ start`` at once; explicit pairs on their first ``window`` indices.
    """
    if window < 1:
        raise ValueError(f"Window must be at least 1; given: {window!r}")
    if pair.closed_form:
        l, r, s = pair.lefts, pair.rights, pair.start
        width = (r - l).min_from(s)
        spacing = (l.advance(1) - r).min_from(s)
        if width is not None and width >= 0 and spacing is not None and spacing >= 2:
            return holds(NESTED_CHAIN, analytic=True, pair=pair.render())
        # a violation exists at some n ≥ s; find the first one
        for n in itertools.count(s):
            if l(n) > r(n) or r(n) >= l(n + 1) - 1:
                return fails(NESTED_CHAIN, index=n, left=l(n), right=r(n), next_left=l(n + 1))
    count = min(pair.length, window)
    for i in range(count):
        n = pair.start + i
        lo, hi = pair.left_at(n), pair.right_at(n)
        nxt = pair.left_at(n + 1) if i + 1 < pair.length else None
        if lo > hi or (nxt is not None and hi >= nxt - 1):
            return fails(NESTED_CHAIN, index=n, left=lo, right=hi, next_left=nxt)
    return holds(NESTED_CHAIN, analytic=False, checked=count)


def realize_from_pair(pair):
    """ ``⋃ [l_n, r_n]`` for a left nested pair. """
    verdict = validate_left_nested(pair, pair.length or 1)
    if verdict.fails:
        raise ValueError(f"Pair {pair.render()} is not left nested: {verdict.evidence}")
    if pair.closed_form:
        return IntervalUnion(pair.lefts, pair.rights, pair.start)
    return FiniteSet(
        itertools.chain.from_iterable(
            range(lo, hi + 1) for lo, hi in zip(pair.lefts, pair.rights)
        )
    )


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------


def set_from_record(record, refs=None):
    """
    Build a set from its tagged record.  Strings are references resolved in
    ``refs`` (a `dict` of already built sets) or one of the builtin names
    ``naturals``, ``positive``, ``evens``, ``odds``, ``empty``.
    """
    refs = refs or {}
    builtin = {
        "naturals": NATURALS,
        "positive": POSITIVE,
        "evens": EVENS,
        "odds": ODDS,
        "empty": EMPTY,
    }
    if isinstance(record, SymbolicSet):
        return record
    if isinstance(record, str):
        if record in refs:
            return refs[record]
        if record in builtin:
            return builtin[record]
        raise KeyError(record)
    if not isinstance(record, dict) or "form" not in record:
        raise ValueError(f"Set record needs a 'form' field; given: {record!r}")
    form = record["form"]
    args = [set_from_record(arg, refs) for arg in record.get("args", ())]
    if form == "empty":
        return EMPTY
    if form == "finite":
        return FiniteSet(record.get("elements", ()))
    if form == "cofinite":
        return CofiniteSet(record.get("excluded", ()))
    if form == "residue":
        return residue(record["modulus"], record["residues"])
    if form == "interval_union":
        return IntervalUnion(record["lefts"], record["rights"], record.get("start", 0))
    if form == "image":
        return image(QuadraticRule.from_record(record["rule"]), record.get("start", 0))
    if form == "prefix":
        return PrefixSet(record["elements"], record["horizon"])
    if form == "pair":
        return realize_from_pair(pair_from_record(record))
    if form == "shift":
        return shift(args[0], record["k"])
    if form == "complement":
        return complement(args[0])
    if form in ("union", "intersect", "diff"):
        if len(args) < 2:
            raise ValueError(f"{form} needs at least two args; given: {record!r}")
        out = args[0]
        for arg in args[1:]:
            out = algebra(form, out, arg)
        return out
    if form == "boundary":
        triple = boundaries(args[0])
        return {"left": triple.left, "right": triple.right, "isolated": triple.isolated}[
            record["kind"]
        ]
    raise ValueError(f"Unknown set form: {form!r}")
