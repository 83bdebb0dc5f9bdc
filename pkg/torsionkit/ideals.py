"""
Free ideals of ℕ as three-valued membership oracles.

Four families are available:

* :func:`fin` -- the ideal of finite sets,
* :func:`density` -- ``𝕀_α = {A : limsup |A(n)|/n^α = 0}`` for ``0 < α ≤ 1``,
* :func:`summable` -- ``𝕀_γ = {A : Σ_{n∈A} γ_n < ∞}`` for divergent weights,
* :func:`wave_gamma` -- the summable ideal of the wave weights, which is
  translation invariant but not nested.

Membership is decided on the normal form of a set whenever one exists; sets
without one go through structural rules (subsets, unions, shifts and covers).
Anything else is ``Unknown`` together with a numeric trail.
"""
import logging
from collections import namedtuple
from fractions import Fraction
from math import isqrt

import gmpy2

from .intsets import (
    BoundarySet,
    CofiniteSet,
    ComplementSet,
    DifferenceSet,
    FiniteSet,
    HorizonError,
    IntersectionSet,
    IntervalUnion,
    LazySet,
    NestedPair,
    QuadraticRule,
    ResidueSet,
    ShiftSet,
    UnionSet,
    image,
    pair_from_record,
    validate_left_nested,
)
from .util import parse_fraction
from .verdict import fails, holds, unknown

log = logging.getLogger(__name__)

DEFAULT_CHECKPOINTS = (100, 1000)

NESTED_FLAGS = ("yes", "no", "undeclared")


class ImproperIdealError(ValueError):
    """Raised when summable weights are known to have a finite sum."""


TrailPoint = namedtuple("TrailPoint", "n count low high")
TrailPoint.__doc__ = """
``|A(n)|/n^α`` at one checkpoint, bracketed by ``low ≤ ratio ≤ high``.
Both ends coincide whenever ``n^α`` is an integer.
"""

DensityTrail = namedtuple("DensityTrail", "alpha points limit")

Bracket = namedtuple("Bracket", "low high")


def _root_bracket(n, alpha):
    """ Integers ``r`` with ``r ≤ n^α < r + 1`` and whether ``n^α = r``. """
    root, exact = gmpy2.iroot(gmpy2.mpz(n) ** alpha.numerator, alpha.denominator)
    return int(root), bool(exact)


def _check_alpha(alpha):
    alpha = parse_fraction(alpha)
    if not 0 < alpha <= 1:
        raise ValueError(f"Density exponent must lie in (0, 1]; given: {alpha}")
    return alpha


def _clip(checkpoints, a):
    points = sorted({int(n) for n in checkpoints if int(n) >= 1})
    if a.horizon is not None:
        points = [n for n in points if n <= a.horizon] or [a.horizon]
    return points


def _density_limit(core, alpha):
    """
    Closed-form ``lim sup |A(n)|/n^α`` of a primitive set; `None` when it is
    infinite or not a rational number.
    """
    if isinstance(core, FiniteSet):
        return Fraction(0)
    if isinstance(core, CofiniteSet):
        return Fraction(1) if alpha == 1 else None
    if isinstance(core, ResidueSet):
        return core.density if alpha == 1 else None
    if isinstance(core, IntervalUnion):
        growth = _block_growth(core)
        if growth.count_degree < alpha * growth.end_degree:
            return Fraction(0)
        if growth.count_degree > alpha * growth.end_degree:
            return None
        root, exact = _root_bracket(growth.end_lead, alpha)
        if not exact:
            return None
        return growth.count_lead / root
    return None


BlockGrowth = namedtuple("BlockGrowth", "count_degree count_lead end_degree end_lead")


def _block_growth(core):
    """
    Leading terms of the number of elements up to block ``j`` and of the
    block end ``r(j)``.
    """
    lengths = core.lengths
    count_degree = lengths.degree + 1
    return BlockGrowth(
        count_degree,
        Fraction(lengths.lead, count_degree),
        core.rights.degree,
        core.rights.lead,
    )


def density_alpha(a, alpha, checkpoints):
    """
    Trail of ``|A(n)|/n^α`` at ``checkpoints`` with the closed-form limit when
    ``a`` has a normal form.

    :param a:           a `SymbolicSet`.
    :param alpha:       exponent in ``(0, 1]``.
    :param checkpoints: iterable of indices; clipped to the horizon of ``a``.

    :returns: a :class:`DensityTrail`.
    """
    alpha = _check_alpha(alpha)
    points = []
    for n in _clip(checkpoints, a):
        count = a.count(n)
        root, exact = _root_bracket(n, alpha)
        if exact:
            ratio = Fraction(count, root)
            points.append(TrailPoint(n, count, ratio, ratio))
        else:
            points.append(TrailPoint(n, count, Fraction(count, root + 1), Fraction(count, root)))
    nf = a.normal_form()
    limit = _density_limit(nf[0], alpha) if nf is not None else None
    return DensityTrail(alpha, points, limit)


# ---------------------------------------------------------------------------
# Weights
# ---------------------------------------------------------------------------


class Weights:
    """
    Positive weights ``γ_n``.  Subclasses set ``exact`` and implement
    :meth:`bounds`; exact weights also answer ``weights(n)``.
    """

    exact = True
    divergent = None
    ratio_bounds = None

    def bounds(self, n):
        value = self(n)
        return value, value

    def __call__(self, n):
        raise NotImplementedError

    def render(self):
        raise NotImplementedError

    def to_record(self):
        raise NotImplementedError


class PowerWeights(Weights):
    """ ``γ_n = (n + 1)^{-p}`` for ``0 < p ≤ 1``. """

    divergent = True
    ratio_bounds = (Fraction(1, 2), Fraction(1))

    def __init__(self, p=1):
        p = parse_fraction(p)
        if p <= 0:
            raise ValueError(f"Weight exponent must be positive; given: {p}")
        if p > 1:
            raise ImproperIdealError(
                f"Σ (n+1)^-{p} converges, so the summable ideal is all of P(ℕ)"
            )
        self.p = p
        self.exact = p == 1

    def bounds(self, n):
        root, exact = _root_bracket(n + 1, self.p)
        if exact:
            return Fraction(1, root), Fraction(1, root)
        return Fraction(1, root + 1), Fraction(1, root)

    def __call__(self, n):
        low, high = self.bounds(n)
        if low != high:
            raise ValueError(f"(n+1)^-{self.p} is irrational at n = {n}")
        return low

    def render(self):
        return f"(n+1)^-{self.p}"

    def to_record(self):
        return {"rule": "power", "p": str(self.p)}


class ExplicitWeights(Weights):
    """
    Weights from a callable returning positive rationals.

    :param divergent:    `True` if ``Σ γ_n = ∞`` is known, `None` if not
                         declared.  `False` is rejected.
    :param ratio_bounds: ``(c, C)`` with ``c ≤ γ_{n+1}/γ_n ≤ C`` for all
                         ``n``, if known.
    """

    def __init__(self, func, name, divergent=None, ratio_bounds=None):
        if divergent is False:
            raise ImproperIdealError(f"Weights {name} have a finite sum")
        if ratio_bounds is not None:
            low, high = (parse_fraction(x) for x in ratio_bounds)
            if not 0 < low <= high:
                raise ValueError(f"Ratio bounds need 0 < c ≤ C; given: {ratio_bounds!r}")
            ratio_bounds = (low, high)
        self.func = func
        self.name = name
        self.divergent = divergent
        self.ratio_bounds = ratio_bounds

    def __call__(self, n):
        return Fraction(self.func(n))

    def render(self):
        return self.name

    def to_record(self):
        record = {"rule": "explicit", "name": self.name}
        if self.divergent is not None:
            record["divergent"] = self.divergent
        if self.ratio_bounds is not None:
            record["ratio_bounds"] = [str(x) for x in self.ratio_bounds]
        return record


def _inverse_factorial(n):
    value = 1
    for i in range(2, n + 1):
        value *= i
    return Fraction(1, value)


EXPLICIT_WEIGHTS = {"inverse_factorial": _inverse_factorial}

WAVE_LEFTS = QuadraticRule(1, 0, 1)
WAVE_CENTRES = QuadraticRule(1, 1, 1)


class WaveWeights(Weights):
    """
    Weights climbing from ``α_n`` at ``w_n = n² + 1`` to ``1`` at
    ``z_n = n² + n + 1`` and back down to ``α_n`` at ``w_{n+1} − 1``.

    ``α`` defaults to ``n ↦ qⁿ``; a custom ``alpha`` must satisfy
    ``α_0 = 1`` and ``1/2 ≤ α_{n+1}/α_n ≤ q``.
    """

    divergent = True

    def __init__(self, q, alpha=None):
        q = parse_fraction(q)
        if not Fraction(1, 2) < q < 1:
            raise ValueError(f"Wave ratio q must lie in (1/2, 1); given: {q}")
        self.q = q
        self.alpha = alpha
        if alpha is None:
            self.ratio_bounds = (q, 1 / q)
        else:
            self.ratio_bounds = (Fraction(1, 2), Fraction(2))

    def alpha_at(self, n):
        if self.alpha is None:
            return self.q ** n
        return Fraction(self.alpha(n))

    @staticmethod
    def block_index(m):
        """ ``n`` with ``m ∈ B_n = [w_n, w_{n+1} − 1]``. """
        if m < 1:
            raise ValueError(f"Index 0 lies in no wave block; given: {m!r}")
        return isqrt(m - 1)

    def __call__(self, m):
        if m == 0:
            return Fraction(1)
        n = self.block_index(m)
        return self.alpha_at(abs(m - WAVE_CENTRES(n)))

    def render(self):
        return f"wave(q={self.q})" if self.alpha is None else f"wave(q={self.q}, custom α)"

    def to_record(self):
        return {"rule": "wave", "q": str(self.q)}


def weights_from_record(record):
    if isinstance(record, Weights):
        return record
    if isinstance(record, str):
        record = {"rule": record}
    rule = record.get("rule")
    if rule == "power":
        return PowerWeights(record.get("p", 1))
    if rule == "wave":
        return WaveWeights(record["q"])
    if rule == "explicit":
        name = record["name"]
        if name not in EXPLICIT_WEIGHTS:
            raise ValueError(
                f"Unknown explicit weights {name!r}; known: {sorted(EXPLICIT_WEIGHTS)}"
            )
        return ExplicitWeights(
            EXPLICIT_WEIGHTS[name],
            name,
            divergent=record.get("divergent"),
            ratio_bounds=record.get("ratio_bounds"),
        )
    raise ValueError(f"Unknown weight rule; given: {record!r}")


def submeasure_partial(weights, a, n):
    """
    ``Σ_{m ∈ A, m ≤ n} γ_m``.

    :param weights: a :class:`Weights` or a summable `IdealSpec`.
    :returns: a `Fraction` for exact weights, otherwise a :class:`Bracket`.
    """
    weights = getattr(weights, "weights", weights)
    if weights.exact:
        return sum((weights(m) for m in a.elements(n)), Fraction(0))
    low = high = Fraction(0)
    for m in a.elements(n):
        lo, hi = weights.bounds(m)
        low += lo
        high += hi
    return Bracket(low, high)


# ---------------------------------------------------------------------------
# Ideals
# ---------------------------------------------------------------------------


FINITE_RULE = "finite sets are small in every free ideal"
COFINITE_RULE = "cofinite sets are never small in a proper ideal"
SYNDETIC_RULE = "sets with bounded gaps are not small under a translation invariant ideal"


def _gap_bound(core):
    """ Largest gap of a primitive set if it is bounded, else `None`. """
    if isinstance(core, ResidueSet):
        residues = sorted(core.residues)
        wrapped = residues + [residues[0] + core.modulus]
        return max(b - a for a, b in zip(wrapped, wrapped[1:]))
    if isinstance(core, IntervalUnion):
        gap = core.lefts.advance(1) - core.rights
        if gap.degree == 0:
            return gap.c
    return None


class IdealSpec:
    """
    A free ideal of ℕ together with its declared properties.

    :ivar flags: `dict` with ``translation_invariant`` (`bool`), ``p_ideal``
                 (`bool`), ``nested`` (``"yes"``, ``"no"`` or
                 ``"undeclared"``) and ``nested_witness`` (a `NestedPair` or
                 `None`).
    """

    family = None

    def __init__(self, flags=None):
        self.flags = self.default_flags()
        if flags:
            self.declare(**flags)

    def default_flags(self):
        return {
            "translation_invariant": True,
            "p_ideal": True,
            "nested": "yes",
            "nested_witness": None,
        }

    def declare(self, **flags):
        unknown_flags = set(flags) - set(self.flags)
        if unknown_flags:
            raise ValueError(f"Unknown ideal flags: {sorted(unknown_flags)}")
        nested = flags.get("nested", self.flags["nested"])
        if nested is True or nested is False:
            nested = "yes" if nested else "no"
        if nested not in NESTED_FLAGS:
            raise ValueError(f"nested must be one of {NESTED_FLAGS}; given: {nested!r}")
        witness = flags.get("nested_witness")
        if isinstance(witness, dict):
            flags["nested_witness"] = pair_from_record(witness)
        flags["nested"] = nested
        self.flags.update(flags)
        return self

    @property
    def translation_invariant(self):
        return bool(self.flags["translation_invariant"])

    @property
    def p_ideal(self):
        return bool(self.flags["p_ideal"])

    @property
    def nested(self):
        return self.flags["nested"]

    # -- membership --------------------------------------------------------
    def membership(self, a, checkpoints=DEFAULT_CHECKPOINTS):
        """
        Three-valued ``A ∈ 𝕀``.

        :param a:           a `SymbolicSet`.
        :param checkpoints: indices for the numeric trail attached to an
                            ``Unknown`` verdict.
        """
        verdict = self._membership(a)
        if verdict.unknown:
            try:
                trail = self.trail(a, checkpoints)
            except HorizonError:
                trail = None
            verdict = verdict.with_evidence(trail=trail)
        log.debug("%s ∋ %s: %r", self.render(), a.render(), verdict)
        return verdict.with_evidence(set=a.render(), ideal=self.render())

    def _membership(self, a):
        nf = a.normal_form()
        if nf is not None:
            core, cutoff = nf
            verdict = self._core_membership(core)
            if verdict.definitive:
                return verdict.with_evidence(core=core.render(), cutoff=cutoff)
        return self._structural(a)

    def _core_membership(self, core):
        if isinstance(core, FiniteSet):
            return holds(FINITE_RULE)
        if isinstance(core, CofiniteSet):
            return fails(COFINITE_RULE)
        gap = _gap_bound(core)
        if gap is not None and self.translation_invariant:
            return fails(SYNDETIC_RULE, gap=gap)
        return self._analytic(core)

    def _analytic(self, core):
        return unknown()

    def _structural(self, a):
        if isinstance(a, UnionSet):
            parts = [self._membership(c) for c in a.children]
            if any(v.fails for v in parts):
                return fails("a superset of a large set is large", parts=parts)
            if all(v.holds for v in parts):
                return holds("ideals are closed under finite unions", parts=parts)
        elif isinstance(a, IntersectionSet):
            for child in a.children:
                v = self._membership(child)
                if v.holds:
                    return holds("subsets of small sets are small", superset=child.render())
        elif isinstance(a, DifferenceSet):
            left, right = a.children
            lv = self._membership(left)
            if lv.holds:
                return holds("subsets of small sets are small", superset=left.render())
            if lv.fails and self._membership(right).holds:
                return fails("removing a small set keeps a large set large", removed=right.render())
        elif isinstance(a, ComplementSet):
            if self._membership(a.children[0]).holds:
                return fails("the complement of a small set is large")
        elif isinstance(a, ShiftSet):
            if self.translation_invariant:
                v = self._membership(a.children[0])
                if v.definitive:
                    return _shifted(v, a.k)
        elif isinstance(a, BoundarySet):
            if self._membership(a.children[0]).holds:
                return holds("subsets of small sets are small", superset=a.children[0].render())
            return self._covered(a.covers)
        elif isinstance(a, LazySet):
            return self._covered(a.covers)
        return unknown()

    def _covered(self, covers):
        for cover in covers:
            if self._membership(cover).holds:
                return holds("subsets of small sets are small", superset=cover.render())
        return unknown(covers=[c.render() for c in covers])

    def trail(self, a, checkpoints):
        return [{"n": n, "count": a.count(n)} for n in _clip(checkpoints, a)]

    def render(self):
        raise NotImplementedError

    def to_record(self):
        record = {"family": self.family, "parameters": self.parameters()}
        flags = dict(self.flags)
        if flags["nested_witness"] is not None:
            flags["nested_witness"] = flags["nested_witness"].to_record()
        record["declared_flags"] = flags
        return record

    def parameters(self):
        return {}

    def __repr__(self):
        return f"IdealSpec({self.render()})"


def _shifted(verdict, k):
    rule = "translation invariant ideals are closed under shifts"
    if verdict.holds:
        return holds(rule, shift=k, unshifted=verdict)
    return fails(rule, shift=k, unshifted=verdict)


class FinIdeal(IdealSpec):
    """ The ideal of finite subsets of ℕ. """

    family = "fin"

    def _core_membership(self, core):
        if isinstance(core, FiniteSet):
            return holds(FINITE_RULE)
        return fails("infinite sets are not finite", core=core.render())

    def render(self):
        return "Fin"


class DensityIdeal(IdealSpec):
    """ ``𝕀_α``: sets with ``|A(n)|/n^α → 0``. """

    family = "density"

    def __init__(self, alpha=1, flags=None):
        self.alpha = _check_alpha(alpha)
        super().__init__(flags)

    def _analytic(self, core):
        if isinstance(core, ResidueSet):
            return fails("residue classes have positive density", density=core.density)
        if isinstance(core, IntervalUnion):
            growth = _block_growth(core)
            scaled = self.alpha * growth.end_degree
            limit = _density_limit(core, self.alpha)
            evidence = dict(
                count_degree=growth.count_degree,
                end_degree=growth.end_degree,
                limit=limit,
            )
            if growth.count_degree < scaled:
                return holds("block counting: |A(n)| grows slower than n^α", **evidence)
            return fails("block counting: |A(n)|/n^α stays bounded below", **evidence)
        return unknown()

    def trail(self, a, checkpoints):
        trail = density_alpha(a, self.alpha, checkpoints)
        return {
            "points": [dict(p._asdict()) for p in trail.points],
            "limit": trail.limit,
        }

    def render(self):
        return "𝕀_d" if self.alpha == 1 else f"𝕀_{self.alpha}"

    def parameters(self):
        return {"alpha": str(self.alpha)}


class SummableIdeal(IdealSpec):
    """ ``𝕀_γ``: sets with ``Σ_{n∈A} γ_n < ∞``. """

    family = "summable"

    def __init__(self, weights, flags=None):
        self.weights = weights_from_record(weights)
        super().__init__(flags)

    def default_flags(self):
        flags = super().default_flags()
        flags["translation_invariant"] = self.weights.ratio_bounds is not None
        flags["nested"] = "undeclared"
        return flags

    def _analytic(self, core):
        weights = self.weights
        if isinstance(core, IntervalUnion) and isinstance(weights, PowerWeights):
            # Σ_j len(j)·l(j)^-p converges iff deg len − p·deg l < −1
            exponent = core.lengths.degree - weights.p * core.lefts.degree
            if exponent < -1:
                return holds("power weights: the block series converges", exponent=exponent)
            return fails("power weights: the block series diverges", exponent=exponent)
        return unknown()

    def trail(self, a, checkpoints):
        return [
            {"n": n, "partial_sum": submeasure_partial(self.weights, a, n)}
            for n in _clip(checkpoints, a)
        ]

    def render(self):
        return f"𝕀_γ({self.weights.render()})"

    def parameters(self):
        return {"weights": self.weights.to_record()}


class WaveIdeal(SummableIdeal):
    """
    Summable ideal of the wave weights.

    ``W = {n² + 1}`` is small (its weights are ``qⁿ``) while
    ``Z = {n² + n + 1}`` is not (its weights are all ``1``), which makes the
    pair ``(z_n, w_{n+1})`` a witness against nestedness.
    """

    family = "wave"

    def __init__(self, q, alpha=None, flags=None):
        super().__init__(WaveWeights(q, alpha), flags)

    def default_flags(self):
        flags = super().default_flags()
        flags["translation_invariant"] = True
        flags["nested"] = "no"
        flags["nested_witness"] = self.witness_pair
        return flags

    @property
    def q(self):
        return self.weights.q

    @property
    def W(self):
        return image(WAVE_LEFTS)

    @property
    def Z(self):
        return image(WAVE_CENTRES)

    @staticmethod
    def block(n):
        """ ``B_n = [w_n, w_{n+1} − 1]``. """
        return FiniteSet(range(WAVE_LEFTS(n), WAVE_LEFTS(n + 1)))

    @property
    def witness_pair(self):
        return NestedPair(WAVE_CENTRES, WAVE_LEFTS.advance(1), start=1)

    def _analytic(self, core):
        if not isinstance(core, IntervalUnion):
            return unknown()
        lefts, rights = core.lefts, core.rights
        if lefts.degree < 2:
            # consecutive blocks are a bounded distance apart, so every long
            # wave block has an element near its centre
            return fails(
                "wave weights: elements within bounded distance of z_n",
                spacing=lefts.advance(1) - lefts,
            )
        s = isqrt(lefts.a)
        if s * s != lefts.a:
            return unknown(note=f"leading coefficient {lefts.a} is not a square")
        # block j spans √m ∈ [sj + b_l/2s, sj + b_r/2s] up to o(1); z_n sits
        # at √m = n + 1/2 + o(1)
        low, high = lefts.b, rights.b
        k = -(-(low - s) // (2 * s))
        odd = s * (2 * k + 1)
        if odd <= high:
            return fails(
                "wave weights: elements within bounded distance of z_n",
                odd_multiple=odd,
            )
        gap = min(odd - high, low - (odd - 2 * s))
        return holds(
            "wave weights: geometric tail bound",
            gap=Fraction(gap, 2 * s),
            ratio=self.q,
        )

    def render(self):
        return f"𝕀_γ(wave q={self.q})"

    def parameters(self):
        return {"q": str(self.q)}


def fin(flags=None):
    return FinIdeal(flags)


def density(alpha=1, flags=None):
    return DensityIdeal(alpha, flags)


def summable(weights, flags=None):
    return SummableIdeal(weights, flags)


def wave_gamma(q, alpha=None, flags=None):
    """
    The wave ideal for ``1/2 < q < 1``.

    :raises ValueError: if ``q`` is outside ``(1/2, 1)``.
    """
    return WaveIdeal(q, alpha, flags)


def ideal_from_record(record):
    """
    Build an ideal from ``{family, parameters, declared_flags}``.  The
    strings ``"fin"``, ``"d"`` and ``"density"`` are accepted as shorthands.
    """
    if isinstance(record, IdealSpec):
        return record
    if isinstance(record, str):
        record = {"family": {"d": "density"}.get(record, record)}
    if not isinstance(record, dict) or "family" not in record:
        raise ValueError(f"Ideal record needs a 'family' field; given: {record!r}")
    family = record["family"]
    params = record.get("parameters", {})
    flags = record.get("declared_flags")
    if family == "fin":
        return fin(flags)
    if family == "density":
        return density(params.get("alpha", 1), flags)
    if family == "summable":
        return summable(params.get("weights", {"rule": "power", "p": 1}), flags)
    if family == "wave":
        return wave_gamma(params["q"], flags=flags)
    raise ValueError(f"Unknown ideal family {family!r}")


# ---------------------------------------------------------------------------
# Probes
# ---------------------------------------------------------------------------


SHIFT_RULE = "bounded weight ratios make a summable ideal translation invariant"


def translation_invariance_check(ideal, k_max=1000):
    """
    Certify ``A ∈ 𝕀 ⟹ A ± 1 ∈ 𝕀``.

    Fin and density ideals are invariant by rule.  Summable ideals are
    certified by weight ratio bounds ``c ≤ γ_{n+1}/γ_n ≤ C``; without them
    the sampled ratios over ``[0, k_max)`` are reported with ``Unknown``.
    """
    if isinstance(ideal, (FinIdeal, DensityIdeal)):
        return holds("finite and density ideals are shift invariant")
    if isinstance(ideal, SummableIdeal):
        weights = ideal.weights
        if weights.ratio_bounds is not None:
            low, high = weights.ratio_bounds
            return holds(SHIFT_RULE, low=low, high=high)
        if weights.exact:
            ratios = [weights(n + 1) / weights(n) for n in range(k_max)]
            return unknown(
                SHIFT_RULE, sampled_min=min(ratios), sampled_max=max(ratios), k_max=k_max
            )
    return unknown()


DENSITY_NESTED_RULE = "|L(l_n)| ≤ |R(l_n)| + 1 makes density ideals nested"
FIN_NESTED_RULE = "R finite forces L finite"
NON_NESTED_RULE = "R small while L is not"


def nestedness_probe(ideal, pairs, window=2000):
    """
    Look for a left nested pair with ``R ∈ 𝕀`` and ``L ∉ 𝕀``.

    :returns: ``Holds`` by rule for Fin and density ideals, ``Fails`` with
              the witness pair when one is found, ``Unknown`` otherwise.
              Per-pair verdicts are listed under ``pairs``.
    """
    if isinstance(ideal, DensityIdeal):
        return holds(DENSITY_NESTED_RULE, analytic=True)
    if isinstance(ideal, FinIdeal):
        return holds(FIN_NESTED_RULE, analytic=True)
    results = []
    for pair in pairs:
        chain = validate_left_nested(pair, window)
        if chain.fails:
            results.append({"pair": pair.render(), "chain": chain})
            continue
        right = ideal.membership(pair.rights_set())
        left = ideal.membership(pair.lefts_set())
        results.append({"pair": pair.render(), "rights": right, "lefts": left})
        if right.holds and left.fails:
            return fails(NON_NESTED_RULE, witness=pair, rights=right, lefts=left, pairs=results)
    return unknown(NON_NESTED_RULE, pairs=results)
