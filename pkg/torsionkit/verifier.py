"""
Empirical side of torsion: exact exception sets
``E_ε = {k ≤ N : ‖u_k x‖ ≥ ε}`` and whether they look small in the ideal.

Every index is classified from a certified norm interval, so an index is a
member or excluded only when the interval lies on one side of ``ε``.  The
rest is reported as unresolved and counted against smallness.
"""
import logging
from collections import namedtuple
from fractions import Fraction

from .conditions import IN, NOT_IN, decide
from .expansion import DEFAULT_BUDGET, HALF, circle_norm, norm_envelope
from .ideals import SummableIdeal, submeasure_partial
from .intsets import FiniteSet
from .util import parse_fraction
from .verdict import holds, unknown

log = logging.getLogger(__name__)

DEFAULT_RESOLUTION = Fraction(1, 10 ** 9)

SMALL = "Small"
VANISHING = "Vanishing"
STABLE = "Stable"
NOT_SMALL = "NotSmall"
UNCLEAR = "Unclear"

CONSISTENT = "CONSISTENT"
INCONCLUSIVE = "INCONCLUSIVE"
CONTRADICTION = "CONTRADICTION"

# ratios at or above this floor count as bounded below
POSITIVE_FLOOR = Fraction(1, 20)

SMALLNESS_RULE = "finite exception set with certified cofinal exclusion"


TrailPoint = namedtuple("TrailPoint", "n count certified ratio certified_ratio partial_sum")


class ExceptionReport:
    """
    Classification of ``0 ≤ k ≤ horizon`` against ``ε``.

    :ivar members:      indices with ``‖u_k x‖ ≥ ε`` certified.
    :ivar unresolved:   indices whose norm interval still straddles ``ε``.
    :ivar certificate:  `None`, or ``(K, k, bound)``: every exception lies in
                        ``[0, K]`` and ``‖u_j x‖ ≤ bound < ε`` for all
                        ``j ≥ k``.
    """

    def __init__(self, epsilon, horizon, members, unresolved, certificate=None):
        self.epsilon = epsilon
        self.horizon = horizon
        self.members = tuple(members)
        self.unresolved = tuple(unresolved)
        self.certificate = certificate

    @property
    def pessimistic(self):
        """ ``members ∪ unresolved``, sorted. """
        return tuple(sorted(self.members + self.unresolved))

    @property
    def certified_finite(self):
        return self.certificate is not None

    def checkpoints(self):
        points = {self.horizon // 10, 3 * self.horizon // 10, self.horizon}
        return sorted(n for n in points if n > 0)

    def trail(self, ideal=None):
        """
        Counts of exceptions up to each checkpoint ``n`` and their ratio to
        ``n + 1``.  Summable ideals also get the partial submeasure.
        """
        pessimistic = FiniteSet(self.pessimistic)
        members = FiniteSet(self.members)
        points = []
        for n in self.checkpoints():
            count = pessimistic.count(n)
            certified = members.count(n)
            partial = None
            if isinstance(ideal, SummableIdeal):
                partial = submeasure_partial(ideal, pessimistic, n)
            points.append(
                TrailPoint(
                    n,
                    count,
                    certified,
                    Fraction(count, n + 1),
                    Fraction(certified, n + 1),
                    partial,
                )
            )
        return points

    def to_record(self, ideal=None):
        record = {
            "epsilon": str(self.epsilon),
            "horizon": self.horizon,
            "members": list(self.members),
            "unresolved": list(self.unresolved),
            "certificate": None,
            "trail": [
                {
                    "n": p.n,
                    "count": p.count,
                    "certified": p.certified,
                    "ratio": str(p.ratio),
                    "partial_sum": None if p.partial_sum is None else str(p.partial_sum),
                }
                for p in self.trail(ideal)
            ],
        }
        if self.certificate is not None:
            last, start, bound = self.certificate
            record["certificate"] = {"last": last, "from": start, "bound": str(bound)}
        return record

    def __repr__(self):
        return (
            f"ExceptionReport(ε={self.epsilon}, N={self.horizon}, "
            f"members={len(self.members)}, unresolved={len(self.unresolved)})"
        )


def _finite_certificate(d, bad, epsilon, horizon):
    """
    Look for ``k`` past the last exception whose norm envelope is below
    ``ε``; indices between are excluded by the scan itself.
    """
    last = bad[-1] if bad else -1
    for k in range(last + 1, horizon + 2):
        bound = norm_envelope(d, k)
        if bound is not None and bound < epsilon:
            return last, k, bound
    return None


def exception_set(d, epsilon, horizon, resolution=DEFAULT_RESOLUTION, budget=DEFAULT_BUDGET):
    """
    :param d:       a `DigitStream`.
    :param epsilon: exact rational in ``(0, 1/2]``.
    :param horizon: largest index ``N ≥ 1`` scanned.

    :returns: an :class:`ExceptionReport`.
    """
    epsilon = parse_fraction(epsilon)
    if not 0 < epsilon <= HALF:
        raise ValueError(f"ε must lie in (0, 1/2]; given: {epsilon!r}")
    if horizon < 1:
        raise ValueError(f"Horizon must be at least 1; given: {horizon!r}")
    members, unresolved = [], []
    for k in range(horizon + 1):
        interval = circle_norm(d, k, resolution, budget, target=epsilon)
        if interval.low >= epsilon:
            members.append(k)
        elif interval.high >= epsilon:
            unresolved.append(k)
    if unresolved:
        log.debug("%d indices unresolved at ε=%s, N=%d", len(unresolved), epsilon, horizon)
    bad = sorted(members + unresolved)
    certificate = _finite_certificate(d, bad, epsilon, horizon)
    return ExceptionReport(epsilon, horizon, members, unresolved, certificate)


def trend(points):
    """ Label a sequence of checkpoint ratios. """
    ratios = [p.ratio for p in points]
    if not ratios:
        return UNCLEAR
    first, last = ratios[0], ratios[-1]
    nonincreasing = all(a >= b for a, b in zip(ratios, ratios[1:]))
    if last == 0 or (nonincreasing and last <= Fraction(3, 4) * first):
        return VANISHING
    if min(ratios) >= POSITIVE_FLOOR and last >= first / 2:
        return NOT_SMALL
    if max(ratios) - min(ratios) <= first / 10:
        return STABLE
    return UNCLEAR


def smallness_assessment(report, ideal):
    """
    Is the exception set small in ``ideal``?  Only a finite certificate gives
    ``Holds``; otherwise the verdict is ``Unknown`` with the trail and its
    trend.
    """
    points = report.trail(ideal)
    if report.certified_finite:
        last, start, bound = report.certificate
        return holds(SMALLNESS_RULE, trend=SMALL, last=last, envelope_from=start, bound=bound)
    label = trend(points)
    return unknown(
        "smallness of the exception set",
        trend=label,
        trail=[p.ratio for p in points],
        unresolved=len(report.unresolved),
    )


def _bounded_below(report):
    points = report.trail()
    return bool(points) and all(p.certified_ratio >= POSITIVE_FLOOR for p in points)


class VerificationReport:
    """ A decision next to the exception sets it was checked against. """

    def __init__(self, decision, rows, status):
        self.decision = decision
        self.rows = rows
        self.status = status

    def to_record(self):
        return {
            "decision": self.decision.to_record(),
            "status": self.status,
            "exceptions": [
                {"report": report.to_record(ideal), "smallness": verdict.to_record()}
                for report, verdict, ideal in self.rows
            ],
        }

    def table(self):
        """ Rows for a trail table: one per (ε, N, checkpoint). """
        rows = []
        for report, verdict, ideal in self.rows:
            for p in report.trail(ideal):
                rows.append(
                    {
                        "ε": str(report.epsilon),
                        "N": report.horizon,
                        "n": p.n,
                        "count": p.count,
                        "ratio": f"{float(p.ratio):.4f}",
                        "trend": verdict.evidence.get("trend"),
                    }
                )
        return rows


def consistency(decision, rows):
    """
    ``CONTRADICTION`` when an In decision meets certified exceptions bounded
    below, or a NotIn decision meets only finite exception sets.
    """
    reports = [report for report, _, _ in rows]
    trends = [verdict.evidence.get("trend") for _, verdict, _ in rows]
    if decision.value == IN:
        if any(
            t == NOT_SMALL and not r.unresolved and _bounded_below(r)
            for r, t in zip(reports, trends)
        ):
            return CONTRADICTION
        if all(t in (SMALL, VANISHING) for t in trends):
            return CONSISTENT
        return INCONCLUSIVE
    if decision.value == NOT_IN:
        if reports and all(r.certified_finite for r in reports):
            return CONTRADICTION
        if any(t == NOT_SMALL for t in trends):
            return CONSISTENT
        return INCONCLUSIVE
    return INCONCLUSIVE


def run_verification(ctx, epsilons, horizons, resolution=DEFAULT_RESOLUTION, budget=DEFAULT_BUDGET):
    """
    Decide, then scan exception sets for every ``(ε, N)``.

    :returns: a :class:`VerificationReport`.
    """
    decision = decide(ctx)
    rows = []
    for epsilon in epsilons:
        for horizon in horizons:
            report = exception_set(ctx.digits, epsilon, horizon, resolution, budget)
            rows.append((report, smallness_assessment(report, ctx.ideal), ctx.ideal))
    status = consistency(decision, rows)
    if status == CONTRADICTION:
        log.warning("verification contradicts %r for %s", decision, ctx.render())
    return VerificationReport(decision, rows, status)
