"""
Three-valued verdicts with evidence.

Every checker in torsionkit answers with a :class:`Verdict`.  ``Holds`` and
``Fails`` are only issued together with the rule that justified them;
everything a checker cannot certify is ``Unknown``.
"""
from fractions import Fraction

HOLDS = "Holds"
FAILS = "Fails"
UNKNOWN = "Unknown"

VALUES = (HOLDS, FAILS, UNKNOWN)


class Verdict:
    """
    Outcome of a single check.

    :ivar value:    one of ``"Holds"``, ``"Fails"``, ``"Unknown"``.
    :ivar rule:     citation of the rule applied, or `None`.
    :ivar evidence: `dict` of supporting data (witness sets, trails, notes).
    """

    __slots__ = ("value", "rule", "evidence")

    def __init__(self, value, rule=None, **evidence):
        if value not in VALUES:
            raise ValueError(f"Verdict value must be one of {VALUES}; given: {value!r}")
        if value != UNKNOWN and not rule:
            raise ValueError(f"A definitive verdict needs a rule citation; given: {value!r}")
        self.value = value
        self.rule = rule
        self.evidence = evidence

    @property
    def holds(self):
        return self.value == HOLDS

    @property
    def fails(self):
        return self.value == FAILS

    @property
    def unknown(self):
        return self.value == UNKNOWN

    @property
    def definitive(self):
        return self.value != UNKNOWN

    @property
    def catalog_relative(self):
        return bool(self.evidence.get("catalog_relative"))

    def with_evidence(self, **extra):
        """ Returns a copy of this verdict with more evidence attached. """
        evidence = dict(self.evidence)
        evidence.update(extra)
        return Verdict(self.value, self.rule, **evidence)

    def to_record(self):
        record = {"value": self.value, "rule": self.rule}
        if self.evidence:
            record["evidence"] = to_jsonable(self.evidence)
        return record

    def __eq__(self, other):
        if isinstance(other, str):
            return self.value == other
        if isinstance(other, Verdict):
            return (self.value, self.rule) == (other.value, other.rule)
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.rule))

    def __repr__(self):
        if self.rule:
            return f"Verdict({self.value}, {self.rule!r})"
        return f"Verdict({self.value})"


def holds(rule, **evidence):
    return Verdict(HOLDS, rule, **evidence)


def fails(rule, **evidence):
    return Verdict(FAILS, rule, **evidence)


def unknown(rule=None, **evidence):
    return Verdict(UNKNOWN, rule, **evidence)


def conjunction(named, rule):
    """
    Kleene conjunction of ``(name, verdict)`` pairs.

    Fails as soon as one part fails, holds when all parts hold.  A Holds that
    rests on a catalog-relative part is itself catalog-relative.
    """
    named = list(named)
    parts = {name: verdict for name, verdict in named}
    for name, verdict in named:
        if verdict.fails:
            return fails(rule, failing=name, parts=parts)
    if all(verdict.holds for _, verdict in named):
        relative = any(verdict.catalog_relative for _, verdict in named)
        if relative:
            return holds(rule, parts=parts, catalog_relative=True)
        return holds(rule, parts=parts)
    blocking = [name for name, verdict in named if verdict.unknown]
    return unknown(rule, blocking=blocking, parts=parts)


def to_jsonable(value):
    """ Recursively convert evidence into plain JSON-compatible data. """
    if isinstance(value, Verdict):
        return value.to_record()
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, float):
        return value
    if isinstance(value, str):
        return value
    if isinstance(value, dict):
        return {str(key): to_jsonable(val) for key, val in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(item) for item in value]
    if isinstance(value, (set, frozenset)):
        return sorted(to_jsonable(item) for item in value)
    to_record = getattr(value, "to_record", None)
    if to_record is not None:
        return to_jsonable(to_record())
    render = getattr(value, "render", None)
    if render is not None:
        return render()
    return repr(value)
