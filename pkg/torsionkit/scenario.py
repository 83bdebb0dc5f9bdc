"""
Scenario documents: one JSON (or YAML) record naming a ratio sequence, a
digit stream, an ideal, the checks to run and the expected outcomes.

A minimal scenario::

    {
      "schema": 1,
      "name": "prufer",
      "ratio": {"kind": "constant", "b": 3},
      "digits": {"source": "pattern", "pieces": [{"set": "positive", "value": 1}]},
      "ideal": "density",
      "checks": ["decide"],
      "expect": {"decide": "NotIn"}
    }

Named sets under ``"sets"`` are built in order and may be referenced by name
from later sets, the ratio, the digits, witnesses, partitions and
certificates.
"""
import logging
import os

import simplejson as json
from ruamel import yaml

from .conditions import TorsionContext
from .expansion import HALF, digits_from_record
from .ideals import ideal_from_record
from .intsets import pair_from_record, set_from_record
from .scale import ratio_from_record
from .util import parse_fraction

log = logging.getLogger(__name__)

SCHEMA_VERSION = 1
CHECKS = ("conditions", "decide", "verify", "probe")
YAML_SUFFIXES = (".yaml", ".yml")

DEFAULT_PARAMETERS = {
    "epsilons": ["1/4"],
    "horizons": [1000],
    "window": 2000,
    "budget": 512,
    "resolution": "1/1000000000",
}


class ScenarioError(ValueError):
    """ Raised for unreadable documents, schema violations and dangling names. """

    def __init__(self, msg, line=None, column=None):
        super().__init__(msg)
        self.msg = msg
        self.line = line
        self.column = column

    def __str__(self):
        if self.line is None:
            return self.msg
        return f"{self.msg} (line {self.line}, column {self.column})"


def parse_document(text, fmt="json"):
    """
    Parse ``text`` as JSON or YAML.

    :raises ScenarioError: with the position of the syntax error.
    """
    if fmt == "yaml":
        yml = yaml.YAML(typ="safe", pure=True)
        try:
            return yml.load(text)
        except yaml.YAMLError as e:
            mark = getattr(e, "problem_mark", None)
            if mark is None:
                raise ScenarioError(f"Invalid YAML: {e}") from None
            raise ScenarioError(
                f"Invalid YAML: {getattr(e, 'problem', e)}", mark.line + 1, mark.column + 1
            ) from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ScenarioError(f"Invalid JSON: {e.msg}", e.lineno, e.colno) from None


def _require(record, field, where="scenario"):
    if field not in record:
        raise ScenarioError(f"The {where} needs a {field!r} field")
    return record[field]


def _build(what, builder, *args):
    """ Run a record builder, turning its errors into ScenarioErrors. """
    try:
        return builder(*args)
    except KeyError as e:
        raise ScenarioError(f"Unresolved reference in {what}: {e.args[0]!r}") from None
    except (TypeError, ValueError) as e:
        raise ScenarioError(f"Invalid {what}: {e}") from None


def _parameters(record):
    params = dict(DEFAULT_PARAMETERS)
    params.update(record.get("parameters") or {})
    unknown = set(params) - set(DEFAULT_PARAMETERS)
    if unknown:
        raise ScenarioError(f"Unknown parameters: {', '.join(sorted(unknown))}")
    try:
        epsilons = [parse_fraction(e) for e in params["epsilons"]]
        resolution = parse_fraction(params["resolution"])
    except ValueError as e:
        raise ScenarioError(str(e)) from None
    for eps in epsilons:
        if not 0 < eps <= HALF:
            raise ScenarioError(f"Every ε must lie in (0, 1/2]; given: {eps}")
    if resolution <= 0:
        raise ScenarioError(f"Resolution must be positive; given: {resolution}")
    for name in ("window", "budget"):
        if not isinstance(params[name], int) or params[name] < 1:
            raise ScenarioError(f"Parameter {name!r} must be a positive integer")
    horizons = params["horizons"]
    if not horizons or any(not isinstance(n, int) or n < 1 for n in horizons):
        raise ScenarioError(f"Horizons must be positive integers; given: {horizons!r}")
    return {
        "epsilons": epsilons,
        "horizons": list(horizons),
        "window": params["window"],
        "budget": params["budget"],
        "resolution": resolution,
    }


def _checks(record):
    checks = record.get("checks", "all")
    if checks == "all":
        return list(CHECKS)
    if isinstance(checks, str):
        checks = [checks]
    unknown = [c for c in checks if c not in CHECKS]
    if unknown:
        raise ScenarioError(f"Unknown checks {unknown!r}; pick from {CHECKS} or 'all'")
    return [c for c in CHECKS if c in checks]


class Scenario:
    """
    A parsed scenario.  Build one with :meth:`from_record` or
    :func:`load_scenario`.
    """

    def __init__(
        self,
        name,
        ratio,
        digits,
        ideal,
        sets=None,
        witnesses=(),
        partition=None,
        certificates=None,
        pairs=(),
        checks=CHECKS,
        parameters=None,
        expect=None,
        record=None,
    ):
        self.name = name
        self.ratio = ratio
        self.digits = digits
        self.ideal = ideal
        self.sets = sets or {}
        self.witnesses = list(witnesses)
        self.partition = partition
        self.certificates = certificates or {}
        self.pairs = list(pairs)
        self.checks = list(checks)
        self.parameters = parameters or _parameters({})
        self.expect = expect or {}
        self.record = record

    @classmethod
    def from_record(cls, record):
        if not isinstance(record, dict):
            raise ScenarioError(f"A scenario must be a mapping; given: {type(record).__name__}")
        schema = _require(record, "schema")
        if schema != SCHEMA_VERSION:
            raise ScenarioError(f"Unsupported schema version {schema!r}; expected {SCHEMA_VERSION}")
        name = _require(record, "name")
        refs = {}
        for set_name, set_record in (record.get("sets") or {}).items():
            refs[set_name] = _build(f"set {set_name!r}", set_from_record, set_record, refs)
        ratio = _build("ratio", ratio_from_record, _require(record, "ratio"), refs)
        digits = _build("digits", digits_from_record, _require(record, "digits"), ratio, refs)
        ideal = _build("ideal", ideal_from_record, _require(record, "ideal"))
        witnesses = [
            _build("witness", set_from_record, w, refs) for w in record.get("witnesses", ())
        ]
        partition = None
        if record.get("partition") is not None:
            part = record["partition"]
            partition = (
                _build("partition", set_from_record, _require(part, "B", "partition"), refs),
                _build("partition", set_from_record, _require(part, "D", "partition"), refs),
            )
        certificates = {
            key: _build(f"certificate {key!r}", set_from_record, value, refs)
            for key, value in (record.get("certificates") or {}).items()
        }
        pairs = [_build("pair", pair_from_record, p) for p in record.get("pairs", ())]
        return cls(
            name,
            ratio,
            digits,
            ideal,
            sets=refs,
            witnesses=witnesses,
            partition=partition,
            certificates=certificates,
            pairs=pairs,
            checks=_checks(record),
            parameters=_parameters(record),
            expect=record.get("expect") or {},
            record=record,
        )

    def context(self):
        return TorsionContext(
            self.digits,
            self.ideal,
            witnesses=self.witnesses,
            partition=self.partition,
            certificates=self.certificates,
            window=self.parameters["window"],
        )

    def __repr__(self):
        return f"Scenario({self.name!r})"


def load_scenario(path, overrides=None):
    """
    Read a scenario file; ``.yaml``/``.yml`` files are parsed as YAML,
    everything else as JSON.  ``overrides`` replace entries of
    ``"parameters"``.

    :raises ScenarioError: for unreadable or invalid documents.
    """
    try:
        with open(path) as fp:
            text = fp.read()
    except OSError as e:
        raise ScenarioError(f"Cannot read scenario {path!r}: {e.strerror}") from None
    fmt = "yaml" if os.path.splitext(path)[1].lower() in YAML_SUFFIXES else "json"
    record = parse_document(text, fmt)
    if overrides:
        if not isinstance(record, dict):
            raise ScenarioError("A scenario must be a mapping")
        record = dict(record)
        params = dict(record.get("parameters") or {})
        params.update(overrides)
        record["parameters"] = params
    log.debug("loaded scenario from %s", path)
    return Scenario.from_record(record)
