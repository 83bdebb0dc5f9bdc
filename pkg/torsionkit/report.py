"""
Running scenarios and turning the outcome into a report and an exit code.
"""
import logging
from datetime import datetime, timezone

import simplejson as json

from .catalog import build
from .conditions import decide, evaluate_all
from .ideals import nestedness_probe
from .verdict import to_jsonable
from .verifier import CONTRADICTION, INCONCLUSIVE, run_verification
from .version import __version__

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_EXPECTATION = 1
EXIT_UNKNOWN = 2
EXIT_CONTRADICTION = 3
EXIT_INVALID = 4

REPORT_SCHEMA = 1


class ScenarioResult:
    """
    Everything a scenario run produced.

    :ivar conditions:   `dict` of condition verdicts, or `None`.
    :ivar decision:     a `Decision`, or `None`.
    :ivar verification: a `VerificationReport`, or `None`.
    :ivar probe:        the nestedness probe verdict, or `None`.
    :ivar assertions:   list of ``{check, expected, observed, pass}``.
    """

    def __init__(self, scenario, context):
        self.scenario = scenario
        self.context = context
        self.conditions = None
        self.decision = None
        self.verification = None
        self.probe = None
        self.assertions = []

    @property
    def unknown(self):
        if self.decision is not None and not self.decision.definitive:
            return True
        if self.verification is not None and self.verification.status == INCONCLUSIVE:
            return True
        if self.probe is not None and self.probe.unknown:
            return True
        if self.decision is None and self.conditions is not None:
            return any(
                verdict.unknown for name, verdict in self.conditions.items() if name != "catalog"
            )
        return False

    @property
    def exit_code(self):
        if self.verification is not None and self.verification.status == CONTRADICTION:
            return EXIT_CONTRADICTION
        if any(not a["pass"] for a in self.assertions):
            return EXIT_EXPECTATION
        if self.unknown:
            return EXIT_UNKNOWN
        return EXIT_OK

    def to_record(self, timestamp=True):
        ctx = self.context
        record = {
            "schema": REPORT_SCHEMA,
            "tool": f"torsionkit {__version__}",
            "scenario": self.scenario.name,
            "context": {
                "ratio": ctx.ratio.render(),
                "digits": ctx.digits.render(),
                "ideal": ctx.ideal.to_record(),
                "support": ctx.S.render(),
                "b_support": ctx.S_b.render(),
                "bounded_region": None if ctx.region is None else ctx.region.render(),
            },
            "checks": self.scenario.checks,
        }
        if self.conditions is not None:
            record["conditions"] = {
                name: (value if name == "catalog" else value.to_record())
                for name, value in self.conditions.items()
            }
        if self.decision is not None:
            record["decision"] = self.decision.to_record()
        if self.verification is not None:
            record["verification"] = self.verification.to_record()
        if self.probe is not None:
            record["probe"] = self.probe.to_record()
        record["assertions"] = self.assertions
        record["exit_code"] = self.exit_code
        if timestamp:
            record["generated"] = datetime.now(timezone.utc).isoformat()
        return to_jsonable(record)

    def dumps(self, timestamp=True):
        return json.dumps(self.to_record(timestamp), indent=2, sort_keys=True, ensure_ascii=False)


def _observed(result, check, key=None):
    if check == "decide":
        return None if result.decision is None else result.decision.value
    if check == "rule":
        return None if result.decision is None else result.decision.rule
    if check == "citation":
        return None if result.decision is None else result.decision.citation
    if check == "verify":
        return None if result.verification is None else result.verification.status
    if check == "probe":
        return None if result.probe is None else result.probe.value
    if check == "conditions":
        if result.conditions is None or key not in result.conditions:
            return None
        return result.conditions[key].value
    return None


def check_expectations(result, expect):
    """ Compare the declared expectations with what was observed. """
    assertions = []
    for check, expected in expect.items():
        if check == "conditions":
            for name, value in expected.items():
                observed = _observed(result, "conditions", name)
                assertions.append(
                    {
                        "check": f"conditions.{name}",
                        "expected": value,
                        "observed": observed,
                        "pass": observed == value,
                    }
                )
            continue
        observed = _observed(result, check)
        assertions.append(
            {"check": check, "expected": expected, "observed": observed, "pass": observed == expected}
        )
    return assertions


def run_scenario(scenario, budget=None, resolution=None):
    """
    Run the scenario's checks in the order conditions, decide, verify, then
    the nestedness probe, and compare against its expectations.

    :param budget:     overrides the scenario's norm refinement budget.
    :param resolution: overrides the scenario's norm resolution.
    :returns: a :class:`ScenarioResult`.
    """
    params = scenario.parameters
    budget = params["budget"] if budget is None else budget
    resolution = params["resolution"] if resolution is None else resolution
    ctx = scenario.context()
    result = ScenarioResult(scenario, ctx)
    log.info("running scenario %s: %s", scenario.name, ctx.render())
    if "conditions" in scenario.checks:
        result.conditions = evaluate_all(ctx)
    if "verify" in scenario.checks:
        result.verification = run_verification(
            ctx, params["epsilons"], params["horizons"], resolution, budget
        )
        result.decision = result.verification.decision
    elif "decide" in scenario.checks:
        result.decision = decide(ctx)
    if "probe" in scenario.checks:
        pairs = scenario.pairs
        witness = ctx.ideal.flags.get("nested_witness")
        if not pairs and witness is not None:
            pairs = [witness]
        result.probe = nestedness_probe(ctx.ideal, pairs, params["window"])
    result.assertions = check_expectations(result, scenario.expect)
    return result


def reproduce(example_id, budget=None, resolution=None):
    """
    Run a built-in scenario with all its checks.

    :raises KeyError: for an unknown id.
    """
    return run_scenario(build(example_id), budget, resolution)


def summary_lines(result):
    """ Short human readable lines: decision, verification, assertions. """
    lines = [f"scenario {result.scenario.name}: {result.context.render()}"]
    if result.conditions is not None:
        shown = ", ".join(
            f"{name}={value.value}"
            for name, value in result.conditions.items()
            if name not in ("catalog", "limit")
        )
        lines.append(f"conditions: {shown}")
    if result.decision is not None:
        rule = result.decision.rule
        if rule and result.decision.citation:
            rule = f"{result.decision.citation}: {rule}"
        rule = f" ({rule})" if rule else ""
        lines.append(f"decision: {result.decision.value}{rule}")
    if result.verification is not None:
        lines.append(f"verification: {result.verification.status}")
    if result.probe is not None:
        lines.append(f"nestedness probe: {result.probe.value}")
    for a in result.assertions:
        status = "pass" if a["pass"] else "fail"
        lines.append(f"{status}: {a['check']} expected {a['expected']}, observed {a['observed']}")
    return lines
