"""
Built-in scenarios reproducing the known examples.

Every entry is a plain scenario record, exactly what a scenario file would
contain, so ``tkit reproduce ID --report out.json`` and ``tkit run`` on the
dumped record agree.
"""
from .conditions import (
    RULE_BOUNDED_MOD,
    RULE_BOUNDED_SEQUENCE,
    RULE_DIVERGENT_MOD,
    RULE_LEFT_BOUNDARY,
    RULE_RIGHT_BOUNDARY,
    RULE_SPLITTING,
    RULE_SUPPORT_SMALL,
    RULE_T,
)
from .scenario import SCHEMA_VERSION, Scenario

WAVE_Q = "3/5"

# ⋃[(2n)², (2n+1)²]
NOWC_SET = {"form": "interval_union", "lefts": [4, 0, 0], "rights": [4, 4, 1]}
SQUARES = {"form": "image", "rule": [1, 0, 0], "start": 1}
# ⋃[z_n, w_{n+1}] for n ≥ 1
WAVE_BLOCKS = {"form": "pair", "lefts": [1, 1, 1], "rights": [1, 2, 2], "start": 1}
WAVE_W_TAIL = {"form": "image", "rule": [1, 2, 2]}
WAVE_PAIR = {"lefts": [1, 1, 1], "rights": [1, 2, 2], "start": 1}
WAVE_IDEAL = {"family": "wave", "parameters": {"q": WAVE_Q}}

NOWC_DIGITS = {"source": "pattern", "pieces": [{"set": "X", "value": "b-1"}]}


def _scenario(name, description, body, expect):
    record = {"schema": SCHEMA_VERSION, "name": name, "description": description}
    record.update(body)
    record["expect"] = expect
    return record


CATALOG = {
    "ce": _scenario(
        "ce",
        "u = ((n+1)!), x = Σ 1/(2n)!: torsion although (i), (ii) and (iii) all fail",
        {
            "ratio": {"kind": "affine", "a": 1, "c": 1},
            "digits": {"source": "pattern", "pieces": [{"set": "odds", "value": 1}]},
            "ideal": "fin",
            "checks": "all",
            "parameters": {"epsilons": ["1/10"], "horizons": [200]},
        },
        {
            "conditions": {"i": "Fails", "ii": "Fails", "iii": "Fails", "I": "Holds", "II": "Holds"},
            "decide": "In",
            "rule": RULE_DIVERGENT_MOD,
            "verify": "CONSISTENT",
        },
    ),
    "NoWC": _scenario(
        "NoWC",
        "b-support with density 1/2 whose boundaries have density 0",
        {
            "sets": {"X": NOWC_SET},
            "ratio": {"kind": "constant", "b": 2},
            "digits": NOWC_DIGITS,
            "ideal": "density",
            "checks": "all",
            "parameters": {"epsilons": ["1/4"], "horizons": [10000]},
        },
        {
            "conditions": {"i": "Holds", "ii": "Holds", "iii": "Holds", "T": "Holds"},
            "decide": "In",
            "rule": RULE_T,
            "verify": "CONSISTENT",
        },
    ),
    "prufer": _scenario(
        "prufer",
        "x = Σ 1/3ⁿ = 1/2 under b = 3: ‖3ⁿx‖ = 1/2 for every n",
        {
            "ratio": {"kind": "constant", "b": 3},
            "digits": {"source": "pattern", "pieces": [{"set": "positive", "value": 1}]},
            "ideal": "density",
            "checks": "all",
            "parameters": {"epsilons": ["1/4"], "horizons": [50]},
        },
        {
            "conditions": {"ii": "Fails", "T": "Fails"},
            "decide": "NotIn",
            "rule": RULE_BOUNDED_SEQUENCE,
            "citation": "Corollary b-boundedreal",
            "verify": "CONSISTENT",
        },
    ),
    "atomic-PropoNew": _scenario(
        "atomic-PropoNew",
        "atomic x with b-bounded support {3n+2}: torsion iff the support is small",
        {
            "sets": {"S": {"form": "residue", "modulus": 3, "residues": [2]}},
            "ratio": {"kind": "constant", "b": 2},
            "digits": {"source": "pattern", "pieces": [{"set": "S", "value": 1}]},
            "ideal": "density",
            "checks": "all",
            "parameters": {"epsilons": ["1/10"], "horizons": [300]},
        },
        {"decide": "NotIn", "rule": RULE_RIGHT_BOUNDARY, "verify": "CONSISTENT"},
    ),
    "counterexample-wave": _scenario(
        "counterexample-wave",
        "the wave ideal is not nested: W∖{w_0} is small while Z is not",
        {
            "sets": {"W+": WAVE_W_TAIL},
            "ratio": {"kind": "constant", "b": 2},
            "digits": {"source": "pattern", "pieces": [{"set": "W+", "value": "b-1"}]},
            "ideal": WAVE_IDEAL,
            "pairs": [WAVE_PAIR],
            "checks": ["decide", "probe"],
        },
        {"probe": "Fails", "decide": "In", "rule": RULE_SUPPORT_SMALL},
    ),
    "Exa2osserv": _scenario(
        "Exa2osserv",
        "A_x holds while T_x fails: b = 2 on S and b = 2ⁿ off S",
        {
            "sets": {"S": WAVE_BLOCKS},
            "ratio": {"kind": "piecewise", "set": "S", "on": 2, "off": {"rule": "power", "base": 2}},
            "digits": {"source": "pattern", "pieces": [{"set": "S", "value": 1}]},
            "ideal": WAVE_IDEAL,
            "checks": ["conditions", "decide"],
        },
        {
            "conditions": {"i": "Holds", "ii": "Holds", "iii": "Fails", "a2": "Holds", "A": "Holds", "T": "Fails"},
            "decide": "In",
            "rule": RULE_BOUNDED_MOD,
        },
    ),
    "notnested": _scenario(
        "notnested",
        "(i) and (ii) hold but x is not torsion under a non-nested ideal",
        {
            "sets": {"S": WAVE_BLOCKS},
            "ratio": {"kind": "constant", "b": 2},
            "digits": {"source": "pattern", "pieces": [{"set": "S", "value": "b-1"}]},
            "ideal": WAVE_IDEAL,
            "checks": ["conditions", "decide"],
        },
        {
            "conditions": {"i": "Holds", "ii": "Holds", "iii": "Fails", "T": "Fails"},
            "decide": "NotIn",
            "rule": RULE_LEFT_BOUNDARY,
        },
    ),
    "ax1p-b": _scenario(
        "ax1p-b",
        "(a1) holds while (⋆) fails: b = 2 on odd and b = n on even indices",
        {
            "ratio": {"kind": "piecewise", "set": "odds", "on": 2, "off": {"rule": "linear", "a": 1, "c": 0}},
            "digits": {
                "source": "pattern",
                "pieces": [
                    {"set": "odds", "value": "b-1"},
                    {"set": "evens", "value": {"value": "bminus", "k": 2}},
                ],
            },
            "ideal": "fin",
            "partition": {"B": "odds", "D": "evens"},
            "checks": "all",
            "parameters": {"epsilons": ["1/10"], "horizons": [100]},
        },
        {
            "conditions": {"a1": "Holds", "star": "Fails", "a2": "Holds", "b": "Holds"},
            "decide": "In",
            "rule": RULE_SPLITTING,
            "verify": "CONSISTENT",
        },
    ),
    "notIx": _scenario(
        "notIx",
        "small b-divergent support with c_n = ⌊b_n/2⌋: (I) holds only because S is small",
        {
            "sets": {"S0": SQUARES},
            "ratio": {"kind": "affine", "a": 1, "c": 1},
            "digits": {"source": "pattern", "pieces": [{"set": "S0", "value": "floor(b/2)"}]},
            "ideal": "density",
            "checks": "all",
            "parameters": {"epsilons": ["1/4"], "horizons": [400]},
        },
        {
            "conditions": {"I": "Holds", "II": "Holds", "limit": "Fails"},
            "decide": "In",
            "rule": RULE_SUPPORT_SMALL,
            "verify": "CONSISTENT",
        },
    ),
    "nowc-patched": _scenario(
        "nowc-patched",
        "NoWC with its digits zeroed on the perfect squares, a small set",
        {
            "sets": {"X": NOWC_SET, "squares": SQUARES},
            "ratio": {"kind": "constant", "b": 2},
            "digits": {"source": "modified", "base": NOWC_DIGITS, "patch": "squares", "value": 0},
            "ideal": "density",
            "checks": "all",
            "parameters": {"epsilons": ["1/4"], "horizons": [1000]},
        },
        {"decide": "In", "rule": RULE_T, "verify": "CONSISTENT"},
    ),
}

REPRODUCIBLE = tuple(CATALOG)


def scenario_record(example_id):
    """
    :raises KeyError: for unknown ids.
    """
    if example_id not in CATALOG:
        raise KeyError(example_id)
    return CATALOG[example_id]


def build(example_id):
    return Scenario.from_record(scenario_record(example_id))
