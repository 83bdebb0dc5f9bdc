import logging
import os
import sys
from fractions import Fraction

import simplejson as json
from fabric.colors import green, red, yellow
from texttable import Texttable

log = logging.getLogger(__name__)

BUDGET_ENV_VAR = "TORSIONKIT_BUDGET"
CONFIG_FILE_NAME = "torsionkit.json"

DEFAULTS = {
    "epsilons": ["1/4", "1/10", "1/100"],
    "checkpoints": [1000, 10000],
    "resolution": "1/1000000000",
    "budget": 512,
    "window": 2000,
}


def die(msg, error_code=1):
    print(f"{red('error')}: {msg}")
    sys.exit(error_code)


def warn(msg, error_code=1):
    print(f"{yellow('warning')}: {msg}")


def colour_verdict(text):
    """ Colour an outcome string for terminal output. """
    if text in ("In", "Holds", "CONSISTENT", "pass"):
        return green(text)
    if text in ("NotIn", "Fails", "CONTRADICTION", "fail"):
        return red(text)
    return yellow(text)


_config = None


def get_config(config_file=None):
    """
    Parses the config file, merges it over :data:`DEFAULTS` and returns it as
    a `dict`.

    :param config_file: a `file`-like object that contains torsionkit.json
                        contents.  If `None`, we look for a file named
                        ``torsionkit.json`` in the working directory and
                        fall back to the defaults when there is none.

    :returns: a `dict` of settings.
    """
    global _config
    if _config is not None:
        return _config

    config = dict(DEFAULTS)
    if config_file is None:
        if os.path.exists(CONFIG_FILE_NAME):
            with open(CONFIG_FILE_NAME) as fp:
                config.update(json.load(fp))
    else:
        config.update(json.load(config_file))
    unknown = set(config) - set(DEFAULTS)
    if unknown:
        warn(f"Ignoring unknown settings: {', '.join(sorted(unknown))}")
    _config = config
    return config


def reset_config():
    global _config
    _config = None


def parse_fraction(value):
    """
    Exact rational from ``3/5``, ``0.25``, ``1e-9`` or an int.

    :raises ValueError: on anything else.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ValueError(f"Expected a rational number; given: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        # floats only enter through YAML; use their shortest decimal form
        return Fraction(repr(value))
    try:
        return Fraction(str(value).strip())
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"Expected a rational number; given: {value!r}") from None


def get_budget(override=None, config=None):
    """
    Norm refinement budget: ``override`` if given, else the
    ``TORSIONKIT_BUDGET`` environment variable, else the config.
    """
    if override is not None:
        return int(override)
    env_value = os.environ.get(BUDGET_ENV_VAR)
    if env_value:
        try:
            return int(env_value)
        except ValueError:
            warn(f"{BUDGET_ENV_VAR}={env_value!r} is not an integer; ignoring it")
    config = config if config is not None else get_config()
    return int(config["budget"])


def get_settings(overrides=None, config=None):
    """
    Effective settings with exact rationals: config merged with the
    ``-o key=value`` overrides.
    """
    overrides = {k: v for k, v in (overrides or {}).items() if v is not None}
    config = dict(config if config is not None else get_config())
    config.update(overrides)
    return {
        "epsilons": [parse_fraction(e) for e in config["epsilons"]],
        "checkpoints": [int(n) for n in config["checkpoints"]],
        "resolution": parse_fraction(config["resolution"]),
        "budget": get_budget(overrides.get("budget"), config),
        "window": int(config["window"]),
    }


def print_stats_table(
    header, data, columns, default_alignment="l", custom_alignment=None
):
    """Print out a list of dictionaries (or objects) as a table.

    If given a list of objects, will print out the contents of objects'
    `__dict__` attributes.

    :param header: Header that will be printed above table.
    :type header:  `str`
    :param data:   List of dictionaries (or objects )
    """
    print(f"# {header}")
    table = Texttable(max_width=115)
    table.header(columns)
    table.set_cols_dtype(["t"] * len(columns))
    table.set_cols_align(default_alignment * len(columns))
    if not isinstance(data, list):
        data = [data]
    for row in data:
        if not isinstance(row, (list, tuple, dict)):
            row = vars(row)
        if isinstance(row, dict):
            row = [row.get(key, "MISSING") for key in columns]
        table.add_row([str(cell) for cell in row])
    if custom_alignment:
        table.set_cols_align(
            [custom_alignment.get(column, default_alignment) for column in columns]
        )
    print(table.draw())
