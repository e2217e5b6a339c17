"""Entanglement harvesting with variable-gap superconducting detectors."""

import csv
import io
import json

from . import _core
from ._core import (
    CSV_COLUMNS,
    ConfigError,
    EigensolverError,
    QuadratureError,
    alpha_from_gamma,
    characterize_qubit,
    classify,
    lambda_from_gamma,
    negativity,
    scenarios,
)

__version__ = _core.__version__


def evaluate_point(config):
    """Evaluate one detector pair. `config` uses the keys of a point config file."""
    return _core.evaluate_point(json.dumps(config))


def sweep_csv(plan, workers=1):
    """Run a sweep plan and return the CSV text the command-line tool would write."""
    return _core.sweep_csv(json.dumps(plan), workers)


def read_sweep_csv(text):
    """Split sweep CSV text into (plan dict, list of row dicts). Numeric fields become floats."""
    plan = json.loads(_core.csv_plan(text))
    body = "\n".join(line for line in text.splitlines() if not line.startswith("#"))
    rows = []
    for r in csv.DictReader(io.StringIO(body)):
        for k, v in r.items():
            if k not in ("classification", "error"):
                r[k] = float(v)
        rows.append(r)
    return plan, rows
