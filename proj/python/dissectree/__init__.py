"""Random polygon dissections, their dual plane trees and scaling statistics."""

import csv
import io
import json
import os

from ._core import *  # noqa: F401,F403
from ._core import _distribution_from_json, _run_experiment


def distribution(spec):
    """Offspring law from a dict, a JSON string or a path to a JSON file.

    >>> distribution({"kind": "p_angulation", "p": 3}).mu0
    0.5
    """
    if isinstance(spec, dict):
        return _distribution_from_json(json.dumps(spec))
    if os.path.exists(spec):
        with open(spec) as f:
            return _distribution_from_json(f.read())
    return _distribution_from_json(spec)


def run_experiment(config):
    """Run a scaling study. Returns (rows, report, samples).

    rows and samples are lists of dicts parsed from the CSV outputs, report
    is the JSON report as a dict.
    """
    text = config if isinstance(config, str) else json.dumps(config)
    rows_csv, report, samples_csv = _run_experiment(text)
    rows = list(csv.DictReader(io.StringIO(rows_csv)))
    samples = list(csv.DictReader(io.StringIO(samples_csv)))
    return rows, json.loads(report), samples
