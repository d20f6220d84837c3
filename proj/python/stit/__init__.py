# SPDX-License-Identifier: Apache-2.0
"""STIT tessellations, encapsulation bounds and the verification harness."""

import json

from . import _core
from ._core import ConfigError, StitError, experiment_names, lower_bound, r_of_s, t_star

__all__ = [
    "ConfigError",
    "StitError",
    "axis_orthogonal",
    "box",
    "cli",
    "experiment_names",
    "isotropic",
    "lower_bound",
    "measure_hitting",
    "polygon",
    "r_of_s",
    "simulate",
    "simulate_pht",
    "t_star",
    "verify",
]


def box(lo, hi):
    return {"kind": "box", "lo": list(lo), "hi": list(hi)}


def polygon(vertices):
    return {"kind": "polygon", "vertices": [list(v) for v in vertices]}


def isotropic(gamma=1.0):
    return {"gamma": gamma, "directional": {"kind": "isotropic2d"}}


def axis_orthogonal(g):
    return {"g": list(g)}


def measure_hitting(measure, body):
    return _core.measure_hitting(json.dumps(measure), json.dumps(body))


def simulate(measure, window, t, seed=1, method="direct"):
    """Cell tree of a STIT run, as a dict."""
    return json.loads(_core.simulate(json.dumps(measure), json.dumps(window), t, seed, method))


def simulate_pht(measure, window, rho=1.0, seed=1):
    return json.loads(_core.simulate_pht(json.dumps(measure), json.dumps(window), rho, seed))


def verify(name, overrides=None, seed=1, n_scale=1.0, threads=0):
    """Summary of one experiment, as a dict with a boolean "pass"."""
    text = _core.verify(name, json.dumps(overrides or {}), seed, n_scale, threads)
    return json.loads(text)


def cli(*args):
    """Runs the command line in-process; returns (exit code, stdout, stderr)."""
    return _core.cli([str(a) for a in args])
