"""Timing-driven analytical global placement.

Thin pythonic layer over the C++ core: the core speaks JSON strings, this
module parses them into dicts so callers never touch serialization.
"""

import json as _json

from tdplace import _core
from tdplace._core import (
    GraphError,
    NonFiniteError,
    ParseError,
    ValidationError,
)

__all__ = [
    "GraphError",
    "NonFiniteError",
    "ParseError",
    "ValidationError",
    "compare_csv",
    "default_config",
    "generate",
    "hpwl",
    "place",
    "render_svg",
    "report_paths",
    "sta",
    "validate",
]


def _dump(obj):
    return obj if isinstance(obj, str) else _json.dumps(obj)


def _dump_opt(obj):
    return "" if obj is None else _dump(obj)


def generate(seed=1, cells=100, registers=-1, fanout=2.0, fail_frac=0.2, r_unit=1e-4, c_unit=1e-4):
    """Synthesize a random design; returns the design as a dict."""
    return _json.loads(
        _core.generate(seed=seed, cells=cells, registers=registers, fanout=fanout,
                       fail_frac=fail_frac, r_unit=r_unit, c_unit=c_unit)
    )


def validate(design):
    """Raise ValidationError/ParseError if the design is malformed."""
    _core.validate(_dump(design))


def default_config():
    return _json.loads(_core.default_config())


def sta(design, placement=None):
    """Timing report dict: tns, wns, endpoints, per-pin arr/req/slack."""
    return _json.loads(_core.sta(_dump(design), _dump_opt(placement)))


def report_paths(design, placement=None, policy="endpoint", n=0, k=1):
    """Worst-path report dict; n <= 0 covers every violated endpoint."""
    return _json.loads(_core.report_paths(_dump(design), _dump_opt(placement), policy, n, k))


def place(design, config=None):
    """Run the placement flow; returns a dict with parsed outputs.

    Keys: placement, weights (dicts), metrics_csv (str), tns, wns, hpwl,
    iterations, stop_reason.
    """
    raw = _core.place(_dump(design), _dump_opt(config))
    return {
        "placement": _json.loads(raw["placement_json"]),
        "weights": _json.loads(raw["weights_json"]),
        "metrics_csv": raw["metrics_csv"],
        "tns": raw["tns"],
        "wns": raw["wns"],
        "hpwl": raw["hpwl"],
        "iterations": raw["iterations"],
        "stop_reason": raw["stop_reason"],
    }


def compare_csv(design, configs, parallel=False):
    """Ablation comparison; returns the report as CSV text."""
    return _core.compare(_dump(design), [_dump(c) for c in configs], parallel)


def render_svg(design, placement=None, paths=None):
    return _core.render_svg(_dump(design), _dump_opt(placement), _dump_opt(paths))


def hpwl(design, placement=None):
    return _core.hpwl(_dump(design), _dump_opt(placement))
