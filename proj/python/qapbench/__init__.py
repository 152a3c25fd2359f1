"""QAP solvers (GA, TS, SA) and a QAPLIB benchmark harness.

Permutations are 0-based lists: ``perm[i]`` is the location of facility ``i``.
"""

import json

from ._core import (
    ConfigError,
    Instance,
    LookupError,
    ParseError,
    QapError,
    RunResult,
    Solution,
    UsageError,
    ValidationError,
    apply_swap,
    best_known,
    best_known_registry,
    default_data_dir,
    evaluate,
    format_duration,
    load_instance,
    load_solution,
    parse_instance,
    parse_solution,
    random_assignment,
    relative_difference,
    serialize_instance,
    swap_delta,
    validate_solution,
)
from . import _core


def solve(instance, solver="ts", seed=1, max_iterations=None, time_limit_ms=None,
          target=None, config=None):
    """Run one seeded search. ``config`` overrides solver defaults by field name."""
    return _core._solve(instance, solver, seed, max_iterations, time_limit_ms, target,
                        json.dumps(config) if config else "")


def defaults():
    return json.loads(_core._defaults_json())


def bench(plan):
    """Run a plan dict (same keys as a bench plan file); returns {"rows", "summary"}."""
    return json.loads(_core._bench_json(json.dumps(plan)))


__all__ = [name for name in dir() if not name.startswith("_") and name != "json"]
