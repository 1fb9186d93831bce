"""Process-wide resource limits.

Defaults can be overridden by environment variables (BCSP_ARITY_CAP,
BCSP_BRUTE_BUDGET) and, with higher priority, by explicit overrides set
from the command line.
"""

from __future__ import annotations

import os

DEFAULT_ARITY_CAP = 16
DEFAULT_BRUTE_BUDGET = 24  # max enumerated variables (2**24 assignments)

_overrides: dict[str, int] = {}


def set_override(name: str, value: int | None) -> None:
    if value is None:
        _overrides.pop(name, None)
    else:
        _overrides[name] = int(value)


def _resolve(name: str, env: str, default: int) -> int:
    if name in _overrides:
        return _overrides[name]
    raw = os.environ.get(env)
    if raw is not None:
        try:
            return int(raw)
        except ValueError:
            return default
    return default


def arity_cap() -> int:
    return _resolve("arity_cap", "BCSP_ARITY_CAP", DEFAULT_ARITY_CAP)


def brute_budget() -> int:
    return _resolve("brute_budget", "BCSP_BRUTE_BUDGET", DEFAULT_BRUTE_BUDGET)
