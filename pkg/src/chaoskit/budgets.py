"""Central resource caps for the desk-scale engines.

Every potentially explosive computation (word enumeration, map composition,
image iteration) checks one of these caps and raises BudgetError when it
would be exceeded.  The single supported environment override is
CHAOS_BUDGET_OVERRIDE: a positive float multiplier applied to all caps.
"""

from __future__ import annotations

import os

ENV_OVERRIDE = "CHAOS_BUDGET_OVERRIDE"

# Baseline caps (before the optional multiplier).
WORD_LEN_CAP = 16          # longest word the language enumerator will emit
ENUM_NODE_CAP = 2 ** 20    # nodes visited per enumeration call
POWER_CAP = 12             # largest exponent for exact map composition
BREAKPOINT_CAP = 2 ** 16   # breakpoints of a composed piecewise-linear map
ITER_STEP_CAP = 4096       # image-iteration horizon for hitting sets


class BudgetError(RuntimeError):
    """A computation would exceed one of the configured resource caps."""


def _multiplier() -> float:
    raw = os.environ.get(ENV_OVERRIDE)
    if raw is None:
        return 1.0
    try:
        value = float(raw)
    except ValueError:
        raise ValueError(f"{ENV_OVERRIDE} must be a positive float, got {raw!r}")
    if value <= 0:
        raise ValueError(f"{ENV_OVERRIDE} must be positive, got {raw!r}")
    return value


def cap(name: str) -> int:
    """Return the effective value of a named cap, applying any override."""
    base = {
        "word_len": WORD_LEN_CAP,
        "enum_nodes": ENUM_NODE_CAP,
        "power": POWER_CAP,
        "breakpoints": BREAKPOINT_CAP,
        "iter_steps": ITER_STEP_CAP,
    }[name]
    return max(1, int(base * _multiplier()))


def charge(name: str, amount: int) -> None:
    """Raise BudgetError if amount exceeds the named cap."""
    limit = cap(name)
    if amount > limit:
        raise BudgetError(f"{name} budget exceeded: {amount} > {limit}")
