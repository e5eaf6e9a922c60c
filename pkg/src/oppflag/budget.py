"""Enumeration budgets shared by the brute-force parts of the package.

``OPPG_BUDGET`` overrides the defaults. It is either a single integer, which
replaces every budget, or a comma separated list such as
``group=1000000,vertices=8000``.
"""

from __future__ import annotations

import os

DEFAULTS = {
    "group": 10**7,  # elements of a parabolic subgroup
    "subspaces": 10**6,  # subspaces of one dimension in a geometry
    "vertices": 5000,  # flags in an opposition graph
    "coclique": 400,  # vertices handed to the exact coclique search
    "coclique_nodes": 5 * 10**6,  # branch-and-bound nodes before giving up
}


class BudgetExceeded(RuntimeError):
    """Raised when an enumeration would exceed its configured budget."""

    def __init__(self, kind: str, required: int, budget: int):
        self.kind = kind
        self.required = required
        self.budget = budget
        super().__init__(
            f"{kind} budget exceeded: need {required}, budget is {budget} "
            f"(raise it with OPPG_BUDGET={kind}={required})"
        )


def _parse(raw: str) -> dict[str, int]:
    raw = raw.strip()
    if not raw:
        return {}
    if "=" not in raw:
        value = int(float(raw))
        return {key: value for key in DEFAULTS}
    out = {}
    for item in raw.split(","):
        key, _, value = item.partition("=")
        key = key.strip()
        if key not in DEFAULTS:
            raise ValueError(f"unknown budget {key!r} in OPPG_BUDGET")
        out[key] = int(float(value))
    return out


def budget(kind: str) -> int:
    overrides = _parse(os.environ.get("OPPG_BUDGET", ""))
    return overrides.get(kind, DEFAULTS[kind])


def check(kind: str, required: int) -> None:
    limit = budget(kind)
    if required > limit:
        raise BudgetExceeded(kind, required, limit)
