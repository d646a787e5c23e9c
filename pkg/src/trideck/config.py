"""Compute-budget policy.

Budgets are operation-count ceilings; an operation over budget is refused
(BudgetError) rather than silently truncated.  The TRIDECK_BUDGET environment
variable overrides the default ceiling globally.
"""

import os

DEFAULT_BUDGET = 10**8


def compute_budget(override: int | None = None) -> int:
    if override is not None:
        return int(override)
    env = os.environ.get("TRIDECK_BUDGET")
    if env is not None:
        return int(env)
    return DEFAULT_BUDGET
