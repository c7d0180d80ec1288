"""Mechanism-to-mechanism transformations.

The BCGC transform replaces each tax ``t_i`` by ``t_i - S_i/n`` where
``S_i`` is the worst-case total tax over agent i's announcements.  The
result is always feasible, and weakly (often strictly) dominates any
feasible input.

``anonymize`` averages a per-agent family of rebate tables into a single
permutation-independent rebate.  Because table lookups canonicalize their
key, every table is already permutation independent, and the full
average over opponent orderings collapses to the plain per-agent mean;
feasibility and welfare-dominance transfer from the family to the mean.
"""

from __future__ import annotations

from typing import Sequence

from .core import GridSpec, RebateTable, Setting, StrategyError
from .mechanisms import (
    Bcgc,
    Mechanism,
    Tabular,
    exact_surplus_capable,
    has_anonymous_rebate,
    rebate,
    surplus,
)
from .rational import R

__all__ = [
    "bcgc_surplus",
    "bcgc_transform",
    "anonymize",
    "tabulate_rebate",
    "apply_improvement",
]


def bcgc_surplus(
    setting: Setting,
    mech: Mechanism,
    others: tuple,
    grid: GridSpec | None = None,
    agent: int = 0,
):
    """Worst-case total tax of ``mech`` over the missing agent's reports.

    ``grid=None`` asks for the exact maximum (supported when the total tax
    is piecewise linear in one report: plain, linear, or OEL rebates);
    otherwise the maximum runs over grid announcements only and is a lower
    bound of the exact value.
    """
    if grid is None and not exact_surplus_capable(mech):
        raise StrategyError(
            f"exact surplus is unsupported for {type(mech).__name__}; pass a grid"
        )
    return surplus(setting, mech, tuple(R(v) for v in others), agent=agent, grid=grid)


def bcgc_transform(setting: Setting, mech: Mechanism, grid: GridSpec | None = None) -> Bcgc:
    """The transformed mechanism with taxes ``t_i - S_i/n``."""
    return Bcgc(inner=mech, surplus_grid=grid)


def anonymize(tables: Sequence[RebateTable]) -> Tabular:
    """Average a per-agent rebate family into one anonymous rebate.

    All tables must share one key set (a common grid of opponent tuples).
    """
    if not tables:
        raise ValueError("need at least one rebate table")
    keys = set(tables[0].keys())
    for t in tables[1:]:
        if set(t.keys()) != keys:
            raise ValueError("rebate tables are defined on different domains")
    n = len(tables)
    averaged = {key: sum((t.get(key) for t in tables), R(0)) / n for key in keys}
    return Tabular(RebateTable.from_mapping(averaged))


def tabulate_rebate(setting: Setting, mech: Mechanism, grid: GridSpec) -> RebateTable:
    """Freeze an anonymous rebate on every grid opponent tuple."""
    if not has_anonymous_rebate(setting, mech):
        raise ValueError("cannot tabulate a non-anonymous rebate into a value-keyed table")
    return RebateTable.from_mapping(
        {others: rebate(setting, mech, others) for others in grid.tuples(setting.n - 1)}
    )


def apply_improvement(
    setting: Setting, mech: Mechanism, delta: RebateTable, grid: GridSpec
) -> Tabular:
    """The mechanism whose rebate is ``mech``'s plus ``delta``, on a grid."""
    return Tabular(tabulate_rebate(setting, mech, grid).shifted(delta))
