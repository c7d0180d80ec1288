"""Public project domain: equal and general cost shares.

A set of agents decides whether to build a project of cost ``cost``;
agent ``i`` carries the fixed share ``shares[i]`` if it is built and
values the build decision at ``theta_i - shares[i]``.  Building is
efficient exactly when the announced values sum to at least the cost
(ties build).
"""

from __future__ import annotations

from .core import ProfileLike, PublicProjectSetting, as_values
from .rational import R, ZERO

__all__ = [
    "pp_decision",
    "pp_value",
    "pp_vcg_tax",
    "pp_bcgc_surplus",
    "pp_breakpoints",
]


def pp_decision(setting: PublicProjectSetting, profile: ProfileLike) -> int:
    """1 if the announced total weakly covers the cost, else 0."""
    values = as_values(profile)
    return 1 if sum(values, ZERO) >= setting.cost else 0


def pp_value(setting: PublicProjectSetting, decision: int, i: int, theta):
    """Agent i's valuation of a decision: ``d * (theta_i - share_i)``."""
    return (theta - setting.shares[i]) if decision else ZERO


def pp_vcg_tax(setting: PublicProjectSetting, profile: ProfileLike) -> tuple:
    """Clarke taxes; nonzero only for pivotal agents, never positive."""
    values = as_values(profile)
    d = pp_decision(setting, values)
    taxes = []
    for i in range(setting.n):
        others_gain = sum(
            (values[j] - setting.shares[j] for j in range(setting.n) if j != i), ZERO
        )
        g_i = others_gain if d else ZERO
        best_without = max(ZERO, others_gain)
        taxes.append(g_i - best_without)
    return tuple(taxes)


def pp_breakpoints(setting: PublicProjectSetting, agent: int, others: tuple) -> tuple:
    """Candidate values of the missing agent's announcement where the total
    tax can kink: the build threshold and every opponent's pivotality
    threshold, clipped to [0, cost], plus the interval ends.

    ``others`` lists the remaining agents' values in index order.
    """
    values = _insert(agent, ZERO, others)
    other_sum = sum(others, ZERO)
    candidates = {ZERO, setting.cost, setting.cost - other_sum}
    for k in range(setting.n):
        if k == agent:
            continue
        rest = sum((values[j] for j in range(setting.n) if j not in (agent, k)), ZERO)
        candidates.add((setting.cost - setting.shares[k]) - rest)
    return tuple(sorted(c for c in candidates if ZERO <= c <= setting.cost))


def _insert(agent: int, value, others: tuple) -> tuple:
    return others[:agent] + (value,) + others[agent:]


def pp_bcgc_surplus(setting: PublicProjectSetting, others: tuple, agent: int = 0):
    """Worst-case (maximum) total Clarke tax over the missing agent's reports.

    The bracket maximized is ``(n-1) * sum of build values - sum of each
    agent's best-without-them welfare``; piecewise linear in the missing
    report, so the exact maximum sits on a breakpoint.  Equal shares force
    the result to 0; unequal shares can make it strictly negative, which
    is exactly when the Bailey-Cavallo transform departs from VCG.

    ``others`` are the remaining agents' values in index order; with
    unequal shares the value tuple alone is ambiguous, hence ``agent``.
    """
    others = tuple(R(v) for v in others)
    if len(others) != setting.n - 1:
        raise ValueError(f"expected {setting.n - 1} opponent values, got {len(others)}")
    if not 0 <= agent < setting.n:
        raise ValueError(f"agent index {agent} outside 0..{setting.n - 1}")
    best = None
    for candidate in pp_breakpoints(setting, agent, others):
        values = _insert(agent, candidate, others)
        d = pp_decision(setting, values)
        gain = sum((values[j] - setting.shares[j] for j in range(setting.n)), ZERO)
        bracket = R(setting.n - 1) * (gain if d else ZERO)
        for k in range(setting.n):
            without_k = gain - (values[k] - setting.shares[k])
            bracket -= max(ZERO, without_k)
        if best is None or bracket > best:
            best = bracket
    return best
