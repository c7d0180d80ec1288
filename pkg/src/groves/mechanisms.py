"""Mechanism variants and the tax evaluation engine.

Every mechanism here is Groves: the efficient decision plus a per-agent
tax of the form ``clarke_tax_i + rebate_i(others)`` where the rebate never
reads the agent's own announcement.  Variants differ only in the rebate:

* ``Vcg`` -- zero rebate;
* ``Linear`` -- constant plus slopes on the sorted opponent values;
* ``Oel``  -- the linear family member with index ``k``;
* ``Tabular`` -- rebate read from a table over canonical opponent tuples;
* ``Bcgc`` -- any inner mechanism, minus ``1/n`` of its worst-case total
  tax over the agent's possible announcements (a feasible mechanism that
  weakly dominates any feasible input).

The worst-case total ("surplus") is maximized exactly over the kink
candidates of the total tax when the inner mechanism is piecewise linear
in one announcement (``Vcg``/``Linear``/``Oel``), or over an explicit
grid otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import auction as au
from . import public_project as pp
from .core import (
    AuctionSetting,
    GridSpec,
    ProfileLike,
    PublicProjectSetting,
    RebateCoefficients,
    RebateTable,
    Setting,
    StrategyError,
    TaxReport,
    TypeProfile,
    as_values,
    canonical,
)
from .rational import R, ZERO

__all__ = [
    "Mechanism",
    "Vcg",
    "Linear",
    "Oel",
    "Tabular",
    "Bcgc",
    "exact_surplus_capable",
    "is_anonymous",
    "has_anonymous_rebate",
    "rebate",
    "surplus",
    "tax_vector",
    "total_tax",
    "decision_of",
    "decision_value",
    "evaluate",
]


class Mechanism:
    """Marker base class for the rebate variants."""


@dataclass(frozen=True)
class Vcg(Mechanism):
    pass


@dataclass(frozen=True)
class Linear(Mechanism):
    coeffs: RebateCoefficients


@dataclass(frozen=True)
class Oel(Mechanism):
    k: int

    def __post_init__(self):
        if not isinstance(self.k, int) or self.k < 0:
            raise ValueError(f"index k must be a nonnegative integer, got {self.k}")


@dataclass(frozen=True)
class Tabular(Mechanism):
    table: RebateTable


@dataclass(frozen=True)
class Bcgc(Mechanism):
    """BCGC transform of ``inner``; surplus maximized exactly, or over
    ``surplus_grid`` when the inner total tax has no closed kink set."""

    inner: Mechanism
    surplus_grid: GridSpec | None = None

    def __post_init__(self):
        if self.surplus_grid is None and not exact_surplus_capable(self.inner):
            raise StrategyError(
                f"exact surplus is unsupported for inner {type(self.inner).__name__}; "
                "pass surplus_grid"
            )


def exact_surplus_capable(mech: Mechanism) -> bool:
    """Whether the mechanism's total tax is piecewise linear in a single
    announcement with kinks only at known candidates."""
    return isinstance(mech, (Vcg, Linear, Oel))


def is_anonymous(setting: Setting, mech: Mechanism) -> bool:
    """Whether per-agent taxes depend on the opponent value multiset only.

    Unequal cost shares make the Clarke part itself agent-specific, so no
    mechanism is anonymous there; with equal shares (or in the auction)
    every variant here is.
    """
    if isinstance(setting, AuctionSetting):
        return True
    return setting.is_equal_share


def has_anonymous_rebate(setting: Setting, mech: Mechanism) -> bool:
    """Whether the rebate alone is a function of the opponent multiset.

    True for every variant except a BCGC transform under unequal cost
    shares, whose surplus term inherits the Clarke asymmetry.
    """
    if isinstance(mech, Bcgc):
        return is_anonymous(setting, mech.inner)
    return True


def _insert(agent: int, value, others: tuple) -> tuple:
    return others[:agent] + (value,) + others[agent:]


def rebate(setting: Setting, mech: Mechanism, others: tuple, agent: int = 0):
    """Rebate received by ``agent`` when the remaining agents announce
    ``others`` (in agent-index order; any order for anonymous mechanisms)."""
    others = tuple(R(v) for v in others)
    if len(others) != setting.n - 1:
        raise ValueError(f"expected {setting.n - 1} opponent values, got {len(others)}")
    if isinstance(mech, Vcg):
        return ZERO
    if isinstance(mech, Linear):
        return au.linear_rebate(mech.coeffs, others)
    if isinstance(mech, Oel):
        if not isinstance(setting, AuctionSetting):
            raise ValueError("OEL rebates are defined for the auction domain only")
        return au.linear_rebate(au.oel_coefficients(setting, mech.k), others)
    if isinstance(mech, Tabular):
        return mech.table.get(others)
    if isinstance(mech, Bcgc):
        inner = rebate(setting, mech.inner, others, agent)
        return inner - surplus(setting, mech.inner, others, agent, mech.surplus_grid) / setting.n
    raise TypeError(f"unknown mechanism {mech!r}")


def surplus(
    setting: Setting,
    mech: Mechanism,
    others: tuple,
    agent: int = 0,
    grid: GridSpec | None = None,
):
    """Maximum total tax of ``mech`` over the missing agent's announcements.

    Exact (kink-candidate) maximization unless ``grid`` is given, in which
    case only grid announcements are considered; the grid value is a lower
    bound of the exact one.
    """
    others = tuple(R(v) for v in others)
    if len(others) != setting.n - 1:
        raise ValueError(f"expected {setting.n - 1} opponent values, got {len(others)}")
    if is_anonymous(setting, mech):
        # one cache entry per multiset; the insertion position is irrelevant
        return _surplus_cached(setting, mech, canonical(others), 0, grid)
    return _surplus_cached(setting, mech, others, agent, grid)


@lru_cache(maxsize=None)
def _surplus_cached(setting, mech, others, agent, grid):
    if grid is not None:
        candidates = grid.points
    else:
        candidates = _exact_breakpoints(setting, mech, others, agent)
    return max(total_tax(setting, mech, _insert(agent, v, others)) for v in candidates)


def _exact_breakpoints(setting: Setting, mech: Mechanism, others: tuple, agent: int) -> tuple:
    if not exact_surplus_capable(mech):
        raise StrategyError(
            f"exact surplus is unsupported for {type(mech).__name__}; pass a grid"
        )
    lo, hi = setting.bounds()
    points = {lo, hi}
    points.update(others)  # opponent rebates re-sort around the inserted value
    if isinstance(setting, PublicProjectSetting):
        points.update(pp.pp_breakpoints(setting, agent, others))
    return tuple(sorted(points))


def _vcg_vector(setting: Setting, values: tuple) -> tuple:
    if isinstance(setting, AuctionSetting):
        return au.vcg_tax(setting, values)
    return pp.pp_vcg_tax(setting, values)


def tax_vector(setting: Setting, mech: Mechanism, profile: ProfileLike) -> tuple:
    """Per-agent taxes of ``mech`` at a profile."""
    values = as_values(profile)
    base = _vcg_vector(setting, values)
    return tuple(
        base[i] + rebate(setting, mech, values[:i] + values[i + 1 :], agent=i)
        for i in range(setting.n)
    )


def total_tax(setting: Setting, mech: Mechanism, profile: ProfileLike):
    return sum(tax_vector(setting, mech, profile), ZERO)


def decision_of(setting: Setting, profile: ProfileLike):
    """Efficient decision: winner tuple (auction) or build flag (project)."""
    if isinstance(setting, AuctionSetting):
        return au.efficient_allocation(setting, profile)
    return pp.pp_decision(setting, profile)


def decision_value(setting: Setting, decision, i: int, theta):
    """Agent i's valuation of a decision."""
    if isinstance(setting, AuctionSetting):
        return theta if i in decision else ZERO
    return pp.pp_value(setting, decision, i, theta)


def evaluate(setting: Setting, mech: Mechanism, profile: ProfileLike) -> TaxReport:
    """Full report at one profile: decision, taxes, utilities, welfare."""
    if not isinstance(profile, TypeProfile):
        profile = TypeProfile.of(setting, profile)
    values = profile.values
    dec = decision_of(setting, values)
    taxes = tax_vector(setting, mech, values)
    utilities = tuple(
        decision_value(setting, dec, i, values[i]) + taxes[i] for i in range(setting.n)
    )
    return TaxReport(
        decision=dec,
        taxes=taxes,
        total_tax=sum(taxes, ZERO),
        utilities=utilities,
        welfare=sum(utilities, ZERO),
    )
