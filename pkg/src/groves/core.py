"""Domain settings, type profiles, grids, and rebate containers.

Two decision domains are modeled:

* multi-unit unit-demand auctions: ``m`` identical units, ``n`` bidders,
  one unit per bidder, announced values in ``[low, high]``;
* public project problems: a binary build/cancel decision for a project
  of cost ``cost`` split into per-agent ``shares``, values in ``[0, cost]``.

Profiles are validated once, at construction; everything downstream
assumes in-bounds values.  Agent indices are 0-based throughout the
package; order-statistic ranks (``sorted_stat``) are 1-based, matching
the usual  "j-th highest" convention.

All containers are frozen and hashable so evaluation functions can be
memoized and shipped to worker processes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations_with_replacement, product
from typing import Iterable, Iterator, Mapping, Sequence, Union

from .rational import R, ZERO, rat_str

__all__ = [
    "GrovesError",
    "MissingRebateEntry",
    "StrategyError",
    "AuctionSetting",
    "PublicProjectSetting",
    "Setting",
    "TypeProfile",
    "GridSpec",
    "RebateCoefficients",
    "RebateTable",
    "TaxReport",
    "sorted_stat",
    "exclude",
    "canonical",
    "as_values",
]


class GrovesError(Exception):
    """Base class for mechanism-evaluation failures."""


class MissingRebateEntry(GrovesError):
    """A tabular rebate was asked for a tuple outside its domain."""

    def __init__(self, key: tuple):
        self.key = key
        super().__init__(f"no rebate entry for tuple {key}")


class StrategyError(GrovesError):
    """The exact surplus strategy was requested where it is unsupported."""


@dataclass(frozen=True)
class AuctionSetting:
    """``m`` identical units, ``n`` unit-demand bidders, bids in [low, high]."""

    n: int
    m: int
    low: object
    high: object

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 2:
            raise ValueError(f"need at least 2 agents, got n={self.n}")
        if not isinstance(self.m, int) or not 1 <= self.m <= self.n - 1:
            raise ValueError(f"unit count m must satisfy 1 <= m <= n-1, got m={self.m}")
        object.__setattr__(self, "low", R(self.low))
        object.__setattr__(self, "high", R(self.high))
        if not self.low < self.high:
            raise ValueError("bid bounds must satisfy low < high")

    def bounds(self):
        return self.low, self.high


@dataclass(frozen=True)
class PublicProjectSetting:
    """Binary public project of cost ``cost`` split into positive shares."""

    n: int
    cost: object
    shares: tuple

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 2:
            raise ValueError(f"need at least 2 agents, got n={self.n}")
        object.__setattr__(self, "cost", R(self.cost))
        object.__setattr__(self, "shares", tuple(R(s) for s in self.shares))
        if self.cost <= 0:
            raise ValueError("project cost must be positive")
        if len(self.shares) != self.n:
            raise ValueError(f"expected {self.n} cost shares, got {len(self.shares)}")
        if any(s <= 0 for s in self.shares):
            raise ValueError("every cost share must be positive")
        if sum(self.shares, ZERO) != self.cost:
            raise ValueError("cost shares must sum to the project cost exactly")

    @classmethod
    def equal_shares(cls, n: int, cost) -> "PublicProjectSetting":
        c = R(cost)
        return cls(n=n, cost=c, shares=(c / n,) * n)

    @property
    def is_equal_share(self) -> bool:
        return len(set(self.shares)) == 1

    def bounds(self):
        return ZERO, self.cost


Setting = Union[AuctionSetting, PublicProjectSetting]


@dataclass(frozen=True)
class TypeProfile:
    """A validated vector of announced types, one per agent."""

    values: tuple

    @classmethod
    def of(cls, setting: Setting, values: Iterable) -> "TypeProfile":
        vals = tuple(R(v) for v in values)
        if len(vals) != setting.n:
            raise ValueError(f"expected {setting.n} values, got {len(vals)}")
        lo, hi = setting.bounds()
        for i, v in enumerate(vals):
            if not lo <= v <= hi:
                raise ValueError(f"value {rat_str(v)} of agent {i} outside [{rat_str(lo)}, {rat_str(hi)}]")
        return cls(vals)

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self) -> Iterator:
        return iter(self.values)

    def __getitem__(self, i):
        return self.values[i]


ProfileLike = Union[TypeProfile, Sequence]


def as_values(profile: ProfileLike) -> tuple:
    """Raw value tuple of a profile-like object (no revalidation)."""
    if isinstance(profile, TypeProfile):
        return profile.values
    return tuple(R(v) for v in profile)


def sorted_stat(profile: ProfileLike, j: int):
    """j-th largest value (1-based, counting multiplicity)."""
    values = as_values(profile)
    if not 1 <= j <= len(values):
        raise ValueError(f"order statistic index {j} outside 1..{len(values)}")
    return sorted(values, reverse=True)[j - 1]


def exclude(profile: ProfileLike, i: int) -> tuple:
    """All values except agent ``i``'s, in agent-index order."""
    values = as_values(profile)
    if not 0 <= i < len(values):
        raise ValueError(f"agent index {i} outside 0..{len(values) - 1}")
    return values[:i] + values[i + 1 :]


def canonical(values: Iterable) -> tuple:
    """Multiset key: the values sorted non-increasingly."""
    return tuple(sorted(values, reverse=True))


@dataclass(frozen=True)
class GridSpec:
    """A finite, strictly increasing set of type values spanning the bounds."""

    points: tuple

    @classmethod
    def of(cls, setting: Setting, points: Iterable) -> "GridSpec":
        pts = tuple(R(p) for p in points)
        if len(pts) < 2:
            raise ValueError("a grid needs at least 2 points")
        if any(a >= b for a, b in zip(pts, pts[1:])):
            raise ValueError("grid points must be strictly increasing")
        lo, hi = setting.bounds()
        if pts[0] != lo or pts[-1] != hi:
            raise ValueError(f"grid must span [{rat_str(lo)}, {rat_str(hi)}] exactly")
        return cls(pts)

    @classmethod
    def uniform(cls, setting: Setting, count: int) -> "GridSpec":
        if count < 2:
            raise ValueError("a grid needs at least 2 points")
        lo, hi = setting.bounds()
        step = (hi - lo) / (count - 1)
        return cls(tuple(lo + step * i for i in range(count)))

    def profiles(self, n: int) -> Iterator[tuple]:
        """All ordered profiles over the grid, lexicographically ascending."""
        return product(self.points, repeat=n)

    def tuples(self, size: int) -> Iterator[tuple]:
        """All canonical (non-increasing) multisets of ``size`` grid values."""
        for combo in combinations_with_replacement(self.points, size):
            yield tuple(reversed(combo))

    def __len__(self) -> int:
        return len(self.points)


@dataclass(frozen=True)
class RebateCoefficients:
    """An anonymous linear rebate: constant plus slopes on the sorted others.

    The rebate paid to an agent whose opponents announce the multiset x is
    ``constant + sum(slopes[j] * [x]_{j+1})`` with ``[x]_j`` the j-th highest
    opponent value.  ``slopes`` has one entry per opponent (n-1 of them).
    """

    constant: object
    slopes: tuple

    def __post_init__(self):
        object.__setattr__(self, "constant", R(self.constant))
        object.__setattr__(self, "slopes", tuple(R(s) for s in self.slopes))

    @classmethod
    def zero(cls, n: int) -> "RebateCoefficients":
        return cls(ZERO, (ZERO,) * (n - 1))

    def arity(self) -> int:
        """Number of agents this coefficient vector is sized for."""
        return len(self.slopes) + 1


@dataclass(frozen=True)
class RebateTable:
    """An anonymous rebate given pointwise on canonical opponent tuples.

    Keys are non-increasing tuples; lookups canonicalize first, which makes
    permutation independence hold by construction.
    """

    entries: tuple = field(default=())

    @classmethod
    def from_mapping(cls, mapping: Mapping) -> "RebateTable":
        items = {}
        for key, value in mapping.items():
            ck = canonical(R(v) for v in key)
            val = R(value)
            if ck in items and items[ck] != val:
                raise ValueError(f"conflicting rebate values for tuple {ck}")
            items[ck] = val
        return cls(tuple(sorted(items.items())))

    def _lookup(self) -> dict:
        cached = getattr(self, "_map", None)
        if cached is None:
            cached = dict(self.entries)
            object.__setattr__(self, "_map", cached)
        return cached

    def get(self, others: Iterable):
        key = canonical(R(v) for v in others)
        try:
            return self._lookup()[key]
        except KeyError:
            raise MissingRebateEntry(key) from None

    def keys(self) -> tuple:
        return tuple(k for k, _ in self.entries)

    def items(self) -> tuple:
        return self.entries

    def arity(self) -> int:
        if not self.entries:
            raise ValueError("empty rebate table has no arity")
        return len(self.entries[0][0]) + 1

    def covers(self, grid: GridSpec, size: int) -> bool:
        have = set(self.keys())
        return all(t in have for t in grid.tuples(size))

    def shifted(self, delta: "RebateTable") -> "RebateTable":
        """Pointwise sum with another table over the same key set."""
        if set(self.keys()) != set(delta.keys()):
            raise ValueError("rebate tables are defined on different domains")
        other = delta._lookup()
        return RebateTable(tuple(sorted((k, v + other[k]) for k, v in self.entries)))


@dataclass(frozen=True)
class TaxReport:
    """Decision, taxes, and welfare for one evaluated profile.

    ``decision`` is a tuple of winner indices in the auction domain and a
    0/1 build flag in the public project domain.  ``utilities`` are
    quasilinear: the agent's value for the decision plus the (signed) tax.
    ``welfare`` equals the sum of utilities, i.e. decision value plus
    ``total_tax``.
    """

    decision: object
    taxes: tuple
    total_tax: object
    utilities: tuple
    welfare: object
