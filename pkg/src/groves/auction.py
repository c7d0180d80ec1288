"""Multi-unit unit-demand auction domain.

Winner determination, VCG (Clarke) taxes, anonymous linear rebates, and
the optimal-in-expectation linear (OEL) redistribution family.

An OEL mechanism is an anonymous linear rebate whose coefficients are
pinned by an index ``k`` with ``0 <= k <= n`` and ``k - m`` odd.  Its
total tax is never positive and vanishes exactly on a boundary slice of
the type space (top value at the upper bound for k=0, tied k-th and
(k+1)-th values for interior k, bottom value at the lower bound for k=n).
``k = m + 1`` reproduces the Bailey-Cavallo rebate ``(m/n) * [x]_{m+1}``.
"""

from __future__ import annotations

from functools import lru_cache
from math import comb

from .core import AuctionSetting, ProfileLike, RebateCoefficients, as_values, canonical, sorted_stat
from .rational import R, ZERO

__all__ = [
    "efficient_allocation",
    "vcg_tax",
    "vcg_total",
    "linear_rebate",
    "oel_coefficients",
    "oel_tax",
    "oel_zero_boundary",
    "valid_oel_indices",
    "binom",
]


def binom(p: int, q: int) -> int:
    """Binomial coefficient with C(p, q) = 0 outside 0 <= q <= p."""
    if q < 0 or q > p or p < 0:
        return 0
    return comb(p, q)


def efficient_allocation(setting: AuctionSetting, profile: ProfileLike) -> tuple:
    """Indices of the ``m`` highest bidders, ties to the lowest index."""
    values = as_values(profile)
    ranked = sorted(range(setting.n), key=lambda i: (-values[i], i))
    return tuple(sorted(ranked[: setting.m]))


def vcg_tax(setting: AuctionSetting, profile: ProfileLike) -> tuple:
    """Clarke taxes: each winner pays the m-th highest opposing bid."""
    values = as_values(profile)
    winners = set(efficient_allocation(setting, profile))
    taxes = []
    for i in range(setting.n):
        if i in winners:
            others = values[:i] + values[i + 1 :]
            taxes.append(-sorted_stat(others, setting.m))
        else:
            taxes.append(ZERO)
    return tuple(taxes)


def vcg_total(setting: AuctionSetting, profile: ProfileLike):
    """Total Clarke revenue, ``-m * [values]_{m+1}``."""
    return -R(setting.m) * sorted_stat(profile, setting.m + 1)


def linear_rebate(coeffs: RebateCoefficients, others: tuple):
    """Evaluate an anonymous linear rebate on an opponent tuple."""
    ranked = canonical(others)
    if len(ranked) != len(coeffs.slopes):
        raise ValueError(f"rebate sized for {len(coeffs.slopes)} opponents, got {len(ranked)}")
    total = coeffs.constant
    for slope, value in zip(coeffs.slopes, ranked):
        total += slope * value
    return total


def valid_oel_indices(setting: AuctionSetting) -> tuple:
    """All admissible family indices for the setting: k - m odd, 0 <= k <= n."""
    return tuple(k for k in range(setting.n + 1) if (k - setting.m) % 2 == 1)


def _low_term(n: int, m: int, i: int):
    den = binom(m - 1, i - 1)
    if den == 0:
        raise ValueError(f"degenerate coefficient at i={i} for n={n}, m={m}")
    return R((-1) ** (m - i) * binom(n - i - 1, n - m - 1), den)


def _high_term(n: int, m: int, i: int):
    den = binom(n - m - 1, n - i - 1)
    if den == 0:
        raise ValueError(f"degenerate coefficient at i={i} for n={n}, m={m}")
    return R((-1) ** (m - i - 1) * binom(i - 1, m - 1), den)


@lru_cache(maxsize=None)
def oel_coefficients(setting: AuctionSetting, k: int) -> RebateCoefficients:
    """Rebate coefficients of the OEL mechanism with index ``k``.

    Raises if ``k`` is out of 0..n or violates the ``k - m`` odd parity:
    the even-parity analogues run a deficit, so they are rejected loudly
    instead of being silently produced.
    """
    n, m = setting.n, setting.m
    if not 0 <= k <= n:
        raise ValueError(f"index k={k} outside 0..{n}")
    if (k - m) % 2 != 1:
        raise ValueError(f"index k={k} has even k - m for m={m}; no such mechanism exists")

    share = R(m, n)
    slopes = [ZERO] * (n - 1)
    constant = ZERO
    if k == 0:
        tail = ZERO
        for i in range(1, m + 1):
            term = _low_term(n, m, i)
            slopes[i - 1] = term
            tail += term
        constant = setting.high * (share - tail)
    elif k <= m:
        tail = ZERO
        for i in range(k + 1, m + 1):
            term = _low_term(n, m, i)
            slopes[i - 1] = term
            tail += term
        slopes[k - 1] = share - tail
    elif k <= n - 1:
        tail = ZERO
        for i in range(m + 1, k):
            term = _high_term(n, m, i)
            slopes[i - 1] = term
            tail += term
        slopes[k - 1] = share - tail
    else:  # k == n: all weight on the constant and the upper slope block
        tail = ZERO
        for i in range(m + 1, n):
            term = _high_term(n, m, i)
            slopes[i - 1] = term
            tail += term
        constant = setting.low * (share - tail)
    return RebateCoefficients(constant, tuple(slopes))


def oel_tax(setting: AuctionSetting, k: int, profile: ProfileLike) -> tuple:
    """Per-agent taxes of the OEL mechanism: Clarke tax plus linear rebate."""
    values = as_values(profile)
    coeffs = oel_coefficients(setting, k)
    base = vcg_tax(setting, values)
    return tuple(
        base[i] + linear_rebate(coeffs, values[:i] + values[i + 1 :]) for i in range(setting.n)
    )


def oel_zero_boundary(setting: AuctionSetting, k: int, profile: ProfileLike) -> bool:
    """Whether the profile sits on the zero-total-tax slice of index ``k``."""
    if not 0 <= k <= setting.n:
        raise ValueError(f"index k={k} outside 0..{setting.n}")
    if k == 0:
        return sorted_stat(profile, 1) == setting.high
    if k == setting.n:
        return sorted_stat(profile, setting.n) == setting.low
    return sorted_stat(profile, k) == sorted_stat(profile, k + 1)
