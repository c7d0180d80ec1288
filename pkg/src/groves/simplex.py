"""Dense exact-rational primal simplex with Bland's anti-cycling rule.

Solves ``maximize c.x subject to A x <= b`` with per-variable sign
restrictions (free variables are split internally).  Callers must supply
``b >= 0`` so the slack basis is feasible; the improvement searches in
:mod:`groves.analysis` guarantee this by pre-checking grid feasibility of
the input mechanism, which keeps the solver single-phase.

Bland's rule (lowest eligible index for both the entering and the leaving
choice) guarantees termination under the heavy degeneracy these problems
have, and makes the pivot sequence -- hence the optimal basis -- a pure
function of the input ordering.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .rational import R, ZERO

__all__ = ["SimplexResult", "maximize"]

_MAX_PIVOTS = 200_000  # guard against implementation bugs, not against Bland


@dataclass(frozen=True)
class SimplexResult:
    status: str  # "optimal" | "unbounded"
    objective: object | None
    solution: tuple | None


def maximize(
    objective: Sequence,
    rows: Sequence[Sequence],
    rhs: Sequence,
    nonneg: Sequence[bool],
) -> SimplexResult:
    """Maximize ``objective . x`` subject to ``rows[i] . x <= rhs[i]``.

    ``nonneg[j]`` constrains variable j to be >= 0; other variables are
    free.  Every coefficient must be an exact rational and every right
    hand side nonnegative.
    """
    nvars = len(objective)
    if any(len(row) != nvars for row in rows):
        raise ValueError("constraint row width does not match the objective")
    if len(rhs) != len(rows):
        raise ValueError("need one right hand side per constraint row")
    if len(nonneg) != nvars:
        raise ValueError("need one sign restriction per variable")

    rhs = [R(b) for b in rhs]
    if any(b < 0 for b in rhs):
        raise ValueError("right hand sides must be nonnegative (slack basis start)")

    # Split free variables x = x+ - x-.
    columns: list[tuple[int, int]] = []  # (variable, sign)
    for j in range(nvars):
        columns.append((j, 1))
        if not nonneg[j]:
            columns.append((j, -1))

    width = len(columns)
    m = len(rows)
    total = width + m  # structural columns then one slack per row

    tableau = []
    for i, row in enumerate(rows):
        line = [R(row[j]) * sign for j, sign in columns]
        line.extend(R(1) if r == i else ZERO for r in range(m))
        line.append(rhs[i])
        tableau.append(line)

    cost = [-R(objective[j]) * sign for j, sign in columns]
    cost.extend(ZERO for _ in range(m))
    cost.append(ZERO)

    basis = [width + i for i in range(m)]

    for _ in range(_MAX_PIVOTS):
        entering = next((j for j in range(total) if cost[j] < 0), None)
        if entering is None:
            break

        leaving = None
        best_ratio = None
        for i in range(m):
            coeff = tableau[i][entering]
            if coeff > 0:
                ratio = tableau[i][-1] / coeff
                if (
                    best_ratio is None
                    or ratio < best_ratio
                    or (ratio == best_ratio and basis[i] < basis[leaving])
                ):
                    best_ratio = ratio
                    leaving = i
        if leaving is None:
            return SimplexResult(status="unbounded", objective=None, solution=None)

        _pivot(tableau, cost, leaving, entering)
        basis[leaving] = entering
    else:
        raise RuntimeError("pivot limit exceeded; simplex implementation error")

    values = [ZERO] * width
    for i, b in enumerate(basis):
        if b < width:
            values[b] = tableau[i][-1]
    solution = [ZERO] * nvars
    for col, (j, sign) in enumerate(columns):
        solution[j] += values[col] * sign

    return SimplexResult(status="optimal", objective=cost[-1], solution=tuple(solution))


def _pivot(tableau, cost, row: int, col: int) -> None:
    pivot_row = tableau[row]
    inv = 1 / pivot_row[col]
    for j, v in enumerate(pivot_row):
        if v:
            pivot_row[j] = v * inv
    nonzero = [j for j, v in enumerate(pivot_row) if v]
    for line in tableau:
        if line is pivot_row:
            continue
        factor = line[col]
        if factor:
            for j in nonzero:
                line[j] -= factor * pivot_row[j]
    factor = cost[col]
    if factor:
        for j in nonzero:
            cost[j] -= factor * pivot_row[j]
