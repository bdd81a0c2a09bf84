"""Small exact integer linear programs: dual simplex over rationals plus
depth-first branch and bound.

Problems have the form

    minimize   c . x
    subject to A x >= b,  lo <= x <= hi,  x integer

with integer data and non-negative costs ``c``. Non-negative costs make the
all-slack basis dual feasible, so the dual simplex needs no phase one. The
instances this package produces have at most eight variables, and every
coefficient may be far beyond 64 bits, so all arithmetic uses
``fractions.Fraction``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from rankcov.errors import BudgetExceeded


class Infeasible(ValueError):
    pass


@dataclass(frozen=True)
class LpSolution:
    value: Fraction
    x: tuple[Fraction, ...]


@dataclass(frozen=True)
class IlpSolution:
    value: int
    x: tuple[int, ...]
    lp_value: Fraction
    nodes: int


def solve_lp(
    c: Sequence[int],
    A: Sequence[Sequence[int]],
    b: Sequence[int],
    lo: Sequence[int],
    hi: Sequence[int | None],
) -> LpSolution:
    """Exact optimum of the LP relaxation.

    Raises:
        Infeasible: if no real point satisfies the constraints.
    """
    nvar = len(c)
    if any(ci < 0 for ci in c):
        raise ValueError("costs must be non-negative")
    # Shift x = lo + y with y >= 0; upper bounds become rows -y_i >= lo_i - hi_i.
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    for a_row, b_r in zip(A, b):
        rows.append([Fraction(v) for v in a_row])
        rhs.append(Fraction(b_r - sum(a * l for a, l in zip(a_row, lo))))
    for i in range(nvar):
        if hi[i] is None:
            continue
        if hi[i] < lo[i]:
            raise Infeasible(f"empty box for variable {i}")
        row = [Fraction(0)] * nvar
        row[i] = Fraction(-1)
        rows.append(row)
        rhs.append(Fraction(lo[i] - hi[i]))

    nrow = len(rows)
    ncol = nvar + nrow
    # Row r of the tableau: -row.y + s_r = -rhs_r, basis {s_r}.
    T = [[-v for v in row] + [Fraction(int(j == r)) for j in range(nrow)] for r, row in enumerate(rows)]
    beta = [-v for v in rhs]
    cost = [Fraction(v) for v in c] + [Fraction(0)] * nrow
    basis = [nvar + r for r in range(nrow)]

    # Dual simplex, Bland's rule on both choices to exclude cycling.
    while True:
        leaving = None
        for r in sorted(range(nrow), key=lambda r: basis[r]):
            if beta[r] < 0:
                leaving = r
                break
        if leaving is None:
            break
        row = T[leaving]
        best = None
        for j in range(ncol):
            if row[j] < 0:
                ratio = cost[j] / -row[j]
                if best is None or ratio < best[0]:
                    best = (ratio, j)
        if best is None:
            raise Infeasible("LP relaxation is infeasible")
        entering = best[1]
        piv = row[entering]
        T[leaving] = [v / piv for v in row]
        beta[leaving] /= piv
        prow = T[leaving]
        for r in range(nrow):
            if r != leaving and T[r][entering] != 0:
                f = T[r][entering]
                T[r] = [v - f * p for v, p in zip(T[r], prow)]
                beta[r] -= f * beta[leaving]
        f = cost[entering]
        if f != 0:
            cost = [v - f * p for v, p in zip(cost, prow)]
        basis[leaving] = entering

    y = [Fraction(0)] * nvar
    for r, j in enumerate(basis):
        if j < nvar:
            y[j] = beta[r]
    x = tuple(Fraction(l) + yi for l, yi in zip(lo, y))
    value = sum((Fraction(ci) * xi for ci, xi in zip(c, x)), Fraction(0))
    return LpSolution(value, x)


def _feasible(A: Sequence[Sequence[int]], b: Sequence[int], x: Sequence[int]) -> bool:
    return all(sum(a * v for a, v in zip(row, x)) >= b_r for row, b_r in zip(A, b))


def _tighten(A, b, lo, x: list[int]) -> list[int]:
    """Lower each coordinate of a feasible point as far as feasibility allows.

    Only valid when every coefficient of A is non-negative, which makes
    feasibility monotone in each coordinate.
    """
    x = list(x)
    for i in range(len(x)):
        low, high = lo[i], x[i]
        while low < high:
            mid = (low + high) // 2
            x[i] = mid
            if _feasible(A, b, x):
                high = mid
            else:
                low = mid + 1
        x[i] = high
    return x


def solve_ilp(
    c: Sequence[int],
    A: Sequence[Sequence[int]],
    b: Sequence[int],
    lo: Sequence[int],
    hi: Sequence[int | None],
    node_limit: int = 100_000,
) -> IlpSolution:
    """Exact integer optimum by branch and bound on the most fractional variable.

    Raises:
        Infeasible: if the integer program has no solution.
        BudgetExceeded: if more than ``node_limit`` LPs would be solved.
    """
    root = solve_lp(c, A, b, lo, hi)
    monotone = all(a >= 0 for row in A for a in row)
    best_value: int | None = None
    best_x: tuple[int, ...] | None = None
    nodes = 0

    def consider(x: Sequence[int]) -> None:
        nonlocal best_value, best_x
        value = sum(ci * xi for ci, xi in zip(c, x))
        if best_value is None or value < best_value:
            best_value, best_x = value, tuple(x)

    stack: list[tuple[list[int], list[int | None], LpSolution | None]] = [(list(lo), list(hi), root)]
    while stack:
        node_lo, node_hi, sol = stack.pop()
        nodes += 1
        if nodes > node_limit:
            raise BudgetExceeded(f"node limit {node_limit} reached")
        if sol is None:
            try:
                sol = solve_lp(c, A, b, node_lo, node_hi)
            except Infeasible:
                continue
        # Integer costs give integer objective values.
        if best_value is not None and math.ceil(sol.value) >= best_value:
            continue
        rounded = [math.ceil(v) for v in sol.x]
        if all(h is None or r <= h for r, h in zip(rounded, node_hi)) and _feasible(A, b, rounded):
            consider(_tighten(A, b, node_lo, rounded) if monotone else rounded)
        frac = [(abs(v - math.floor(v) - Fraction(1, 2)), i) for i, v in enumerate(sol.x) if v.denominator != 1]
        if not frac:
            continue
        _, i = min(frac)
        down_hi = list(node_hi)
        down_hi[i] = math.floor(sol.x[i])
        up_lo = list(node_lo)
        up_lo[i] = math.ceil(sol.x[i])
        # Explore the rounded-down side first; rounding up is already a candidate.
        stack.append((up_lo, list(node_hi), None))
        stack.append((list(node_lo), down_hi, None))

    if best_value is None:
        raise Infeasible("integer program is infeasible")
    return IlpSolution(best_value, best_x, root.value, nodes)
