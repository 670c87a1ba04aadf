"""Exact rational phase-1 simplex (feasibility only), Bland's rule."""

from __future__ import annotations

from fractions import Fraction
from typing import Optional


def feasible_point(
    rows: list[list[Fraction]],
    rhs: list[Fraction],
    lower: list[Fraction],
    upper: list[Fraction],
) -> Optional[list[Fraction]]:
    """A point with rows.x = rhs and lower <= x <= upper, or None.

    Shifts to x = lower + z, adds slack rows for the upper bounds, and runs
    phase-1 with artificial variables and Bland anti-cycling.
    """
    n = len(lower)
    m0 = len(rows)
    for lo, hi in zip(lower, upper):
        if lo > hi:
            return None
    span = [hi - lo for lo, hi in zip(lower, upper)]
    # constraint matrix over z (n cols) and slacks (one per bounded var)
    eq_rows: list[dict[int, Fraction]] = []
    eq_rhs: list[Fraction] = []
    for r, b in zip(rows, rhs):
        row = {j: c for j, c in enumerate(r) if c}
        shift = sum((c * lower[j] for j, c in row.items()), Fraction(0))
        eq_rows.append(row)
        eq_rhs.append(b - shift)
    slack_col = {}
    col = n
    for j in range(n):
        slack_col[j] = col
        eq_rows.append({j: Fraction(1), col: Fraction(1)})
        eq_rhs.append(span[j])
        col += 1
    total_cols = col
    m = len(eq_rows)

    # tableau with artificials; basis starts as the artificials
    T = [[Fraction(0)] * (total_cols + m + 1) for _ in range(m)]
    basis = [0] * m
    for i, (row, b) in enumerate(zip(eq_rows, eq_rhs)):
        sign = -1 if b < 0 else 1
        for j, c in row.items():
            T[i][j] = sign * c
        T[i][total_cols + i] = Fraction(1)
        T[i][-1] = sign * b
        basis[i] = total_cols + i
    # objective: minimize sum of artificials; reduced costs via row sums
    obj = [Fraction(0)] * (total_cols + m + 1)
    for i in range(m):
        for j in range(total_cols + m + 1):
            obj[j] += T[i][j]
    for i in range(m):
        obj[total_cols + i] = Fraction(0)

    def pivot(pr: int, pc: int) -> None:
        piv = T[pr][pc]
        T[pr] = [v / piv for v in T[pr]]
        for i in range(m):
            if i != pr and T[i][pc]:
                f = T[i][pc]
                T[i] = [a - f * b for a, b in zip(T[i], T[pr])]
        f = obj[pc]
        if f:
            for j in range(total_cols + m + 1):
                obj[j] -= f * T[pr][j]
        basis[pr] = pc

    while True:
        pc = next((j for j in range(total_cols) if obj[j] > 0), None)
        if pc is None:
            break
        pr = None
        best = None
        for i in range(m):
            if T[i][pc] > 0:
                ratio = T[i][-1] / T[i][pc]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[pr]):
                    best, pr = ratio, i
        if pr is None:
            break  # unbounded cannot happen in phase 1
        pivot(pr, pc)

    if obj[-1] != 0:
        return None
    # drive leftover artificials out of the basis where possible
    for i in range(m):
        if basis[i] >= total_cols and T[i][-1] == 0:
            pc = next((j for j in range(total_cols) if T[i][j] != 0), None)
            if pc is not None:
                pivot(i, pc)
    z = [Fraction(0)] * total_cols
    for i in range(m):
        if basis[i] < total_cols:
            z[basis[i]] = T[i][-1]
    return [lower[j] + z[j] for j in range(n)]
