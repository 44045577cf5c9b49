"""Exact-rational linear programming by primal simplex with Bland's rule.

Solves   min c.x  s.t.  A x >= b,  x >= 0   over fractions.Fraction, small
and dense.  Returns the optimal x together with a dual vector y satisfying
A^T y <= c, y >= 0 and b.y = c.x (strong duality as an exact equality), so
callers can hand both out as certificates.

Two-phase method: surplus variables turn the constraints into equalities,
artificial variables give the initial basis, Bland's smallest-index rule
guarantees termination.  Everything is O(rows^2 * cols) per pivot, which is
fine at the few dozen rows / columns this package produces.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


class InfeasibleError(ValueError):
    """The constraint system admits no nonnegative solution."""


class UnboundedError(ValueError):
    """The objective is unbounded below on the feasible region."""


def solve_min_ge(c: Sequence, a_rows: Sequence[Sequence], b: Sequence):
    """Minimize c.x subject to A x >= b, x >= 0.

    Returns (x, y, value) with exact Fractions: primal optimum x, dual
    optimum y, shared objective value.
    """
    m = len(a_rows)
    n = len(c)
    if any(len(row) != n for row in a_rows) or len(b) != m:
        raise ValueError("inconsistent LP dimensions")
    c = [Fraction(v) for v in c]
    rows = [[Fraction(v) for v in row] for row in a_rows]
    b = [Fraction(v) for v in b]

    # Flip rows with negative rhs so artificials start feasible.
    flipped = []
    for i in range(m):
        if b[i] < 0:
            rows[i] = [-v for v in rows[i]]
            b[i] = -b[i]
            flipped.append(True)   # constraint became A x - s <= form; surplus sign flips
        else:
            flipped.append(False)

    # Column layout: structural 0..n-1, surplus n..n+m-1, artificial n+m..n+2m-1.
    # Original constraint i:  A_i x - s_i = b_i  (s_i >= 0); a flipped row uses
    # +s_i instead.
    width = n + 2 * m
    tableau = []
    for i in range(m):
        row = rows[i] + [Fraction(0)] * (2 * m)
        row[n + i] = Fraction(1) if flipped[i] else Fraction(-1)
        row[n + m + i] = Fraction(1)
        tableau.append(row + [b[i]])
    basis = [n + m + i for i in range(m)]

    zero = Fraction(0)

    def pivot(row_idx: int, col_idx: int, cost_row: list[Fraction]) -> None:
        piv = tableau[row_idx][col_idx]
        if piv != 1:
            tableau[row_idx] = [v / piv if v else v for v in tableau[row_idx]]
        prow = tableau[row_idx]
        support = [j for j, v in enumerate(prow) if v]
        for r in range(m):
            factor = tableau[r][col_idx]
            if r != row_idx and factor:
                trow = tableau[r]
                for j in support:
                    trow[j] = trow[j] - factor * prow[j]
        factor = cost_row[col_idx]
        if factor:
            for j in support:
                cost_row[j] = cost_row[j] - factor * prow[j]
        basis[row_idx] = col_idx

    def reduced_costs(cost: list[Fraction]) -> list[Fraction]:
        row = list(cost) + [zero]
        for r in range(m):
            cb = cost[basis[r]]
            if cb:
                trow = tableau[r]
                row = [v - cb * t for v, t in zip(row, trow)]
        return row

    def run_phase(cost_row: list[Fraction], allowed: int) -> None:
        """Pivot until no reduced cost improves.  Steepest (Dantzig) column
        choice normally; after a long degenerate stall, switch to Bland's
        smallest-index rule, which cannot cycle."""
        stall = 0
        stall_cap = 4 * (m + n)
        while True:
            entering = -1
            if stall < stall_cap:
                most = zero
                for j in range(allowed):
                    v = cost_row[j]
                    if v < most:
                        most = v
                        entering = j
            else:
                entering = next((j for j in range(allowed) if cost_row[j] < 0), -1)
            if entering < 0:
                return
            leaving = -1
            best = None
            for r in range(m):
                coeff = tableau[r][entering]
                if coeff > 0:
                    ratio = tableau[r][width] / coeff
                    if best is None or ratio < best or (
                            ratio == best and basis[r] < basis[leaving]):
                        best = ratio
                        leaving = r
            if leaving < 0:
                raise UnboundedError("LP is unbounded")
            stall = stall + 1 if best == 0 else 0
            pivot(leaving, entering, cost_row)

    # Phase 1: drive artificials to zero.
    phase1_cost = [zero] * (n + m) + [Fraction(1)] * m
    cost_row = reduced_costs(phase1_cost)
    run_phase(cost_row, n + m)
    infeasibility = sum(tableau[r][width] for r in range(m) if basis[r] >= n + m)
    if infeasibility != 0:
        raise InfeasibleError("constraints admit no nonnegative solution")
    # Pivot lingering degenerate artificials out of the basis when possible.
    for r in range(m):
        if basis[r] >= n + m:
            entering = next((j for j in range(n + m) if tableau[r][j] != 0), None)
            if entering is not None:
                pivot(r, entering, cost_row)

    # Phase 2 on the real objective (artificials barred from re-entry).
    phase2_cost = list(c) + [zero] * (2 * m)
    cost_row = reduced_costs(phase2_cost)
    run_phase(cost_row, n + m)

    x = [zero] * n
    for r in range(m):
        if basis[r] < n:
            x[basis[r]] = tableau[r][width]

    # Dual: y = c_B B^-1; the artificial block of the reduced-cost row holds
    # 0 - y e_i, so y_i is its negation.
    y = []
    for i in range(m):
        yi = -cost_row[n + m + i]
        y.append(-yi if flipped[i] else yi)

    value = sum(ci * xi for ci, xi in zip(c, x))
    return x, y, value
