"""Exact rational linear programming (two-phase simplex, Bland's rule).

Only what the weight approximation needs: find ``y`` (free variables) with
``A y >= b``, optionally minimising ``c . y``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence


class Unbounded(ArithmeticError):
    pass


def _pivot(T: list[list[Fraction]], basis: list[int], r: int, c: int) -> None:
    piv = T[r][c]
    T[r] = [x / piv for x in T[r]]
    for i in range(len(T)):
        if i != r and T[i][c] != 0:
            f = T[i][c]
            row = T[r]
            T[i] = [x - f * y if y else x for x, y in zip(T[i], row)]
    basis[r] = c


def _simplex(T, basis, cost, allowed) -> None:
    """Minimise ``cost . x`` over the tableau in place; columns outside ``allowed`` never enter."""
    m = len(T)
    ncols = len(T[0]) - 1
    while True:
        # reduced costs
        entering = None
        for j in range(ncols):
            if j not in allowed or j in basis:
                continue
            red = cost[j] - sum(cost[basis[i]] * T[i][j] for i in range(m))
            if red < 0:
                entering = j
                break
        if entering is None:
            return
        best = None
        for i in range(m):
            a = T[i][entering]
            if a > 0:
                ratio = T[i][-1] / a
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            raise Unbounded("objective unbounded below")
        _pivot(T, basis, best[1], entering)


def solve_inequalities(A: Sequence[Sequence], b: Sequence, c: Optional[Sequence] = None,
                       ) -> Optional[list[Fraction]]:
    """A point ``y`` with ``A y >= b`` (minimising ``c . y`` when given), or ``None``."""
    m = len(A)
    if m == 0:
        raise ValueError("no constraints")
    n = len(A[0])
    # columns: y+ (n), y- (n), surplus (m), artificial (m), rhs
    T = []
    for i in range(m):
        row = [Fraction(x) for x in A[i]]
        rhs = Fraction(b[i])
        sign = -1 if rhs < 0 else 1
        full = [sign * x for x in row] + [-sign * x for x in row]
        full += [Fraction(-sign if k == i else 0) for k in range(m)]
        full += [Fraction(int(k == i)) for k in range(m)]
        full.append(sign * rhs)
        T.append(full)
    basis = [2 * n + m + i for i in range(m)]
    ncols = 2 * n + 2 * m
    art = set(range(2 * n + m, ncols))
    cost1 = [Fraction(int(j in art)) for j in range(ncols)]
    _simplex(T, basis, cost1, set(range(ncols)))
    if sum(T[i][-1] for i in range(m) if basis[i] in art) != 0:
        return None
    # drive artificial variables out of the basis
    keep = []
    for i in range(m):
        if basis[i] in art:
            j = next((j for j in range(2 * n + m) if T[i][j] != 0), None)
            if j is None:
                continue  # redundant row
            _pivot(T, basis, i, j)
        keep.append(i)
    T = [T[i] for i in keep]
    basis = [basis[i] for i in keep]
    if c is not None and T:
        cv = [Fraction(x) for x in c]
        cost2 = cv + [-x for x in cv] + [Fraction(0)] * (2 * m)
        _simplex(T, basis, cost2, set(range(2 * n + m)))
    x = [Fraction(0)] * ncols
    for i, j in enumerate(basis):
        x[j] = T[i][-1]
    return [x[j] - x[n + j] for j in range(n)]
