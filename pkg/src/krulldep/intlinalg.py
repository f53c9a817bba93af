"""Exact integer and rational linear algebra helpers.

Everything here works on plain Python ``int`` and ``fractions.Fraction``
values; no floating point is involved anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Optional, Sequence


def extended_gcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, u, v)`` with ``g = gcd(a, b) >= 0`` and ``g == u*a + v*b``.

    ``extended_gcd(0, 0)`` is ``(0, 0, 0)``.
    """
    if a == 0 and b == 0:
        return 0, 0, 0
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def symmetric_mod(x: int, m: int) -> int:
    """Residue of ``x`` modulo ``m > 0`` in the interval ``(-m/2, m/2]``."""
    r = x % m
    if 2 * r > m:
        r -= m
    return r


def gcd_with_cofactors(values: Sequence[int]) -> tuple[int, list[int]]:
    """Return ``(g, coeffs)`` with ``g = gcd(values) = sum(c*v)``."""
    g = 0
    coeffs = [0] * len(values)
    for i, v in enumerate(values):
        g2, u, w = extended_gcd(g, v)
        coeffs = [u * c for c in coeffs]
        coeffs[i] = w
        g = g2
    return g, coeffs


def solve_integer_system(A: Sequence[Sequence[int]], b: Sequence[int]) -> Optional[list[int]]:
    """Solve ``A z = b`` over the integers, or return ``None``.

    Uses a column-style Hermite reduction ``A U = H`` with ``U`` unimodular,
    then forward substitution on ``H``.  ``A`` is ``m x n``.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    if m == 0:
        return [0] * n
    # work column-wise
    H = [[int(A[i][j]) for i in range(m)] for j in range(n)]
    U = [[1 if i == j else 0 for i in range(n)] for j in range(n)]
    pivots: list[tuple[int, int]] = []  # (row, column index into H)
    col = 0
    for row in range(m):
        if col >= n:
            break
        # eliminate entries in this row for columns col..n-1 via gcd steps
        for j in range(col + 1, n):
            a, c = H[col][row], H[j][row]
            if c == 0:
                continue
            g, u, v = extended_gcd(a, c)
            p, q = a // g, c // g
            # [col, j] <- [u*col + v*j, -q*col + p*j]; determinant u*p + v*q = 1
            new_col = [u * x + v * y for x, y in zip(H[col], H[j])]
            new_j = [-q * x + p * y for x, y in zip(H[col], H[j])]
            H[col], H[j] = new_col, new_j
            new_ucol = [u * x + v * y for x, y in zip(U[col], U[j])]
            new_uj = [-q * x + p * y for x, y in zip(U[col], U[j])]
            U[col], U[j] = new_ucol, new_uj
        if H[col][row] != 0:
            if H[col][row] < 0:
                H[col] = [-x for x in H[col]]
                U[col] = [-x for x in U[col]]
            pivots.append((row, col))
            col += 1
    # forward substitution: b = H y
    y = [0] * n
    residual = [int(x) for x in b]
    for row, c in pivots:
        piv = H[c][row]
        if residual[row] % piv != 0:
            return None
        y[c] = residual[row] // piv
        if y[c]:
            residual = [r - y[c] * h for r, h in zip(residual, H[c])]
    if any(residual):
        return None
    z = [0] * n
    for c in range(n):
        if y[c]:
            for k in range(n):
                z[k] += y[c] * U[c][k]
    return z


def rref(rows: Sequence[Sequence[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over the rationals; returns (rows, pivot columns)."""
    M = [[Fraction(x) for x in r] for r in rows]
    pivots: list[int] = []
    if not M:
        return M, pivots
    ncols = len(M[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = 1 / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M[:r], pivots


def nullspace(rows: Sequence[Sequence[Fraction]], ncols: int) -> list[list[Fraction]]:
    """Basis of ``{x : rows @ x = 0}`` over the rationals."""
    if not rows:
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    R, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -R[r][fc]
        basis.append(v)
    return basis


def solve_linear_system(A: Sequence[Sequence], b: Sequence, field=None) -> Optional[list]:
    """Solve ``A z = b`` over a field, returning one solution or ``None``.

    Without ``field`` the arithmetic is over the rationals.  ``field`` may be a
    ring object exposing ``add/sub/mul/inverse/zero/is_zero`` (e.g. a prime
    field), in which case entries are its payloads.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    if field is None:
        aug = [[Fraction(x) for x in A[i]] + [Fraction(b[i])] for i in range(m)]
        R, pivots = rref(aug)
        if n in pivots:
            return None
        z = [Fraction(0)] * n
        for r, pc in enumerate(pivots):
            z[pc] = R[r][n]
        return z
    aug = [list(A[i]) + [b[i]] for i in range(m)]
    pivots = []
    r = 0
    for c in range(n + 1):
        piv = next((i for i in range(r, m) if not field.is_zero(aug[i][c])), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = field.inverse(aug[r][c])
        aug[r] = [field.mul(x, inv) for x in aug[r]]
        for i in range(m):
            if i != r and not field.is_zero(aug[i][c]):
                f = aug[i][c]
                aug[i] = [field.sub(x, field.mul(f, y)) for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    if n in pivots:
        return None
    z = [field.zero] * n
    for i, pc in enumerate(pivots):
        z[pc] = aug[i][n]
    return z


def lcm_of_denominators(values: Sequence[Fraction]) -> int:
    out = 1
    for v in values:
        d = Fraction(v).denominator
        out = out * d // gcd(out, d)
    return out
