"""Integer weight vectors reproducing a preorder on a finite monomial set."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Iterable, Sequence

from .intlinalg import lcm_of_denominators, nullspace, rref
from .lp import solve_inequalities
from .poly import Monomial, Polynomial, ini_preorder, ini_w, weighted_degree
from .preorders import Cmp, MonomialPreorder


class PreorderAxiomError(ValueError):
    """The comparison data admits no weight vector, so the preorder is broken."""


@dataclass(frozen=True)
class ConeSystem:
    positive_diffs: tuple[tuple[int, ...], ...]
    null_diffs: tuple[tuple[int, ...], ...]


def cone_system(p: MonomialPreorder, mons: Sequence[Monomial]) -> ConeSystem:
    s = len(mons[0])
    pos: list[tuple[int, ...]] = [tuple(int(i == j) for j in range(s)) for i in range(s)]
    null: list[tuple[int, ...]] = []
    for i in range(len(mons)):
        for j in range(i + 1, len(mons)):
            a, b = mons[i], mons[j]
            c = p.compare(a, b)
            diff = tuple(x - y for x, y in zip(a, b))
            if c is Cmp.INCOMPARABLE:
                null.append(diff)
            elif c is Cmp.GREATER:
                pos.append(diff)
            else:
                pos.append(tuple(-x for x in diff))
    return ConeSystem(tuple(dict.fromkeys(_prune(pos, s))), tuple(dict.fromkeys(map(_primitive, null))))


def _primitive(v: tuple) -> tuple:
    g = reduce(gcd, v, 0)
    return tuple(x // g for x in v) if g > 1 else v


def _prune(pos: list, s: int) -> list:
    # a nonzero nonnegative difference is implied by the unit rows w_i >= 1
    units = pos[:s]
    rest = [_primitive(u) for u in pos[s:] if any(x < 0 for x in u)]
    return units + rest


def _in_span(u, rows) -> bool:
    if not rows:
        return not any(u)
    _, p1 = rref(rows)
    _, p2 = rref(list(rows) + [u])
    return len(p1) == len(p2)


def solve_cone_system(cs: ConeSystem, s: int) -> tuple[int, ...]:
    null_rows = [list(map(Fraction, v)) for v in cs.null_diffs]
    for u in cs.positive_diffs:
        if _in_span(list(map(Fraction, u)), null_rows):
            raise PreorderAxiomError(f"preorder axioms violated: {list(u)} lies in the null span")
    basis = nullspace(null_rows, s)
    if not basis:
        raise PreorderAxiomError("preorder axioms violated: no weights orthogonal to the null span")
    A = [[sum(Fraction(x) * y for x, y in zip(u, bk)) for bk in basis] for u in cs.positive_diffs]
    cost = [sum(bk) for bk in basis]
    y = solve_inequalities(A, [1] * len(A), cost)
    if y is None:
        raise PreorderAxiomError("preorder axioms violated: weight system infeasible")
    w = [sum(yk * bk[i] for yk, bk in zip(y, basis)) for i in range(s)]
    scale = lcm_of_denominators(w)
    wi = [int(x * scale) for x in w]
    g = reduce(gcd, wi)
    return tuple(x // g for x in wi)


def approximate_on_set(p: MonomialPreorder, mons: Iterable[Monomial]) -> tuple[int, ...]:
    """Positive integer ``w`` whose weighted preorder matches ``p`` on ``mons``.

    Strict comparisons become strict weighted-degree comparisons and
    incomparable pairs get equal weighted degree.  The result is checked
    against ``p.compare`` on every pair before it is returned.
    """
    mons = sorted(set(tuple(m) for m in mons))
    if not mons:
        raise ValueError("monomial set is empty")
    s = len(mons[0])
    if any(len(m) != s for m in mons):
        raise ValueError("monomials of different arity")
    w = solve_cone_system(cone_system(p, mons), s)
    for a in mons:
        da = weighted_degree(a, w)
        for b in mons:
            c = p.compare(a, b)
            db = weighted_degree(b, w)
            ok = (da < db) if c is Cmp.LESS else (da > db) if c is Cmp.GREATER else (da == db)
            if not ok:
                raise AssertionError(f"weight {w} disagrees with the preorder on {a}, {b}")
    return w


def approximate_initials(polys: Iterable[Polynomial], p: MonomialPreorder) -> tuple[int, ...]:
    """Weights ``w`` with ``ini_w(f) == ini_p(f)`` for every given polynomial."""
    polys = list(polys)
    if not polys or any(not f for f in polys):
        raise ValueError("need nonzero polynomials")
    support = {m for f in polys for m in f.support()}
    w = approximate_on_set(p, support)
    for f in polys:
        if ini_w(f, w) != ini_preorder(f, p):
            raise AssertionError(f"weight {w} does not reproduce the initial part of {f}")
    return w
