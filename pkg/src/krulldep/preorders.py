"""Monomial preorders as comparison objects.

Every preorder here is realised by a sort key: ``m1 < m2`` in the preorder
iff ``key(m1) < key(m2)`` lexicographically, and incomparable monomials are
exactly those with equal keys.  The same data is exposed as a rational
matrix (monomials compare by ``exp @ M`` under lex), which is what the
upper-set and Noetherian routines work from.
"""

from __future__ import annotations

import enum
import random
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .intlinalg import lcm_of_denominators, rref
from .poly import Monomial, divides, monomials_of_degree


class PreorderError(ValueError):
    pass


class Cmp(enum.Enum):
    LESS = "Less"
    GREATER = "Greater"
    INCOMPARABLE = "Incomparable"


def _cmp_keys(a, b) -> Cmp:
    if a < b:
        return Cmp.LESS
    if a > b:
        return Cmp.GREATER
    return Cmp.INCOMPARABLE


class MonomialPreorder:
    nvars: Optional[int] = None

    def key(self, m: Monomial) -> tuple:
        raise NotImplementedError

    def _check(self, m: Monomial):
        if self.nvars is not None and len(m) != self.nvars:
            raise PreorderError(f"arity mismatch: preorder has {self.nvars} variables, monomial {len(m)}")

    def compare(self, m1: Monomial, m2: Monomial) -> Cmp:
        if len(m1) != len(m2):
            raise PreorderError("monomials of different arity")
        self._check(m1)
        return _cmp_keys(self.key(m1), self.key(m2))

    def less(self, m1: Monomial, m2: Monomial) -> bool:
        return self.compare(m1, m2) is Cmp.LESS

    def matrix(self, s: int) -> list[list[Fraction]]:
        """Rows indexed by variables, columns by successive criteria."""
        raise NotImplementedError

    def arity(self, s: Optional[int] = None) -> int:
        if self.nvars is not None:
            if s is not None and s != self.nvars:
                raise PreorderError(f"arity mismatch: preorder has {self.nvars} variables, got {s}")
            return self.nvars
        if s is None:
            raise PreorderError("arity must be given for this preorder")
        return s

    def is_total(self, s: Optional[int] = None) -> bool:
        s = self.arity(s)
        M = self.matrix(s)
        _, piv = rref(M)
        return len(piv) == s

    def first_functional(self, s: int) -> list[Fraction]:
        return [row[0] for row in self.matrix(s)]

    def to_json(self) -> dict:
        raise NotImplementedError

    def __eq__(self, other):
        return type(self) is type(other) and self.to_json() == other.to_json()

    def __hash__(self):
        return hash(repr(self.to_json()))

    def __repr__(self):
        return f"{type(self).__name__}({self.to_json()})"


class Lex(MonomialPreorder):
    """Lexicographic order; ``priority`` lists variable indices, most significant first."""

    def __init__(self, priority: Optional[Sequence[int]] = None):
        if priority is not None:
            priority = tuple(priority)
            if sorted(priority) != list(range(len(priority))):
                raise PreorderError("lex priority must be a permutation of 0..s-1")
            self.nvars = len(priority)
        self.priority = priority

    def _perm(self, s):
        return self.priority if self.priority is not None else tuple(range(s))

    def key(self, m):
        if self.priority is None:
            return tuple(m)
        return tuple(m[i] for i in self.priority)

    def matrix(self, s):
        perm = self._perm(self.arity(s))
        return [[Fraction(int(perm[c] == r)) for c in range(s)] for r in range(s)]

    def is_total(self, s=None):
        return True

    def to_json(self):
        d = {"type": "lex"}
        if self.priority is not None:
            d["priority"] = [i + 1 for i in self.priority]
        return d


class Weight(MonomialPreorder):
    def __init__(self, w: Sequence[int]):
        w = tuple(w)
        if not w or any((not isinstance(x, int)) or x < 1 for x in w):
            raise PreorderError(f"weights must be positive integers, got {list(w)}")
        self.w = w
        self.nvars = len(w)

    def key(self, m):
        return (sum(a * b for a, b in zip(m, self.w)),)

    def matrix(self, s):
        self.arity(s)
        return [[Fraction(x)] for x in self.w]

    def is_total(self, s=None):
        return self.nvars == 1

    def to_json(self):
        return {"type": "weight", "w": list(self.w)}


def validate_matrix(rows: Sequence[Sequence]) -> list[list[Fraction]]:
    M = [[Fraction(x) for x in r] for r in rows]
    if not M or not M[0]:
        raise PreorderError("matrix must have at least one row and column")
    k = len(M[0])
    if any(len(r) != k for r in M):
        raise PreorderError("matrix rows must have equal length")
    first = [r[0] for r in M]
    if all(x == 0 for x in first) or any(x < 0 for x in first):
        raise PreorderError("first column must be nonzero with nonnegative entries")
    for i, r in enumerate(M):
        nz = next((x for x in r if x != 0), None)
        if nz is None:
            raise PreorderError(f"row {i + 1} is zero")
        if nz < 0:
            raise PreorderError(f"row {i + 1} has a negative first nonzero entry")
    return M


class MatrixPreorder(MonomialPreorder):
    """Compare ``exp(m) @ M`` lexicographically; rows correspond to variables."""

    def __init__(self, rows: Sequence[Sequence]):
        self.M = validate_matrix(rows)
        self.nvars = len(self.M)
        k = len(self.M[0])
        # positive column scaling does not change lex comparisons
        self._cols = []
        for c in range(k):
            col = [r[c] for r in self.M]
            scale = lcm_of_denominators(col)
            self._cols.append(tuple(int(x * scale) for x in col))

    def key(self, m):
        return tuple(sum(a * b for a, b in zip(m, col)) for col in self._cols)

    def matrix(self, s):
        self.arity(s)
        return [list(r) for r in self.M]

    def to_json(self):
        return {"type": "matrix", "rows": [[_num_json(x) for x in r] for r in self.M]}


def _num_json(x: Fraction):
    return x.numerator if x.denominator == 1 else str(x)


class Refine(MonomialPreorder):
    """Break ties of ``base`` using ``tiebreak``."""

    def __init__(self, base: MonomialPreorder, tiebreak: MonomialPreorder):
        self.base = base
        self.tiebreak = tiebreak
        arities = {p.nvars for p in (base, tiebreak) if p.nvars is not None}
        if len(arities) > 1:
            raise PreorderError("base and tiebreak arities differ")
        self.nvars = arities.pop() if arities else None

    def key(self, m):
        return self.base.key(m) + self.tiebreak.key(m)

    def matrix(self, s):
        s = self.arity(s)
        A, B = self.base.matrix(s), self.tiebreak.matrix(s)
        return [a + b for a, b in zip(A, B)]

    def to_json(self):
        return {"type": "refine", "base": self.base.to_json(), "tiebreak": self.tiebreak.to_json()}


class Transformed(MonomialPreorder):
    """``m1 < m2`` iff the images ``m + |m| e_i`` compare under ``base``; ``i`` is 1-based."""

    def __init__(self, base: MonomialPreorder, i: int):
        if i < 1 or (base.nvars is not None and i > base.nvars):
            raise PreorderError(f"transform index {i} out of range")
        self.base = base
        self.i = i
        self.nvars = base.nvars

    def image(self, m: Monomial) -> Monomial:
        d = sum(m)
        out = list(m)
        out[self.i - 1] += d
        return tuple(out)

    def key(self, m):
        return self.base.key(self.image(m))

    def matrix(self, s):
        s = self.arity(s)
        B = self.base.matrix(s)
        ii = self.i - 1
        # row j of the transform is e_j + e_i
        return [[B[j][c] + B[ii][c] for c in range(len(B[0]))] for j in range(s)]

    def is_total(self, s=None):
        return self.base.is_total(s)

    def to_json(self):
        return {"type": "transform", "base": self.base.to_json(), "i": self.i}


def grlex(s: int) -> MatrixPreorder:
    """Degree first, then lex with x1 most significant."""
    return MatrixPreorder([[1] + [int(r == c) for c in range(s)] for r in range(s)])


def grevlex(s: int) -> MatrixPreorder:
    return MatrixPreorder([[1] + [-int(r == s - 1 - c) for c in range(s - 1)] for r in range(s)]
                          if s > 1 else [[1]])


def refine_to_order(p: MonomialPreorder, s: Optional[int] = None) -> Refine:
    """A monomial order extending ``p`` (graded lex breaks the ties)."""
    s = p.arity(s)
    return Refine(p, grlex(s))


def is_noetherian_sufficient(p: MonomialPreorder, s: Optional[int] = None) -> bool:
    """True only when every monomial provably has finitely many smaller ones.

    ``False`` means "not certified", never "not Noetherian".
    """
    if isinstance(p, Weight):
        return True
    if isinstance(p, MatrixPreorder):
        return all(row[0] > 0 for row in p.M)
    if isinstance(p, Transformed):
        n = p.arity(s)
        try:
            v = p.base.first_functional(n)
        except (NotImplementedError, PreorderError):
            return False
        vi = v[p.i - 1]
        return all(vj + vi > 0 for vj in v)
    return False


# -- upper sets -------------------------------------------------------------

def _bounded_vectors(coords: Sequence[int], weights: Sequence[Fraction], budget: Fraction):
    """Exponent dicts on ``coords`` with positive ``weights`` and weighted sum <= budget."""
    if not coords:
        yield {}
        return
    j, wj = coords[0], weights[0]
    e = 0
    while e * wj <= budget:
        for rest in _bounded_vectors(coords[1:], weights[1:], budget - e * wj):
            out = dict(rest)
            if e:
                out[j] = e
            yield out
        e += 1


def minimal_elements(mons: Iterable[Monomial]) -> list[Monomial]:
    """Divisibility-minimal members, sorted by (degree, exponents)."""
    ordered = sorted(set(mons), key=lambda m: (sum(m), m))
    out: list[Monomial] = []
    for m in ordered:
        if not any(divides(h, m) for h in out):
            out.append(m)
    return out


def _upper_set_gens_exact(cols: list[list[Fraction]], s: int, g: Monomial) -> list[Monomial]:
    """Minimal generators of ``{m : m @ M >lex g @ M}`` from the matrix columns."""
    K = len(cols)

    def rec(k: int, active: tuple[int, ...], c: list[Fraction]) -> list[dict]:
        while k < K and all(cols[k][j] == 0 for j in active):
            if c[k] < 0:
                return [{}]
            if c[k] > 0:
                return []
            k += 1
        if k == K:
            return []
        v = cols[k]
        c1 = c[k]
        if c1 < 0:
            return [{}]
        P = [j for j in active if v[j] > 0]
        Z = tuple(j for j in active if v[j] == 0)
        if any(v[j] < 0 for j in active):
            raise PreorderError("matrix rows are not valid for this variable subset")
        vmax = max(v[j] for j in P)
        cands: list[dict] = []
        for p in _bounded_vectors(P, [v[j] for j in P], c1 + vmax):
            val = sum(v[j] * e for j, e in p.items())
            if val > c1:
                cands.append(p)
            elif val == c1:
                newc = list(c)
                for t in range(k + 1, K):
                    newc[t] = c[t] - sum(cols[t][j] * e for j, e in p.items())
                for z in rec(k + 1, Z, newc):
                    q = dict(p)
                    q.update(z)
                    cands.append(q)
        return cands

    c0 = [sum(Fraction(e) * col[j] for j, e in enumerate(g)) for col in cols]
    raw = rec(0, tuple(range(s)), c0)
    mons = [tuple(d.get(j, 0) for j in range(s)) for d in raw]
    return minimal_elements(mons)


def enumerate_upper_set_min_gens(p: MonomialPreorder, g: Monomial, degree_cap: int):
    """Brute-force enumeration by increasing degree, using ``compare`` only.

    The completeness flag is set when every monomial of degree ``degree_cap``
    is divisible by a collected generator.
    """
    s = len(g)
    if degree_cap < sum(g):
        raise PreorderError("degree cap below the degree of g")
    gens: list[Monomial] = []
    frontier_ok = True
    for d in range(degree_cap + 1):
        for m in monomials_of_degree(s, d):
            covered = any(divides(h, m) for h in gens)
            if not covered and p.compare(m, g) is Cmp.GREATER:
                gens.append(m)
                covered = True
            if d == degree_cap and not covered:
                frontier_ok = False
    return gens, frontier_ok


def upper_set_min_gens(p: MonomialPreorder, g: Monomial, degree_cap: int,
                       ) -> tuple[list[Monomial], bool]:
    """Minimal generators M(g) of ``{u : u > g}`` up to total degree ``degree_cap``.

    Returns the antichain (sorted by degree, then exponents) and a flag that
    is true when no further generator exists above the cap.  For preorders
    with a matrix description the full generator set is derived exactly from
    the matrix, which certifies the flag; otherwise the frontier test of the
    brute-force enumeration is used.
    """
    g = tuple(g)
    s = len(g)
    if degree_cap < sum(g):
        raise PreorderError("degree cap below the degree of g")
    p.arity(s)
    try:
        M = p.matrix(s)
    except NotImplementedError:
        return enumerate_upper_set_min_gens(p, g, degree_cap)
    cols = [[M[r][c] for r in range(s)] for c in range(len(M[0]))]
    full = _upper_set_gens_exact(cols, s, g)
    inside = [m for m in full if sum(m) <= degree_cap]
    return inside, len(inside) == len(full)


def random_matrix_preorder(rng: random.Random, s: int, k: Optional[int] = None,
                           bound: int = 3) -> MatrixPreorder:
    """A random valid matrix preorder (entries in [-bound, bound])."""
    k = k if k is not None else rng.randint(1, s + 1)
    while True:
        rows = []
        for _ in range(s):
            first = rng.randint(0, bound)
            rest = [rng.randint(-bound, bound) for _ in range(k - 1)]
            row = [first] + rest
            nz = next((x for x in row if x), None)
            if nz is None:
                row[0] = 1
            elif nz < 0:
                idx = row.index(nz)
                row[idx] = -nz
            rows.append(row)
        if any(r[0] > 0 for r in rows):
            return MatrixPreorder(rows)


def preorder_from_json(desc: dict) -> MonomialPreorder:
    if not isinstance(desc, dict) or "type" not in desc:
        raise PreorderError("preorder must be an object with a 'type' field")
    t = desc["type"]
    if t == "lex":
        pr = desc.get("priority")
        return Lex([i - 1 for i in pr] if pr is not None else None)
    if t == "weight":
        return Weight(desc["w"])
    if t == "matrix":
        return MatrixPreorder([[Fraction(x) for x in r] for r in desc["rows"]])
    if t == "refine":
        base = preorder_from_json(desc["base"])
        if "tiebreak" in desc:
            return Refine(base, preorder_from_json(desc["tiebreak"]))
        return refine_to_order(base, desc.get("nvars"))
    if t == "transform":
        return Transformed(preorder_from_json(desc["base"]), int(desc["i"]))
    if t == "grlex":
        return grlex(int(desc["nvars"]))
    if t == "grevlex":
        return grevlex(int(desc["nvars"]))
    raise PreorderError(f"unknown preorder type {t!r}")
