"""Buchberger's algorithm over coefficient fields, and the ideal operations built on it.

Internally polynomials are plain ``{exponent tuple: coefficient}`` dicts with
coefficients handled by the field object of the ambient :class:`PolyRing`.
"""

from __future__ import annotations

import heapq
import itertools
import threading
from functools import lru_cache
from typing import Optional, Sequence

from .poly import Monomial, PolyRing, Polynomial, divides, mono_div, mono_lcm
from .preorders import MatrixPreorder, MonomialPreorder, grevlex
from .rings import RingError


class GroebnerError(RingError):
    pass


# -- dict polynomial helpers -----------------------------------------------

def _add_term_mul(p: dict, c, m: Monomial, q: dict, F) -> None:
    """In place ``p += c * x^m * q``."""
    for mq, cq in q.items():
        mm = tuple(a + b for a, b in zip(m, mq))
        v = F.mul(c, cq)
        if mm in p:
            v = F.add(p[mm], v)
            if F.is_zero(v):
                del p[mm]
            else:
                p[mm] = v
        elif not F.is_zero(v):
            p[mm] = v


def _mul(p: dict, q: dict, F) -> dict:
    out: dict = {}
    for m, c in p.items():
        _add_term_mul(out, c, m, q, F)
    return out


def _scale(p: dict, c, F) -> dict:
    return {m: F.mul(c, v) for m, v in p.items()}


def _check_field(ring: PolyRing):
    if not isinstance(ring, PolyRing):
        raise GroebnerError("expected a polynomial ring")
    if not ring.coeffs.is_field:
        raise GroebnerError(f"Groebner bases need field coefficients, got {ring.coeffs!r}")


def _check_order(order: MonomialPreorder, s: int):
    if not order.is_total(s):
        raise GroebnerError("Groebner bases need a total monomial order")


class _Ctx:
    """Per-computation cache of sort keys."""

    def __init__(self, ring: PolyRing, order: MonomialPreorder):
        self.F = ring.coeffs
        self.kf = lru_cache(maxsize=None)(order.key)

    def lm(self, p: dict) -> Monomial:
        return max(p, key=self.kf)


def _reduce(ctx: _Ctx, p: dict, basis: list, quotients: Optional[list] = None) -> dict:
    """Full reduction of ``p`` by monic ``basis`` entries ``(lm, poly)``."""
    F = ctx.F
    p = dict(p)
    rem: dict = {}
    while p:
        lm = ctx.lm(p)
        c = p[lm]
        for idx, (g_lm, g) in enumerate(basis):
            if divides(g_lm, lm):
                m = mono_div(lm, g_lm)
                _add_term_mul(p, F.neg(c), m, g, F)
                if quotients is not None:
                    _add_term_mul(quotients[idx], c, m, {(0,) * len(m): F.one}, F)
                break
        else:
            rem[lm] = c
            del p[lm]
    return rem


class GBasis:
    """Reduced, monic Groebner basis with respect to a total order."""

    def __init__(self, ring: PolyRing, order: MonomialPreorder, elements: list[dict],
                 cofactors: Optional[list[list[dict]]] = None, generators: Sequence[Polynomial] = ()):
        self.ring = ring
        self.order = order
        self._ctx = _Ctx(ring, order)
        self._dicts = elements
        self._lms = [self._ctx.lm(e) for e in elements]
        self.elements = [Polynomial(ring, e) for e in elements]
        self.cofactors = cofactors
        self.generators = tuple(generators)

    @property
    def leading_monomials(self) -> list[Monomial]:
        return list(self._lms)

    def is_unit_ideal(self) -> bool:
        return any(not any(m) for m in self._lms)

    def _coerce(self, f: Polynomial) -> dict:
        if not isinstance(f, Polynomial) or f.ring != self.ring:
            raise GroebnerError("polynomial ring mismatch")
        return f.terms

    def normal_form(self, f: Polynomial) -> Polynomial:
        return Polynomial(self.ring, _reduce(self._ctx, self._coerce(f), list(zip(self._lms, self._dicts))))

    def divide(self, f: Polynomial) -> tuple[list[Polynomial], Polynomial]:
        quots = [{} for _ in self._dicts]
        r = _reduce(self._ctx, self._coerce(f), list(zip(self._lms, self._dicts)), quots)
        return [Polynomial(self.ring, q) for q in quots], Polynomial(self.ring, r)

    def contains(self, f: Polynomial) -> bool:
        return not self.normal_form(f)

    def witness(self, f: Polynomial) -> Optional[list[Polynomial]]:
        """Coefficients ``c`` with ``f == sum(c_i * generators_i)``, or ``None``."""
        if self.cofactors is None:
            raise GroebnerError("basis was computed without cofactor tracking")
        F = self.ring.coeffs
        quots = [{} for _ in self._dicts]
        r = _reduce(self._ctx, self._coerce(f), list(zip(self._lms, self._dicts)), quots)
        if r:
            return None
        out = [{} for _ in self.generators]
        for q, cof in zip(quots, self.cofactors):
            if not q:
                continue
            for i, ci in enumerate(cof):
                if ci:
                    prod = _mul(q, ci, F)
                    for m, c in prod.items():
                        _add_term_mul(out[i], c, (0,) * self.ring.nvars, {m: F.one}, F)
        return [Polynomial(self.ring, d) for d in out]

    def __repr__(self):
        return f"GBasis({[str(e) for e in self.elements]})"


def buchberger(gens: Sequence[Polynomial], order: Optional[MonomialPreorder] = None,
               track: bool = False) -> GBasis:
    """Reduced Groebner basis of the ideal generated by ``gens``.

    With ``track=True`` each basis element also carries its expression in
    terms of ``gens`` (used for membership witnesses).
    """
    gens = list(gens)
    if not gens:
        raise GroebnerError("need at least one generator (use the zero polynomial for the zero ideal)")
    ring = gens[0].ring
    _check_field(ring)
    if any(g.ring != ring for g in gens):
        raise GroebnerError("generators live in different rings")
    s = ring.nvars
    order = order if order is not None else grevlex(s) if s else MatrixPreorder([[1]])
    if s:
        _check_order(order, s)
    ctx = _Ctx(ring, order)
    F = ring.coeffs
    one = (0,) * s
    ngen = len(gens)

    G: list[list] = []  # entries [lm, poly, cofactor vector]
    for i, g in enumerate(gens):
        if not g.terms:
            continue
        lm = ctx.lm(g.terms)
        inv = F.inverse(g.terms[lm])
        cof = [{} for _ in range(ngen)] if track else None
        if track:
            cof[i] = {one: inv}
        G.append([lm, _scale(g.terms, inv, F), cof])

    pairs: set = set()
    heap: list = []

    def add_pair(i, j):
        pairs.add((i, j))
        heapq.heappush(heap, (ctx.kf(mono_lcm(G[i][0], G[j][0])), i, j))

    for i, j in itertools.combinations(range(len(G)), 2):
        add_pair(i, j)
    while heap:
        _, i, j = heapq.heappop(heap)
        pairs.discard((i, j))
        li, lj = G[i][0], G[j][0]
        L = mono_lcm(li, lj)
        if all(a == 0 or b == 0 for a, b in zip(li, lj)):
            continue
        if any(k != i and k != j and divides(G[k][0], L)
               and (min(i, k), max(i, k)) not in pairs and (min(j, k), max(j, k)) not in pairs
               for k in range(len(G))):
            continue
        mi, mj = mono_div(L, li), mono_div(L, lj)
        sp: dict = {}
        _add_term_mul(sp, F.one, mi, G[i][1], F)
        _add_term_mul(sp, F.neg(F.one), mj, G[j][1], F)
        quots = [{} for _ in G] if track else None
        r = _reduce(ctx, sp, [(e[0], e[1]) for e in G], quots)
        if not r:
            continue
        lm = ctx.lm(r)
        inv = F.inverse(r[lm])
        cof = None
        if track:
            cof = [{} for _ in range(ngen)]
            for t in range(ngen):
                _add_term_mul(cof[t], F.one, mi, G[i][2][t], F)
                _add_term_mul(cof[t], F.neg(F.one), mj, G[j][2][t], F)
                for q, e in zip(quots, G):
                    if q and e[2][t]:
                        for m, c in _mul(q, e[2][t], F).items():
                            _add_term_mul(cof[t], F.neg(c), m, {one: F.one}, F)
            cof = [_scale(c, inv, F) for c in cof]
        n = len(G)
        G.append([lm, _scale(r, inv, F), cof])
        for k in range(n):
            add_pair(k, n)

    if not G:
        return GBasis(ring, order, [], [] if track else None, gens)

    # minimalise, then inter-reduce
    keep = []
    for idx, e in enumerate(G):
        if not any(divides(G[o][0], e[0]) and (G[o][0] != e[0] or o < idx)
                   for o in range(len(G)) if o != idx):
            keep.append(e)
    final = []
    for idx, e in enumerate(keep):
        others = [(o[0], o[1]) for k, o in enumerate(keep) if k != idx]
        quots = [{} for _ in others] if track else None
        r = _reduce(ctx, e[1], others, quots)
        cof = None
        if track:
            cof = [dict(c) for c in e[2]]
            other_cofs = [o[2] for k, o in enumerate(keep) if k != idx]
            for q, oc in zip(quots, other_cofs):
                if not q:
                    continue
                for t in range(ngen):
                    if oc[t]:
                        for m, c in _mul(q, oc[t], F).items():
                            _add_term_mul(cof[t], F.neg(c), m, {one: F.one}, F)
        final.append((e[0], r, cof))
    final.sort(key=lambda x: ctx.kf(x[0]))
    return GBasis(ring, order, [f[1] for f in final],
                  [f[2] for f in final] if track else None, gens)


def normal_form(f: Polynomial, basis: GBasis) -> Polynomial:
    return basis.normal_form(f)


def s_polynomial(f: Polynomial, g: Polynomial, order: MonomialPreorder) -> Polynomial:
    ctx = _Ctx(f.ring, order)
    F = f.ring.coeffs
    lf, lg = ctx.lm(f.terms), ctx.lm(g.terms)
    L = mono_lcm(lf, lg)
    out: dict = {}
    _add_term_mul(out, F.inverse(f.terms[lf]), mono_div(L, lf), f.terms, F)
    _add_term_mul(out, F.neg(F.inverse(g.terms[lg])), mono_div(L, lg), g.terms, F)
    return Polynomial(f.ring, out)


def leading_monomial(f: Polynomial, order: MonomialPreorder) -> Monomial:
    if not f.terms:
        raise ValueError("zero polynomial has no leading monomial")
    return max(f.terms, key=order.key)


def membership_witness(f: Polynomial, gens: Sequence[Polynomial]) -> Optional[list[Polynomial]]:
    """``c`` with ``f == sum(c_i * gens_i)`` in a field-coefficient polynomial ring, else ``None``."""
    gens = list(gens)
    if not gens:
        return None if f else []
    if not buchberger(gens).contains(f):
        return None
    return buchberger(gens, track=True).witness(f)


# -- ideals ------------------------------------------------------------------

class IdealHandle:
    """An ideal of a polynomial ring over a field, with per-order cached bases."""

    def __init__(self, ring: PolyRing, generators: Sequence[Polynomial] = ()):
        _check_field(ring)
        gens = []
        for g in generators:
            g = ring.coerce(g)
            if g.terms and g not in gens:
                gens.append(g)
        self.ring = ring
        self.generators = tuple(gens)
        self._cache: dict = {}
        self._lock = threading.Lock()

    def basis(self, order: Optional[MonomialPreorder] = None) -> GBasis:
        order = order if order is not None else grevlex(self.ring.nvars) if self.ring.nvars else MatrixPreorder([[1]])
        key = repr(order.to_json())
        with self._lock:
            gb = self._cache.get(key)
        if gb is None:
            gb = buchberger(list(self.generators) or [self.ring.zero], order)
            with self._lock:
                self._cache.setdefault(key, gb)
        return gb

    def contains(self, f: Polynomial) -> bool:
        return self.basis().contains(self.ring.coerce(f))

    def contains_ideal(self, other: "IdealHandle") -> bool:
        return all(self.contains(g) for g in other.generators)

    def __eq__(self, other):
        if not isinstance(other, IdealHandle) or other.ring != self.ring:
            return NotImplemented
        return [e.terms for e in self.basis().elements] == [e.terms for e in other.basis().elements]

    __hash__ = None

    def is_unit(self) -> bool:
        return self.basis().is_unit_ideal()

    def is_zero(self) -> bool:
        return not self.generators

    def dimension(self) -> Optional[int]:
        return ideal_dimension(self)

    def __repr__(self):
        return f"IdealHandle({[str(g) for g in self.generators]})"


def _fresh_name(ring: PolyRing, base: str) -> str:
    taken = set(ring.names) | set(ring.coeffs.symbols())
    name = base
    while name in taken:
        name += "_"
    return name


def extend_ring(ring: PolyRing, extra: Sequence[str]) -> PolyRing:
    return PolyRing(ring.coeffs, list(ring.names) + [_fresh_name(ring, e) for e in extra])


def embed(f: Polynomial, big: PolyRing, positions: Optional[Sequence[int]] = None) -> Polynomial:
    """Map ``f`` into ``big``; variable ``i`` goes to ``positions[i]`` (default: same index)."""
    n = big.nvars
    pos = list(positions) if positions is not None else list(range(f.ring.nvars))
    out = {}
    for m, c in f.terms.items():
        e = [0] * n
        for i, a in enumerate(m):
            e[pos[i]] += a
        out[tuple(e)] = c
    return Polynomial(big, out)


def project(f: Polynomial, small: PolyRing, positions: Sequence[int]) -> Polynomial:
    """Inverse of :func:`embed`; all variables outside ``positions`` must be absent."""
    out = {}
    pos = list(positions)
    pset = set(pos)
    for m, c in f.terms.items():
        if any(a for j, a in enumerate(m) if j not in pset):
            raise GroebnerError("polynomial involves eliminated variables")
        out[tuple(m[j] for j in pos)] = c
    return Polynomial(small, out)


def elimination_order(s: int, eliminate_vars: Sequence[int]) -> MatrixPreorder:
    """Monomials involving ``eliminate_vars`` dominate; ties broken by grevlex."""
    elim = set(eliminate_vars)
    rows = []
    for r in range(s):
        row = [int(r in elim), 1] + [-int(r == s - 1 - c) for c in range(s - 1)]
        rows.append(row)
    return MatrixPreorder(rows)


def eliminate(ideal: IdealHandle, keep: Sequence[int]) -> IdealHandle:
    """Generators of ``ideal`` intersected with the subring on the ``keep`` variables.

    The result stays in the ambient ring.
    """
    s = ideal.ring.nvars
    keep = set(keep)
    drop = [j for j in range(s) if j not in keep]
    if not drop:
        return ideal
    gb = ideal.basis(elimination_order(s, drop))
    gens = [e for e in gb.elements if all(m[j] == 0 for m in e.terms for j in drop)]
    return IdealHandle(ideal.ring, gens)


def eliminate_to(ideal: IdealHandle, keep: Sequence[int], small: PolyRing) -> IdealHandle:
    """Like :func:`eliminate` but returns the ideal inside ``small`` (variables ``keep`` in order)."""
    e = eliminate(ideal, keep)
    return IdealHandle(small, [project(g, small, keep) for g in e.generators])


def intersect(I: IdealHandle, J: IdealHandle) -> IdealHandle:
    R = I.ring
    if J.ring != R:
        raise GroebnerError("ideals in different rings")
    if I.is_zero() or J.is_zero():
        return IdealHandle(R, [])
    big = extend_ring(R, ["t"])
    t = big.var(R.nvars)
    gens = [t * embed(f, big) for f in I.generators]
    gens += [(1 - t) * embed(g, big) for g in J.generators]
    return eliminate_to(IdealHandle(big, gens), range(R.nvars), R)


def divide_exact(f: Polynomial, g: Polynomial) -> Polynomial:
    """``f / g``, raising if ``g`` does not divide ``f``."""
    gb = buchberger([g])
    quots, r = gb.divide(f)
    if r:
        raise GroebnerError("inexact division")
    lc = g.terms[max(g.terms, key=gb.order.key)]
    return f.ring.scale(f.ring.coeffs.inverse(lc), quots[0])


def colon_element(I: IdealHandle, f: Polynomial) -> IdealHandle:
    R = I.ring
    if not f:
        return IdealHandle(R, [R.one])
    inter = intersect(I, IdealHandle(R, [f]))
    return IdealHandle(R, [divide_exact(h, f) for h in inter.generators])


def colon(I: IdealHandle, J: IdealHandle) -> IdealHandle:
    R = I.ring
    out = IdealHandle(R, [R.one])
    for g in J.generators:
        out = intersect(out, colon_element(I, g)) if not out.is_unit() else colon_element(I, g)
    return out


def saturate(I: IdealHandle, J: IdealHandle) -> IdealHandle:
    """``I : J^infinity`` by iterated colons until the chain stabilises."""
    cur = I
    while True:
        nxt = colon(cur, J)
        if nxt == cur:
            return cur
        cur = nxt


def saturate_rabinowitsch(I: IdealHandle, f: Polynomial) -> IdealHandle:
    """``I : f^infinity`` as ``(I, 1 - y f)`` intersected with the original ring."""
    R = I.ring
    big = extend_ring(R, ["y"])
    y = big.var(R.nvars)
    gens = [embed(g, big) for g in I.generators] + [1 - y * embed(f, big)]
    return eliminate_to(IdealHandle(big, gens), range(R.nvars), R)


def independent_sets_dimension(lms: Sequence[Monomial], s: int) -> Optional[int]:
    """Largest variable subset containing the support of no leading monomial."""
    if any(not any(m) for m in lms):
        return None
    supports = [frozenset(j for j, a in enumerate(m) if a) for m in lms]
    for k in range(s, -1, -1):
        for S in itertools.combinations(range(s), k):
            Sset = set(S)
            if not any(sup <= Sset for sup in supports):
                return k
    return 0


def ideal_dimension(ideal: IdealHandle) -> Optional[int]:
    """Krull dimension of ``ring / ideal``; ``None`` for the unit ideal (empty variety)."""
    s = ideal.ring.nvars
    if s > 10:
        raise GroebnerError("dimension search limited to 10 variables")
    gb = ideal.basis()
    return independent_sets_dimension(gb.leading_monomials, s)


def buchberger_criterion_holds(gb: GBasis) -> bool:
    for f, g in itertools.combinations(gb.elements, 2):
        if gb.normal_form(s_polynomial(f, g, gb.order)):
            return False
    return True
