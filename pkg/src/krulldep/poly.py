"""Multivariate polynomials over a coefficient ring.

Monomials are dense exponent tuples of fixed arity.  A :class:`Polynomial`
maps monomials to nonzero coefficient payloads of its ring's coefficient
ring; :class:`PolyRing` is itself a :class:`~krulldep.rings.Ring`, so
polynomial rings can serve as coefficient rings or parsing targets.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Mapping, Optional, Sequence

from .parsing import ParseError, parse_with
from .rings import Ring, RingError, UndecidableError

Monomial = tuple  # tuple[int, ...]


def weighted_degree(m: Monomial, w: Sequence[int]) -> int:
    if len(m) != len(w):
        raise ValueError(f"arity mismatch: monomial has {len(m)} variables, weights {len(w)}")
    return sum(e * wi for e, wi in zip(m, w))


def divides(m: Monomial, n: Monomial) -> bool:
    return all(a <= b for a, b in zip(m, n))


def mono_mul(m: Monomial, n: Monomial) -> Monomial:
    return tuple(a + b for a, b in zip(m, n))


def mono_div(n: Monomial, m: Monomial) -> Monomial:
    return tuple(b - a for a, b in zip(m, n))


def mono_lcm(m: Monomial, n: Monomial) -> Monomial:
    return tuple(max(a, b) for a, b in zip(m, n))


def canonical_key(m: Monomial):
    """Fixed total order used for printing and iteration (graded lex, descending)."""
    return (sum(m), m)


def monomials_of_degree(nvars: int, d: int):
    """All exponent tuples of total degree ``d`` in ascending lexicographic order."""
    if nvars == 0:
        if d == 0:
            yield ()
        return
    if nvars == 1:
        yield (d,)
        return
    for first in range(d + 1):
        for rest in monomials_of_degree(nvars - 1, d - first):
            yield (first,) + rest


def monomials_up_to(nvars: int, d: int):
    for k in range(d + 1):
        yield from monomials_of_degree(nvars, k)


class PolyRing(Ring):
    """``coeffs[names...]``; payloads are :class:`Polynomial` objects."""

    kind = "Poly"

    def __init__(self, coeffs: Ring, names: Sequence[str]):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise RingError("variable names must be distinct")
        clash = set(names) & set(coeffs.symbols())
        if clash:
            raise RingError(f"variable names clash with coefficient symbols: {sorted(clash)}")
        self.coeffs = coeffs
        self.names = names
        self.nvars = len(names)
        self.is_field = False
        self.is_domain = coeffs.is_domain
        self.zero = Polynomial(self, {})
        self.one = self.constant(coeffs.one)

    def _key(self):
        return (self.coeffs, self.names)

    # -- construction ---------------------------------------------------
    def constant(self, c) -> "Polynomial":
        return Polynomial(self, {} if self.coeffs.is_zero(c) else {(0,) * self.nvars: c})

    def monomial(self, m: Monomial, c=None) -> "Polynomial":
        if len(m) != self.nvars:
            raise ValueError("arity mismatch")
        c = self.coeffs.one if c is None else c
        return Polynomial(self, {} if self.coeffs.is_zero(c) else {tuple(m): c})

    def var(self, i: int) -> "Polynomial":
        m = [0] * self.nvars
        m[i] = 1
        return self.monomial(tuple(m))

    def gens(self) -> list["Polynomial"]:
        return [self.var(i) for i in range(self.nvars)]

    def from_terms(self, terms: Mapping) -> "Polynomial":
        cz = self.coeffs.is_zero
        return Polynomial(self, {tuple(m): c for m, c in terms.items() if not cz(c)})

    # -- Ring interface -------------------------------------------------
    def from_int(self, n):
        return self.constant(self.coeffs.from_int(n))

    def from_fraction(self, q):
        return self.constant(self.coeffs.from_fraction(q))

    def coerce(self, x):
        if isinstance(x, Polynomial):
            if x.ring == self:
                return x
            raise RingError("polynomial from a different ring")
        return self.constant(self.coeffs.coerce(x))

    def add(self, f, g):
        R = self.coeffs
        out = dict(f.terms)
        for m, c in g.terms.items():
            if m in out:
                s = R.add(out[m], c)
                if R.is_zero(s):
                    del out[m]
                else:
                    out[m] = s
            else:
                out[m] = c
        return Polynomial(self, out)

    def neg(self, f):
        R = self.coeffs
        return Polynomial(self, {m: R.neg(c) for m, c in f.terms.items()})

    def sub(self, f, g):
        return self.add(f, self.neg(g))

    def mul(self, f, g):
        R = self.coeffs
        out: dict = {}
        for m1, c1 in f.terms.items():
            for m2, c2 in g.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                p = R.mul(c1, c2)
                if m in out:
                    out[m] = R.add(out[m], p)
                else:
                    out[m] = p
        return Polynomial(self, {m: c for m, c in out.items() if not R.is_zero(c)})

    def scale(self, c, f):
        R = self.coeffs
        if R.is_zero(c):
            return self.zero
        return Polynomial(self, {m: p for m, cf in f.terms.items() if not R.is_zero(p := R.mul(c, cf))})

    def mul_term(self, f, m: Monomial, c):
        R = self.coeffs
        out = {}
        for mf, cf in f.terms.items():
            p = R.mul(c, cf)
            if not R.is_zero(p):
                out[tuple(a + b for a, b in zip(mf, m))] = p
        return Polynomial(self, out)

    def is_zero(self, f):
        return not f.terms

    def contains(self, x):
        return isinstance(x, Polynomial) and x.ring == self

    def is_unit(self, f):
        if not self.coeffs.is_domain:
            raise UndecidableError("unit decision in polynomial rings needs a domain of coefficients")
        return len(f.terms) == 1 and f.is_constant() and self.coeffs.is_unit(f.constant_coeff())

    def inverse(self, f):
        if self.is_unit(f):
            return self.constant(self.coeffs.inverse(f.constant_coeff()))
        from .rings import NotInvertible

        raise NotInvertible("polynomial is not a unit")

    def membership(self, target, gens):
        if not self.coeffs.is_field:
            raise UndecidableError("polynomial ideal membership needs field coefficients")
        from .groebner import membership_witness

        return membership_witness(target, list(gens))

    def krull_dim(self):
        return self.coeffs.krull_dim() + self.nvars

    # -- text -------------------------------------------------------------
    def symbols(self):
        out = dict((k, self.constant(v)) for k, v in self.coeffs.symbols().items())
        for i, n in enumerate(self.names):
            out[n] = self.var(i)
        return out

    def format(self, f):
        return f.to_text()

    def descriptor(self):
        return {"kind": "Poly", "coeffs": self.coeffs.descriptor(), "vars": list(self.names)}

    def random_element(self, rng, degree: int = 2, terms: int = 3):
        mons = list(monomials_up_to(self.nvars, degree))
        out = self.zero
        for _ in range(terms):
            m = rng.choice(mons)
            out = out + self.monomial(m, self.coeffs.random_element(rng))
        return out


def _is_atomic_text(s: str) -> bool:
    return re.fullmatch(r"-?[A-Za-z0-9_^*/]+", s) is not None


class Polynomial:
    """Immutable sparse polynomial; ``terms`` maps exponent tuples to coefficients."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms
        self._hash = None

    # -- basic protocol ---------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == self.ring.coerce(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"Polynomial({self.to_text()!r})"

    def __str__(self):
        return self.to_text()

    def _lift(self, other):
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingError("polynomials from different rings")
            return other
        return self.ring.coerce(other)

    def __add__(self, other):
        return self.ring.add(self, self._lift(other))

    __radd__ = __add__

    def __sub__(self, other):
        return self.ring.sub(self, self._lift(other))

    def __rsub__(self, other):
        return self.ring.sub(self._lift(other), self)

    def __neg__(self):
        return self.ring.neg(self)

    def __mul__(self, other):
        return self.ring.mul(self, self._lift(other))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        return self.ring.pow(self, e)

    # -- accessors --------------------------------------------------------
    @property
    def nvars(self) -> int:
        return self.ring.nvars

    def support(self) -> list[Monomial]:
        return sorted(self.terms, key=canonical_key, reverse=True)

    def coeff(self, m: Monomial):
        return self.terms.get(tuple(m), self.ring.coeffs.zero)

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def constant_coeff(self):
        return self.coeff((0,) * self.nvars)

    def total_degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def variables_used(self) -> set[int]:
        return {i for m in self.terms for i, e in enumerate(m) if e}

    def map_coeffs(self, ring: PolyRing, fn) -> "Polynomial":
        return ring.from_terms({m: fn(c) for m, c in self.terms.items()})

    # -- text -------------------------------------------------------------
    def to_text(self) -> str:
        R = self.ring.coeffs
        if not self.terms:
            return "0"
        pieces: list[tuple[str, str]] = []
        for m in self.support():
            c = self.terms[m]
            mono = "*".join(
                name if e == 1 else f"{name}^{e}" for name, e in zip(self.ring.names, m) if e
            )
            ctext = R.format(c)
            sign = "+"
            if _is_atomic_text(ctext) and ctext.startswith("-"):
                sign, ctext = "-", ctext[1:]
            if not _is_atomic_text(ctext):
                ctext = f"({ctext})"
            if mono:
                body = mono if ctext == "1" else f"{ctext}*{mono}"
            else:
                body = ctext
            pieces.append((sign, body))
        head = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
        return head + "".join(f" {s} {b}" for s, b in pieces[1:])


def parse_polynomial(ring: PolyRing, text: str) -> Polynomial:
    return parse_with(str(text), ring, ring.symbols())


# -- initial forms ---------------------------------------------------------

def ini_w(f: Polynomial, w: Sequence[int]) -> Polynomial:
    """The weighted-homogeneous part of ``f`` of least weighted degree."""
    if not f.terms:
        raise ValueError("initial form of the zero polynomial is undefined")
    degs = {m: weighted_degree(m, w) for m in f.terms}
    low = min(degs.values())
    return Polynomial(f.ring, {m: c for m, c in f.terms.items() if degs[m] == low})


def ini_preorder(f: Polynomial, p) -> Polynomial:
    """Sum of the terms of ``f`` on monomials that are minimal for preorder ``p``."""
    if not f.terms:
        raise ValueError("initial part of the zero polynomial is undefined")
    keys = {m: p.key(m) for m in f.terms}
    low = min(keys.values())
    return Polynomial(f.ring, {m: c for m, c in f.terms.items() if keys[m] == low})


def evaluate(f: Polynomial, values: Sequence, target: Optional[Ring] = None):
    """Substitute ``values[i]`` for the i-th variable.

    With ``target`` given, values live in ``target`` and coefficients are
    embedded with ``target.coerce`` (evaluation over a base ring).
    """
    if len(values) != f.nvars:
        raise ValueError(f"expected {f.nvars} values, got {len(values)}")
    R = target if target is not None else f.ring.coeffs
    embed = (lambda c: c) if target is None or target == f.ring.coeffs else R.coerce
    powers: list[dict[int, object]] = [{0: R.one, 1: v} for v in values]

    def pw(i, e):
        cache = powers[i]
        if e not in cache:
            cache[e] = R.mul(pw(i, e - 1), values[i])
        return cache[e]

    acc = R.zero
    for m, c in f.terms.items():
        term = embed(c)
        for i, e in enumerate(m):
            if e:
                term = R.mul(term, pw(i, e))
        acc = R.add(acc, term)
    return acc


def substitute(f: Polynomial, images: Sequence[Polynomial]) -> Polynomial:
    """Compose ``f`` with polynomial images of its variables (same target ring)."""
    if not images:
        raise ValueError("need images")
    T = images[0].ring
    return evaluate(f, images, target=T) if f.ring.coeffs != T else evaluate(f, images)


def xring(coeffs: Ring, nvars: int, prefix: str = "x") -> PolyRing:
    return PolyRing(coeffs, [f"{prefix}{i + 1}" for i in range(nvars)])


__all__ = [
    "Monomial", "PolyRing", "Polynomial", "weighted_degree", "ini_w", "ini_preorder",
    "evaluate", "substitute", "parse_polynomial", "divides", "mono_mul", "mono_div",
    "mono_lcm", "monomials_of_degree", "monomials_up_to", "xring", "ParseError",
]
