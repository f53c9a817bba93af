"""Affine algebras ``k[vars]/I`` over ``k = Q`` or ``F_p``.

Elements are Groebner normal forms modulo ``I`` for the graded reverse
lexicographic order, so equality is payload equality.
"""

from __future__ import annotations

import random
from typing import Optional, Sequence

from .groebner import IdealHandle, buchberger, ideal_dimension
from .poly import PolyRing, Polynomial, monomials_up_to, parse_polynomial
from .preorders import grevlex
from .rings import NotInvertible, PrimeField, Rationals, Ring, RingError


class AffineQuotient(Ring):
    kind = "AffineQuotient"

    def __init__(self, field: Ring, names: Sequence[str], ideal: Sequence = (),
                 maximal_ideal: Optional[Sequence] = None):
        if not field.is_field:
            raise RingError("affine quotients need a coefficient field")
        self.field = field
        self.ambient = PolyRing(field, names)
        self.names = self.ambient.names
        gens = [g if isinstance(g, Polynomial) else parse_polynomial(self.ambient, g) for g in ideal]
        for g in gens:
            if g.ring != self.ambient:
                raise RingError("defining polynomial from a different ring")
        self.ideal = IdealHandle(self.ambient, gens)
        self._order = grevlex(len(self.names)) if self.names else None
        self.gb = self.ideal.basis(self._order)
        self.zero = self.ambient.zero
        self.one = self.gb.normal_form(self.ambient.one)
        self.maximal_ideal = None
        if maximal_ideal is not None:
            self.maximal_ideal = [self.reduce(m if isinstance(m, Polynomial) else parse_polynomial(self.ambient, m))
                                  for m in maximal_ideal]

    def _key(self):
        return (self.field, self.names, tuple(tuple(sorted(e.terms.items())) for e in self.gb.elements))

    def reduce(self, f: Polynomial) -> Polynomial:
        return self.gb.normal_form(f)

    def is_zero_ring(self) -> bool:
        return self.gb.is_unit_ideal()

    # -- arithmetic ------------------------------------------------------
    def from_int(self, n):
        return self.reduce(self.ambient.from_int(n))

    def from_fraction(self, q):
        return self.reduce(self.ambient.from_fraction(q))

    def coerce(self, x):
        if isinstance(x, Polynomial):
            if x.ring != self.ambient:
                raise RingError("polynomial from a different ring")
            return self.reduce(x)
        return super().coerce(x)

    def add(self, x, y):
        return self.ambient.add(x, y)

    def neg(self, x):
        return self.ambient.neg(x)

    def sub(self, x, y):
        return self.ambient.sub(x, y)

    def mul(self, x, y):
        return self.reduce(self.ambient.mul(x, y))

    def is_zero(self, x):
        return not x.terms

    def contains(self, x):
        return isinstance(x, Polynomial) and x.ring == self.ambient and self.reduce(x) == x

    # -- decisions ---------------------------------------------------------
    def is_unit(self, x):
        return IdealHandle(self.ambient, list(self.ideal.generators) + [x]).is_unit()

    def membership(self, target, gens):
        lifted = list(gens) + list(self.ideal.generators)
        if not any(g.terms for g in lifted):
            return [self.zero] * len(gens) if not target.terms else None
        if not buchberger(lifted).contains(target):
            return None
        w = buchberger(lifted, track=True).witness(target)
        if w is None:
            return None
        return [self.reduce(c) for c in w[:len(gens)]]

    def inverse(self, x):
        w = self.membership(self.one, [x])
        if w is None:
            raise NotInvertible(f"{self.format(x)} is not a unit")
        return w[0]

    def krull_dim(self):
        d = ideal_dimension(self.ideal)
        if d is None:
            raise RingError("the zero ring has no Krull dimension")
        return d

    # -- coordinates -------------------------------------------------------
    def standard_monomials(self, degree: int):
        """Monomials of degree at most ``degree`` that are not leading monomials of the ideal."""
        lms = self.gb.leading_monomials
        from .poly import divides

        return [m for m in monomials_up_to(len(self.names), degree)
                if not any(divides(l, m) for l in lms)]

    # -- text --------------------------------------------------------------
    def symbols(self):
        return {n: self.reduce(self.ambient.var(i)) for i, n in enumerate(self.names)}

    def format(self, x):
        return x.to_text()

    def descriptor(self):
        if isinstance(self.field, Rationals):
            field = "Q"
        elif isinstance(self.field, PrimeField):
            field = f"F{self.field.p}"
        else:
            field = self.field.descriptor()
        d = {"kind": "AffineQuotient", "field": field, "vars": list(self.names),
             "ideal": [g.to_text() for g in self.ideal.generators]}
        if self.maximal_ideal is not None:
            d["maximal_ideal"] = [m.to_text() for m in self.maximal_ideal]
        return d

    def random_element(self, rng: random.Random, degree: int = 2):
        return self.reduce(self.ambient.random_element(rng, degree=degree))

    def __repr__(self):
        inner = ", ".join(g.to_text() for g in self.ideal.generators)
        return f"AffineQuotient({self.field!r}[{','.join(self.names)}]/({inner}))"
