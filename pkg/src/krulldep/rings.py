"""Coefficient rings with exact arithmetic, unit tests and ideal membership.

Ring elements are plain payload values owned by a ring object: ``int`` for
the integers and residue rings, ``Fraction`` for the rationals, integer
coordinate tuples for number rings, and normal-form polynomials for affine
quotient algebras (see :mod:`krulldep.quotient`).  All arithmetic goes
through the ring object, which keeps payloads canonical.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import product
from math import gcd, isqrt
from typing import Any, Optional, Sequence

from .intlinalg import extended_gcd, gcd_with_cofactors, solve_integer_system, symmetric_mod
from .parsing import ParseError, parse_with


class RingError(ValueError):
    """Invalid ring construction or an element that does not belong to a ring."""


class UndecidableError(RingError):
    """The requested decision is not available for this ring kind."""


class NotInvertible(ArithmeticError):
    pass


class Ring:
    """Common interface; subclasses keep payloads canonical."""

    is_field = False
    is_domain = False
    kind = "abstract"

    zero: Any = 0
    one: Any = 1

    # -- identity -------------------------------------------------------
    def _key(self) -> tuple:
        raise NotImplementedError

    def __eq__(self, other):
        return type(self) is type(other) and self._key() == other._key()

    def __hash__(self):
        return hash((type(self).__name__, self._key()))

    def __repr__(self):
        return f"{type(self).__name__}{self._key()!r}"

    # -- arithmetic -----------------------------------------------------
    def from_int(self, n: int):
        raise NotImplementedError

    def from_fraction(self, q: Fraction):
        q = Fraction(q)
        if q.denominator == 1:
            return self.from_int(q.numerator)
        return self.mul(self.from_int(q.numerator), self.inverse(self.from_int(q.denominator)))

    def coerce(self, x):
        """Embed a payload of a base ring (int or Fraction) into this ring."""
        if isinstance(x, Fraction):
            return self.from_fraction(x)
        if isinstance(x, int):
            return self.from_int(x)
        if self.contains(x):
            return x
        raise RingError(f"cannot coerce {x!r} into {self!r}")

    def add(self, x, y):
        raise NotImplementedError

    def neg(self, x):
        raise NotImplementedError

    def sub(self, x, y):
        return self.add(x, self.neg(y))

    def mul(self, x, y):
        raise NotImplementedError

    def pow(self, x, e: int):
        if e < 0:
            return self.pow(self.inverse(x), -e)
        result = self.one
        base = x
        while e:
            if e & 1:
                result = self.mul(result, base)
            e >>= 1
            if e:
                base = self.mul(base, base)
        return result

    def is_zero(self, x) -> bool:
        return x == self.zero

    def contains(self, x) -> bool:
        raise NotImplementedError

    # -- decisions ------------------------------------------------------
    def is_unit(self, x) -> bool:
        raise UndecidableError(f"unit decision not available for {self!r}")

    def inverse(self, x):
        raise UndecidableError(f"inverse not available for {self!r}")

    def membership(self, target, gens: Sequence) -> Optional[list]:
        raise UndecidableError(f"ideal membership not available for {self!r}")

    def krull_dim(self) -> int:
        raise UndecidableError(f"dimension not available for {self!r}")

    # -- text -----------------------------------------------------------
    def symbols(self) -> dict:
        return {}

    def parse(self, text: str):
        return parse_with(str(text), self, self.symbols())

    def format(self, x) -> str:
        return str(x)

    def descriptor(self) -> dict:
        raise NotImplementedError

    def random_element(self, rng: random.Random):
        raise NotImplementedError


class Integers(Ring):
    kind = "Z"
    is_domain = True

    def _key(self):
        return ()

    def from_int(self, n):
        return int(n)

    def from_fraction(self, q):
        q = Fraction(q)
        if q.denominator != 1:
            raise NotInvertible(f"{q} is not an integer")
        return q.numerator

    def add(self, x, y):
        return x + y

    def neg(self, x):
        return -x

    def sub(self, x, y):
        return x - y

    def mul(self, x, y):
        return x * y

    def pow(self, x, e):
        if e < 0:
            return super().pow(x, e)
        return x**e

    def contains(self, x):
        return isinstance(x, int) and not isinstance(x, bool)

    def is_unit(self, x):
        return x in (1, -1)

    def inverse(self, x):
        if x in (1, -1):
            return x
        raise NotInvertible(f"{x} is not a unit in Z")

    def membership(self, target, gens):
        g, coeffs = gcd_with_cofactors(list(gens))
        if g == 0:
            return [0] * len(gens) if target == 0 else None
        if target % g:
            return None
        q = target // g
        coeffs = [c * q for c in coeffs]
        # size-reduce against the last nonzero generator using pairwise syzygies
        nz = [i for i, v in enumerate(gens) if v != 0]
        last = nz[-1]
        for i in nz[:-1]:
            d = gcd(gens[i], gens[last])
            m = abs(gens[last] // d)
            r = symmetric_mod(coeffs[i], m)
            k = (coeffs[i] - r) // m
            if k:
                coeffs[i] = r
                coeffs[last] += k * (gens[i] // d) * (1 if gens[last] // d > 0 else -1)
        return coeffs

    def krull_dim(self):
        return 1

    def descriptor(self):
        return {"kind": "Z"}

    def random_element(self, rng, bound: int = 100):
        return rng.randint(-bound, bound)


def is_probable_prime(n: int) -> bool:
    """Trial division for small n, deterministic Miller-Rabin bases otherwise."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for p in small:
        if n % p == 0:
            return n == p
    if n < 10**6:
        return all(n % f for f in range(41, isqrt(n) + 1, 2))
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class IntegersMod(Ring):
    kind = "Zmod"

    def __init__(self, n: int):
        if not isinstance(n, int) or n < 2:
            raise RingError(f"modulus must be an integer >= 2, got {n!r}")
        self.n = n
        self.is_domain = is_probable_prime(n)

    def _key(self):
        return (self.n,)

    def from_int(self, k):
        return int(k) % self.n

    def add(self, x, y):
        return (x + y) % self.n

    def neg(self, x):
        return -x % self.n

    def sub(self, x, y):
        return (x - y) % self.n

    def mul(self, x, y):
        return x * y % self.n

    def pow(self, x, e):
        if e < 0:
            return super().pow(x, e)
        return pow(x, e, self.n)

    def contains(self, x):
        return isinstance(x, int) and 0 <= x < self.n

    def is_unit(self, x):
        return gcd(x, self.n) == 1

    def inverse(self, x):
        g, u, _ = extended_gcd(x, self.n)
        if g != 1:
            raise NotInvertible(f"{x} is not a unit mod {self.n}")
        return u % self.n

    def membership(self, target, gens):
        g, coeffs = gcd_with_cofactors(list(gens) + [self.n])
        if target % g:
            return None
        q = target // g
        return [c * q % self.n for c in coeffs[:-1]]

    def krull_dim(self):
        return 0

    def descriptor(self):
        return {"kind": "Zmod", "n": self.n}

    def random_element(self, rng):
        return rng.randrange(self.n)


class PrimeField(IntegersMod):
    kind = "Fp"
    is_field = True

    def __init__(self, p: int):
        if not isinstance(p, int) or not is_probable_prime(p):
            raise RingError(f"{p!r} is not prime")
        super().__init__(p)
        self.is_domain = True

    @property
    def p(self):
        return self.n

    def is_unit(self, x):
        return x % self.n != 0

    def membership(self, target, gens):
        for i, v in enumerate(gens):
            if v:
                out = [0] * len(gens)
                out[i] = target * self.inverse(v) % self.n
                return out
        return [0] * len(gens) if target == 0 else None

    def descriptor(self):
        return {"kind": "Fp", "p": self.n}


class Rationals(Ring):
    kind = "Q"
    is_field = True
    is_domain = True
    zero = Fraction(0)
    one = Fraction(1)

    def _key(self):
        return ()

    def from_int(self, n):
        return Fraction(n)

    def from_fraction(self, q):
        return Fraction(q)

    def add(self, x, y):
        return x + y

    def neg(self, x):
        return -x

    def sub(self, x, y):
        return x - y

    def mul(self, x, y):
        return x * y

    def pow(self, x, e):
        return x**e

    def contains(self, x):
        return isinstance(x, Fraction)

    def is_unit(self, x):
        return x != 0

    def inverse(self, x):
        if x == 0:
            raise NotInvertible("0 is not invertible")
        return 1 / x

    def membership(self, target, gens):
        for i, v in enumerate(gens):
            if v:
                out = [Fraction(0)] * len(gens)
                out[i] = target / v
                return out
        return [Fraction(0)] * len(gens) if target == 0 else None

    def krull_dim(self):
        return 0

    def format(self, x):
        return str(x)

    def descriptor(self):
        return {"kind": "Q"}

    def random_element(self, rng, bound: int = 20):
        return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))


def _det(M: Sequence[Sequence[int]]) -> Fraction:
    A = [[Fraction(x) for x in r] for r in M]
    n = len(A)
    det = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if A[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            det = -det
        det *= A[c][c]
        for i in range(c + 1, n):
            f = A[i][c] / A[c][c]
            if f:
                A[i] = [x - f * y for x, y in zip(A[i], A[c])]
    return det


class NumberRing(Ring):
    """A Z-order given by a basis and a multiplication table.

    Elements are integer coordinate tuples over ``basis`` (``basis[0]`` is 1).
    ``table[i][j]`` holds the coordinates of ``basis[i] * basis[j]``.
    """

    kind = "NumberRing"
    is_domain = True

    def __init__(self, basis: Sequence[str], table, generators: dict[str, Sequence[int]],
                 minpolys: Optional[dict[str, str]] = None):
        n = len(basis)
        if n == 0 or basis[0] != "1":
            raise RingError("basis must start with the identity '1'")
        tab = []
        for i in range(n):
            row = []
            for j in range(n):
                entry = [Fraction(x) for x in table[i][j]]
                if len(entry) != n:
                    raise RingError("multiplication table entries must have basis length")
                if any(x.denominator != 1 for x in entry):
                    raise RingError("multiplication table must keep the lattice closed (integral entries)")
                row.append(tuple(int(x) for x in entry))
            tab.append(row)
        self.basis = tuple(basis)
        self.table = tuple(tuple(r) for r in tab)
        self.dim = n
        self.zero = (0,) * n
        self.one = (1,) + (0,) * (n - 1)
        unit = [tuple(int(i == j) for i in range(n)) for j in range(n)]
        for j in range(n):
            if self.table[0][j] != unit[j]:
                raise RingError("basis[0] must act as the identity")
        for i in range(n):
            for j in range(n):
                if self.table[i][j] != self.table[j][i]:
                    raise RingError(f"table is not commutative at ({i},{j})")
        for i, j, k in product(range(n), repeat=3):
            if self.mul(self.mul(unit[i], unit[j]), unit[k]) != self.mul(unit[i], self.mul(unit[j], unit[k])):
                raise RingError(f"table is not associative at ({i},{j},{k})")
        self.generators = {name: tuple(int(c) for c in v) for name, v in generators.items()}
        for name, v in self.generators.items():
            if len(v) != n:
                raise RingError(f"generator {name} has wrong coordinate length")
        self.minpolys = dict(minpolys or {})
        for name, text in self.minpolys.items():
            val = parse_with(text, self, {name: self.generators[name]})
            if val != self.zero:
                raise RingError(f"minimal polynomial of {name} does not vanish")

    @classmethod
    def multiquadratic(cls, radicands: Sequence[int]) -> "NumberRing":
        """Z[sqrt(d1), ..., sqrt(dk)] with the product-of-subsets basis."""
        k = len(radicands)
        subsets = sorted(product((0, 1), repeat=k), key=lambda s: (sum(s), tuple(-x for x in s)))
        names = []
        for s in subsets:
            parts = [f"sqrt{radicands[i]}" for i in range(k) if s[i]]
            names.append("*".join(parts) if parts else "1")
        index = {s: i for i, s in enumerate(subsets)}
        n = len(subsets)
        table = []
        for a in subsets:
            row = []
            for b in subsets:
                coeff = 1
                for i in range(k):
                    if a[i] and b[i]:
                        coeff *= radicands[i]
                c = tuple(x ^ y for x, y in zip(a, b))
                v = [0] * n
                v[index[c]] = coeff
                row.append(v)
            table.append(row)
        gens = {}
        minpolys = {}
        for i, d in enumerate(radicands):
            s = tuple(int(j == i) for j in range(k))
            v = [0] * n
            v[index[s]] = 1
            gens[f"sqrt{d}"] = v
            minpolys[f"sqrt{d}"] = f"sqrt{d}^2 - {d}"
        ring = cls(names, table, gens, minpolys)
        ring._radicands = tuple(radicands)
        return ring

    def _key(self):
        return (self.basis, self.table)

    def from_int(self, k):
        return (int(k),) + (0,) * (self.dim - 1)

    def add(self, x, y):
        return tuple(a + b for a, b in zip(x, y))

    def neg(self, x):
        return tuple(-a for a in x)

    def sub(self, x, y):
        return tuple(a - b for a, b in zip(x, y))

    def mul(self, x, y):
        out = [0] * self.dim
        for i, a in enumerate(x):
            if not a:
                continue
            row = self.table[i]
            for j, b in enumerate(y):
                if not b:
                    continue
                ab = a * b
                for k, t in enumerate(row[j]):
                    if t:
                        out[k] += ab * t
        return tuple(out)

    def contains(self, x):
        return isinstance(x, tuple) and len(x) == self.dim and all(isinstance(c, int) for c in x)

    def _basis_vec(self, i):
        return tuple(int(i == j) for j in range(self.dim))

    def mult_matrix(self, x) -> list[list[int]]:
        """Matrix (rows = coordinates) of multiplication by x on the basis."""
        cols = [self.mul(x, self._basis_vec(j)) for j in range(self.dim)]
        return [[cols[j][i] for j in range(self.dim)] for i in range(self.dim)]

    def norm(self, x) -> int:
        return int(_det(self.mult_matrix(x)))

    def is_unit(self, x):
        return abs(self.norm(x)) == 1

    def inverse(self, x):
        sol = solve_integer_system(self.mult_matrix(x), list(self.one))
        if sol is None:
            raise NotInvertible(f"{self.format(x)} is not a unit")
        return tuple(sol)

    def membership(self, target, gens):
        # unknowns: coordinates of each coefficient c_i; columns are b_k * g_i
        cols = []
        for g in gens:
            for k in range(self.dim):
                cols.append(self.mul(self._basis_vec(k), g))
        if not cols:
            return None
        A = [[c[r] for c in cols] for r in range(self.dim)]
        sol = solve_integer_system(A, list(target))
        if sol is None:
            return None
        return [tuple(sol[i * self.dim:(i + 1) * self.dim]) for i in range(len(gens))]

    def krull_dim(self):
        return 1

    def symbols(self):
        out = dict(self.generators)
        for i, name in enumerate(self.basis):
            if name.isidentifier():
                out.setdefault(name, self._basis_vec(i))
        return out

    def format(self, x):
        parts = []
        for c, name in zip(x, self.basis):
            if c == 0:
                continue
            if name == "1":
                body = str(abs(c))
            elif abs(c) == 1:
                body = name
            else:
                body = f"{abs(c)}*{name}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        if not parts:
            return "0"
        head = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        return head + "".join(f" {s} {b}" for s, b in parts[1:])

    def descriptor(self):
        if hasattr(self, "_radicands"):
            return {"kind": "NumberRing", "sqrt": list(self._radicands)}
        return {"kind": "NumberRing", "basis": list(self.basis),
                "table": [[list(e) for e in row] for row in self.table],
                "generators": {k: list(v) for k, v in self.generators.items()},
                "minpolys": dict(self.minpolys)}

    def random_element(self, rng, bound: int = 5):
        return tuple(rng.randint(-bound, bound) for _ in range(self.dim))


# -- module-level operations ------------------------------------------------

def _check_member(r: Ring, x, what: str = "element"):
    if not r.contains(x):
        raise RingError(f"{what} {x!r} does not belong to {r!r}")


def is_unit(r: Ring, x) -> bool:
    """True iff ``x`` is invertible in ``r``."""
    _check_member(r, x)
    return r.is_unit(x)


def ideal_membership_with_witness(r: Ring, target, gens: Sequence) -> Optional[list]:
    """Coefficients ``c`` with ``target == sum(c_i * gens_i)``, or ``None``."""
    if not gens:
        raise RingError("generator list must be nonempty")
    _check_member(r, target, "target")
    for g in gens:
        _check_member(r, g, "generator")
    return r.membership(target, list(gens))


def ring_from_json(desc: dict) -> Ring:
    """Build a ring from its JSON descriptor (see the CLI problem format)."""
    if not isinstance(desc, dict) or "kind" not in desc:
        raise RingError("ring descriptor must be an object with a 'kind' field")
    kind = desc["kind"]
    if kind == "Z":
        return Integers()
    if kind == "Zmod":
        return IntegersMod(desc["n"])
    if kind in ("Fp", "PrimeField"):
        return PrimeField(desc["p"])
    if kind == "Q":
        return Rationals()
    if kind == "AffineQuotient":
        from .quotient import AffineQuotient

        field = desc.get("field", "Q")
        base = ring_from_json(field) if isinstance(field, dict) else (
            Rationals() if field == "Q" else PrimeField(int(str(field).lstrip("Fp")))
        )
        return AffineQuotient(base, desc["vars"], desc.get("ideal", []),
                              maximal_ideal=desc.get("maximal_ideal"))
    if kind == "NumberRing":
        if "sqrt" in desc:
            return NumberRing.multiquadratic([int(d) for d in desc["sqrt"]])
        return NumberRing(desc["basis"], desc["table"], desc["generators"], desc.get("minpolys"))
    raise RingError(f"unknown ring kind {kind!r}")


__all__ = [
    "Ring", "Integers", "IntegersMod", "PrimeField", "Rationals", "NumberRing",
    "RingError", "UndecidableError", "NotInvertible", "ParseError",
    "is_unit", "ideal_membership_with_witness", "extended_gcd", "ring_from_json",
    "is_probable_prime",
]
