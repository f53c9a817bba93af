"""Search and verification of dependence certificates.

A certificate for ``a_1, ..., a_s`` with respect to a preorder is a
polynomial ``f`` with ``f(a) = 0`` whose initial part has a unit
coefficient.  The search looks for ``f`` of the shape ``g - sum c_h h`` with
``h`` running over the minimal generators ``M(g)`` of the monomials above
``g``; every such ``f`` has initial part ``g``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

from .intlinalg import solve_integer_system, solve_linear_system
from .poly import (Monomial, PolyRing, Polynomial, divides, evaluate, ini_preorder,
                   monomials_of_degree, monomials_up_to, parse_polynomial, weighted_degree)
from .preorders import (Lex, MonomialPreorder, Weight, preorder_from_json, refine_to_order,
                        upper_set_min_gens)
from .rings import (Integers, IntegersMod, NumberRing, Rationals, PrimeField, Ring, RingError,
                    UndecidableError)


class CertificateError(RuntimeError):
    """Internal verification of a freshly built certificate failed."""


@dataclass(frozen=True)
class SearchBudget:
    max_candidate_degree: int = 6
    upper_set_cap: Optional[int] = None
    max_candidates: int = 100_000

    def __post_init__(self):
        if self.max_candidate_degree < 0 or self.max_candidates < 1:
            raise ValueError("budget values must be positive")
        if self.upper_set_cap is not None and self.upper_set_cap < self.max_candidate_degree:
            raise ValueError("upper_set_cap must be at least max_candidate_degree")

    @property
    def cap(self) -> int:
        if self.upper_set_cap is not None:
            return self.upper_set_cap
        return 3 * self.max_candidate_degree + 3


def _fresh_prefix(r: Ring) -> str:
    syms = set(r.symbols())
    for p in ("x", "y", "z", "t", "X"):
        if not any(k.startswith(p) and k[len(p):].isdigit() for k in syms):
            return p
    raise RingError("no free variable prefix")


@dataclass
class SequenceProblem:
    """Elements ``a_1..a_s`` of ``ring`` and a preorder.

    With ``base`` set (and different from ``ring``) coefficients of relations
    are restricted to ``base`` and unit decisions happen there.
    """

    ring: Ring
    elements: tuple
    preorder: MonomialPreorder
    base: Optional[Ring] = None

    def __post_init__(self):
        self.elements = tuple(self.elements)
        if not self.elements:
            raise ValueError("need at least one element")
        for a in self.elements:
            if not self.ring.contains(a):
                raise RingError(f"element {a!r} does not belong to {self.ring!r}")
        self.preorder.arity(len(self.elements))
        if self.base is not None and self.base == self.ring:
            self.base = None
        prefix = _fresh_prefix(self.coeff_ring)
        self.poly_ring = PolyRing(self.coeff_ring, [f"{prefix}{i + 1}" for i in range(self.s)])

    @property
    def s(self) -> int:
        return len(self.elements)

    @property
    def over_base(self) -> bool:
        return self.base is not None

    @property
    def coeff_ring(self) -> Ring:
        return self.base if self.base is not None else self.ring

    def evaluate(self, f: Polynomial):
        return evaluate(f, list(self.elements), target=self.ring if self.over_base else None)


@dataclass
class DependenceCertificate:
    f: Polynomial
    ini_part: Polynomial
    unit_monomial: Monomial
    unit_coeff: object
    unit_inverse: object
    route: str = "direct"
    verified: bool = False

    def to_json(self) -> dict:
        R = self.f.ring
        return {
            "f": self.f.to_text(),
            "ini": self.ini_part.to_text(),
            "unit_monomial": R.monomial(self.unit_monomial).to_text(),
            "unit_coeff": R.coeffs.format(self.unit_coeff),
            "route": self.route,
            "verified": self.verified,
        }


@dataclass
class BudgetExhausted:
    candidates_tried: int = 0
    skipped_incomplete: int = 0
    max_candidate_degree: int = 0
    routes: list = field(default_factory=list)
    candidate_limit_hit: bool = False

    message = "no certificate up to budget"

    def to_json(self) -> dict:
        return {
            "result": "budget_exhausted",
            "message": self.message,
            "candidates_tried": self.candidates_tried,
            "skipped_incomplete": self.skipped_incomplete,
            "max_candidate_degree": self.max_candidate_degree,
            "routes": list(self.routes),
            "candidate_limit_hit": self.candidate_limit_hit,
        }


SearchResult = Union[DependenceCertificate, BudgetExhausted]


# -- verification ----------------------------------------------------------

def _certify(problem: SequenceProblem, f: Polynomial, route: str,
             prefer: Optional[Monomial] = None) -> DependenceCertificate:
    """Build a certificate from ``f`` or raise; used on every search result."""
    K = problem.coeff_ring
    val = problem.evaluate(f)
    if not problem.ring.is_zero(val):
        raise CertificateError(f"{f} does not vanish at the sequence")
    ini = ini_preorder(f, problem.preorder)
    order = sorted(ini.terms, key=lambda m: (sum(m), m))
    if prefer is not None and prefer in ini.terms:
        order.remove(prefer)
        order.insert(0, prefer)
    for m in order:
        c = ini.terms[m]
        try:
            if K.is_unit(c):
                inv = K.inverse(c)
                return DependenceCertificate(f, ini, m, c, inv, route, True)
        except UndecidableError:
            continue
    raise CertificateError(f"initial part of {f} has no unit coefficient")


def check_certificate(cert: DependenceCertificate, problem: SequenceProblem) -> bool:
    """Independent re-check of a certificate; ``False`` on any mismatch."""
    try:
        f = cert.f
        if f.ring.coeffs != problem.coeff_ring or f.nvars != problem.s or not f.terms:
            return False
        K = problem.coeff_ring
        values = list(problem.elements)
        if problem.over_base:
            v = evaluate(f, values, target=problem.ring)
        else:
            v = evaluate(f, values)
        if not problem.ring.is_zero(v):
            return False
        ini = ini_preorder(f, problem.preorder)
        if ini != cert.ini_part:
            return False
        m = tuple(cert.unit_monomial)
        if m not in ini.terms or ini.terms[m] != cert.unit_coeff:
            return False
        if not K.is_unit(cert.unit_coeff):
            return False
        inv = cert.unit_inverse if cert.unit_inverse is not None else K.inverse(cert.unit_coeff)
        return K.mul(cert.unit_coeff, inv) == K.one
    except (RingError, ValueError, ArithmeticError):
        return False


def certificate_from_json(d: dict, problem: SequenceProblem) -> DependenceCertificate:
    R = problem.poly_ring
    f = parse_polynomial(R, d["f"])
    ini = parse_polynomial(R, d["ini"])
    um = parse_polynomial(R, d["unit_monomial"])
    if len(um.terms) != 1:
        raise ValueError("unit_monomial must be a single monomial")
    (m, c), = um.terms.items()
    if c != R.coeffs.one:
        raise ValueError("unit_monomial must have coefficient 1")
    coeff = R.coeffs.parse(str(d["unit_coeff"]))
    return DependenceCertificate(f, ini, m, coeff, None, d.get("route", "direct"), bool(d.get("verified", False)))


# -- search ----------------------------------------------------------------

class _Values:
    """Cached values ``a^m`` in the target ring."""

    def __init__(self, ring: Ring, elements: Sequence):
        self.ring = ring
        self.a = list(elements)
        self.cache: dict = {(0,) * len(self.a): ring.one}

    def __call__(self, m: Monomial):
        m = tuple(m)
        v = self.cache.get(m)
        if v is None:
            j = next(i for i, e in enumerate(m) if e)
            prev = m[:j] + (m[j] - 1,) + m[j + 1:]
            v = self.ring.mul(self(prev), self.a[j])
            self.cache[m] = v
        return v


def _fast_paths(problem: SequenceProblem) -> Optional[DependenceCertificate]:
    R, P = problem.ring, problem.poly_ring
    K = problem.coeff_ring
    for i, a in enumerate(problem.elements):
        if R.is_zero(a):
            return _certify(problem, P.var(i), "direct")
    if problem.over_base:
        return None
    for i, a in enumerate(problem.elements):
        try:
            if R.is_unit(a):
                f = P.one - P.constant(R.inverse(a)) * P.var(i)
                return _certify(problem, f, "direct")
        except UndecidableError:
            break
    try:
        w = R.membership(R.one, list(problem.elements))
    except UndecidableError:
        return None
    if w is not None:
        f = P.one
        for i, c in enumerate(w):
            f = f - P.constant(c) * P.var(i) if not K.is_zero(c) else f
        return _certify(problem, f, "direct")
    return None


def _coordinates(problem: SequenceProblem):
    """Linear-algebra view of the algebra over the base ring, for over-base mode.

    Returns ``(to_vectors, solve)``: ``to_vectors`` maps a list of algebra
    elements to coordinate rows of equal length; ``solve(A, b)`` solves over the base.
    """
    A, B = problem.ring, problem.base
    if isinstance(A, NumberRing) and isinstance(B, Integers):
        return (lambda vals: [list(v) for v in vals]), solve_integer_system
    from .quotient import AffineQuotient

    if isinstance(A, AffineQuotient) and B == A.field:
        def to_vectors(vals):
            support = sorted({m for v in vals for m in v.terms})
            return [[v.terms.get(m, B.zero) for m in support] for v in vals]

        if isinstance(B, Rationals):
            return to_vectors, (lambda M, b: solve_linear_system(M, b))
        return to_vectors, (lambda M, b: solve_linear_system(M, b, field=B))
    raise RingError(f"over-base mode unsupported for {B!r} inside {A!r}")


def _transpose(rows):
    return [list(c) for c in zip(*rows)] if rows else []


def _search(problem: SequenceProblem, routes: list, budget: SearchBudget,
            report: BudgetExhausted) -> Optional[DependenceCertificate]:
    """Try every candidate ``g`` under each ``(name, order)`` route in turn."""
    s = problem.s
    P = problem.poly_ring
    K = problem.coeff_ring
    values = _Values(problem.ring, problem.elements)
    coords = _coordinates(problem) if problem.over_base else None
    report.routes = [name for name, _ in routes]
    for d in range(budget.max_candidate_degree + 1):
        for g in monomials_of_degree(s, d):
            for route, q in routes:
                if report.candidates_tried >= budget.max_candidates:
                    report.candidate_limit_hit = True
                    return None
                report.candidates_tried += 1
                gens, complete = upper_set_min_gens(q, g, max(budget.cap, d))
                if not complete:
                    report.skipped_incomplete += 1
                    continue
                if coords is None:
                    w = problem.ring.membership(values(g), [values(h) for h in gens])
                    if w is None:
                        continue
                    f = P.monomial(g)
                    for h, c in zip(gens, w):
                        if not K.is_zero(c):
                            f = f - P.monomial(h, c)
                    return _certify(problem, f, route, prefer=g)
                f = _over_base_candidate(problem, values, coords, g, gens, budget)
                if f is not None:
                    return _certify(problem, f, route, prefer=g)
    return None


def _over_base_candidate(problem, values, coords, g, gens, budget) -> Optional[Polynomial]:
    to_vectors, solve = coords
    P = problem.poly_ring
    K = problem.coeff_ring
    s = problem.s
    last = -1
    for D in range(sum(g) + 1, budget.max_candidate_degree + 1):
        unknowns = [u for u in monomials_up_to(s, D) if any(divides(h, u) for h in gens)]
        if len(unknowns) == last or not unknowns:
            continue
        last = len(unknowns)
        vecs = to_vectors([values(g)] + [values(u) for u in unknowns])
        rhs, cols = vecs[0], vecs[1:]
        z = solve(_transpose(cols), rhs)
        if z is None:
            continue
        f = P.monomial(g)
        for u, c in zip(unknowns, z):
            if not K.is_zero(c):
                f = f - P.monomial(u, c)
        return f
    return None


def find_certificate(problem: SequenceProblem, budget: Optional[SearchBudget] = None) -> SearchResult:
    """Search for a dependence certificate within ``budget``.

    Each candidate ``g`` is tried with the preorder itself ("direct") and,
    when the preorder is not total, with a monomial order refining it
    ("refined").  Every returned certificate is verified against the
    original preorder.
    """
    budget = budget or SearchBudget()
    fast = _fast_paths(problem)
    if fast is not None:
        return fast
    report = BudgetExhausted(max_candidate_degree=budget.max_candidate_degree)
    p = problem.preorder
    routes = [("direct", p)]
    if not p.is_total(problem.s):
        routes.append(("refined", refine_to_order(p, problem.s)))
    cert = _search(problem, routes, budget, report)
    return cert if cert is not None else report


def over_base_dependence(base: Ring, algebra: Ring, elements: Sequence, preorder: MonomialPreorder,
                         budget: Optional[SearchBudget] = None) -> SearchResult:
    return find_certificate(SequenceProblem(algebra, tuple(elements), preorder, base=base), budget)


def analytic_independence_probe(r: Ring, elements: Sequence,
                                budget: Optional[SearchBudget] = None) -> SearchResult:
    """Certificate search with all weights 1 on a ring with a designated maximal ideal.

    Coefficients are tested for being units of ``r`` itself, which are in
    particular units of the localisation, so any certificate found is valid there.
    """
    from .quotient import AffineQuotient

    local = isinstance(r, PrimeField) or (
        isinstance(r, IntegersMod) and len(_prime_factors(r.n)) == 1) or (
        isinstance(r, AffineQuotient) and r.maximal_ideal is not None)
    if not local:
        raise RingError("ring has no designated maximal ideal")
    problem = SequenceProblem(r, tuple(elements), Weight([1] * len(elements)))
    return find_certificate(problem, budget)


# -- explicit relations ------------------------------------------------------

def homogeneous_relation(ring: Ring, elements: Sequence, g: Monomial,
                         w: Optional[Sequence[int]] = None) -> Optional[DependenceCertificate]:
    """A relation ``g(a) = sum c_m m(a)`` over the other monomials of the same weighted degree.

    The result is a certificate for the weighted preorder ``w`` (all ones by
    default) with unit coefficient 1 on ``g``.
    """
    s = len(elements)
    w = tuple(w) if w is not None else (1,) * s
    g = tuple(g)
    deg = weighted_degree(g, w)
    others = [m for m in monomials_up_to(s, deg) if weighted_degree(m, w) == deg and m != g]
    problem = SequenceProblem(ring, tuple(elements), Weight(w))
    values = _Values(ring, elements)
    if not others:
        return None
    c = ring.membership(values(g), [values(m) for m in others])
    if c is None:
        return None
    P = problem.poly_ring
    f = P.monomial(g)
    for m, cm in zip(others, c):
        if not ring.is_zero(cm):
            f = f - P.monomial(m, cm)
    return _certify(problem, f, "direct", prefer=g)


@dataclass
class LombardiRelation:
    """``a^m + sum_i c_i a_1^{m_1} .. a_{i-1}^{m_{i-1}} a_i^{m_i + 1} = 0``."""

    ring: Ring
    elements: tuple
    exponents: tuple
    coefficients: tuple

    def shifted(self, i: int) -> Monomial:
        m = list(self.exponents[:i + 1]) + [0] * (len(self.exponents) - i - 1)
        m[i] += 1
        return tuple(m)

    def verify(self) -> bool:
        R = self.ring
        v = _Values(R, self.elements)
        acc = v(self.exponents)
        for i, c in enumerate(self.coefficients):
            acc = R.add(acc, R.mul(c, v(self.shifted(i))))
        return R.is_zero(acc)

    def certificate(self, problem: Optional[SequenceProblem] = None) -> DependenceCertificate:
        """The relation as a certificate for lex with ``x1`` most significant."""
        problem = problem or SequenceProblem(self.ring, self.elements, Lex())
        P = problem.poly_ring
        f = P.monomial(self.exponents)
        for i, c in enumerate(self.coefficients):
            if not self.ring.is_zero(c):
                f = f + P.monomial(self.shifted(i), c)
        return _certify(problem, f, "direct", prefer=tuple(self.exponents))


def _prime_factors(n: int) -> dict[int, int]:
    n = abs(n)
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _valuation(b: int, p: int) -> int:
    b = abs(b)
    e = 0
    while b and b % p == 0:
        b //= p
        e += 1
    return e


def integer_pair_exponent(a: int, b: int) -> int:
    """Least ``n`` with ``b^n`` in ``(a, b^(n+1))`` over the integers, for ``a != 0``.

    For each prime ``p`` with ``p^d || a`` and ``p^e || b``, ``e > 0``, the
    condition is ``d <= n e``.
    """
    if a == 0:
        raise ValueError("a must be nonzero")
    if b == 0:
        return 1 if abs(a) != 1 else 0
    n = 0
    for p, d in _prime_factors(a).items():
        e = _valuation(b, p)
        if e:
            n = max(n, -(-d // e))
    return n


def _lombardi_at(r: Ring, elements: tuple, m: tuple, values: _Values) -> Optional[tuple]:
    s = len(elements)
    gens = []
    for i in range(s):
        e = list(m[:i + 1]) + [0] * (s - i - 1)
        e[i] += 1
        gens.append(values(tuple(e)))
    d = r.membership(values(m), gens)
    if d is None:
        return None
    c = [r.neg(x) for x in d]
    if isinstance(r, IntegersMod):
        from math import gcd

        c = [x % (r.n // gcd(gv, r.n)) if gv % r.n else 0 for x, gv in zip(c, gens)]
    return tuple(c)


def lombardi_lex_relation(r: Ring, elements: Sequence, exponent_bound: int = 8) -> Optional[LombardiRelation]:
    """Search exponents ``m`` (each at most ``exponent_bound``) for a lex relation.

    Exponent tuples are tried by total degree, then lexicographically.  Over
    the integers with two nonzero elements the exponent is computed directly
    from the prime factorisation of the first element.
    """
    elements = tuple(elements)
    s = len(elements)
    if s == 0:
        raise ValueError("need at least one element")
    values = _Values(r, elements)
    if isinstance(r, Integers) and s == 2 and elements[0] != 0:
        n = integer_pair_exponent(elements[0], elements[1])
        if n <= exponent_bound:
            m = (0, n)
            c = _lombardi_at(r, elements, m, values)
            if c is not None:
                rel = LombardiRelation(r, elements, m, c)
                if not rel.verify():
                    raise CertificateError("lex relation failed verification")
                return rel
    for total in range(s * exponent_bound + 1):
        for m in monomials_of_degree(s, total):
            if max(m) > exponent_bound:
                continue
            c = _lombardi_at(r, elements, m, values)
            if c is not None:
                rel = LombardiRelation(r, elements, m, c)
                if not rel.verify():
                    raise CertificateError("lex relation failed verification")
                return rel
    return None


# -- problem files -------------------------------------------------------------

def problem_from_json(d: dict) -> tuple[SequenceProblem, SearchBudget]:
    """Parse a CLI problem object.  Errors name the offending field."""
    from .rings import ring_from_json

    def field_error(name, exc):
        return ValueError(f"field {name!r}: {exc}")

    try:
        ring = ring_from_json(d["ring"])
    except (KeyError, TypeError) as exc:
        raise field_error("ring", exc) from exc
    mode = d.get("mode", "ring")
    base = None
    if mode == "over-base":
        try:
            base = ring_from_json(d["base"])
        except (KeyError, TypeError) as exc:
            raise field_error("base", exc) from exc
    elif mode not in ("ring", "ideal"):
        raise ValueError(f"field 'mode': unknown mode {mode!r}")
    try:
        elements = []
        for i, e in enumerate(d["elements"]):
            try:
                elements.append(ring.parse(str(e)))
            except ValueError as exc:
                raise ValueError(f"element {i + 1}: {exc}") from exc
    except (KeyError, TypeError, ValueError) as exc:
        raise field_error("elements", exc) from exc
    try:
        preorder = preorder_from_json(d.get("preorder", {"type": "lex"}))
    except (KeyError, TypeError, ValueError) as exc:
        raise field_error("preorder", exc) from exc
    b = d.get("budget", {})
    try:
        budget = SearchBudget(
            max_candidate_degree=int(b.get("max_candidate_degree", 6)),
            upper_set_cap=b.get("upper_set_cap"),
            max_candidates=int(b.get("max_candidates", 100_000)),
        )
    except (TypeError, ValueError) as exc:
        raise field_error("budget", exc) from exc
    if mode == "ideal":
        try:
            J = [ring.parse(str(g)) for g in d["ideal"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise field_error("ideal", exc) from exc
        if not J:
            raise field_error("ideal", "need at least one generator")
        for i, e in enumerate(elements):
            if ring.membership(e, J) is None:
                raise field_error("elements", f"element {i + 1} is not in the ideal")
    return SequenceProblem(ring, tuple(elements), preorder, base=base), budget
