"""Dimensions, the weighted filtration and the associated graded ring.

For ``R = k[U]/I`` and elements ``a_1..a_s`` with weights ``w``, the graded
ring ``G = (+) I_n / I_{n+1}`` is presented as ``R[X]/ini_w(Q)`` with
``Q = (x_1 - a_1, ..., x_s - a_s)``.  Ideals of ``R[X]`` are represented by
their preimages in ``k[U, X]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .groebner import (IdealHandle, eliminate_to, embed, extend_ring, ideal_dimension, saturate,
                       saturate_rabinowitsch)
from .poly import Monomial, PolyRing, Polynomial, weighted_degree
from .preorders import minimal_elements
from .quotient import AffineQuotient
from .rings import Ring, RingError


def krull_dim(r: Ring) -> int:
    return r.krull_dim()


# -- filtration ----------------------------------------------------------------

@dataclass
class FiltrationSpec:
    ring: Ring
    elements: tuple
    weights: tuple
    levels: list  # levels[n] = list of (exponent tuple, value) generating I_n

    def exponents(self, n: int) -> list[Monomial]:
        return [m for m, _ in self.levels[n]]

    def generators(self, n: int) -> list:
        return [v for _, v in self.levels[n]]


def level_exponents(w: Sequence[int], n: int) -> list[Monomial]:
    """Divisibility-minimal exponent vectors of weighted degree at least ``n``."""
    s = len(w)
    if n <= 0:
        return [(0,) * s]
    bounds = [-(-n // wi) for wi in w]

    def rec(i):
        if i == s:
            yield ()
            return
        for e in range(bounds[i] + 1):
            for rest in rec(i + 1):
                yield (e,) + rest

    return minimal_elements(m for m in rec(0) if weighted_degree(m, w) >= n)


def filtration_levels(ring: Ring, elements: Sequence, w: Sequence[int], up_to: int) -> FiltrationSpec:
    w = tuple(w)
    if any(x < 1 for x in w) or len(w) != len(elements):
        raise ValueError("need one positive weight per element")
    levels = []
    for n in range(up_to + 1):
        lev = []
        for m in level_exponents(w, n):
            v = ring.one
            for a, e in zip(elements, m):
                v = ring.mul(v, ring.pow(a, e)) if e else v
            lev.append((m, v))
        levels.append(lev)
    return FiltrationSpec(ring, tuple(elements), w, levels)


# -- graded presentation -------------------------------------------------------

@dataclass
class GradedPresentation:
    ring: AffineQuotient
    big: PolyRing            # k[U, X]
    ini_w_Q: IdealHandle     # in k[U, X], contains the defining ideal
    rees_kernel: IdealHandle  # in k[U, X, y]
    rees_side: IdealHandle   # (rees_kernel, y) intersected with k[U, X]
    agreement: bool


def _x_ring(r: AffineQuotient, s: int, extra: Sequence[str] = ()) -> PolyRing:
    taken = set(r.names)
    prefix = "x"
    while any(f"{prefix}{i + 1}" in taken for i in range(s)):
        prefix += "x"
    names = list(r.names) + [f"{prefix}{i + 1}" for i in range(s)]
    for e in extra:
        while e in names:
            e += "_"
        names.append(e)
    return PolyRing(r.field, names)


def _check_quotient(r: Ring) -> AffineQuotient:
    if not isinstance(r, AffineQuotient):
        raise RingError("graded computations need an affine quotient over a field")
    return r


def ini_w_Q(r: AffineQuotient, elements: Sequence[Polynomial], w: Sequence[int],
            big: Optional[PolyRing] = None) -> IdealHandle:
    """``ini_w(Q)`` via homogenisation from below and saturation by ``h``.

    Every ``F`` in ``J = I + Q`` is homogenised as ``sum c m h^(wdeg(m) - low)``,
    so setting ``h = 0`` recovers the lowest part.  The ideal of all such
    homogenisations is the saturation of the homogenised generators by ``h``.
    """
    r = _check_quotient(r)
    nu, s = len(r.names), len(elements)
    big = big or _x_ring(r, s)
    hr = extend_ring(big, ["h"])
    hidx = hr.nvars - 1
    xw = [0] * nu + list(w)

    def homog(F: Polynomial) -> Polynomial:
        F = embed(F, hr)
        degs = {m: weighted_degree(m[:-1], xw) for m in F.terms}
        low = min(degs.values())
        out = {}
        for m, c in F.terms.items():
            e = list(m)
            e[hidx] = degs[m] - low
            out[tuple(e)] = c
        return Polynomial(hr, out)

    gens = [embed(g, big) for g in r.ideal.generators]
    for i, a in enumerate(elements):
        gens.append(big.var(nu + i) - embed(a, big))
    H = IdealHandle(hr, [homog(g) for g in gens])
    K = saturate_rabinowitsch(H, hr.var(hidx))
    out = []
    for g in K.basis().elements:
        t = {m[:-1]: c for m, c in g.terms.items() if m[hidx] == 0}
        out.append(Polynomial(big, t))
    return IdealHandle(big, out)


def rees_kernel(r: AffineQuotient, elements: Sequence[Polynomial], w: Sequence[int],
                big: Optional[PolyRing] = None) -> tuple[IdealHandle, PolyRing]:
    """Kernel of ``k[U, X, y] -> R[t, 1/t]`` with ``x_i -> a_i t^(w_i)`` and ``y -> 1/t``."""
    r = _check_quotient(r)
    nu, s = len(r.names), len(elements)
    big = big or _x_ring(r, s)
    ry = extend_ring(big, ["y"])
    rt = extend_ring(ry, ["t"])
    y, t = rt.var(rt.nvars - 2), rt.var(rt.nvars - 1)
    gens = [embed(g, rt) for g in r.ideal.generators]
    for i, a in enumerate(elements):
        gens.append(rt.var(nu + i) - embed(a, rt) * t ** w[i])
    gens.append(y * t - 1)
    return eliminate_to(IdealHandle(rt, gens), range(ry.nvars), ry), ry


def rees_kernel_and_iniQ(r: AffineQuotient, elements: Sequence[Polynomial], w: Sequence[int],
                         ) -> GradedPresentation:
    r = _check_quotient(r)
    elements = [r.coerce(a) for a in elements]
    w = tuple(w)
    if len(w) != len(elements) or any(x < 1 for x in w):
        raise ValueError("need one positive weight per element")
    big = _x_ring(r, len(elements))
    iniQ = ini_w_Q(r, elements, w, big)
    kernel, ry = rees_kernel(r, elements, w, big)
    y = ry.var(ry.nvars - 1)
    side = eliminate_to(IdealHandle(ry, list(kernel.generators) + [y]), range(big.nvars), big)
    return GradedPresentation(r, big, iniQ, kernel, side, side == iniQ)


def ini_filtration_check(pres: GradedPresentation, elements: Sequence[Polynomial],
                         w: Sequence[int]) -> bool:
    """Every form ``F`` of weighted degree ``n`` in ``ini_w(Q)`` has ``F(a)`` in ``I_(n+1)``.

    Checked on the homogeneous components of the generators.
    """
    r = pres.ring
    nu, s = len(r.names), len(elements)
    for F in pres.ini_w_Q.generators:
        comps: dict = {}
        for m, c in F.terms.items():
            comps.setdefault(weighted_degree(m[nu:], w), {})[m] = c
        for deg, terms in comps.items():
            val = r.zero
            for m, c in terms.items():
                v = r.reduce(Polynomial(r.ambient, {m[:nu]: c}))
                for i in range(s):
                    if m[nu + i]:
                        v = r.mul(v, r.pow(elements[i], m[nu + i]))
                val = r.add(val, v)
            if r.is_zero(val):
                continue
            gens = filtration_levels(r, elements, w, deg + 1).generators(deg + 1)
            if r.membership(val, gens) is None:
                return False
    return True


def dim_G(r: AffineQuotient, elements: Sequence[Polynomial], w: Sequence[int]) -> Optional[int]:
    """Krull dimension of the associated graded ring; ``None`` when ``G = 0``."""
    big = _x_ring(_check_quotient(r), len(elements))
    return ideal_dimension(ini_w_Q(r, [r.coerce(a) for a in elements], w, big))


def max_prime_height_over(r: AffineQuotient, elements: Sequence[Polynomial]) -> Optional[int]:
    """Largest height of a prime containing ``(a_1..a_s)``, for polynomial rings over a field.

    In ``k[U]`` every maximal ideal has height ``dim k[U]``, so the value is
    the number of variables when the ideal is proper and ``None`` otherwise.
    """
    r = _check_quotient(r)
    if r.ideal.generators:
        raise RingError("only polynomial rings (empty defining ideal) are supported")
    if IdealHandle(r.ambient, [r.coerce(a) for a in elements]).is_unit():
        return None
    return len(r.names)


def saturation_ideal(r: AffineQuotient, J: Sequence[Polynomial]) -> IdealHandle:
    """Preimage in the ambient ring of ``0 : J^infinity``."""
    r = _check_quotient(r)
    Jh = IdealHandle(r.ambient, [r.coerce(j) for j in J])
    return saturate(r.ideal, Jh)


def saturation_dim(r: AffineQuotient, J: Sequence[Polynomial]) -> int:
    """``dim R / (0 : J^infinity)``; 0 when that quotient is the zero ring.

    The zero-ring value matches the supremum over sequences in ``J``, whose
    only independent member is then the empty sequence.
    """
    d = ideal_dimension(saturation_ideal(r, J))
    return 0 if d is None else d


def saturation_dim_rabinowitsch(r: AffineQuotient, J: Sequence[Polynomial]) -> int:
    """Second route: intersect the single-element saturations, each via an extra variable."""
    from .groebner import intersect

    r = _check_quotient(r)
    out = None
    for j in J:
        sat = saturate_rabinowitsch(r.ideal, r.coerce(j))
        out = sat if out is None else intersect(out, sat)
    if out is None:
        raise ValueError("J needs at least one generator")
    d = ideal_dimension(out)
    return 0 if d is None else d
