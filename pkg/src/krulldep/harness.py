"""Seeded desk-scale checks of the dimension bounds on a fixed ring catalog.

Each check yields one JSON-serialisable record.  ``result`` is one of
``certificate``, ``survived``, ``ok`` or ``violation``; only violations
count as failures.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from .dependence import (DependenceCertificate, SearchBudget, SequenceProblem,
                         check_certificate, find_certificate, lombardi_lex_relation,
                         over_base_dependence)
from .graded import saturation_dim, saturation_dim_rabinowitsch
from .groebner import IdealHandle, eliminate_to, embed, ideal_dimension
from .poly import PolyRing
from .preorders import Lex, MonomialPreorder, Weight, grevlex, random_matrix_preorder
from .quotient import AffineQuotient
from .rings import (Integers, IntegersMod, NumberRing, PrimeField, Rationals, Ring,
                    ring_from_json)


@dataclass
class CatalogEntry:
    name: str
    ring: Ring
    dim: int
    lower: tuple  # element texts of a length-dim sequence independent by design
    lower_budget: int = 6


def default_catalog() -> list[CatalogEntry]:
    def aq(field, vars_, ideal=()):
        return ring_from_json({"kind": "AffineQuotient", "field": field, "vars": vars_, "ideal": list(ideal)})

    return [
        CatalogEntry("Z", Integers(), 1, ("2",), 10),
        CatalogEntry("Z/4", IntegersMod(4), 0, ()),
        CatalogEntry("Z/12", IntegersMod(12), 0, ()),
        CatalogEntry("Z/30", IntegersMod(30), 0, ()),
        CatalogEntry("F5", PrimeField(5), 0, ()),
        CatalogEntry("Q", Rationals(), 0, ()),
        CatalogEntry("Q[u]", aq("Q", ["u"]), 1, ("u",)),
        CatalogEntry("Q[u,v]", aq("Q", ["u", "v"]), 2, ("u", "v")),
        CatalogEntry("Q[u,v]/(uv,u^2)", aq("Q", ["u", "v"], ["u*v", "u^2"]), 1, ("v",)),
        CatalogEntry("F5[u,v]/(u^3)", aq("F5", ["u", "v"], ["u^3"]), 1, ("v",)),
        CatalogEntry("Z[sqrt2,sqrt3]", NumberRing.multiquadratic([2, 3]), 1, ("2",)),
    ]


def panel(s: int, seed: int) -> list[MonomialPreorder]:
    """Lex, grevlex, three weight vectors and two seeded random matrix preorders."""
    rng = random.Random(f"panel-{seed}-{s}")
    ws = [Weight([1] * s), Weight(list(range(1, s + 1))), Weight(list(range(s, 0, -1)))]
    if s == 1:
        ws = [Weight([1]), Weight([2]), Weight([3])]
    return [Lex(), grevlex(s)] + ws + [random_matrix_preorder(rng, s) for _ in range(2)]


def _random_nonzero(r: Ring, rng: random.Random):
    if isinstance(r, Integers):
        while True:
            x = rng.randint(-10 ** 6, 10 ** 6)
            if x:
                return x
    while True:
        x = r.random_element(rng)
        if not r.is_zero(x):
            return x


class Harness:
    def __init__(self, seed: int = 1, trials: int = 100, budget: int = 6,
                 catalog: Optional[list[CatalogEntry]] = None):
        self.seed = seed
        self.trials = trials
        self.budget = SearchBudget(max_candidate_degree=budget)
        self.catalog = catalog if catalog is not None else default_catalog()

    def record(self, entry: CatalogEntry, check: str, seq: Sequence, preorder, result: str,
               certificate=None, **extra) -> dict:
        rec = {
            "ring": entry.name,
            "check": check,
            "sequence": [entry.ring.format(a) for a in seq],
            "preorder": preorder.to_json() if isinstance(preorder, MonomialPreorder) else preorder,
            "result": result,
            "certificate": certificate,
            "seed": self.seed,
        }
        rec.update(extra)
        return rec

    # -- individual checks ---------------------------------------------------
    def _search(self, entry, check, seq, p, budget, expect_certificate: bool, **extra):
        prob = SequenceProblem(entry.ring, tuple(seq), p)
        res = find_certificate(prob, budget)
        if isinstance(res, DependenceCertificate):
            ok = check_certificate(res, prob)
            result = "certificate" if expect_certificate and ok else "violation"
            return self.record(entry, check, seq, p, result, res.to_json(), **extra)
        result = "violation" if expect_certificate else "survived"
        return self.record(entry, check, seq, p, result, None, report=res.to_json(), **extra)

    def lower_bound(self, entry: CatalogEntry) -> Iterator[dict]:
        seq = [entry.ring.parse(t) for t in entry.lower]
        if not seq:
            yield self.record(entry, "lower_bound", [], "none", "survived")
            return
        budget = SearchBudget(max_candidate_degree=entry.lower_budget)
        for p in panel(len(seq), self.seed):
            yield self._search(entry, "lower_bound", seq, p, budget, expect_certificate=False)

    def upper_bound(self, entry: CatalogEntry) -> Iterator[dict]:
        rng = random.Random(f"{self.seed}-{entry.name}")
        s = entry.dim + 1
        for trial in range(self.trials):
            seq = [_random_nonzero(entry.ring, rng) for _ in range(s)]
            if isinstance(entry.ring, Integers):
                yield self._lombardi(entry, seq, trial)
                continue
            for p in panel(s, self.seed):
                yield self._search(entry, "upper_bound", seq, p, self.budget,
                                   expect_certificate=True, trial=trial)

    def _lombardi(self, entry, seq, trial) -> dict:
        rel = lombardi_lex_relation(entry.ring, seq, exponent_bound=64)
        if rel is None:
            return self.record(entry, "upper_bound", seq, Lex(), "violation", None, trial=trial)
        cert = rel.certificate()
        ok = check_certificate(cert, SequenceProblem(entry.ring, tuple(seq), Lex()))
        return self.record(entry, "upper_bound", seq, Lex(), "certificate" if ok else "violation",
                           cert.to_json(), trial=trial, exponents=list(rel.exponents))

    def saturation(self, entry: CatalogEntry) -> Iterator[dict]:
        """Saturation dimension versus surviving and dependent sequences in ``J = (u)`` for each variable ``u``."""
        r = entry.ring
        if not isinstance(r, AffineQuotient) or not r.ideal.generators:
            return
        for name in r.names:
            j = r.parse(name)
            d1 = saturation_dim(r, [j])
            d2 = saturation_dim_rabinowitsch(r, [j])
            if d1 != d2:
                yield self.record(entry, "saturation", [j], "none", "violation", None, routes=[d1, d2])
                continue
            # a surviving sequence of length d1 inside J, and dependence of longer ones
            survivor = [r.mul(r.pow(j, k + 1), r.one) for k in range(d1)]
            if survivor:
                budget = SearchBudget(max_candidate_degree=8)
                for p in panel(d1, self.seed):
                    if isinstance(p, Weight):
                        yield self._search(entry, "saturation_lower", survivor, p, budget,
                                           expect_certificate=False, J=name, sat_dim=d1)
            longer = [r.pow(j, k + 1) for k in range(d1 + 1)]
            for p in panel(d1 + 1, self.seed):
                if isinstance(p, Weight):
                    yield self._search(entry, "saturation_upper", longer, p, SearchBudget(8),
                                       expect_certificate=True, J=name, sat_dim=d1)

    def subalgebra_dimension(self, entry: CatalogEntry) -> Iterator[dict]:
        """``dim k[a_1..a_s] <= dim B`` for random elements of an affine algebra ``B``."""
        r = entry.ring
        if not isinstance(r, AffineQuotient):
            return
        rng = random.Random(f"{self.seed}-{entry.name}-sub")
        for trial in range(min(self.trials, 10)):
            seq = [r.random_element(rng) for _ in range(entry.dim + 1)]
            s = len(seq)
            nu = len(r.names)
            big = PolyRing(r.field, list(r.names) + [f"x{i + 1}" for i in range(s)])
            gens = [embed(g, big) for g in r.ideal.generators]
            gens += [big.var(nu + i) - embed(a, big) for i, a in enumerate(seq)]
            small = PolyRing(r.field, [f"x{i + 1}" for i in range(s)])
            ker = eliminate_to(IdealHandle(big, gens), range(nu, nu + s), small)
            d = ideal_dimension(ker)
            d = 0 if d is None else d
            res = "ok" if d <= entry.dim else "violation"
            yield self.record(entry, "subalgebra_dim", seq, "none", res, None, trial=trial, subalgebra_dim=d)

    def over_base(self, entry: CatalogEntry) -> Iterator[dict]:
        """Dependence over the integers for elements of a number ring, under lex."""
        r = entry.ring
        if not isinstance(r, NumberRing):
            return
        Z = Integers()
        names = [n for n in r.basis if n != "1"]
        gens = [r.parse(n) for n in names[:2]]
        budget = SearchBudget(max_candidate_degree=8)
        pairs = [gens]
        rng = random.Random(f"{self.seed}-{entry.name}-base")
        for _ in range(min(self.trials, 10)):
            pairs.append([r.mul(r.from_int(rng.randint(1, 5)), g) for g in gens])
        for seq in pairs:
            prob = SequenceProblem(r, tuple(seq), Lex(), base=Z)
            res = over_base_dependence(Z, r, seq, Lex(), budget)
            if isinstance(res, DependenceCertificate) and check_certificate(res, prob):
                yield self.record(entry, "over_base", seq, Lex(), "certificate", res.to_json(), base="Z")
            else:
                yield self.record(entry, "over_base", seq, Lex(), "violation", None, base="Z")

    # -- driver ------------------------------------------------------------------
    def run(self) -> Iterator[dict]:
        for entry in self.catalog:
            yield from self.lower_bound(entry)
            yield from self.upper_bound(entry)
            yield from self.saturation(entry)
            yield from self.subalgebra_dimension(entry)
            yield from self.over_base(entry)


def theorem_harness(seed: int = 1, trials: int = 100, budget: int = 6,
                    catalog: Optional[list[CatalogEntry]] = None) -> list[dict]:
    return list(Harness(seed, trials, budget, catalog).run())


def violations(report: Sequence[dict]) -> list[dict]:
    return [r for r in report if r["result"] == "violation"]


def to_json_lines(report: Sequence[dict]) -> str:
    return "".join(json.dumps(r, sort_keys=True) + "\n" for r in report)
