"""Command-line front end.

Exit codes: 0 success, 1 negative search result or failed check, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import replace
from typing import Optional, Sequence

from .dependence import (DependenceCertificate, SearchBudget, certificate_from_json,
                         check_certificate, find_certificate, problem_from_json)
from .graded import ini_filtration_check, rees_kernel_and_iniQ, saturation_dim
from .groebner import ideal_dimension
from .harness import Harness, to_json_lines, violations
from .parsing import ParseError
from .preorders import PreorderError, preorder_from_json
from .quotient import AffineQuotient
from .rings import RingError, UndecidableError, ring_from_json
from .weights import PreorderAxiomError, approximate_on_set


class UsageError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True)


def _load_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"{path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc


_FACTOR = re.compile(r"\*?x(\d+)(?:\^(\d+))?")


def parse_monomial(text: str, s: Optional[int] = None) -> tuple:
    """Exponent vector of ``x1*x2^3``, ``x1x2^3`` or ``1``."""
    text = text.strip()
    exps: dict[int, int] = {}
    if text != "1":
        pos = 0
        while pos < len(text):
            m = _FACTOR.match(text, pos)
            if m is None or (pos == 0 and text.startswith("*")):
                raise UsageError(f"bad monomial {text!r} at position {pos}")
            i = int(m.group(1))
            if i < 1:
                raise UsageError(f"bad variable index in {text!r}")
            exps[i] = exps.get(i, 0) + int(m.group(2) or 1)
            pos = m.end()
    n = max(exps, default=0)
    if s is not None:
        if n > s:
            raise UsageError(f"monomial {text!r} uses more than {s} variables")
        n = s
    return tuple(exps.get(i + 1, 0) for i in range(n))


def _budget(args, base: SearchBudget) -> SearchBudget:
    kw = {}
    if args.budget_degree is not None:
        kw["max_candidate_degree"] = args.budget_degree
    if args.budget_upperset is not None:
        kw["upper_set_cap"] = args.budget_upperset
    if args.budget_candidates is not None:
        kw["max_candidates"] = args.budget_candidates
    try:
        return replace(base, **kw)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _problem(path: str):
    d = _load_json(path)
    if not isinstance(d, dict):
        raise UsageError(f"{path}: problem must be a JSON object")
    try:
        prob, budget = problem_from_json(d)
    except (ValueError, ParseError) as exc:
        raise UsageError(f"{path}: {exc}") from exc
    return d, prob, budget


# -- commands ------------------------------------------------------------------

def cmd_deps(args, out) -> int:
    d, prob, budget = _problem(args.problem)
    if args.action == "check":
        cd = _load_json(args.certificate)
        try:
            cert = certificate_from_json(cd, prob)
        except (KeyError, TypeError, ValueError, ParseError) as exc:
            raise UsageError(f"{args.certificate}: {exc}") from exc
        ok = check_certificate(cert, prob)
        if args.format == "json":
            print(_dump({"valid": ok}), file=out)
        else:
            print("valid" if ok else "invalid", file=out)
        return 0 if ok else 1
    res = find_certificate(prob, _budget(args, budget))
    payload = res.to_json()
    if isinstance(res, DependenceCertificate):
        payload = {"result": "certificate", **payload}
    if d.get("mode") == "ideal" and isinstance(prob.ring, AffineQuotient):
        J = [prob.ring.parse(str(g)) for g in d["ideal"]]
        payload["saturation_dim"] = saturation_dim(prob.ring, J)
    if args.format == "json":
        print(_dump(payload), file=out)
    elif isinstance(res, DependenceCertificate):
        print(f"dependent ({res.route}): {payload['f']} = 0", file=out)
        print(f"unit coefficient {payload['unit_coeff']} at {payload['unit_monomial']}", file=out)
    else:
        print(f"{res.message} (degree {res.max_candidate_degree}, "
              f"{res.candidates_tried} candidates)", file=out)
    return 0 if isinstance(res, DependenceCertificate) else 1


def cmd_weights(args, out) -> int:
    desc = _load_json(args.preorder)
    try:
        p = preorder_from_json(desc)
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"{args.preorder}: {exc}") from exc
    mons = [parse_monomial(t) for t in args.monomials]
    s = max(len(m) for m in mons)
    if p.nvars is not None:
        if s > p.nvars:
            raise UsageError(f"preorder has {p.nvars} variables, monomials use {s}")
        s = p.nvars
    mons = [m + (0,) * (s - len(m)) for m in mons]
    try:
        w = approximate_on_set(p, mons)
    except (PreorderError, PreorderAxiomError) as exc:
        raise UsageError(str(exc)) from exc
    if args.format == "json":
        print(_dump({"weights": list(w)}), file=out)
    else:
        print(" ".join(map(str, w)), file=out)
    return 0


def _ring(path: str):
    try:
        return ring_from_json(_load_json(path))
    except (KeyError, TypeError, ValueError, ParseError) as exc:
        raise UsageError(f"{path}: {exc}") from exc


def cmd_dim(args, out) -> int:
    r = _ring(args.ring)
    try:
        d = r.krull_dim()
    except (UndecidableError, RingError) as exc:
        raise UsageError(str(exc)) from exc
    print(_dump({"dim": d}) if args.format == "json" else d, file=out)
    return 0


def _split(text: str) -> list[str]:
    return [t.strip() for t in text.split(",") if t.strip()]


def cmd_graded(args, out) -> int:
    r = _ring(args.ring)
    if not isinstance(r, AffineQuotient):
        raise UsageError("graded verify needs an AffineQuotient ring")
    try:
        elements = [r.parse(t) for t in _split(args.elements)]
        w = [int(t) for t in _split(args.weights)]
    except (ValueError, ParseError) as exc:
        raise UsageError(str(exc)) from exc
    if not elements or len(w) != len(elements) or min(w) < 1:
        raise UsageError("need one positive weight per element")
    pres = rees_kernel_and_iniQ(r, elements, w)
    filt = ini_filtration_check(pres, elements, w)
    d = ideal_dimension(pres.ini_w_Q)
    payload = {"agreement": pres.agreement, "filtration_check": filt, "dim_G": d,
               "ini_w_Q": [g.to_text() for g in pres.ini_w_Q.basis().elements]}
    if args.format == "json":
        print(_dump(payload), file=out)
    else:
        print(f"agreement {str(pres.agreement).lower()}, filtration check "
              f"{str(filt).lower()}, dim G = {d}", file=out)
    return 0 if pres.agreement and filt else 1


def cmd_harness(args, out) -> int:
    degree = args.budget_degree if args.budget_degree is not None else 6
    h = Harness(seed=args.seed, trials=args.trials, budget=degree)
    report = list(h.run())
    bad = violations(report)
    if args.format == "json":
        out.write(to_json_lines(report))
    else:
        counts: dict = {}
        for rec in report:
            counts[rec["result"]] = counts.get(rec["result"], 0) + 1
        print(" ".join(f"{k}={counts[k]}" for k in sorted(counts)), file=out)
        for rec in bad:
            print(_dump(rec), file=out)
    return 0 if not bad else 1


# -- parser --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "text"], default="json")
    common.add_argument("--budget-degree", type=int)
    common.add_argument("--budget-upperset", type=int)
    common.add_argument("--budget-candidates", type=int)

    ap = argparse.ArgumentParser(prog="krulldep", description="Dependence certificates and dimension checks.")
    sub = ap.add_subparsers(dest="command", required=True)

    deps = sub.add_parser("deps", help="search or check dependence certificates")
    dsub = deps.add_subparsers(dest="action", required=True)
    f = dsub.add_parser("find", parents=[common])
    f.add_argument("problem")
    c = dsub.add_parser("check", parents=[common])
    c.add_argument("problem")
    c.add_argument("certificate")
    deps.set_defaults(func=cmd_deps)

    w = sub.add_parser("weights", help="integer weights for a preorder")
    wsub = w.add_subparsers(dest="action", required=True)
    wa = wsub.add_parser("approx", parents=[common])
    wa.add_argument("preorder")
    wa.add_argument("monomials", nargs="+")
    w.set_defaults(func=cmd_weights)

    dm = sub.add_parser("dim", parents=[common], help="Krull dimension of a ring")
    dm.add_argument("ring")
    dm.set_defaults(func=cmd_dim)

    g = sub.add_parser("graded", help="associated graded ring checks")
    gsub = g.add_subparsers(dest="action", required=True)
    gv = gsub.add_parser("verify", parents=[common])
    gv.add_argument("ring")
    gv.add_argument("elements", help="comma-separated element strings")
    gv.add_argument("weights", help="comma-separated positive weights")
    g.set_defaults(func=cmd_graded)

    hs = sub.add_parser("harness", help="seeded dimension-bound harness")
    hsub = hs.add_subparsers(dest="action", required=True)
    hr = hsub.add_parser("run", parents=[common])
    hr.add_argument("--seed", type=int, default=1)
    hr.add_argument("--trials", type=int, default=100)
    hs.set_defaults(func=cmd_harness)
    return ap


def main(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        return args.func(args, out)
    except UsageError as exc:
        print(f"error: {exc}", file=err)
        return 2


if __name__ == "__main__":
    sys.exit(main())
