import random

import pytest
from hypothesis import given, settings, strategies as st

from krulldep.dependence import (BudgetExhausted, DependenceCertificate, SearchBudget, SequenceProblem,
                                 analytic_independence_probe, certificate_from_json, check_certificate,
                                 find_certificate, homogeneous_relation, integer_pair_exponent,
                                 lombardi_lex_relation, over_base_dependence, problem_from_json)
from krulldep.poly import evaluate, ini_preorder, parse_polynomial, substitute
from krulldep.preorders import Lex, Transformed, Weight
from krulldep.rings import (Integers, IntegersMod, NumberRing, PrimeField, Rationals, RingError,
                            ring_from_json)

Z = Integers()


def quv(ideal=(), maximal=None):
    d = {"kind": "AffineQuotient", "field": "Q", "vars": ["u", "v"], "ideal": list(ideal)}
    if maximal is not None:
        d["maximal_ideal"] = maximal
    return ring_from_json(d)


def perturb(cert, problem, rng):
    """Copy of ``cert`` with one coefficient of ``f`` shifted by a nonzero amount."""
    f = cert.f
    K = f.ring.coeffs
    m = rng.choice(sorted(f.terms))
    terms = dict(f.terms)
    delta = K.from_int(rng.choice([1, 2, 3, -1]))
    terms[m] = K.add(terms[m], delta)
    g = type(f)(f.ring, {k: v for k, v in terms.items() if not K.is_zero(v)})
    return DependenceCertificate(g, cert.ini_part, cert.unit_monomial, cert.unit_coeff,
                                 cert.unit_inverse, cert.route, False)


# -- golden search results -----------------------------------------------------------

def test_integer_pair_lex():
    prob = SequenceProblem(Z, (4, 6), Lex())
    cert = find_certificate(prob)
    assert isinstance(cert, DependenceCertificate)
    assert cert.f.to_text() == "x2^2 - 9*x1"
    assert check_certificate(cert, prob)


def test_weighted_example_both_orders():
    R = quv()
    u, v = R.parse("u"), R.parse("v")
    uv = R.mul(u, v)
    prob = SequenceProblem(R, (uv, v), Weight([1, 2]))
    cert = find_certificate(prob)
    assert isinstance(cert, DependenceCertificate)
    P = prob.poly_ring
    assert cert.f == parse_polynomial(P, "x1 - u*x2")
    assert cert.ini_part == parse_polynomial(P, "x1")
    assert check_certificate(cert, prob)

    swapped = SequenceProblem(R, (v, uv), Weight([1, 2]))
    assert not check_certificate(cert, swapped)
    res = find_certificate(swapped, SearchBudget(max_candidate_degree=8))
    assert isinstance(res, BudgetExhausted)
    assert res.to_json()["message"] == "no certificate up to budget"


def test_zero_and_unit_fast_paths():
    R = quv()
    cert = find_certificate(SequenceProblem(R, (R.parse("u"), R.zero), Lex()))
    assert cert.f.to_text() == "x2"
    cert = find_certificate(SequenceProblem(Z, (6, -1), Lex()))
    assert isinstance(cert, DependenceCertificate)
    assert evaluate(cert.f, [6, -1]) == 0
    # 1 lies in (6, 10, 15)
    prob = SequenceProblem(Z, (6, 10, 15), Weight([1, 1, 1]))
    cert = find_certificate(prob)
    assert cert.f.constant_coeff() == 1 and check_certificate(cert, prob)


def test_budget_report_fields():
    R = quv()
    res = find_certificate(SequenceProblem(R, (R.parse("u"), R.parse("v")), Lex()),
                           SearchBudget(max_candidate_degree=6, max_candidates=3))
    assert isinstance(res, BudgetExhausted)
    d = res.to_json()
    assert d["candidate_limit_hit"] is True and d["candidates_tried"] == 3
    assert d["result"] == "budget_exhausted"


def test_budget_validation():
    with pytest.raises(ValueError):
        SearchBudget(max_candidate_degree=5, upper_set_cap=3)
    with pytest.raises(ValueError):
        SearchBudget(max_candidates=0)


# -- explicit relations ---------------------------------------------------------------

def test_lombardi_relation_examples():
    rel = lombardi_lex_relation(Z, (4, 6))
    assert rel.exponents == (0, 2) and rel.coefficients == (-9, 0)
    assert rel.verify()
    rel = lombardi_lex_relation(Z, (-1, 10))
    assert rel.exponents == (0, 0) and 1 + rel.coefficients[0] * -1 == 0
    rel = lombardi_lex_relation(IntegersMod(12), (4,))
    assert rel.exponents == (1,) and rel.coefficients == (2,)
    assert (4 + 2 * 16) % 12 == 0


@settings(max_examples=300)
@given(st.integers(-10 ** 6, 10 ** 6).filter(bool), st.integers(-10 ** 6, 10 ** 6).filter(bool))
def test_lombardi_relation_on_random_integers(a, b):
    rel = lombardi_lex_relation(Z, (a, b), exponent_bound=64)
    assert rel is not None and rel.verify()
    n = rel.exponents[1]
    c, d = rel.coefficients
    assert rel.exponents[0] == 0
    # b^n + c a + d b^(n+1) = 0
    assert b ** n + c * a + d * b ** (n + 1) == 0
    assert check_certificate(rel.certificate(), SequenceProblem(Z, (a, b), Lex()))


def test_integer_pair_exponent():
    # every prime of 4 divides 6 once, and 4 = 2^2 needs 6^2
    assert integer_pair_exponent(4, 6) == 2
    assert integer_pair_exponent(5, 6) == 0
    assert integer_pair_exponent(8, 2) == 3


@settings(max_examples=200)
@given(st.integers(-10 ** 6, 10 ** 6).filter(bool), st.integers(-10 ** 6, 10 ** 6).filter(bool))
def test_homogeneous_relation_on_random_integers(a, b):
    cert = homogeneous_relation(Z, (a, b), (1, 1))
    assert cert is not None
    # a b = c a^2 + d b^2
    c = -cert.f.coeff((2, 0))
    d = -cert.f.coeff((0, 2))
    assert a * b == c * a * a + d * b * b
    assert check_certificate(cert, SequenceProblem(Z, (a, b), Weight([1, 1])))


# -- local probe -----------------------------------------------------------------

def test_analytic_probe():
    R = quv(["u*v", "u^2"], ["u", "v"])
    cert = analytic_independence_probe(R, [R.parse("u")])
    assert cert.f.to_text() == "x1^2"
    S = quv((), ["u", "v"])
    res = analytic_independence_probe(S, [S.parse("u"), S.parse("v")], SearchBudget(4))
    assert isinstance(res, BudgetExhausted)
    with pytest.raises(RingError):
        analytic_independence_probe(Z, [2])


# -- over a base ring ----------------------------------------------------------------

def test_number_ring_over_integers():
    N = NumberRing.multiquadratic([2, 3])
    a, b = N.parse("sqrt2"), N.parse("sqrt3")
    res = over_base_dependence(Z, N, [a, b], Lex(), SearchBudget(8))
    assert isinstance(res, DependenceCertificate)
    prob = SequenceProblem(N, (a, b), Lex(), base=Z)
    assert check_certificate(res, prob)
    (m, c), = res.ini_part.terms.items()
    assert m[0] == 0 and c in (1, -1)
    n = m[1]
    # b^n = a g + b^(n+1) h: every other term is divisible by x1 or by x2^(n+1)
    for mm in res.f.terms:
        if mm != m:
            assert mm[0] >= 1 or mm[1] >= n + 1


def test_field_algebra_relation():
    Q = Rationals()
    R = ring_from_json({"kind": "AffineQuotient", "field": "Q", "vars": ["u"], "ideal": []})
    u = R.parse("u")
    for p in (Lex(), Weight([1, 2]), Weight([3, 1])):
        res = over_base_dependence(Q, R, [u, R.mul(u, u)], p)
        assert isinstance(res, DependenceCertificate)
        assert check_certificate(res, SequenceProblem(R, (u, R.mul(u, u)), p, base=Q))


def test_base_equal_to_ring_is_ring_mode():
    a = find_certificate(SequenceProblem(Z, (4, 6), Lex(), base=Z))
    b = find_certificate(SequenceProblem(Z, (4, 6), Lex()))
    assert a.f == b.f


# -- verification -------------------------------------------------------------------

def test_mutated_certificates_fail():
    rng = random.Random(7)
    prob = SequenceProblem(Z, (4, 6), Lex())
    cert = find_certificate(prob)
    for _ in range(50):
        assert not check_certificate(perturb(cert, prob, rng), prob)


def test_certificate_json_round_trip():
    R = quv()
    prob = SequenceProblem(R, (R.parse("u*v"), R.parse("v")), Weight([1, 2]))
    cert = find_certificate(prob)
    back = certificate_from_json(cert.to_json(), prob)
    assert check_certificate(back, prob)
    bad = dict(cert.to_json(), f="x1 - u*x2 + x2")
    assert not check_certificate(certificate_from_json(bad, prob), prob)


@settings(max_examples=40, deadline=None)
@given(st.randoms(use_true_random=False))
def test_transform_transport(rnd):
    a = [rnd.choice([x for x in range(-30, 31) if x]) for _ in range(2)]
    shifted = (a[0] * a[0], a[1] * a[0])
    p = Transformed(Lex(), 1)
    prob = SequenceProblem(Z, shifted, p)
    cert = find_certificate(prob)
    assert isinstance(cert, DependenceCertificate)
    P = prob.poly_ring
    x1 = P.var(0)
    g = substitute(cert.f, [P.var(0) * x1, P.var(1) * x1])
    assert evaluate(g, a) == 0
    ini = ini_preorder(g, Lex())
    assert list(ini.terms.values()) == list(cert.ini_part.terms.values())
    assert check_certificate(DependenceCertificate(g, ini, next(iter(ini.terms)), cert.unit_coeff,
                                                   cert.unit_inverse), SequenceProblem(Z, tuple(a), Lex()))


@pytest.mark.parametrize("n", [4, 12, 30])
def test_zero_dimensional_singletons_all_dependent(n):
    R = IntegersMod(n)
    for x in range(1, n):
        for p in (Lex(), Weight([1]), Weight([3])):
            prob = SequenceProblem(R, (x,), p)
            cert = find_certificate(prob)
            assert isinstance(cert, DependenceCertificate) and check_certificate(cert, prob)


@settings(max_examples=25, deadline=None)
@given(st.randoms(use_true_random=False))
def test_certificates_in_finite_field_pairs(rnd):
    F = PrimeField(5)
    a = (rnd.randrange(5), rnd.randrange(5))
    prob = SequenceProblem(F, a, Weight([rnd.randint(1, 3), rnd.randint(1, 3)]))
    cert = find_certificate(prob)
    assert isinstance(cert, DependenceCertificate) and check_certificate(cert, prob)


# -- problem files ------------------------------------------------------------------------

def test_problem_from_json_modes():
    prob, budget = problem_from_json({"ring": {"kind": "Z"}, "elements": ["4", "6"],
                                      "preorder": {"type": "lex"}, "budget": {"max_candidate_degree": 3}})
    assert prob.elements == (4, 6) and budget.max_candidate_degree == 3
    prob, _ = problem_from_json({"ring": {"kind": "NumberRing", "sqrt": [2, 3]}, "mode": "over-base",
                                 "base": {"kind": "Z"}, "elements": ["sqrt2", "sqrt3"]})
    assert prob.over_base
    d = {"ring": {"kind": "AffineQuotient", "field": "Q", "vars": ["u", "v"], "ideal": []},
         "mode": "ideal", "ideal": ["u"], "elements": ["u^2", "u*v"]}
    prob, _ = problem_from_json(d)
    assert prob.s == 2
    with pytest.raises(ValueError, match="not in the ideal"):
        problem_from_json(dict(d, elements=["v"]))


@pytest.mark.parametrize("d,field", [
    ({"elements": ["1"]}, "ring"),
    ({"ring": {"kind": "Z"}, "elements": ["1 +"]}, "elements"),
    ({"ring": {"kind": "Z"}, "elements": ["1"], "preorder": {"type": "nope"}}, "preorder"),
    ({"ring": {"kind": "Z"}, "elements": ["1"], "mode": "other"}, "mode"),
    ({"ring": {"kind": "Z"}, "elements": ["1"], "budget": {"max_candidate_degree": -1}}, "budget"),
])
def test_problem_errors_name_the_field(d, field):
    with pytest.raises(ValueError, match=f"'{field}'"):
        problem_from_json(d)
