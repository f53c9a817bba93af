from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from krulldep.parsing import ParseError
from krulldep.poly import (PolyRing, evaluate, ini_preorder, ini_w, monomials_of_degree,
                           monomials_up_to, parse_polynomial, substitute, weighted_degree)
from krulldep.preorders import Lex, Weight
from krulldep.rings import Integers, IntegersMod, Rationals, ring_from_json

Z = Integers()
QUV = ring_from_json({"kind": "AffineQuotient", "field": "Q", "vars": ["u", "v"], "ideal": []})


def zx(n=2):
    return PolyRing(Z, [f"x{i + 1}" for i in range(n)])


@pytest.mark.parametrize("m,w,expected", [
    ((1, 1), (1, 2), 3),
    ((0, 0), (1, 2), 0),
    ((2, 0), (1, 2), 2),
])
def test_weighted_degree(m, w, expected):
    assert weighted_degree(m, w) == expected


def test_ini_w_examples():
    P = PolyRing(QUV, ["x1", "x2"])
    assert ini_w(parse_polynomial(P, "x1 - u*x2"), (1, 2)) == parse_polynomial(P, "x1")
    f = parse_polynomial(zx(), "x1*x2 + 3*x1^2 + 5*x2^2")
    assert ini_w(f, (1, 1)) == f
    h = parse_polynomial(zx(), "x1^2 + x2")
    assert ini_w(h, (1, 2)) == h


def test_ini_preorder_examples():
    P = zx()
    f = parse_polynomial(P, "x2^2 - 7*x1 - 11*x2^3")
    assert ini_preorder(f, Lex()) == parse_polynomial(P, "x2^2")
    g = parse_polynomial(P, "x1 + x2")
    assert ini_preorder(g, Weight([1, 1])) == g


@settings(max_examples=100)
@given(st.randoms(use_true_random=False), st.lists(st.integers(1, 4), min_size=2, max_size=2))
def test_ini_preorder_weight_equals_ini_w(rnd, w):
    P = zx()
    f = P.random_element(rnd, degree=4, terms=5)
    if not f.terms:
        return
    assert ini_preorder(f, Weight(w)) == ini_w(f, w)


def test_evaluate_examples():
    P = PolyRing(QUV, ["x1", "x2"])
    f = parse_polynomial(P, "x1 - u*x2")
    assert QUV.is_zero(evaluate(f, [QUV.parse("u*v"), QUV.parse("v")]))
    assert not QUV.is_zero(evaluate(f, [QUV.parse("v"), QUV.parse("u*v")]))
    c = P.constant(QUV.parse("u + 3"))
    assert evaluate(c, [QUV.parse("v"), QUV.parse("v")]) == QUV.parse("u + 3")
    R12 = IntegersMod(12)
    g = parse_polynomial(PolyRing(R12, ["x1"]), "x1^2 - x1")
    assert evaluate(g, [4]) == 0


@settings(max_examples=100)
@given(st.randoms(use_true_random=False))
def test_evaluation_is_a_ring_homomorphism(rnd):
    P = zx(3)
    f = P.random_element(rnd, degree=3)
    g = P.random_element(rnd, degree=3)
    a = [rnd.randint(-9, 9) for _ in range(3)]
    assert evaluate(f + g, a) == evaluate(f, a) + evaluate(g, a)
    assert evaluate(f * g, a) == evaluate(f, a) * evaluate(g, a)


def test_substitute_matches_evaluation():
    P = zx()
    f = parse_polynomial(P, "x1^2*x2 - 3*x2 + 1")
    g = substitute(f, [parse_polynomial(P, "x1*x2"), parse_polynomial(P, "x2^2")])
    for a, b in [(1, 2), (-3, 5), (0, 7)]:
        assert evaluate(g, [a, b]) == evaluate(f, [a * b, b * b])


def test_text_round_trip():
    P = PolyRing(Rationals(), ["x1", "x2"])
    for t in ["x1^2 - 1/2*x2", "0", "-x1*x2 + 3", "x2^5"]:
        f = parse_polynomial(P, t)
        assert parse_polynomial(P, f.to_text()) == f
    assert parse_polynomial(P, "(x1 + x2)^2") == parse_polynomial(P, "x1^2 + 2*x1*x2 + x2^2")


def test_parse_errors_report_position():
    with pytest.raises(ParseError) as exc:
        parse_polynomial(zx(), "x1 + $")
    assert exc.value.position == 5
    with pytest.raises((ParseError, ValueError)):
        parse_polynomial(zx(), "x3")


def test_monomial_enumeration():
    assert list(monomials_of_degree(2, 2)) == [(0, 2), (1, 1), (2, 0)]
    assert len(list(monomials_up_to(3, 2))) == 10
    assert list(monomials_of_degree(3, 0)) == [(0, 0, 0)]


def test_arithmetic_over_zmod_drops_zero_terms():
    P = PolyRing(IntegersMod(4), ["x1"])
    f = parse_polynomial(P, "2*x1 + 1")
    assert f * f == parse_polynomial(P, "1")  # 4x^2 + 4x + 1
    assert (f - f).terms == {}


def test_rational_coefficients():
    P = PolyRing(Rationals(), ["x1"])
    f = parse_polynomial(P, "1/3*x1")
    assert evaluate(f, [Fraction(3)]) == 1
