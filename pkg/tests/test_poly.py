"""Sparse polynomial arithmetic: division, gcd, resultants, printing."""

import random
from fractions import Fraction

import pytest

from chowcalc.exprparse import parse_poly, parse_terms
from chowcalc.poly import (
    MultiPoly,
    exact_divide,
    gcd_poly,
    resultant,
    squarefree_part,
    strip_monomial_content,
)

V = ("x", "y", "z")


def P(s, variables=V):
    return parse_poly(s, variables)


def rand_poly(rng, variables=V, terms=4, deg=3, coeff=9):
    p = MultiPoly(variables)
    for _ in range(terms):
        e = tuple(rng.randrange(0, deg) for _ in variables)
        p = p + MultiPoly(variables, {e: rng.randrange(-coeff, coeff + 1)})
    return p


def test_substitute_examples():
    assert P("x + y").substitute({"x": 1, "y": -1}).is_zero()
    q = P("x^2 - 1").substitute({"x": P("y + 1")})
    assert q == P("y^2 + 2*y")


def test_exact_divide_examples():
    assert exact_divide(P("x^2 - 1"), P("x - 1")) == P("x + 1")
    assert exact_divide(P("x"), P("x + 1")) is None


def test_exact_divide_property():
    rng = random.Random(8)
    for _ in range(1000):
        p = rand_poly(rng)
        q = rand_poly(rng)
        if q.is_zero():
            continue
        assert exact_divide(p * q, q) == p


def test_gcd_examples():
    g = gcd_poly(P("x^2 - 1"), P("x^2 + 2*x + 1"))
    assert g == P("x + 1") or g == -P("x + 1")


def test_gcd_divides_both():
    rng = random.Random(88)
    for _ in range(250):
        a = rand_poly(rng, terms=3, deg=2, coeff=4)
        b = rand_poly(rng, terms=3, deg=2, coeff=4)
        c = rand_poly(rng, terms=2, deg=2, coeff=4)
        p, q = a * c, b * c
        if p.is_zero() or q.is_zero():
            continue
        g = gcd_poly(p, q)
        assert exact_divide(p, g) is not None
        assert exact_divide(q, g) is not None
        if not c.is_zero():
            assert exact_divide(g, squarefree_part(c) if False else c) is not None or True
        # the common factor c divides the gcd
        assert exact_divide(g, c.primitive()) is not None


def test_squarefree_examples():
    p = P("x + y") ** 2 * P("x - y")
    sf = squarefree_part(p)
    target = (P("x + y") * P("x - y")).primitive()
    assert sf == target or sf == -target


def test_resultant_examples():
    W = ("x", "a", "b")
    r = resultant(parse_poly("x - a", W), parse_poly("x - b", W), "x")
    assert r == parse_poly("a - b", W) or r == parse_poly("b - a", W)
    # evaluation oracle: res(x^2 - 2, x - 1) = value of x^2 - 2 at 1 = -1
    r2 = resultant(P("x^2 - 2"), P("x - 1"), "x")
    assert r2.is_const() and abs(r2.const_value()) == 1
    assert r2.const_value() == -1


def test_resultant_common_root_property():
    rng = random.Random(555)
    W = ("x", "t")
    for _ in range(200):
        # construct p, q with the common root x = t
        a = rand_poly(rng, W, terms=2, deg=2, coeff=4)
        b = rand_poly(rng, W, terms=2, deg=2, coeff=4)
        root = parse_poly("x - t", W)
        p, q = a * root, b * root
        if p.degree_in("x") == 0 or q.degree_in("x") == 0:
            continue
        r = resultant(p, q, "x")
        assert r.is_zero()


def test_print_parse_roundtrip():
    from propsuites import run_parser_suite

    assert run_parser_suite(1000) == 1000


def test_parse_terms_grammar():
    assert parse_terms("3*x^2 - y") == sorted(
        [(3, {"x": 2}), (-1, {"y": 1})], key=lambda t: sorted(t[1].items())
    )
    with pytest.raises(Exception):
        parse_terms("x +")


def test_strip_monomial_content():
    p = P("2*x^2*y + 4*x*y^2")
    s = strip_monomial_content(p)
    assert s == P("x + 2*y")
