"""Graded modules, rings, slices, assembly and comparisons."""

import random

import pytest

from chowcalc.exprparse import parse_poly
from chowcalc.grading import (
    A_RING,
    LAMBDA_RING,
    GradedModule,
    GradedRing,
    HomogeneityError,
    assemble_extension,
    compare_presentations,
)
from chowcalc.poly import MultiPoly


def lambda_mod(relations):
    m = GradedModule(LAMBDA_RING, [("one", 0)])
    return m.with_relations([m.element(r) for r in relations])


def test_degree_slice_examples():
    m = lambda_mod(["12*l*one"])
    _, g0 = m.degree_slice(0)
    assert g0.isomorphism_type() == (1, ())
    _, g1 = m.degree_slice(1)
    assert g1.isomorphism_type() == (0, (12,))

    a1 = GradedModule(A_RING, [("one", 0)])
    _, g3 = a1.degree_slice(3)
    assert g3.isomorphism_type() == (0, (24,))


def test_degree_slice_boundary_module():
    dm = GradedModule(A_RING, [("de", 0), ("phi", 0), ("th", 1)])
    dm = dm.with_relations([dm.element("2*l*phi"), dm.element("2*th - 24*l*de")])
    labels, g1 = dm.degree_slice(1)
    assert g1.isomorphism_type() == (1, (2, 2))
    assert labels == ("l*de", "l*phi", "th")


def test_assemble_extension_trivial_left():
    L = GradedModule(LAMBDA_RING, [])
    N = lambda_mod(["12*l*one"])
    M = assemble_extension(L, N, [L.element("0*one") if False else _zero(L)])
    for d in range(4):
        assert M.degree_slice(d)[1].isomorphism_type() == N.degree_slice(d)[1].isomorphism_type()


def _zero(L):
    from chowcalc.grading import GradedElement

    return GradedElement.make(L, 0, {})


def test_assemble_extension_nodal_cubic():
    # A<phi>/<2 l phi> extended by Lambda<one>/<12 l one> along 12l |-> phi
    # is degreewise the ring Z[l]/(24 l^2)
    L = GradedModule(A_RING, [("phi", 0)])
    L = L.with_relations([L.element("2*l*phi")]).shift(1)
    N = lambda_mod(["12*l*one"])
    M = assemble_extension(L, N, [L.element("phi")])
    ring = GradedRing([("l", 1)], [parse_poly("24*l^2", ("l",))])
    rep = compare_presentations(M, ring, {"one": "1", "phi": "12*l"}, 6)
    assert rep.ok
    # finiteness multiplicativity: |M_d| = |L_d| * |N_d| where both finite
    for d in range(2, 6):
        lo = L.degree_slice(d)[1].order()
        no = N.degree_slice(d)[1].order()
        mo = M.degree_slice(d)[1].order()
        assert lo is not None and no is not None and mo == lo * no


def test_assemble_extension_rejects_inhomogeneous_lift():
    L = GradedModule(A_RING, [("phi", 0)]).shift(1)
    N = lambda_mod(["12*l*one"])
    bad = L.element("l*phi")  # degree 2, relation has degree 1
    with pytest.raises(HomogeneityError):
        assemble_extension(L, N, [bad])


BM12 = None


def bm12():
    global BM12
    if BM12 is None:
        V = ("l", "de")
        BM12 = GradedRing(
            [("l", 1), ("de", 1)],
            [parse_poly("24*l^2", V), parse_poly("de^2 + l*de", V)],
        )
    return BM12


def test_ring_normal_form_examples():
    r = bm12()
    x = r.poly("de")
    assert r.normal_form(x) == x
    assert str(r.normal_form("de^2")) == "-l*de"
    # theta = 12 l de + 12 l^2 reduces its own defining combination to zero
    ok, cert = r.reduces_to_zero("12*l*de + 12*l^2 - 12*l*de - 12*l^2")
    assert ok
    with pytest.raises(HomogeneityError):
        r.normal_form("de + l^2")


def test_ring_reduces_to_zero_certificate():
    r = bm12()
    expr = r.poly("2*de^2 + 2*l*de")
    ok, cert = r.reduces_to_zero(expr)
    assert ok and cert
    total = MultiPoly(r.gen_names)
    for q, row in cert:
        total = total + row * q
    assert total == expr


def test_ring_nonzero_with_order():
    ring = GradedRing([("l", 1)], [parse_poly("12*l", ("l",))])
    ok, _ = ring.reduces_to_zero("l")
    assert not ok
    assert ring.element_order("l") == 12


def test_normal_form_property_suite():
    """Idempotence, quotient additivity, and compatibility with
    multiplication by l, on >= 1000 randomized slices."""
    from propsuites import run_normal_form_suite

    assert run_normal_form_suite(1000) == 1000


def test_compare_presentations_identity_and_dropped_relation():
    r = bm12()
    corr = {name: name for name in r.gen_names}
    assert compare_presentations(r, r, corr, 4).ok
    V = ("l", "de")
    weaker = GradedRing([("l", 1), ("de", 1)], [parse_poly("24*l^2", V)])
    rep = compare_presentations(weaker, r, corr, 4)
    assert not rep.ok
    assert rep.first_failure().degree == 2


def test_module_element_parsing():
    dm = GradedModule(A_RING, [("de", 0), ("th", 1)])
    e = dm.element("2*th - 24*l*de")
    assert e.degree == 1
    with pytest.raises(HomogeneityError):
        dm.element("th + de")
    with pytest.raises(Exception):
        dm.element("th^2")
