"""Catalog presentations, tautological operations and fast registry checks."""

import itertools

import pytest

from chowcalc.catalog import get_presentation, known_space_ids, run_check, space
from chowcalc.catalog import taut as T
from chowcalc.catalog.keel import build_keel, wdvv_mu2_image
from chowcalc.catalog.spaces import delta_graph, phi_graph, theta_graph
from chowcalc.grading import GradedModule, GradedRing
from chowcalc.poly import MultiPoly


def test_all_presentations_parse_and_are_homogeneous():
    for sid in known_space_ids():
        pres = get_presentation(sid)
        assert isinstance(pres, (GradedRing, GradedModule))
        # slices are computable through degree 4 at least
        for d in range(0, 3):
            pres.degree_slice(d)


def test_stored_images_are_normal_formable():
    for n, keys in ((2, ("p",)), (3, ("p12", "p13", "p23", "f"))):
        dmod = get_presentation(f"dM1{n}")
        sp = space(f"M1{n}")
        for k in keys:
            expr = sp.boundary_image[k]
            if expr.strip() == "0":
                continue
            e = dmod.element(expr)
            dmod.normal_form(e)


def test_presentation_examples():
    m11 = get_presentation("M11")
    assert m11.element_order("l") == 12
    bm12 = get_presentation("bM12")
    assert str(bm12.normal_form("de^2")) == "-l*de"
    bm13 = get_presentation("bM13")
    assert bm13.normal_form("d1*d2").is_zero()
    y12 = get_presentation("Y12")
    assert y12.element_order("l") == 4


def test_keel_degree_one_ranks():
    for n, expect in ((4, 1), (5, 5), (6, 16)):
        _, grp = get_presentation(f"K0{n}").degree_slice(1)
        assert grp.isomorphism_type() == (expect, ())


def test_wdvv_families():
    for n, size in ((4, 1), (5, 3), (6, 6)):
        _, fam, free = wdvv_mu2_image(n)
        assert len(fam) == size and free


def test_psi_values():
    assert str(T.psi_ring(1, 1, 1)) == "l"
    assert T.psi_ring(0, 3, 1).is_zero()
    k4 = get_presentation("K04")
    assert k4.normal_form(T.psi_ring(0, 4, 1) - k4.poly("D14")).is_zero()
    bm12 = get_presentation("bM12")
    assert bm12.normal_form(T.psi_ring(1, 2, 1) - bm12.poly("l + de")).is_zero()


def test_divisor_pullback_table_n3():
    tab = T.divisor_pullback_table(3, frozenset({2}))
    got = {k: str(v) for k, v in tab.items()}
    assert got == {"l": "l", "de": "de", "d1": "0", "d2": "-l - de", "d3": "0"}


def test_excess_self_intersection():
    # on the two-pointed space the self-intersection is pure excess -l de
    lhs = T.product_in_ring(1, 2, delta_graph(2, frozenset()), delta_graph(2, frozenset()))
    assert str(lhs) == "-l*de"


def test_gluing_pushforward_tables_n2():
    dm12 = get_presentation("dM12")
    g, s = T.phi_glued(2, {"1", "a"}, {"2", "b"})
    assert T.gluing_pushforward(2, g, s) == dm12.element("2*th")
    g, s = T.phi_glued(2, {"1", "2"}, {"a", "b"})
    assert T.gluing_pushforward(2, g, s) == dm12.element("12*l*de")


def test_gluing_pushforward_tables_n3():
    dm13 = get_presentation("dM13")
    cases = [
        ({"1", "a"}, {"2", "3", "b"}, "2*th1"),
        ({"a", "b"}, {"1", "2", "3"}, "12*l*de"),
        ({"1", "2"}, {"3", "a", "b"}, "12*l*d3"),
    ]
    for A, B, expected in cases:
        g, s = T.phi_glued(3, A, B)
        assert T.gluing_pushforward(3, g, s) == dm13.element(expected)
    g, s = T.theta_j_glued(3, 1, {"2", "a"}, {"3", "b"})
    assert T.gluing_pushforward(3, g, s) == dm13.element("24*l*de_s")
    g, s = T.theta_j_glued(3, 1, {"2", "3"}, {"a", "b"})
    assert T.gluing_pushforward(3, g, s) == dm13.element("12*l*de_s + 12*l^2*d1")


def test_gluing_pushforward_tables_n4():
    dm14 = get_presentation("dM14")
    cases = [
        ({"1", "2", "a", "b"}, {"3", "4"}, "12*l*d12"),
        ({"1", "a", "b"}, {"2", "3", "4"}, "12*l*d1"),
        ({"a", "b"}, {"1", "2", "3", "4"}, "12*l*de"),
        ({"1", "a"}, {"2", "3", "4", "b"}, "2*th1"),
        ({"1", "2", "a"}, {"3", "4", "b"}, "2*th12_34"),
    ]
    for A, B, expected in cases:
        g, s = T.phi_glued(4, A, B)
        assert T.gluing_pushforward(4, g, s) == dm14.element(expected)


def test_forgetful_pullback_examples():
    dm12 = get_presentation("dM12")
    assert str(T.forgetful_pullback_module(2, dm12.element("de"))) == "de + d3"
    assert str(T.forgetful_pullback_module(2, dm12.element("th"))) == "th1 + th2"


def test_class_of_omega_and_sigma():
    bm13 = get_presentation("bM13")
    omega = T.class_in_ring(1, 3, parse_omega_n3())
    assert bm13.normal_form(omega - bm13.poly("24*l*de*d1")).is_zero()


def parse_omega_n3():
    from chowcalc.graphs import StableGraph

    return StableGraph.make([0, 0, 0], [0, 1, 2], [(0, 1), (1, 2), (0, 2)])


def test_fast_registry_checks_pass():
    for cid in (
        "replay.bm11",
        "replay.bm12",
        "replay.bm13",
        "dm13.variant",
        "m14.torsion",
        "getzler.vanish",
        "getzler.a6",
        "getzler.classical",
        "orders.lambda.open",
        "keel.ranks",
        "strata.counts",
        "psi.path",
        "wdvv.free",
        "wdvv.alpha",
        "wdvv.push.dm12",
        "wdvv.push.dm13",
        "pullback.xi_d2",
        "pullback.xi_d14",
        "transport.p.n3",
        "transport.p.n4",
        "action.s4",
        "action.d4",
        "sec9.wtilde",
        "sec9.v",
        "sec9.vpush",
        "sec9.what",
        "sec9.assembly",
        "higher.m14.tsum",
        "noop",
    ):
        report = run_check(cid)
        assert report.status == "pass", (cid, report.computed)


def test_report_schema():
    r = run_check("noop")
    d = r.to_dict()
    assert set(d) == {"check", "status", "expected", "computed", "paper_ref", "ms"}
    assert d["status"] in ("pass", "fail", "skipped")
    assert isinstance(d["ms"], float) or isinstance(d["ms"], int)


def test_unknown_ids_rejected():
    with pytest.raises(KeyError):
        get_presentation("XYZ")
    with pytest.raises(KeyError):
        run_check("no.such.check")
