"""Acceptance suite: one test per criterion, one printed verdict line each.

Every check is an exact integer computation except criterion 9, which runs
the stated probabilistic specialisation checks on three logged seeds.
Criteria 2 and 7 assert the literal stated values; see the failure notes in
the assertion messages for what the engine actually computes.
"""

import itertools

import pytest

from chowcalc.catalog import get_presentation, run_check, space
from chowcalc.catalog import taut as T
from chowcalc.catalog import witnesses as W
from chowcalc.catalog.keel import Mu2Boundary, keel_rank_degree_one, wdvv_mu2_image
from chowcalc.catalog.replay import replay_localization
from chowcalc.config import load_config
from chowcalc.graphs import enumerate_stable_graphs
from chowcalc.linalg import LatticeBasis
from chowcalc.poly import MultiPoly

CFG = load_config()


def verdict(num: int, ok: bool, detail: str) -> None:
    print(f"criterion {num:02d} {'PASS' if ok else 'FAIL'}: {detail}")


def test_criterion_01_localization_replays():
    ok = True
    details = []
    for n in (1, 2, 3, 4):
        r = replay_localization(n, d_max=6)
        ok = ok and r.ok
        details.append(f"n={n}: {r.report}")
    verdict(1, ok, "; ".join(details))
    assert ok


def test_criterion_02_smith_form_fact():
    dmod = get_presentation("dM13")
    sp = space("M13")
    rows = [dmod.element(sp.boundary_image[k]) for k in ("p12", "p13")]
    _, grp = dmod.with_relations(rows).degree_slice(1)
    got = grp.isomorphism_type()
    ok = got == (2, (4,))
    verdict(2, ok, f"stated Z^2 + Z/4, computed {grp.describe()}")
    assert ok, (
        "the stated group is Z^2 + Z/4 but the quotient of the stored "
        f"presentation computes to {grp.describe()}; the Z/4 torsion and its "
        "order-4 generators match the stated ones, the free rank does not "
        "(see the decisions ledger)"
    )


def test_criterion_03_torsion_profile():
    r = run_check("m14.torsion", CFG)
    verdict(3, r.status == "pass", r.computed)
    assert r.status == "pass"


def test_criterion_04_getzler_uniqueness_and_vanishing():
    a6 = run_check("getzler.a6", CFG)
    van = run_check("getzler.vanish", CFG)
    ok = a6.status == "pass" and van.status == "pass"
    verdict(4, ok, f"a6 scan -> {a6.computed}; boundary image of the unit class -> {van.computed}")
    assert ok


def test_criterion_05_getzler_classical_form():
    r = run_check("getzler.classical", CFG)
    verdict(5, r.status == "pass", r.computed)
    assert r.status == "pass"


def test_criterion_06_order_facts():
    open_r = run_check("orders.lambda.open", CFG)
    bar_r = run_check("orders.lambda.bar", CFG)
    ok = open_r.status == "pass" and bar_r.status == "pass"
    verdict(6, ok, f"open: {open_r.computed}; compactified: order 24 through degree 6")
    assert ok


def test_criterion_07_discriminant_witness():
    F = W.discriminant_chain()
    ok = F.total_degree() == 9 and F.is_homogeneous() and len(F) == 126
    verdict(7, ok, f"degree={F.total_degree()} homogeneous={F.is_homogeneous()} terms={len(F)}")
    assert ok, (
        f"the chain yields a homogeneous degree-{F.total_degree()} polynomial "
        f"with {len(F)} terms; the stated count is 126 (every printed copy of "
        "the polynomial also has 127 terms -- see the decisions ledger)"
    )


def test_criterion_08_z40_witness_suite():
    results = {cid: run_check(cid, CFG) for cid in (
        "witness.z40.family",
        "witness.z40.monic",
        "witness.z40.inverse",
        "witness.z40.components",
        "witness.z40.q",
    )}
    ok = all(r.status == "pass" for r in results.values())
    verdict(8, ok, "; ".join(f"{k.split('.')[-1]}={v.status}" for k, v in results.items()))
    assert ok, {k: v.computed for k, v in results.items() if v.status != "pass"}


def test_criterion_09_valuations():
    seeds = [CFG.rng_seed + i for i in range(3)]
    n3 = [W.order_along_test_curve_n3(s, CFG.series_precision) for s in seeds]
    n4 = [W.order_along_test_curve_n4(s, CFG.series_precision) for s in seeds]
    ok = all(r.order == 6 for r in n3) and all(
        r.order == -12 and r.intermediate == 8 for r in n4
    )
    verdict(
        9,
        ok,
        f"seeds {seeds}: three-pointed orders {[r.order for r in n3]}, "
        f"four-pointed orders {[r.order for r in n4]} with numerator valuation "
        f"{[r.intermediate for r in n4]}",
    )
    assert ok


def test_criterion_10_keel_and_strata():
    ranks = {n: keel_rank_degree_one(n) for n in (4, 5, 6)}
    counts = {
        (0, 4): len(enumerate_stable_graphs(0, 4)),
        (1, 1): len(enumerate_stable_graphs(1, 1)),
        (1, 2): len(enumerate_stable_graphs(1, 2)),
    }
    frees = {n: wdvv_mu2_image(n)[2] for n in (4, 5, 6)}
    psi_ok = run_check("psi.path", CFG).status == "pass"
    ok = (
        ranks == {4: 1, 5: 5, 6: 16}
        and counts == {(0, 4): 4, (1, 1): 2, (1, 2): 5}
        and all(frees.values())
        and psi_ok
    )
    verdict(10, ok, f"ranks {ranks}, counts {counts}, free families {frees}, psi paths agree: {psi_ok}")
    assert ok


def test_criterion_11_class_ledger():
    wt = run_check("sec9.wtilde", CFG)
    v = run_check("sec9.v", CFG)
    ok = wt.status == "pass" and v.status == "pass"
    verdict(11, ok, f"boundary class: {wt.computed}; five-pointed class: {v.computed}")
    assert ok


def test_criterion_12_higher_chow_transport():
    transport = run_check("higher.m14.transport", CFG)
    tsum = run_check("higher.m14.tsum", CFG)
    d4 = run_check("action.d4", CFG)
    ok = all(r.status == "pass" for r in (transport, tsum, d4))
    verdict(
        12,
        ok,
        "stored relations map to zero (pairing relation carries the recorded "
        f"unit-class correction, see ledger); D4 ideal transports: {d4.computed}",
    )
    assert ok, {r.check: r.computed for r in (transport, tsum, d4) if r.status != "pass"}


def test_criterion_13_property_suites():
    from propsuites import (
        run_normal_form_suite,
        run_parser_suite,
        run_pushout_suite,
        run_snf_suite,
    )

    counts = {
        "smith": run_snf_suite(1000),
        "pushout": run_pushout_suite(1000),
        "normal_form": run_normal_form_suite(1000),
        "parser": run_parser_suite(1000),
    }
    ok = all(v >= 1000 for v in counts.values())
    verdict(13, ok, f"randomized instances per suite: {counts}")
    assert ok
