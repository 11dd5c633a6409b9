"""The verification registry: every stored fact gets a named, runnable check.

Each check returns (status, expected, computed); `run_check` wraps that in a
timed report carrying the provenance tag of the fact it verifies.  Checks
are pure and independent, so `run_all` may execute them in any order; the
report list is always emitted in registry order.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from ..config import Config, default_config
from ..grading import GradedElement, GradedModule, PermutationAction
from ..graphs import StableGraph, automorphism_group, enumerate_stable_graphs
from ..linalg import LatticeBasis
from ..poly import MultiPoly, exact_divide
from . import taut as T
from . import witnesses as W
from .keel import Mu2Boundary, build_keel, keel_rank_degree_one, wdvv_mu2_image
from .replay import replay_localization
from .spaces import (
    delta_graph,
    gen_graph_table,
    get_presentation,
    graph_to_gen_name,
    phi_graph,
    space,
    theta_graph,
)


@dataclass
class CheckReport:
    check: str
    status: str  # pass | fail | skipped
    expected: str
    computed: str
    paper_ref: str
    ms: float

    def to_dict(self) -> dict:
        return {
            "check": self.check,
            "status": self.status,
            "expected": self.expected,
            "computed": self.computed,
            "paper_ref": self.paper_ref,
            "ms": round(self.ms, 2),
        }


_REGISTRY: dict[str, tuple[str, Callable[[Config], tuple[bool, str, str]]]] = {}


def _register(check_id: str, ref: str):
    def deco(fn):
        _REGISTRY[check_id] = (ref, fn)
        return fn

    return deco


def known_checks() -> list[str]:
    return list(_REGISTRY)


def run_check(check_id: str, config: Optional[Config] = None) -> CheckReport:
    if check_id not in _REGISTRY:
        raise KeyError(f"unknown check {check_id!r}")
    ref, fn = _REGISTRY[check_id]
    cfg = config or default_config()
    start = time.perf_counter()
    try:
        ok, expected, computed = fn(cfg)
        status = "pass" if ok else "fail"
    except NotImplementedError as exc:
        status, expected, computed = "skipped", "", str(exc)
    ms = (time.perf_counter() - start) * 1000.0
    return CheckReport(check_id, status, expected, computed, ref, ms)


def run_all(filter_prefix: Optional[str] = None, config: Optional[Config] = None) -> list[CheckReport]:
    out = []
    for check_id in _REGISTRY:
        if filter_prefix and not check_id.startswith(filter_prefix):
            continue
        out.append(run_check(check_id, config))
    return out


# ---------------------------------------------------------------------------
# helpers
# ---------------------------------------------------------------------------

def _dmod(n: int) -> GradedModule:
    return get_presentation(f"dM1{n}")  # type: ignore[return-value]


def _to_ring(n: int, elt: GradedElement) -> MultiPoly:
    ring = get_presentation(f"bM1{n}")
    corr = space(f"bM1{n}").correspondence
    module = elt.module
    lam = MultiPoly.var(ring.gen_names, "l")
    out = MultiPoly(ring.gen_names)
    for i, c in elt.coeffs:
        name = module.gen_names[i]
        k = elt.degree - module.gen_degrees[i]
        out = out + corr[name] * lam ** k * c
    return out


def _s4_action(n: int) -> PermutationAction:
    dmod = _dmod(n)
    gtab = gen_graph_table(n)

    def table(sigma: dict[int, int]):
        out = {}
        for name in dmod.gen_names:
            if name == "phi":
                out[name] = "phi"
                continue
            moved = gtab[name][0].rename_markings(sigma)
            out[name] = graph_to_gen_name(n, moved)
        return out

    def perm_tuple(sigma: dict[int, int]):
        return tuple(sigma.get(i, i) for i in range(1, n + 1))

    gens = []
    for i in range(1, n):
        gens.append({i: i + 1, i + 1: i})
    return PermutationAction(dmod, {perm_tuple(s): table(s) for s in gens})


def _type_str(t: tuple[int, tuple[int, ...]]) -> str:
    rank, tors = t
    bits = []
    if rank == 1:
        bits.append("Z")
    elif rank > 1:
        bits.append(f"Z^{rank}")
    bits.extend(f"Z/{d}" for d in tors)
    return " + ".join(bits) if bits else "0"


def _push_mu2_vector(n_marks: int, bd: Mu2Boundary, vec: dict[int, int]) -> GradedElement:
    """Push an orbit-class vector on the one-loop stratum source into the
    boundary module of the (1, n_marks) space."""
    total = None
    for idx, coeff in sorted(vec.items()):
        size, marks = bd.orbits[idx]
        A = set(marks)
        B = set(bd.marks) - A
        g, special = T.phi_glued(n_marks, A, B)
        piece = T.gluing_pushforward(n_marks, g, special).scale(coeff)
        total = piece if total is None else total + piece
    assert total is not None
    return total


# ---------------------------------------------------------------------------
# localization replays
# ---------------------------------------------------------------------------

for _n in (1, 2, 3, 4):

    def _mk(n):
        def fn(cfg: Config):
            r = replay_localization(n, d_max=cfg.max_degree)
            return r.ok, f"match through degree {cfg.max_degree}", str(r.report)

        return fn

    _register(f"replay.bm1{_n}", f"barM1{_n}")(_mk(_n))


@_register("dm13.variant", "boundarybarM13")
def _dm13_variant(cfg: Config):
    resolved = replay_localization(3, d_max=min(cfg.max_degree, 4)).ok
    stmt = replay_localization(3, d_max=min(cfg.max_degree, 4), variant="dM13stmt").ok
    # the downstream Smith form: torsion part of degree one mod the images
    def torsion(variant):
        dmod = get_presentation("dM13" if variant is None else variant)
        sp = space("M13")
        rows = [dmod.element(sp.boundary_image[k]) for k in ("p12", "p13")]
        _, grp = dmod.with_relations(rows).degree_slice(1)
        return grp.isomorphism_type()[1]

    t_res, t_stmt = torsion(None), torsion("dM13stmt")
    ok = resolved and not stmt and t_res == (4,)
    return (
        ok,
        "coefficient 24 (the proof's) replays; the statement's 2 does not",
        f"24: replay={resolved}, torsion={t_res}; 2: replay={stmt}, torsion={t_stmt}",
    )


# ---------------------------------------------------------------------------
# Smith-form facts
# ---------------------------------------------------------------------------

@_register("m13.snf", "higherChowImM13")
def _m13_snf(cfg: Config):
    dmod = _dmod(3)
    sp = space("M13")
    rows = [dmod.element(sp.boundary_image[k]) for k in ("p12", "p13")]
    _, grp = dmod.with_relations(rows).degree_slice(1)
    got = grp.isomorphism_type()
    return got == (2, (4,)), "Z^2 + Z/4", _type_str(got)


@_register("m13.snf.torsion", "higherChowImM13")
def _m13_snf_torsion(cfg: Config):
    dmod = _dmod(3)
    sp = space("M13")
    rows = [dmod.element(sp.boundary_image[k]) for k in ("p12", "p13")]
    _, grp = dmod.with_relations(rows).degree_slice(1)
    rank, tors = grp.isomorphism_type()
    ok = tors == (4,)
    return ok, "unique torsion Z/4; order-4 classes +-(th1 + 6l(d1-de-d2-d3))", _type_str((rank, tors))


@_register("m14.torsion", "higherChowImM14")
def _m14_torsion(cfg: Config):
    dmod = _dmod(4)
    sp = space("dM14")
    q = dmod.with_relations([sp.classes["eps"].scale(2)])
    labels, grp = q.degree_slice(1)

    def order(elt):
        vec = [0] * len(labels)
        for p, c in q.slice_vector(elt, 1).items():
            vec[p] = c
        return grp.element_order(vec)

    got = {}
    for a, b in itertools.combinations(range(1, 5), 2):
        got[f"tau{a}{b}"] = order(sp.classes[f"tau{a}{b}"])
        got[f"ups{a}{b}"] = order(sp.classes[f"ups{a}{b}"])
    got["eps"] = order(sp.classes["eps"])
    got["kap"] = order(sp.classes["kap"])
    ok = all(v == 2 for k, v in got.items() if k != "kap") and got["kap"] == 12
    return ok, "tau, ups, eps of order 2; kap of order 12", str(got)


# ---------------------------------------------------------------------------
# Getzler checks
# ---------------------------------------------------------------------------

@_register("getzler.vanish", "Getzler")
def _getzler_vanish(cfg: Config):
    sp = space("dM14")
    ring = get_presentation("bM14")
    img = ring.normal_form(_to_ring(4, sp.classes["getzler"]))
    ok = img.is_zero() and sp.classes["getzler"] == sp.classes["eps"].scale(2)
    return ok, "0", str(img)


@_register("getzler.a6", "last")
def _getzler_a6(cfg: Config):
    dmod = _dmod(4)
    rel_rows = dmod.slice_rows(1)
    labels = dmod.slice_labels(1)
    ncols = len(labels)

    dense = [[Fraction(r.get(j, 0)) for j in range(ncols)] for r in rel_rows]
    piv: dict[int, list[Fraction]] = {}
    for row in dense:
        row = row[:]
        for c, pr in piv.items():
            if row[c]:
                f = row[c]
                row = [x - f * y for x, y in zip(row, pr)]
        nzc = next((i for i, x in enumerate(row) if x), None)
        if nzc is not None:
            row = [x / row[nzc] for x in row]
            piv[nzc] = row

    def torsion(vec: dict[int, int]) -> bool:
        t = [Fraction(vec.get(j, 0)) for j in range(ncols)]
        for c, pr in piv.items():
            if t[c]:
                f = t[c]
                t = [x - f * y for x, y in zip(t, pr)]
        return all(x == 0 for x in t)

    good = []
    base = dmod.element("24*l*d14 - 24*l*d13 + 24*l*d23 - 24*l*d24")
    step = dmod.element("th14_23 - th13_24")
    for a6 in range(24):
        vec = dmod.slice_vector(base + step.scale(a6), 1)
        if torsion(vec):
            good.append(a6)
    return good == [4], "exactly a6 = 4", str(good)


@_register("getzler.classical", "barM14 torsion remark")
def _getzler_classical(cfg: Config):
    ring = get_presentation("bM14")
    sp = space("bM14")
    total = MultiPoly(ring.gen_names)
    for part in ("12_34", "13_24", "14_23"):
        total = total + sp.correspondence[f"th{part[:2]}_{part[3:]}"] * 2
    boundary = (
        ring.poly("12*l*de + 12*l*d1 + 12*l*d2 + 12*l*d3 + 12*l*d4")
        - sp.classes["dhat_r"] * 12
    )
    diff = ring.normal_form(total - boundary)
    tw = ring.normal_form(ring.poly("12*l^2"))
    order = ring.element_order("12*l^2")
    ok = diff == tw and not tw.is_zero() and order == 2
    return ok, "12*l^2, nonzero of order 2", f"{diff}, order {order}"


# ---------------------------------------------------------------------------
# order facts
# ---------------------------------------------------------------------------

@_register("orders.lambda.open", "Order 12")
def _orders_open(cfg: Config):
    got = {}
    for n in (1, 2, 3, 4):
        ring = get_presentation(f"M1{n}")
        got[n] = ring.element_order("l")
    ok = all(v == 12 for v in got.values())
    return ok, "order 12 for n = 1..4", str(got)


@_register("orders.lambda.bar", "Order 12")
def _orders_bar(cfg: Config):
    got = {}
    ok = True
    for n in (1, 2, 3, 4):
        for d in range(2, min(cfg.max_degree, 6) + 1):
            o = get_presentation(f"bM1{n}").element_order(f"l^{d}")
            got[f"n{n}.d{d}"] = o
            ok = ok and o == 24
    return ok, "order 24 for d = 2..6, n = 1..4", str(got)


@_register("orders.slices.finite", "barM11-barM14")
def _orders_finite(cfg: Config):
    ok = True
    got = []
    for n in (1, 2, 3, 4):
        ring = get_presentation(f"bM1{n}")
        for d in range(n + 1, min(cfg.max_degree, 6) + 1):
            rank = ring.slice_type(d)[0]
            got.append(f"n{n}.d{d}:rank{rank}")
            ok = ok and rank == 0
    return ok, "every slice above degree n is finite", "; ".join(got)


# ---------------------------------------------------------------------------
# polynomial witnesses
# ---------------------------------------------------------------------------

@_register("witness.F", "family discriminant")
def _witness_f(cfg: Config):
    F = W.discriminant_chain()
    ok = F.total_degree() == 9 and F.is_homogeneous() and len(F) == 126
    return ok, "degree=9 terms=126", f"degree={F.total_degree()} terms={len(F)}"


@_register("witness.z40.family", "Z40")
def _witness_family(cfg: Config):
    comp = (
        W.f0_polynomial()
        .rename(W.FAMILY_VARS + W.XYT)
        .substitute(W.chart_parameterization())
    )
    return comp.is_zero(), "0", str(comp) if len(comp) < 5 else f"{len(comp)} terms"


@_register("witness.z40.monic", "Z40")
def _witness_monic(cfg: Config):
    comp = W.monic_integrality_witness().substitute(W.chart_parameterization())
    return comp.is_zero(), "0", str(comp) if len(comp) < 5 else f"{len(comp)} terms"


@_register("witness.z40.inverse", "Z40")
def _witness_inverse(cfg: Config):
    b1, b2 = W.b1_b2()
    u = W.chart_parameterization()
    b1s, b2s = b1.substitute(u), b2.substitute(u)
    x = MultiPoly.var(b1s.vars, "x")
    diff = b2s * x - b1s
    q = exact_divide(b1s, b2s)
    ok = diff.is_zero() and q == x
    return ok, "b2*x - b1 = 0 and b1/b2 = x", f"difference zero: {diff.is_zero()}, quotient: {q}"


@_register("witness.z40.components", "Z40")
def _witness_components(cfg: Config):
    b1, b2 = W.b1_b2()
    u = W.chart_parameterization()
    swap = {
        "a5": MultiPoly.var(b1.vars, "a7"),
        "a7": MultiPoly.var(b1.vars, "a5"),
    }
    c2 = b2.substitute(swap)
    pull = b2.substitute(u) * c2.substitute(u)
    ok = W.vanishing_locus_decomposition_check(pull, W.pullback_components())
    return ok, "seven components", f"decomposition verified: {ok}"


@_register("witness.z40.q", "M140presentation")
def _witness_q(cfg: Config):
    fam = W.family_polynomial()
    a8 = MultiPoly.var(W.FAMILY_VARS, "a8")
    a5 = MultiPoly.var(W.FAMILY_VARS, "a5")
    val = fam.substitute({"x": a8, "w": -a5, "y": 0, "z": 1})
    return val.is_zero(), "0", str(val)


@_register("valuation.m13", "M13 / transverse")
def _valuation_m13(cfg: Config):
    seeds = [cfg.rng_seed + i for i in range(3)]
    orders = [W.order_along_test_curve_n3(s, cfg.series_precision).order for s in seeds]
    ok = all(o == 6 for o in orders)
    return ok, "ord = 6 (probabilistic, 3 seeds)", f"orders={orders} seeds={seeds}"


@_register("valuation.m14", "M14")
def _valuation_m14(cfg: Config):
    seeds = [cfg.rng_seed + i for i in range(3)]
    reports = [W.order_along_test_curve_n4(s, cfg.series_precision) for s in seeds]
    ok = all(r.order == -12 and r.intermediate == 8 for r in reports)
    return (
        ok,
        "ord = -12 with numerator valuation 8 (probabilistic, 3 seeds)",
        f"orders={[r.order for r in reports]} intermediate={[r.intermediate for r in reports]} seeds={seeds}",
    )


# ---------------------------------------------------------------------------
# genus-zero and strata checks
# ---------------------------------------------------------------------------

@_register("keel.ranks", "barM0n")
def _keel_ranks(cfg: Config):
    got = {n: keel_rank_degree_one(n) for n in (4, 5, 6)}
    return got == {4: 1, 5: 5, 6: 16}, "ranks (1, 5, 16)", str(got)


@_register("strata.counts", "stable graph enumeration")
def _strata_counts(cfg: Config):
    got = {
        "(0,4)": len(enumerate_stable_graphs(0, 4)),
        "(1,1)": len(enumerate_stable_graphs(1, 1)),
        "(1,2)": len(enumerate_stable_graphs(1, 2)),
    }
    ok = got == {"(0,4)": 4, "(1,1)": 2, "(1,2)": 5}
    return ok, "(0,4)->4, (1,1)->2, (1,2)->5", str(got)


@_register("strata.automorphisms", "automorphism")
def _strata_auts(cfg: Config):
    theta2 = theta_graph(2, frozenset({1}))
    got = {
        "theta(1,2)": automorphism_group(theta2).order,
        "phi(1,2)": automorphism_group(phi_graph(2)).order,
        "smooth(1,3)": automorphism_group(StableGraph.make([1], [0, 0, 0], [])).order,
    }
    ok = got == {"theta(1,2)": 2, "phi(1,2)": 2, "smooth(1,3)": 1}
    return ok, "orders 2, 2, 1", str(got)


@_register("strata.intersections", "boundarybarM13 / boundarybarM14")
def _strata_intersections(cfg: Config):
    from ..graphs import intersect_strata

    d1, d2 = delta_graph(3, frozenset({1})), delta_graph(3, frozenset({2}))
    de = delta_graph(3, frozenset())
    got = {
        "d1^d2": len(intersect_strata(d1, d2, 1, 3)),
        "d1^de": len(intersect_strata(d1, de, 1, 3)),
        "d12^d34": len(
            intersect_strata(
                delta_graph(4, frozenset({1, 2})), delta_graph(4, frozenset({3, 4})), 1, 4
            )
        ),
    }
    ok = got == {"d1^d2": 0, "d1^de": 1, "d12^d34": 1}
    return ok, "empty, one component, one component", str(got)


@_register("strata.products", "barM12/barM13/barM14 product tables")
def _strata_products(cfg: Config):
    checked = 0
    for n in (2, 3, 4):
        ring = get_presentation(f"bM1{n}")
        Ss = [frozenset()] + [
            frozenset(s)
            for k in range(1, n - 1)
            for s in itertools.combinations(range(1, n + 1), k)
        ]
        for Sa in Ss:
            for Sb in Ss:
                ga, gb = delta_graph(n, Sa), delta_graph(n, Sb)
                lhs = T.product_in_ring(1, n, ga, gb)
                rhs = ring.normal_form(
                    T.divisor_class_ring(1, n, ga) * T.divisor_class_ring(1, n, gb)
                )
                if lhs != rhs:
                    return False, "strata products match the stated rings", (
                        f"mismatch at n={n}, {sorted(Sa)} x {sorted(Sb)}"
                    )
                checked += 1
    return True, "strata products match the stated rings", f"{checked} products checked"


@_register("psi.path", "psi")
def _psi_path(cfg: Config):
    ring = get_presentation("K04")
    base = T.psi_ring(0, 4, 1)
    # the recursion step contributes the divisor carrying {1, 4}; forgetting
    # a different marking instead contributes {1, 3} or {1, 2}, and the
    # four-point relation identifies all three classes
    ok = not base.is_zero()
    for alt in ("D14", "D13", "D12"):
        ok = ok and ring.normal_form(base - ring.poly(alt)).is_zero()
    return ok, "all recursion paths agree on the four-pointed space", f"psi_1 = {base}"


@_register("wdvv.free", "WDVV mod 2")
def _wdvv_free(cfg: Config):
    got = {}
    for n in (4, 5, 6):
        _, fam, free = wdvv_mu2_image(n)
        got[n] = (len(fam), free)
    ok = all(v[1] for v in got.values()) and got[4][0] == 1 and got[5][0] == 3 and got[6][0] == 6
    return ok, "free families of sizes 1, 3, 6", str(got)


@_register("wdvv.alpha", "uniquetorsion")
def _wdvv_alpha(cfg: Config):
    got = {}
    for n in (5, 6):
        bd, fam, _ = wdvv_mu2_image(n)
        lat = LatticeBasis(len(bd.orbits))
        lat.insert_many([dict(v) for v in fam])
        a = bd.alpha("2", "3")
        got[n] = (not lat.contains(a)) and lat.contains({k: 2 * v for k, v in a.items()})
    ok = all(got.values())
    return ok, "alpha has order exactly 2 in the quotient", str(got)


@_register("wdvv.push.dm12", "boundarybarM12")
def _wdvv_push_dm12(cfg: Config):
    bd, fam, _ = wdvv_mu2_image(4)
    dmod = _dmod(2)
    pushed = _push_mu2_vector(2, bd, fam[0])
    expected = dmod.element("2*th - 24*l*de")
    return pushed == expected, "2*th - 24*l*de", str(pushed)


@_register("wdvv.push.dm13", "boundarybarM13")
def _wdvv_push_dm13(cfg: Config):
    bd, fam, _ = wdvv_mu2_image(5)
    dmod = _dmod(3)
    ok = True
    got = []
    for vec in fam:
        pushed = _push_mu2_vector(3, bd, vec)
        got.append(str(pushed))
        ok = ok and dmod.reduces_to_zero(pushed)
    return ok, "pushed image relations hold in the stored presentation", "; ".join(got)


@_register("wdvv.push.dm14", "boundarybarM14")
def _wdvv_push_dm14(cfg: Config):
    bd, fam, _ = wdvv_mu2_image(6)
    dmod = _dmod(4)
    ok = all(dmod.reduces_to_zero(_push_mu2_vector(4, bd, vec)) for vec in fam)
    return ok, "pushed image relations hold in the stored presentation", f"{len(fam)} generators checked"


@_register("boundary.omega", "boundarybarM14 omega formula")
def _boundary_omega(cfg: Config):
    dmod = _dmod(4)
    ok = True
    for j, k in itertools.combinations(range(1, 5), 2):
        lm = tuple(sorted(set(range(1, 5)) - {j, k}))
        g1, s1 = T.theta_pair_glued((j, k), lm, {str(j), "a"}, {str(k), "b"})
        g2, s2 = T.theta_pair_glued((j, k), lm, {str(j), str(k)}, {"a", "b"})
        rel = T.gluing_pushforward(4, g1, s1) - T.gluing_pushforward(4, g2, s2).scale(2)
        ok = ok and dmod.reduces_to_zero(rel)
    return ok, "omega_jk = 12l(l d_jk + d_j|* + d_k|* - d_jk|lm + d_0|jk)", f"image relations reduce to zero: {ok}"


@_register("boundary.sigma", "boundarybarM14 sigma formula")
def _boundary_sigma(cfg: Config):
    dmod = _dmod(4)
    sp = space("dM14")
    g1, s1 = T.omega_glued((1, 2), {"1", "a"}, {"2", "b"})
    g2, s2 = T.omega_glued((1, 2), {"1", "2"}, {"a", "b"})
    p1 = T.gluing_pushforward(4, g1, s1)
    p2 = T.gluing_pushforward(4, g2, s2)
    ok = p1 == sp.classes["sigma"] and dmod.reduces_to_zero(p1 - p2)
    return ok, "sigma = 24*l*de_s_s", f"{p1}"


@_register("pullback.xi_d2", "higherChowImM13 pullback table")
def _pullback_xi_d2(cfg: Config):
    table = T.divisor_pullback_table(3, frozenset({2}))
    got = {k: str(v) for k, v in table.items()}
    expected = {"l": "l", "de": "de", "d1": "0", "d2": "-l - de", "d3": "0"}
    ring = get_presentation("bM13")
    th1 = space("bM13").correspondence["th1"]
    cand = th1 + ring.poly("6*l*d1 - 6*l*de - 6*l*d2 - 6*l*d3")
    p1 = T.pullback_ring_class(3, frozenset({2}), th1)
    p2 = T.pullback_ring_class(3, frozenset({2}), cand)
    ok = got == expected and p1.is_zero() and str(p2) == "6*l^2"
    return ok, "divisor table, theta_1 -> 0, torsion candidate -> 6 l^2", f"{got}, th1->{p1}, cand->{p2}"


@_register("pullback.xi_d14", "higherChowImM14 pullback table")
def _pullback_xi_d14(cfg: Config):
    sp = space("dM14")
    S = frozenset({1, 4})
    k_img = T.pullback_ring_class(4, S, _to_ring(4, sp.classes["kap"]))
    e_img = T.pullback_ring_class(4, S, _to_ring(4, sp.classes["eps"]))
    ok = str(k_img) == "2*l^2" and e_img.is_zero()
    return ok, "kap -> 2 l^2, eps -> 0", f"kap -> {k_img}, eps -> {e_img}"


@_register("transport.p.n3", "pullbackhigherChowImM13")
def _transport_p3(cfg: Config):
    dm12, dm13 = _dmod(2), _dmod(3)
    dp = dm12.element(space("M12").boundary_image["p"])
    pulled = T.forgetful_pullback_module(2, dp)
    p12 = dm13.element(space("M13").boundary_image["p12"])
    ok = dm13.reduces_to_zero(pulled - p12) or dm13.reduces_to_zero(pulled + p12)
    return ok, "pullback of the n=2 image agrees with the stored n=3 image", str(pulled)


@_register("transport.p.n4", "pullbackhigherChowImM14")
def _transport_p4(cfg: Config):
    dm13, dm14 = _dmod(3), _dmod(4)
    p12 = dm13.element(space("M13").boundary_image["p12"])
    pulled = T.forgetful_pullback_module(3, p12)
    tau12 = space("dM14").classes["tau12"]
    ok = dm14.reduces_to_zero(pulled - tau12) or dm14.reduces_to_zero(pulled + tau12)
    return ok, "pullback of the n=3 image agrees with tau12", str(pulled)


@_register("action.s4", "higherChowImM14 action identities")
def _action_s4(cfg: Config):
    act = _s4_action(4)
    dm14 = _dmod(4)
    sp = space("dM14")
    law = act.verify_group_law()
    e12 = act.act((2, 1, 3, 4), sp.classes["eps"])
    eps_ok = dm14.reduces_to_zero(e12 - sp.classes["eps"] - sp.classes["tau12"] - sp.classes["ups12"])
    k12 = act.act((2, 1, 3, 4), sp.classes["kap"])
    # with the stored (l < m) labelling the difference class is ups12
    kap_ok = dm14.reduces_to_zero(k12 - sp.classes["kap"] - sp.classes["ups12"])
    ok = law and eps_ok and kap_ok
    return ok, "(12)eps = eps + tau12 + ups12; (12)kap = kap + ups", f"group law={law}, eps={eps_ok}, kap={kap_ok}"


@_register("action.d4", "D4action")
def _action_d4(cfg: Config):
    AV = W.AVARS
    a0, a4, a5, a7, a8 = (MultiPoly.var(AV, v) for v in AV)
    ideals = W.component_ideals()

    maps = {
        "(12)(34)": {"a5": a7, "a7": a5},
        "(23)": {"a4": 2 - a4, "a5": -a5, "a7": -1 + a4 + a7, "a8": a5 + a8},
    }
    # (14) = (12)(34) o (23) o (12)(34)
    m = maps["(12)(34)"]
    c = maps["(23)"]

    def compose(outer, inner):
        return {v: (inner[v] if v in inner else MultiPoly.var(AV, v)).substitute(outer) for v in ("a4", "a5", "a7", "a8")}

    maps["(14)"] = compose(m, compose(c, m))

    expected = {
        "(12)(34)": {1: 2, 2: 1, 3: 4, 4: 3, 5: 5, 6: 6},
        "(23)": {1: 1, 2: 3, 3: 2, 4: 4, 5: 6, 6: 5},
        "(14)": {1: 4, 2: 2, 3: 3, 4: 1, 5: 6, 6: 5},
    }

    def member(g, ideal):
        # each stored ideal has a generator linear in one coordinate; solving
        # and substituting realises membership as vanishing
        sub = _triangular_solution(ideal)
        return g.substitute(sub).is_zero()

    ok = True
    detail = []
    for name, mp in maps.items():
        for i, ideal in enumerate(ideals, start=1):
            moved = [g.substitute(mp) for g in ideal]
            target = ideals[expected[name][i] - 1]
            same = all(member(g, target) for g in moved) and all(
                member(g, [m2 for m2 in moved]) for g in target
            )
            ok = ok and same
            if not same:
                detail.append(f"{name}: C{i} !-> C{expected[name][i]}")
    return ok, "sigma q_i = q_{sigma(i)} on the component ideals", "; ".join(detail) or "all component transports hold"


def _triangular_solution(ideal: list[MultiPoly]) -> dict[str, MultiPoly]:
    """Solve a two-generator ideal with coordinate-linear generators."""
    AV = W.AVARS
    sub: dict[str, MultiPoly] = {}
    gens = [g for g in ideal]
    for _ in range(4):
        for g in list(gens):
            g2 = g.substitute(sub) if sub else g
            if g2.is_zero():
                gens.remove(g)
                continue
            for v in ("a8", "a5", "a7", "a4"):
                if g2.degree_in(v) == 1:
                    iv = g2.vars.index(v)
                    coeff = MultiPoly(AV)
                    rest = MultiPoly(AV)
                    linear = True
                    for e, cc in g2.terms.items():
                        if e[iv] == 1:
                            e2 = list(e)
                            e2[iv] = 0
                            coeff = coeff + MultiPoly(AV, {tuple(e2): cc})
                        elif e[iv] == 0:
                            rest = rest + MultiPoly(AV, {e: cc})
                        else:
                            linear = False
                    if linear and coeff.is_const() and coeff.const_value() in (1, -1):
                        sol = rest * (-coeff.const_value())
                        sub[v] = sol
                        sub = {k: val.substitute({v: sol}) for k, val in sub.items()}
                        gens.remove(g)
                        break
            else:
                continue
            break
    return sub


@_register("higher.m14.tsum", "higherM14 pairing relation")
def _higher_tsum(cfg: Config):
    """The printed pairing relation needs a unit-class correction.

    With t_j transported from t_1 by the symmetric-group action, the image
    of t_j + t_k - t_l - t_m is tau12 + tau34 (not zero); the corrected
    relation t_j + t_k - t_l - t_m - p12 - p34 is the one stored in the
    catalog, and it does map to zero for every pairing."""
    dm14 = _dmod(4)
    sp = space("dM14")
    act = _s4_action(4)
    eps = {1: sp.classes["eps"]}
    for j in (2, 3, 4):
        sigma = tuple(j if x == 1 else (1 if x == j else x) for x in (1, 2, 3, 4))
        eps[j] = act.act(sigma, sp.classes["eps"])
    correction = sp.classes["tau12"] + sp.classes["tau34"]
    ok = True
    for j, k in itertools.combinations(range(1, 5), 2):
        l_, m_ = (x for x in range(1, 5) if x not in (j, k))
        raw = eps[j] + eps[k] - eps[l_] - eps[m_]
        ok = ok and not dm14.reduces_to_zero(raw)
        ok = ok and dm14.reduces_to_zero(raw - correction)
    return ok, "t_j + t_k - t_l - t_m maps to tau12 + tau34, not 0", f"correction verified for all pairings: {ok}"


@_register("higher.m14.transport", "higherM14")
def _higher_m14(cfg: Config):
    dm14 = _dmod(4)
    sp = space("dM14")
    act = _s4_action(4)
    eps = {1: sp.classes["eps"]}
    for j in (2, 3, 4):
        sigma = tuple(j if x == 1 else (1 if x == j else x) for x in (1, 2, 3, 4))
        eps[j] = act.act(sigma, sp.classes["eps"])
    taus = {
        (a, b): sp.classes[f"tau{a}{b}"] for a, b in itertools.combinations(range(1, 5), 2)
    }

    def tau(j, k):
        return taus[(j, k)] if (j, k) in taus else taus[(k, j)].scale(-1)

    ok = True
    for j in range(1, 5):
        ok = ok and dm14.reduces_to_zero(eps[j].times_lambda(1))
        ok = ok and dm14.reduces_to_zero(eps[j].scale(2) - sp.classes["getzler"])
    correction = sp.classes["tau12"] + sp.classes["tau34"]
    for j, k in itertools.combinations(range(1, 5), 2):
        ok = ok and dm14.reduces_to_zero((eps[j] - eps[k]).scale(2))
        ok = ok and dm14.reduces_to_zero(tau(j, k).scale(2))
        l_, m_ = (x for x in range(1, 5) if x not in (j, k))
        # pairing relation with its unit-class correction (see higher.m14.tsum)
        ok = ok and dm14.reduces_to_zero(eps[j] + eps[k] - eps[l_] - eps[m_] - correction)
        ok = ok and dm14.reduces_to_zero((tau(j, k) + tau(l_, m_)).times_lambda(1))
    for j, k, l_ in itertools.combinations(range(1, 5), 3):
        ok = ok and dm14.reduces_to_zero(tau(j, k) + tau(j, l_) + tau(k, l_))
    return ok, "all stored relations map to zero; 2 t_j = g", f"all transports hold: {ok}"


# ---------------------------------------------------------------------------
# section-9 class ledger
# ---------------------------------------------------------------------------

@_register("sec9.wtilde", "classoftildeM12")
def _sec9_wtilde(cfg: Config):
    ring = get_presentation("bM13")
    names = ["l", "d1", "d2", "d3", "de"]

    def push_degree(name, x):
        if name == "l":
            return 0
        g = T._gen_divisor_graph(1, 3, name)
        return 1 if g.forget_marking(x).codim() == 0 else 0

    rows: list[list[int]] = []
    rhs: list[int] = []
    mapped = {"l": "l", "d1": "d1", "d2": "d3", "d3": "d2", "de": "de"}
    for i, nm in enumerate(names):
        r = [0] * 5
        r[i] += 1
        r[names.index(mapped[nm])] -= 1
        if any(r):
            rows.append(r)
            rhs.append(0)
    for x, dd in ((3, 1), (1, 4)):
        rows.append([push_degree(nm, x) for nm in names])
        rhs.append(dd)
    quo2 = ring.slice_lattice(2)
    d2p = ring.poly("d2")
    coords = []
    for nm in names:
        free, tors = quo2.linear_coordinates(ring.vectorize(ring.poly(nm) * d2p, 2))
        coords.append((free, tors))
    for key in sorted({k for f, _ in coords for k in f}):
        rows.append([f.get(key, 0) for f, _ in coords])
        rhs.append(0)
    sol = _solve_unique(rows, rhs, 5)
    if sol is None:
        return False, "[2, -1, 2, 2, 2]", "not uniquely solvable"
    w = MultiPoly(ring.gen_names)
    for c, nm in zip(sol, names):
        w = w + ring.poly(nm) * c
    prod = ring.normal_form(w * d2p)
    ok = sol == [2, -1, 2, 2, 2] and prod.is_zero()
    return ok, "2l - d1 + 2d2 + 2d3 + 2de with vanishing d2-product", f"coefficients {sol}, product {prod}"


def _solve_unique(rows: list[list[int]], rhs: list[int], nvars: int) -> Optional[list[int]]:
    A = [[Fraction(v) for v in r] for r in rows]
    b = [Fraction(v) for v in rhs]
    m = len(A)
    r_i = 0
    piv = []
    for c in range(nvars):
        p = next((i for i in range(r_i, m) if A[i][c]), None)
        if p is None:
            continue
        A[r_i], A[p] = A[p], A[r_i]
        b[r_i], b[p] = b[p], b[r_i]
        f = A[r_i][c]
        A[r_i] = [x / f for x in A[r_i]]
        b[r_i] /= f
        for i in range(m):
            if i != r_i and A[i][c]:
                g = A[i][c]
                A[i] = [x - g * y for x, y in zip(A[i], A[r_i])]
                b[i] -= g * b[r_i]
        piv.append(c)
        r_i += 1
    if r_i != nvars or any(b[i] != 0 for i in range(r_i, m)):
        return None
    sol = [Fraction(0)] * nvars
    for i, c in enumerate(piv):
        sol[c] = b[i]
    if any(x.denominator != 1 for x in sol):
        return None
    return [int(x) for x in sol]


@_register("sec9.v", "section 9 [V] computation")
def _sec9_v(cfg: Config):
    K = build_keel(5)
    quo = K.slice_lattice(1)
    monos = K.monomials(1)
    gens = list(K.gen_names)

    def perm_poly(p, sigma):
        out = MultiPoly(K.gen_names)
        for e, c in p.terms.items():
            term = MultiPoly.const(K.gen_names, c)
            for name, k in zip(K.gen_names, e):
                if k:
                    I = tuple(sorted(sigma.get(int(ch), int(ch)) for ch in name[1:]))
                    nm = "D" + "".join(map(str, I))
                    if nm not in K.gen_names:
                        I = tuple(sorted(set(range(1, 6)) - set(I)))
                        nm = "D" + "".join(map(str, I))
                    term = term * MultiPoly.var(K.gen_names, nm) ** k
            out = out + term
        return out

    def phi(x, p):
        tot = 0
        for e, c in p.terms.items():
            (gi,) = (i for i, k in enumerate(e) if k)
            I = {int(ch) for ch in K.gen_names[gi][1:]}
            if len(I) != 2:
                I = set(range(1, 6)) - I
            tot += c * (1 if x in I else 0)
        return tot

    # unknown class written on the degree-one generators; the constraints
    # (symmetry and pushforward degrees) both descend to classes, and the
    # solver certifies that any solution ambiguity lies inside the relation
    # lattice, i.e. the class is unique
    ngen = len(gens)
    monomial_polys = [MultiPoly(K.gen_names, {m: 1}) for m in monos]
    sigma = {2: 3, 3: 2, 4: 5, 5: 4}
    coords = []
    for p in monomial_polys:
        free, _ = quo.linear_coordinates(K.vectorize(perm_poly(p, sigma) - p, 1))
        coords.append(free)
    rows = []
    rhs = []
    for key in sorted({k for f in coords for k in f}):
        rows.append([f.get(key, 0) for f in coords])
        rhs.append(0)
    for x, dd in ((3, 1), (4, 1), (1, 2)):
        rows.append([phi(x, p) for p in monomial_polys])
        rhs.append(dd)
    sol = _solve_affine_mod_lattice(rows, rhs, ngen, quo, K, monos)
    if sol is None:
        return False, "[V] = D25 + D35 + D14", "not uniquely solvable"
    vprime = MultiPoly(K.gen_names, {monos[i]: sol[i] for i in range(ngen) if sol[i]})
    expected_vp = K.poly("D12 + D13 + D45")
    ok1 = quo.contains(K.vectorize(vprime - expected_vp, 1))
    v = perm_poly(vprime, {1: 5, 5: 1})
    ok2 = quo.contains(K.vectorize(v - K.poly("D25 + D35 + D14"), 1))
    return ok1 and ok2, "[V'] = D12 + D13 + D45 and [V] = D25 + D35 + D14", str(vprime)


def _solve_affine_mod_lattice(rows, rhs, nvars, quo, K, monos):
    """Solve linear constraints on a divisor class: unique modulo relations.

    Returns an integer representative when one exists and every integer
    ambiguity direction lies inside the relation lattice (so the class is
    pinned); otherwise None.
    """
    from ..linalg import IntMatrix, kernel_integer_right, solve_integer_right

    A = IntMatrix(rows, cols=nvars)
    sol = solve_integer_right(A, list(rhs))
    if sol is None:
        return None
    for vec in kernel_integer_right(A):
        kpoly = MultiPoly(K.gen_names, {monos[i]: vec[i] for i in range(nvars) if vec[i]})
        if not quo.contains(K.vectorize(kpoly, 1)):
            return None  # genuinely ambiguous
    return sol


@_register("sec9.vpush", "section 9 [V] pushforward")
def _sec9_vpush(cfg: Config):
    K5 = build_keel(5)
    V = K5.poly("D25 + D35 + D14")
    got = T.push_factor_class_to_module(4, frozenset(), V, genus_side=False)
    expected = space("dM14").classes["wtilde_de"]
    return got == expected, "de_2 + de_3 + de_23", str(got)


@_register("sec9.what", "section 9 [W] computation")
def _sec9_what(cfg: Config):
    pieces = [
        (1, ({"2", "4"}, {"1", "3", "a", "b"})),
        (1, ({"3", "4"}, {"1", "2", "a", "b"})),
        (-1, ({"1", "4"}, {"2", "3", "a", "b"})),
        (2, ({"1", "a", "b"}, {"2", "3", "4"})),
        (1, ({"1", "a"}, {"2", "3", "4", "b"})),
    ]
    total = None
    for coeff, (A, B) in pieces:
        g, spec = T.phi_glued(4, A, B)
        e = T.gluing_pushforward(4, g, spec).scale(coeff)
        total = e if total is None else total + e
    expected = space("dM14").classes["wtilde_phi"]
    return total == expected, "2 th1 + 24 l d1 + 12 l d12 + 12 l d13 - 12 l d23", str(total)


@_register("sec9.assembly", "Getzler proof assembly")
def _sec9_assembly(cfg: Config):
    dm14 = _dmod(4)
    sp = space("dM14")
    asm = (
        dm14.element("4*th14_23")
        - sp.classes["wtilde_phi"]
        + sp.classes["wtilde_d1"].scale(6)
        - dm14.element("12*d13_24")
        - dm14.element("12*d12_34")
        - sp.classes["wtilde_de"].scale(12)
        + sp.classes["wtilde_xi"].scale(6)
    )
    exact = asm == sp.classes["getzler"]
    act = _s4_action(4)
    moved = act.act((2, 1, 4, 3), sp.classes["wtilde_xi"])
    transport = moved == sp.classes["wtilde_d1"]
    ok = exact and transport
    return ok, "component classes assemble to the boundary image exactly", f"assembly exact: {exact}, (12)(34) transport: {transport}"


@_register("noop", "self-comparison")
def _noop(cfg: Config):
    from ..grading import compare_presentations

    ring = get_presentation("bM12")
    corr = {name: name for name in ring.gen_names}
    rep = compare_presentations(ring, ring, corr, min(cfg.max_degree, 4))
    return rep.ok, "a presentation matches itself", str(rep)
