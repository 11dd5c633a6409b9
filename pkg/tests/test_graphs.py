"""Stable graphs: enumeration oracle, automorphisms, intersections, literals."""

import random
from itertools import combinations, product

from chowcalc.graphs import (
    StableGraph,
    automorphism_group,
    enumerate_stable_graphs,
    forgetful_preimages,
    graph_literal,
    intersect_strata,
    parse_graph,
)
from chowcalc.catalog.spaces import delta_graph, phi_graph, theta_graph


def brute_force_enumeration(g: int, n: int, max_vertices: int) -> int:
    """Independent oracle: enumerate all labeled candidates directly and
    count isomorphism classes by pairwise canonical comparison."""
    found = set()
    for nv in range(1, max_vertices + 1):
        genus_choices = product(range(0, g + 1), repeat=nv)
        for genera in genus_choices:
            for legs in product(range(nv), repeat=n):
                max_edges = g + nv  # b1 <= g forces few edges
                pairs = [(a, b) for a in range(nv) for b in range(a, nv)]
                for ne in range(0, max_edges + 1):
                    for es in product(pairs, repeat=ne):
                        cand = StableGraph.make(genera, legs, es)
                        if cand.total_genus() != g or not cand.is_stable():
                            continue
                        found.add(cand.canonical())
    return len(found)


def test_enumeration_against_oracle():
    assert len(enumerate_stable_graphs(1, 1)) == brute_force_enumeration(1, 1, 2) == 2
    assert len(enumerate_stable_graphs(1, 2)) == brute_force_enumeration(1, 2, 3) == 5
    assert len(enumerate_stable_graphs(0, 4)) == brute_force_enumeration(0, 4, 2) == 4
    assert len(enumerate_stable_graphs(0, 3)) == 1


def test_enumeration_properties():
    for (g, n) in ((1, 3), (0, 5)):
        graphs = enumerate_stable_graphs(g, n)
        assert len(set(graphs)) == len(graphs)
        for gr in graphs:
            assert gr.is_stable()
            assert gr.total_genus() == g
            assert gr.canonical() == gr


def test_automorphism_orders():
    assert automorphism_group(theta_graph(2, frozenset({1}))).order == 2
    assert automorphism_group(phi_graph(2)).order == 2
    assert automorphism_group(theta_graph(3, frozenset({1}))).order == 2
    smooth = StableGraph.make([1], [0], [])
    assert automorphism_group(smooth).order == 1
    omega = StableGraph.make([0, 0, 0], [0, 1, 2], [(0, 1), (1, 2), (0, 2)])
    assert automorphism_group(omega).order == 1


def test_canonical_form_stability():
    rng = random.Random(10)
    for gr in enumerate_stable_graphs(1, 3):
        perm = list(range(gr.n_vertices))
        rng.shuffle(perm)
        assert gr.relabel(perm).canonical() == gr.canonical()


def test_intersections():
    d1 = delta_graph(3, frozenset({1}))
    d2 = delta_graph(3, frozenset({2}))
    de = delta_graph(3, frozenset())
    assert intersect_strata(d1, d2, 1, 3) == []
    got = intersect_strata(d1, de, 1, 3)
    assert len(got) == 1
    d12 = delta_graph(4, frozenset({1, 2}))
    d34 = delta_graph(4, frozenset({3, 4}))
    assert len(intersect_strata(d12, d34, 1, 4)) == 1
    # symmetry as multisets
    for a, b in ((d1, de), (d12, d34)):
        ab = sorted(str(x) for x in intersect_strata(a, b, a.total_genus(), a.n_markings))
        ba = sorted(str(x) for x in intersect_strata(b, a, a.total_genus(), a.n_markings))
        assert ab == ba


def test_forgetful_preimages():
    theta = theta_graph(2, frozenset({1}))
    pre = forgetful_preimages(theta, 3)
    assert len(pre) == 2
    de = delta_graph(2, frozenset())
    pre2 = forgetful_preimages(de, 3)
    assert sorted(str(delta_graph(3, frozenset())) == str(p.canonical()) for p in pre2)
    assert len(pre2) == 2


def test_literal_roundtrip():
    for gr in enumerate_stable_graphs(1, 3) + enumerate_stable_graphs(0, 4):
        assert parse_graph(graph_literal(gr)).canonical() == gr.canonical()
    th1 = parse_graph("G(1; v0:0[1], v1:0[2,3]; v0-v1, v0-v1)")
    assert th1.is_isomorphic(theta_graph(3, frozenset({1})))
