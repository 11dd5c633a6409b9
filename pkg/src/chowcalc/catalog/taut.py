"""Tautological calculus over the catalog spaces.

Classes of boundary strata, psi classes, products of boundary divisors,
pullbacks to divisor factors and pushforwards along gluing maps are all
computed from stable-graph combinatorics plus the stored presentations.

Two facts drive everything:
  * a divisor class of a factor space equals the pullback of the ambient
    divisor it glues to, so the projection formula turns classes of nested
    strata into products of ambient divisor classes; and
  * a pushforward along a gluing map multiplies by the index of the
    relative automorphism group of the target stratum.
"""

from __future__ import annotations

from collections import Counter
from functools import lru_cache
from typing import Iterable, Optional

from ..grading import GradedElement, GradedModule, GradedRing
from ..graphs import (
    StableGraph,
    automorphism_group,
    enumerate_stable_graphs,
    forgetful_preimages,
    generic_intersection_graphs,
)
from ..poly import MultiPoly
from .keel import _dname
from .spaces import (
    boundary_module_id,
    delta_graph,
    gen_graph_table,
    graph_to_gen_name,
    phi_graph,
    ring_id,
    space,
)


def _ring(g: int, n: int) -> GradedRing:
    return space(ring_id(g, n)).presentation  # type: ignore[return-value]


def _module(n: int) -> GradedModule:
    return space(boundary_module_id(n)).presentation  # type: ignore[return-value]


# ---------------------------------------------------------------------------
# Divisor dictionaries.
# ---------------------------------------------------------------------------

def divisor_class_ring(g: int, n: int, graph: StableGraph) -> MultiPoly:
    """Class of a one-edge stratum in the stated ring of the smooth space."""
    ring = _ring(g, n)
    if graph.codim() != 1:
        raise ValueError("not a divisor graph")
    if g == 0:
        a, b = graph.edges[0]
        I = graph.vertex_markings(a)
        J = graph.vertex_markings(b)
        side = min((len(I), I), (len(J), J))[1]
        return MultiPoly.var(ring.gen_names, _dname([str(m) for m in side]))
    # genus one: either a separating Delta_S or the irreducible divisor
    c = graph.canonical()
    if c == phi_graph(n).canonical():
        return ring.poly("12*l")
    name = graph_to_gen_name(n, c)
    if name is None:
        raise ValueError(f"unknown divisor graph {graph}")
    return MultiPoly.var(ring.gen_names, name)


def separating_data(graph: StableGraph, edge_index: int, n: int):
    """(S, genus_factor_graph, keel_factor_graph, maps) for a separating edge.

    Cutting at the edge gives the genus component and a genus-zero
    component.  Factor markings are numbered 1..m with the original legs
    first (sorted) and the half-edge last; the returned maps send factor
    markings to ambient markings (the half-edge maps to None).
    """
    a, b = graph.edges[edge_index]
    adj: dict[int, set[int]] = {v: set() for v in range(graph.n_vertices)}
    for i, (x, y) in enumerate(graph.edges):
        if i == edge_index:
            continue
        adj[x].add(y)
        adj[y].add(x)
    comp_a = {a}
    stack = [a]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in comp_a:
                comp_a.add(y)
                stack.append(y)
    if b in comp_a:
        raise ValueError("edge is not separating")
    comp_b = set(range(graph.n_vertices)) - comp_a

    def build(side: set[int], attach: int):
        verts = sorted(side)
        vidx = {v: i for i, v in enumerate(verts)}
        genera = [graph.genera[v] for v in verts]
        marks = sorted(m for m, v in enumerate(graph.legs, start=1) if v in side)
        legs = [vidx[graph.legs[m - 1]] for m in marks]
        legs.append(vidx[attach])  # the half-edge becomes the last marking
        edges = [
            (vidx[x], vidx[y])
            for i, (x, y) in enumerate(graph.edges)
            if i != edge_index and x in side
        ]
        fgraph = StableGraph.make(genera, legs, edges)
        mark_map = {i + 1: m for i, m in enumerate(marks)}
        mark_map[len(marks) + 1] = None  # the node
        return fgraph, mark_map

    side_genus, side_keel = (comp_a, comp_b)
    ga = sum(graph.genera[v] for v in comp_a) + _b1(graph, comp_a, edge_index)
    if ga == 0:
        side_genus, side_keel = comp_b, comp_a
    fg, mg = build(side_genus, a if a in side_genus else b)
    fk, mk = build(side_keel, b if a in side_genus else a)
    S = frozenset(m for m, v in enumerate(graph.legs, start=1) if v in side_genus)
    return S, (fg, mg), (fk, mk)


def _b1(graph: StableGraph, side: set[int], skip_edge: int) -> int:
    edges = [
        e
        for i, e in enumerate(graph.edges)
        if i != skip_edge and e[0] in side and e[1] in side
    ]
    return len(edges) - len(side) + 1


# ---------------------------------------------------------------------------
# Classes of strata in the stated rings.
# ---------------------------------------------------------------------------

def class_in_ring(g: int, n: int, graph: StableGraph, normalize: bool = True) -> MultiPoly:
    """Class of the closed stratum of `graph` in the stated Chow ring.

    Separating edges contribute the product of their ambient divisor
    classes (projection formula: each factor divisor is a pullback); the
    contraction of all separating edges is a non-separating core whose
    class is stored in the catalog.  With normalize=False the raw product
    is returned, whose monomials are genuine nested-strata products.
    """
    ring = _ring(g, n)
    if graph.codim() == 0:
        return MultiPoly.const(ring.gen_names, 1)
    sep = [i for i in range(len(graph.edges)) if graph.is_separating(i)]
    out = MultiPoly.const(ring.gen_names, 1)
    for e in sep:
        rest = [i for i in range(len(graph.edges)) if i != e]
        amb = graph.contract_edges(rest)
        out = out * divisor_class_ring(g, n, amb)
    core = graph.contract_edges(sep)
    if core.codim():
        out = out * _core_class_ring(g, n, core)
    return ring.normal_form(out) if normalize else out


def _core_class_ring(g: int, n: int, core: StableGraph) -> MultiPoly:
    ring = _ring(g, n)
    c = core.canonical()
    if g == 0:
        raise ValueError("genus-zero graphs have no non-separating part")
    if c == phi_graph(n).canonical():
        return ring.poly("12*l")
    sp = space(ring_id(g, n))
    name = graph_to_gen_name(n, c)
    if name is not None and name in sp.correspondence:
        # theta strata: the stored ring expression
        defs = {k: v for k, v in sp.classes.items() if isinstance(v, MultiPoly)}
        return ring.poly(sp.correspondence[name], defs)
    # stored formula classes (omega, sigma) are catalogued by graph shape
    if n == 3 and c == _omega_graph_n3().canonical():
        return ring.poly("24*l*de*d1")
    if n == 4:
        om = _match_omega_n4(c)
        if om is not None:
            j, k = om
            lm = sorted(set(range(1, 5)) - {j, k})
            return ring.poly(
                f"12*l*(l*d{j}{k} + d{j}*d{j}{k} + d{k}*d{j}{k} - d{j}{k}*d{lm[0]}{lm[1]} + de*d{j}{k})"
            )
        if _is_sigma_graph(c):
            return ring.poly("24*l*de*d1*d12")
    raise ValueError(f"no stored class for core {core}")


def _omega_graph_n3() -> StableGraph:
    return StableGraph.make([0, 0, 0], [0, 1, 2], [(0, 1), (1, 2), (0, 2)])


def _match_omega_n4(c: StableGraph) -> Optional[tuple[int, int]]:
    # triangle with legs {j,k} on one vertex and l, m on the others
    if c.n_vertices != 3 or len(c.edges) != 3:
        return None
    if sorted(Counter(c.edges).values()) != [1, 1, 1]:
        return None
    if any(g != 0 for g in c.genera):
        return None
    sizes = sorted((len(c.vertex_markings(v)), v) for v in range(3))
    if [s for s, _ in sizes] != [1, 1, 2]:
        return None
    pair = c.vertex_markings(sizes[2][1])
    return pair[0], pair[1]


def _is_sigma_graph(c: StableGraph) -> bool:
    return (
        c.n_vertices == 4
        and len(c.edges) == 4
        and all(g == 0 for g in c.genera)
        and all(len(c.vertex_markings(v)) == 1 for v in range(4))
        and all(m == 1 for m in Counter(c.edges).values())
    )


def product_in_ring(g: int, n: int, ga: StableGraph, gb: StableGraph) -> MultiPoly:
    """Product of two boundary divisor classes computed from the strata
    calculus: transverse pieces contribute their stratum classes, a shared
    edge contributes the excess -psi - psi'."""
    ring = _ring(g, n)
    total = MultiPoly(ring.gen_names)
    for delta, S, S2 in generic_intersection_graphs(ga, gb, g, n):
        shared = set(S) & set(S2)
        if not shared:
            total = total + class_in_ring(g, n, delta)
        else:
            (e,) = shared
            total = total + _excess_term_ring(g, n, delta, e)
    return ring.normal_form(total)


def _excess_term_ring(g: int, n: int, delta: StableGraph, e: int) -> MultiPoly:
    """xi_* of (-psi_h - psi_h') for the shared edge of a self-intersection."""
    ring = _ring(g, n)
    a, b = delta.edges[e]
    if a == b:
        raise ValueError("excess terms at a loop are not needed by the catalog")
    S, (fg, mg), (fk, mk) = separating_data(delta, e, n)
    out = MultiPoly(ring.gen_names)
    for factor, mmap, genus in ((fg, mg, 1), (fk, mk, 0)):
        m = factor.n_markings
        psi = psi_ring(genus, m, m)  # psi at the node, the last marking
        out = out + pushforward_factor_poly(n, S, factor, mmap, genus, -psi)
    return out


def pushforward_factor_poly(
    n: int,
    S: frozenset[int],
    factor: StableGraph,
    mark_map: dict[int, Optional[int]],
    genus: int,
    poly: MultiPoly,
) -> MultiPoly:
    """xi_{Delta_S *} of a class on one factor (the other factor = 1).

    Each monomial l^a * prod(divisor gens) maps to l^a times the class of
    the stratum obtained by gluing those divisors onto Delta_S.
    """
    ring = _ring(1, n)
    fring = _ring(genus, factor.n_markings)
    out = MultiPoly(ring.gen_names)
    for e, c in poly.terms.items():
        ambs = [delta_graph(n, S)]
        lpow = 0
        for name, k in zip(fring.gen_names, e):
            if not k:
                continue
            if name == "l":
                lpow = k
                continue
            for _ in range(k):
                ambs.append(
                    delta_graph(n, _ambient_set_for_factor_gen(n, S, genus, factor, mark_map, name))
                )
        target = _common_degeneration(1, n, ambs)
        cls = class_in_ring(1, n, target)
        out = out + cls * MultiPoly.var(ring.gen_names, "l") ** lpow * c
    return ring.normal_form(out)


def _ambient_set_for_factor_gen(
    n: int,
    S: frozenset[int],
    genus: int,
    factor: StableGraph,
    mark_map: dict[int, Optional[int]],
    gen_name: str,
) -> frozenset[int]:
    m = factor.n_markings
    if genus == 1:
        if gen_name == "de":
            T: frozenset[int] = frozenset()
        elif gen_name.startswith("d") and gen_name[1:].isdigit():
            T = frozenset(int(ch) for ch in gen_name[1:])
        else:
            raise ValueError(f"unsupported factor generator {gen_name}")
        tmarks = {mark_map[t] for t in T}
        if None in tmarks:
            # node on the genus side: the tail splits off S - (T - node)
            tail = S - {x for x in tmarks if x is not None}
            return frozenset(set(range(1, n + 1)) - tail)
        return frozenset(x for x in tmarks)  # type: ignore[misc]
    # Keel factor generator D_I
    marks = [mark_map[i + 1] for i in range(m)]
    I = _keel_gen_marks(gen_name)
    side = {marks[i - 1] for i in I}
    if None in side:
        side = set(marks) - side
    tail = {x for x in side if x is not None}
    return frozenset(set(range(1, n + 1)) - tail)


def _keel_gen_marks(gen_name: str) -> set[int]:
    # D_I generator names are 'D' + sorted factor marking tokens (digits here)
    assert gen_name.startswith("D")
    return {int(ch) for ch in gen_name[1:]}


def _common_degeneration(g: int, n: int, graphs: list[StableGraph]) -> StableGraph:
    cur = graphs[0]
    for nxt in graphs[1:]:
        cands = [
            d
            for d, S, S2 in generic_intersection_graphs(cur, nxt, g, n)
            if not (set(S) & set(S2))
        ]
        uniq = {c.canonical() for c in cands}
        if len(uniq) != 1:
            raise ValueError(
                f"expected a unique transverse intersection, got {len(uniq)}"
            )
        cur = uniq.pop()
    return cur.canonical()


# ---------------------------------------------------------------------------
# psi classes.
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def psi_ring(g: int, n: int, i: int) -> MultiPoly:
    """psi_i on the stated ring of the (g, n) stable space.

    Seeds: psi_1 = 0 on (0,3) and psi_1 = l on (1,1); the recursion adds the
    divisor whose genus-zero vertex carries exactly {i, n} when a marking is
    forgotten.
    """
    ring = _ring(g, n)
    if g == 0 and n == 3:
        return MultiPoly(ring.gen_names)
    if g == 1 and n == 1:
        return ring.poly("l")
    if i == n:
        swapped = psi_ring(g, n, 1)
        return permute_ring_markings(g, n, {1: n, n: 1}, swapped)
    pulled = forgetful_pullback_ring(g, n - 1, psi_ring(g, n - 1, i))
    gamma = _gamma_divisor(g, n, i)
    return ring.normal_form(pulled + gamma)


def _gamma_divisor(g: int, n: int, i: int) -> MultiPoly:
    ring = _ring(g, n)
    if g == 1:
        # genus-zero vertex carries {i, n}
        S = frozenset(set(range(1, n + 1)) - {i, n})
        return divisor_class_ring(1, n, delta_graph(n, S))
    marks = [0 if m in (i, n) else 1 for m in range(1, n + 1)]
    graph = StableGraph.make([0, 0], marks, [(0, 1)])
    return divisor_class_ring(0, n, graph)


def forgetful_pullback_ring(g: int, n: int, poly: MultiPoly) -> MultiPoly:
    """Flat pullback along forgetting marking n+1, as a ring homomorphism
    determined on divisor generators by enumerating reduced preimages."""
    src = _ring(g, n)
    dst = _ring(g, n + 1)
    images: dict[str, MultiPoly] = {}
    for name in src.gen_names:
        if name == "l":
            images[name] = dst.poly("l")
            continue
        graph = _gen_divisor_graph(g, n, name)
        total = MultiPoly(dst.gen_names)
        for pre in forgetful_preimages(graph, n + 1):
            total = total + divisor_class_ring(g, n + 1, pre)
        images[name] = total
    out = MultiPoly(dst.gen_names)
    for e, c in poly.terms.items():
        term = MultiPoly.const(dst.gen_names, c)
        for name, k in zip(src.gen_names, e):
            if k:
                term = term * images[name] ** k
        out = out + term
    return dst.normal_form(out)


def _gen_divisor_graph(g: int, n: int, name: str) -> StableGraph:
    if g == 1:
        if name == "de":
            return delta_graph(n, frozenset())
        assert name.startswith("d")
        return delta_graph(n, frozenset(int(ch) for ch in name[1:]))
    I = sorted(_keel_gen_marks(name))
    legs = [0 if m in I else 1 for m in range(1, n + 1)]
    return StableGraph.make([0, 0], legs, [(0, 1)])


def permute_ring_markings(g: int, n: int, sigma: dict[int, int], poly: MultiPoly) -> MultiPoly:
    ring = _ring(g, n)
    images: dict[str, str] = {}
    for name in ring.gen_names:
        if name == "l":
            images[name] = "l"
        else:
            graph = _gen_divisor_graph(g, n, name)
            moved = graph.rename_markings(sigma)
            images[name] = str(
                divisor_class_ring(g, n, moved)
            )
    out = MultiPoly(ring.gen_names)
    for e, c in poly.terms.items():
        term = MultiPoly.const(ring.gen_names, c)
        for name, k in zip(ring.gen_names, e):
            if k:
                term = term * ring.poly(images[name]) ** k
        out = out + term
    return out


# ---------------------------------------------------------------------------
# Pullback to a separating divisor factor (trivial Keel side).
# ---------------------------------------------------------------------------

def divisor_pullback_table(n: int, S: frozenset[int]) -> dict[str, MultiPoly]:
    """xi_{Delta_S}^* on ring generators, for |S^c| = 2 (point Keel factor).

    Values live in the stated ring of the genus factor, whose markings are
    sorted(S) followed by the node."""
    if len(S) != n - 2:
        raise ValueError("the Keel factor must be a point")
    m = len(S) + 1
    fring = _ring(1, m)
    target = delta_graph(n, S)
    table: dict[str, MultiPoly] = {"l": fring.poly("l")}
    ring = _ring(1, n)
    for name in ring.gen_names:
        if name == "l":
            continue
        graph = _gen_divisor_graph(1, n, name)
        total = MultiPoly(fring.gen_names)
        for delta, SA, SB in generic_intersection_graphs(graph, target, 1, n):
            shared = set(SA) & set(SB)
            if shared:
                total = total - psi_ring(1, m, m)
            else:
                (eB,) = SB
                total = total + _factor_divisor_class(n, delta, eB, S)
        table[name] = fring.normal_form(total)
    return table


def _factor_divisor_class(n: int, delta: StableGraph, edge: int, S: frozenset[int]) -> MultiPoly:
    """Class on the genus factor of the piece of `delta` inside it."""
    m = len(S) + 1
    fring = _ring(1, m)
    Sd, (fg, mg), (fk, mk) = separating_data(delta, edge, n)
    if fk.codim():
        raise ValueError("unexpected structure on a point Keel factor")
    if fg.codim() != 1:
        raise ValueError("factor piece is not a divisor")
    # fg already uses factor markings 1..m (legs sorted, node last)
    return divisor_class_ring(1, m, fg)


def pullback_ring_class(n: int, S: frozenset[int], poly: MultiPoly) -> MultiPoly:
    """Ring homomorphism xi_{Delta_S}^* applied to a polynomial class."""
    table = divisor_pullback_table(n, S)
    ring = _ring(1, n)
    m = len(S) + 1
    fring = _ring(1, m)
    out = MultiPoly(fring.gen_names)
    for e, c in poly.terms.items():
        term = MultiPoly.const(fring.gen_names, c)
        for name, k in zip(ring.gen_names, e):
            if k:
                term = term * table[name] ** k
        out = out + term
    return fring.normal_form(out)


# ---------------------------------------------------------------------------
# Classes of strata in the boundary modules, and gluing pushforwards.
# ---------------------------------------------------------------------------

def class_in_module(n: int, graph: StableGraph) -> GradedElement:
    """Class of a boundary stratum in the stored boundary-module basis."""
    module = _module(n)
    sp = space(boundary_module_id(n))
    name = graph_to_gen_name(n, graph)
    if name is not None and name in module.gen_index:
        return module.element(name)
    c = graph.canonical()
    sep = [i for i in range(len(c.edges)) if c.is_separating(i)]
    if not sep:
        # stored non-separating formulas
        if n == 3 and c == _omega_graph_n3().canonical():
            return sp.classes["w"]
        if n == 4:
            om = _match_omega_n4(c)
            if om is not None:
                return sp.classes[f"w{om[0]}{om[1]}"]
            if _is_sigma_graph(c):
                return sp.classes["sigma"]
        raise ValueError(f"no stored class for {graph}")
    e0 = sep[0]
    S, (fg, mg), (fk, mk) = separating_data(c, e0, n)
    xg = class_in_ring(1, fg.n_markings, fg, normalize=False)
    xk = class_in_ring(0, fk.n_markings, fk, normalize=False)
    gring = _ring(1, fg.n_markings)
    kring = _ring(0, fk.n_markings)
    out = GradedElement.make(module, 0, {})
    first = True
    for eg, cg in xg.terms.items():
        for ek, ck in xk.terms.items():
            ambs = [delta_graph(n, S)]
            lpow = 0
            for gname, k in zip(gring.gen_names, eg):
                if not k:
                    continue
                if gname == "l":
                    lpow = k
                    continue
                for _ in range(k):
                    ambs.append(
                        delta_graph(
                            n,
                            _ambient_set_for_factor_gen(n, S, 1, fg, mg, gname),
                        )
                    )
            for kname, k in zip(kring.gen_names, ek):
                for _ in range(k):
                    ambs.append(
                        delta_graph(
                            n,
                            _ambient_set_for_factor_gen(n, S, 0, fk, mk, kname),
                        )
                    )
            target = _common_degeneration(1, n, ambs)
            tname = graph_to_gen_name(n, target)
            if tname is None:
                raise ValueError(f"stratum {target} has no stored generator")
            piece = module.element(tname).times_lambda(lpow).scale(cg * ck)
            out = piece if first else out + piece
            first = False
    return out


def phi_glued(n: int, A: Iterable, B: Iterable) -> tuple[StableGraph, Counter]:
    """Glued graph of the divisor D(A|B) on the (0, n+2) factor of the
    irreducible one-loop stratum; markings 'a','b' are the glued pair.
    Returns the graph and the multiset of vertex pairs of glued edges."""
    A, B = set(map(str, A)), set(map(str, B))
    legsA = {int(x) for x in A if x not in ("a", "b")}
    legsB = {int(x) for x in B if x not in ("a", "b")}
    legs = [0 if m in legsA else 1 for m in range(1, n + 1)]
    v_of = {"a": 0 if "a" in A else 1, "b": 0 if "b" in A else 1}
    edges = [(0, 1), tuple(sorted((v_of["a"], v_of["b"])))]
    g = StableGraph.make([0, 0], legs, edges)
    special = Counter([tuple(sorted((v_of["a"], v_of["b"])))])
    return g, special


def theta_j_glued(n: int, j: int, A: Iterable, B: Iterable) -> tuple[StableGraph, Counter]:
    """Glued graph of D(A|B) on the (0, n+1) factor of the two-vertex
    non-separating stratum with marking j alone; 'a','b' are the half-edges
    at the ({j})-vertex."""
    A, B = set(map(str, A)), set(map(str, B))
    legsA = {int(x) for x in A if x not in ("a", "b")}
    # vertices: 0 = {j}, 1 = A-part, 2 = B-part
    legs = []
    for m in range(1, n + 1):
        if m == j:
            legs.append(0)
        elif m in legsA:
            legs.append(1)
        else:
            legs.append(2)
    v_of = {"a": 1 if "a" in A else 2, "b": 1 if "b" in A else 2}
    edges = [(1, 2), (0, v_of["a"]), (0, v_of["b"])]
    g = StableGraph.make([0, 0, 0], legs, edges)
    special = Counter([tuple(sorted((0, v_of["a"]))), tuple(sorted((0, v_of["b"])))])
    return g, special


def theta_pair_glued(
    jk: tuple[int, int], lm: tuple[int, int], A: Iterable, B: Iterable
) -> tuple[StableGraph, Counter]:
    """Glued graph of pi_1^{-1} D(A|B) for the two-vertex stratum with legs
    {j,k} | {l,m}: the first factor (markings j, k, a, b) degenerates."""
    j, k = jk
    A, B = set(map(str, A)), set(map(str, B))
    legsA = {int(x) for x in A if x not in ("a", "b")}
    # vertices: 0 = A-part of {j,k}-side, 1 = B-part, 2 = {l,m}
    legs = []
    for m in range(1, 5):
        if m in jk:
            legs.append(0 if m in legsA else 1)
        else:
            legs.append(2)
    v_of = {"a": 0 if "a" in A else 1, "b": 0 if "b" in A else 1}
    edges = [(0, 1), tuple(sorted((v_of["a"], 2))), tuple(sorted((v_of["b"], 2)))]
    g = StableGraph.make([0, 0, 0], legs, edges)
    special = Counter(
        [tuple(sorted((v_of["a"], 2))), tuple(sorted((v_of["b"], 2)))]
    )
    return g, special


def omega_glued(jk: tuple[int, int], A: Iterable, B: Iterable) -> tuple[StableGraph, Counter]:
    """Glued graph of D(A|B) on the (0,4) factor of the triangle stratum
    with legs {j,k} together; 'a' attaches to the smaller of the other two
    markings."""
    j, k = jk
    lo, hi = sorted(set(range(1, 5)) - set(jk))
    A, B = set(map(str, A)), set(map(str, B))
    legsA = {int(x) for x in A if x not in ("a", "b")}
    # vertices: 0 = A-part, 1 = B-part, 2 = {lo}, 3 = {hi}
    legs = []
    for m in range(1, 5):
        if m in jk:
            legs.append(0 if m in legsA else 1)
        elif m == lo:
            legs.append(2)
        else:
            legs.append(3)
    v_of = {"a": 0 if "a" in A else 1, "b": 0 if "b" in A else 1}
    edges = [(0, 1), tuple(sorted((v_of["a"], 2))), tuple(sorted((v_of["b"], 3))), (2, 3)]
    g = StableGraph.make([0, 0, 0, 0], legs, edges)
    special = Counter(
        [tuple(sorted((v_of["a"], 2))), tuple(sorted((v_of["b"], 3))), (2, 3)]
    )
    return g, special


def gluing_pushforward(n: int, glued: StableGraph, special: Counter) -> GradedElement:
    """Pushforward of the fundamental class of a stratum of a gluing-map
    source: the class of the glued stratum times the relative automorphism
    index [Aut : Aut_preserving-glued-edges]."""
    full = automorphism_group(glued).order
    rel = _aut_preserving_pairs(glued, special)
    mult = full // rel
    return class_in_module(n, glued).scale(mult)


def _aut_preserving_pairs(g: StableGraph, special: Counter) -> int:
    from itertools import permutations as _perms
    from math import factorial as _fact

    pair_all = Counter(g.edges)
    order = 0
    for p in _perms(range(g.n_vertices)):
        if any(g.genera[p[v]] != g.genera[v] for v in range(g.n_vertices)):
            continue
        if any(p[v] != v for v in set(g.legs)):
            continue
        moved_all = Counter(tuple(sorted((p[a], p[b]))) for a, b in g.edges)
        if moved_all != pair_all:
            continue
        moved_spec = Counter(
            tuple(sorted((p[a], p[b]))) for (a, b), c in special.items() for _ in range(c)
        )
        if moved_spec != special:
            continue
        contrib = 1
        for (a, b), m in pair_all.items():
            ms = special.get((a, b), 0)
            contrib *= _fact(ms) * _fact(m - ms)
            if a == b:
                contrib *= 2 ** m
        order += contrib
    return order


def push_factor_class_to_module(
    n: int,
    S: frozenset[int],
    poly: MultiPoly,
    genus_side: bool,
) -> GradedElement:
    """xi_{Delta_S *} of a class on one factor, landing in the boundary module.

    The factor polynomial must be written in stratum monomials (products of
    divisor generators of the factor ring).  Factor markings are numbered
    with the original legs first (sorted) and the node last.
    """
    module = _module(n)
    marks = sorted(S) if genus_side else sorted(set(range(1, n + 1)) - S)
    mark_map = {i + 1: m for i, m in enumerate(marks)}
    mark_map[len(marks) + 1] = None
    m = len(marks) + 1
    fring = _ring(1 if genus_side else 0, m)
    factor_stub = StableGraph.make([1 if genus_side else 0], [0] * m, [])
    out = GradedElement.make(module, 0, {})
    first = True
    for e, c in poly.terms.items():
        ambs = [delta_graph(n, S)]
        lpow = 0
        for name, k in zip(fring.gen_names, e):
            if not k:
                continue
            if name == "l":
                lpow = k
                continue
            for _ in range(k):
                ambs.append(
                    delta_graph(
                        n,
                        _ambient_set_for_factor_gen(
                            n, S, 1 if genus_side else 0, factor_stub, mark_map, name
                        ),
                    )
                )
        target = _common_degeneration(1, n, ambs)
        tname = graph_to_gen_name(n, target)
        if tname is None:
            raise ValueError(f"stratum {target} has no stored generator")
        piece = module.element(tname).times_lambda(lpow).scale(c)
        out = piece if first else out + piece
        first = False
    return out


# ---------------------------------------------------------------------------
# Forgetful pullback in the boundary modules.
# ---------------------------------------------------------------------------

def forgetful_pullback_module(n: int, elt: GradedElement) -> GradedElement:
    """Pullback along forgetting marking n+1, on boundary-module classes."""
    src = _module(n)
    dst = _module(n + 1)
    table: dict[str, GradedElement] = {}
    for name in src.gen_names:
        graphs = gen_graph_table(n).get(name)
        if not graphs:
            raise ValueError(f"no graph stored for generator {name}")
        graph = graphs[0]
        total = GradedElement.make(dst, 0, {})
        first = True
        for pre in forgetful_preimages(graph, n + 1):
            tname = graph_to_gen_name(n + 1, pre)
            if tname is None:
                raise ValueError(f"preimage {pre} is not a stored generator")
            piece = dst.element(tname)
            total = piece if first else total + piece
            first = False
        table[name] = total
    out = GradedElement.make(dst, elt.degree, {})
    first = True
    for i, c in elt.coeffs:
        name = src.gen_names[i]
        k = elt.degree - src.gen_degrees[i]
        piece = table[name].times_lambda(k).scale(c)
        out = piece if first else out + piece
        first = False
    return out
