"""Stable graphs of low genus: enumeration, isomorphism, contractions.

A stable graph records vertex genera, a marking -> vertex assignment and a
multiset of edges (unordered vertex pairs; loops allowed).  Everything here
is brute force: the spaces in the catalog never need more than five
vertices, so canonical forms by exhaustive vertex relabelling are cheap.

Automorphisms fix markings pointwise.  The group is generated by admissible
vertex permutations together with swaps of parallel edges and the half-edge
flips of loops; its order is

    sum over admissible vertex permutations of
        prod over vertex pairs of (multiplicity)!  *  2^(number of loops).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import permutations
from math import factorial
from typing import Iterable, Sequence


@dataclass(frozen=True)
class StableGraph:
    genera: tuple[int, ...]                 # genus per vertex
    legs: tuple[int, ...]                   # legs[m-1] = vertex carrying marking m
    edges: tuple[tuple[int, int], ...]      # sorted pairs, sorted multiset

    @classmethod
    def make(cls, genera: Sequence[int], legs: Sequence[int], edges: Iterable[tuple[int, int]]) -> "StableGraph":
        e = tuple(sorted(tuple(sorted(p)) for p in edges))
        return cls(tuple(genera), tuple(legs), e)

    @property
    def n_vertices(self) -> int:
        return len(self.genera)

    @property
    def n_markings(self) -> int:
        return len(self.legs)

    def valence(self, v: int) -> int:
        val = sum(1 for m in self.legs if m == v)
        for a, b in self.edges:
            if a == v:
                val += 1
            if b == v:
                val += 1
        return val

    def total_genus(self) -> int:
        b1 = len(self.edges) - self.n_vertices + self._n_components()
        return sum(self.genera) + b1

    def _n_components(self) -> int:
        seen = set()
        comps = 0
        adj: dict[int, set[int]] = {v: set() for v in range(self.n_vertices)}
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        for v in range(self.n_vertices):
            if v not in seen:
                comps += 1
                stack = [v]
                while stack:
                    x = stack.pop()
                    if x in seen:
                        continue
                    seen.add(x)
                    stack.extend(adj[x])
        return comps

    def is_stable(self) -> bool:
        if self._n_components() != 1:
            return False
        return all(2 * g - 2 + self.valence(v) > 0 for v, g in enumerate(self.genera))

    def codim(self) -> int:
        return len(self.edges)

    def relabel(self, perm: Sequence[int]) -> "StableGraph":
        """perm[v] = new index of vertex v."""
        genera = [0] * self.n_vertices
        for v, g in enumerate(self.genera):
            genera[perm[v]] = g
        legs = tuple(perm[v] for v in self.legs)
        edges = [(perm[a], perm[b]) for a, b in self.edges]
        return StableGraph.make(genera, legs, edges)

    def canonical(self) -> "StableGraph":
        best = None
        for p in permutations(range(self.n_vertices)):
            cand = self.relabel(p)
            key = (cand.genera, cand.legs, cand.edges)
            if best is None or key < best[0]:
                best = (key, cand)
        return best[1] if best else self

    def is_isomorphic(self, other: "StableGraph") -> bool:
        return (
            self.n_markings == other.n_markings
            and self.canonical() == other.canonical()
        )

    def rename_markings(self, sigma: dict[int, int]) -> "StableGraph":
        """Apply a marking relabelling m -> sigma[m] (missing keys fixed)."""
        n = self.n_markings
        legs = [0] * n
        for m, v in enumerate(self.legs, start=1):
            legs[sigma.get(m, m) - 1] = v
        return StableGraph.make(self.genera, legs, self.edges)

    # -- contractions and stabilisation ---------------------------------------

    def contract_edge(self, edge_index: int) -> "StableGraph":
        a, b = self.edges[edge_index]
        rest = list(self.edges[:edge_index]) + list(self.edges[edge_index + 1:])
        if a == b:
            # smoothing a non-separating node: genus bump
            genera = list(self.genera)
            genera[a] += 1
            return StableGraph.make(genera, self.legs, rest)
        # merge b into a, reindex
        keep = [v for v in range(self.n_vertices) if v != b]
        newidx = {v: i for i, v in enumerate(keep)}
        newidx[b] = newidx[a]
        genera = [self.genera[v] for v in keep]
        genera[newidx[a]] = self.genera[a] + self.genera[b]
        legs = tuple(newidx[v] for v in self.legs)
        edges = [(newidx[x], newidx[y]) for x, y in rest]
        return StableGraph.make(genera, legs, edges)

    def contract_edges(self, indices: Iterable[int]) -> "StableGraph":
        g = self
        for i in sorted(indices, reverse=True):
            g = g.contract_edge(i)
        return g

    def is_separating(self, edge_index: int) -> bool:
        a, b = self.edges[edge_index]
        if a == b:
            return False
        adj: dict[int, list[int]] = {v: [] for v in range(self.n_vertices)}
        for i, (x, y) in enumerate(self.edges):
            if i == edge_index:
                continue
            adj[x].append(y)
            adj[y].append(x)
        seen = {a}
        stack = [a]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return b not in seen

    def forget_marking(self, m: int) -> "StableGraph":
        """Remove marking m, stabilise, and renumber the rest 1..n-1."""
        v0 = self.legs[m - 1]
        legs = [v for i, v in enumerate(self.legs) if i != m - 1]
        g = StableGraph.make(self.genera, legs, self.edges)
        return _stabilize(g)

    # -- misc ------------------------------------------------------------------

    def vertex_markings(self, v: int) -> tuple[int, ...]:
        return tuple(m for m, w in enumerate(self.legs, start=1) if w == v)

    def __str__(self) -> str:
        return graph_literal(self)


def _stabilize(g: StableGraph) -> StableGraph:
    while True:
        unstable = None
        for v in range(g.n_vertices):
            if g.genera[v] == 0 and 2 * g.genera[v] - 2 + g.valence(v) <= 0:
                unstable = v
                break
        if unstable is None:
            return g
        v = unstable
        nlegs = [m for m, w in enumerate(g.legs, start=1) if w == v]
        incid = []
        for i, (a, b) in enumerate(g.edges):
            if a == v:
                incid.append((i, b))
            if b == v:
                incid.append((i, a))
        if len(incid) + len(nlegs) > 2:
            raise ValueError("vertex counted unstable with valence > 2")
        if len(incid) == 2 and not nlegs:
            # fuse the two incidences into a single edge (possibly a loop)
            (i1, u1), (i2, u2) = incid
            keep = [e for j, e in enumerate(g.edges) if j not in (i1, i2)]
            keep.append(tuple(sorted((u1, u2))))
            g = _drop_vertex(StableGraph.make(g.genera, g.legs, keep), v)
        elif len(incid) == 1 and len(nlegs) <= 1:
            # a tail that lost its purpose: delete it (the leg, if any, moves
            # to the attachment vertex)
            (i1, u1) = incid[0]
            keep = [e for j, e in enumerate(g.edges) if j != i1]
            legs = tuple(u1 if w == v else w for w in g.legs)
            g = _drop_vertex(StableGraph.make(g.genera, legs, keep), v)
        else:
            raise ValueError(f"cannot stabilise: {g}")


def _drop_vertex(g: StableGraph, v: int) -> StableGraph:
    if any(w == v for w in g.legs) or any(v in e for e in g.edges):
        raise ValueError("vertex still in use")
    keep = [w for w in range(g.n_vertices) if w != v]
    idx = {w: i for i, w in enumerate(keep)}
    return StableGraph.make(
        [g.genera[w] for w in keep],
        tuple(idx[w] for w in g.legs),
        [(idx[a], idx[b]) for a, b in g.edges],
    )


# ---------------------------------------------------------------------------
# Enumeration.
# ---------------------------------------------------------------------------

_ENUM_CACHE: dict[tuple[int, int], tuple[StableGraph, ...]] = {}


def enumerate_stable_graphs(g: int, n: int) -> tuple[StableGraph, ...]:
    """All stable graphs of genus g with n markings, up to isomorphism.

    Closure of the smooth graph under one-edge degenerations; the order is
    deterministic (by codimension, then canonical key).
    """
    if g not in (0, 1):
        raise ValueError("only genus 0 and 1 are supported")
    if (g == 0 and not 3 <= n <= 6) or (g == 1 and not 1 <= n <= 4):
        raise ValueError(f"({g},{n}) is out of the supported range")
    got = _ENUM_CACHE.get((g, n))
    if got is not None:
        return got
    smooth = StableGraph.make([g], [0] * n, [])
    seen = {smooth.canonical()}
    frontier = [smooth.canonical()]
    while frontier:
        nxt = []
        for gr in frontier:
            for d in one_edge_degenerations(gr):
                c = d.canonical()
                if c not in seen:
                    seen.add(c)
                    nxt.append(c)
        frontier = nxt
    ordered = tuple(sorted(seen, key=lambda x: (x.codim(), x.genera, x.legs, x.edges)))
    _ENUM_CACHE[(g, n)] = ordered
    return ordered


def one_edge_degenerations(g: StableGraph) -> list[StableGraph]:
    out = []
    for v in range(g.n_vertices):
        gv = g.genera[v]
        # non-separating: drop genus, add a loop
        if gv >= 1:
            genera = list(g.genera)
            genera[v] -= 1
            cand = StableGraph.make(genera, g.legs, list(g.edges) + [(v, v)])
            if cand.is_stable():
                out.append(cand)
        # separating-at-the-vertex: split v into v and a new vertex v'
        legs_here = [m for m, w in enumerate(g.legs, start=1) if w == v]
        incid = []
        for i, (a, b) in enumerate(g.edges):
            if a == v:
                incid.append((i, 0))
            if b == v:
                incid.append((i, 1))
        nl, ni = len(legs_here), len(incid)
        vnew = g.n_vertices
        for g1 in range(gv + 1):
            g2 = gv - g1
            for lmask in range(1 << nl):
                for imask in range(1 << ni):
                    genera = list(g.genera) + [g2]
                    genera[v] = g1
                    legs = list(g.legs)
                    for bit, m in enumerate(legs_here):
                        if lmask >> bit & 1:
                            legs[m - 1] = vnew
                    edges = [list(e) for e in g.edges]
                    for bit, (i, side) in enumerate(incid):
                        if imask >> bit & 1:
                            edges[i][side] = vnew
                    edges.append((v, vnew))
                    cand = StableGraph.make(genera, legs, [tuple(e) for e in edges])
                    if cand.is_stable():
                        out.append(cand)
    return out


# ---------------------------------------------------------------------------
# Automorphisms.
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GraphAutomorphisms:
    order: int
    vertex_perms: tuple[tuple[int, ...], ...]   # admissible vertex permutations
    parallel_pairs: tuple[tuple[int, int, int], ...]  # (a, b, multiplicity >= 2)
    loops: tuple[int, ...]                       # vertices carrying loops (with multiplicity)

    def generators(self) -> list[str]:
        gens = []
        for p in self.vertex_perms:
            if p != tuple(range(len(p))):
                gens.append("vertex permutation " + str(p))
        for a, b, m in self.parallel_pairs:
            gens.append(f"swap of {m} parallel edges between v{a} and v{b}")
        for v in self.loops:
            gens.append(f"half-edge flip of a loop at v{v}")
        return gens


def automorphism_group(g: StableGraph) -> GraphAutomorphisms:
    """Order and generator description of Aut(g), markings fixed pointwise."""
    from collections import Counter

    pair_counts = Counter(g.edges)
    perms = []
    for p in permutations(range(g.n_vertices)):
        if any(g.genera[p[v]] != g.genera[v] for v in range(g.n_vertices)):
            continue
        if any(p[v] != v for v in set(g.legs)):
            continue
        moved = Counter(tuple(sorted((p[a], p[b]))) for a, b in g.edges)
        if moved == pair_counts:
            perms.append(p)
    edge_factor = 1
    parallel = []
    loops = []
    for (a, b), m in sorted(pair_counts.items()):
        edge_factor *= factorial(m)
        if a == b:
            loops.extend([a] * m)
            edge_factor *= 2 ** m
            if m >= 2:
                parallel.append((a, b, m))
        elif m >= 2:
            parallel.append((a, b, m))
    return GraphAutomorphisms(
        order=len(perms) * edge_factor,
        vertex_perms=tuple(perms),
        parallel_pairs=tuple(parallel),
        loops=tuple(loops),
    )


# ---------------------------------------------------------------------------
# Intersections in the stratification poset.
# ---------------------------------------------------------------------------

def generic_intersection_graphs(
    gamma: StableGraph, gamma2: StableGraph, g: int, n: int
) -> list[tuple[StableGraph, tuple[int, ...], tuple[int, ...]]]:
    """Generic graphs for a pair of strata, with their edge structures.

    Returns triples (Delta, S, S2) where S (resp. S2) are edge indices of
    Delta contracting onto gamma (resp. gamma2): contracting the complement
    of S in Delta yields a graph isomorphic to gamma.  Every edge of Delta
    lies in S union S2.  Distinct structures on one Delta are all returned.
    """
    k1, k2 = gamma.codim(), gamma2.codim()
    c1, c2 = gamma.canonical(), gamma2.canonical()
    out = []
    seen = set()
    for delta in enumerate_stable_graphs(g, n):
        ne = delta.codim()
        if ne > k1 + k2 or ne < max(k1, k2):
            continue
        idx = range(ne)
        from itertools import combinations

        for S in combinations(idx, k1):
            rest = [i for i in idx if i not in S]
            if delta.contract_edges(rest).canonical() != c1:
                continue
            for S2 in combinations(idx, k2):
                if set(S) | set(S2) != set(idx):
                    continue
                rest2 = [i for i in idx if i not in S2]
                if delta.contract_edges(rest2).canonical() != c2:
                    continue
                key = (delta, S, S2)
                if key not in seen:
                    seen.add(key)
                    out.append((delta, tuple(S), tuple(S2)))
    return out


def intersect_strata(gamma: StableGraph, gamma2: StableGraph, g: int, n: int) -> list[StableGraph]:
    """Supports of the fiber product of two boundary strata (possibly empty)."""
    triples = generic_intersection_graphs(gamma, gamma2, g, n)
    out = []
    seen = set()
    for delta, _, _ in triples:
        c = delta.canonical()
        if c not in seen:
            seen.add(c)
            out.append(c)
    return out


def forgetful_preimages(gamma: StableGraph, n_plus_1: int) -> list[StableGraph]:
    """Graphs of (g, n+1) whose stabilisation after forgetting the last
    marking is gamma; these are the components of the flat pullback."""
    g = gamma.total_genus()
    target = gamma.canonical()
    out = []
    for cand in enumerate_stable_graphs(g, n_plus_1):
        if cand.codim() != gamma.codim():
            continue
        if cand.forget_marking(n_plus_1).canonical() == target:
            out.append(cand)
    return out


# ---------------------------------------------------------------------------
# Graph literals:  G(1; v0:0[1], v1:0[2,3]; v0-v1, v0-v1)
# ---------------------------------------------------------------------------

def graph_literal(g: StableGraph) -> str:
    parts = []
    for v in range(g.n_vertices):
        marks = ",".join(str(m) for m in g.vertex_markings(v))
        parts.append(f"v{v}:{g.genera[v]}[{marks}]")
    edges = ", ".join(f"v{a}-v{b}" for a, b in g.edges)
    body = ", ".join(parts)
    if edges:
        return f"G({g.total_genus()}; {body}; {edges})"
    return f"G({g.total_genus()}; {body})"


_LITERAL = re.compile(
    r"G\(\s*(\d+)\s*;\s*(?P<verts>[^;]*?)\s*(?:;\s*(?P<edges>.*?)\s*)?\)$"
)


def parse_graph(text: str) -> StableGraph:
    m = _LITERAL.match(text.strip())
    if not m:
        raise ValueError(f"bad graph literal: {text!r}")
    total = int(m.group(1))
    genera = []
    legmap: dict[int, int] = {}
    names: dict[str, int] = {}
    specs = re.findall(r"(v\d+):(\d+)\[([0-9,\s]*)\]", m.group("verts"))
    if not specs:
        raise ValueError("no vertices")
    for name, gv, marks in specs:
        names[name] = len(genera)
        genera.append(int(gv))
        for tok in marks.split(","):
            tok = tok.strip()
            if tok:
                legmap[int(tok)] = names[name]
    n = max(legmap) if legmap else 0
    legs = [legmap[i + 1] for i in range(n)]
    edges = []
    if m.group("edges"):
        for piece in m.group("edges").split(","):
            piece = piece.strip()
            if not piece:
                continue
            em = re.match(r"(v\d+)-(v\d+)$", piece)
            if not em:
                raise ValueError(f"bad edge {piece!r}")
            edges.append((names[em.group(1)], names[em.group(2)]))
    g = StableGraph.make(genera, legs, edges)
    if g.total_genus() != total:
        raise ValueError("declared genus disagrees with the graph")
    return g
