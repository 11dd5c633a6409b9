"""Catalog of stored presentations: loading, lookup and generator graphs.

Every presentation printed in the source results is transcribed into a text
fixture under data/ (one file per result, provenance tag in the header) and
parsed here into GradedRing / GradedModule objects.  The catalog also owns
the dictionary between boundary-module generator names and stable graphs,
which the tautological calculus uses to name the strata it produces.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from importlib import resources
from typing import Optional, Union

from ..exprparse import parse_poly, parse_terms
from ..grading import (
    A_RING,
    LAMBDA,
    LAMBDA_RING,
    GradedElement,
    GradedModule,
    GradedRing,
)
from ..graphs import StableGraph
from ..poly import MultiPoly
from .names import canon_name, expand_template

_SECTION_KEYS = (
    "kind",
    "base",
    "indices",
    "generators",
    "relations",
    "classes",
    "more_classes",
    "higher_generators",
    "higher_relations",
    "boundary_image",
    "lifts",
    "correspondence",
)


@dataclass
class Space:
    """One catalog entry: a presentation plus its bookkeeping tables."""

    space_id: str
    source: str
    presentation: Union[GradedRing, GradedModule]
    classes: dict[str, object] = field(default_factory=dict)
    correspondence: dict[str, str] = field(default_factory=dict)
    higher: Optional[GradedModule] = None
    boundary_image: dict[str, str] = field(default_factory=dict)
    lifts: list[tuple[str, str]] = field(default_factory=list)


def _read_fixture(name: str) -> dict:
    text = resources.files("chowcalc.catalog").joinpath(f"data/{name}").read_text()
    out: dict = {"source": "", "sections": {}}
    current = None
    for raw in text.splitlines():
        line = raw.rstrip()
        if not line.strip():
            continue
        if line.startswith("#"):
            m = re.match(r"#\s*source:\s*(.+)$", line)
            if m:
                out["source"] = m.group(1).strip()
            continue
        m = re.match(r"^([a-z_]+):\s*(.*)$", line)
        if m and m.group(1) in _SECTION_KEYS:
            current = m.group(1)
            out["sections"].setdefault(current, [])
            if m.group(2).strip():
                out["sections"][current].append(m.group(2).strip())
        elif line.startswith((" ", "\t")) and current:
            out["sections"][current].append(line.strip())
        else:
            raise ValueError(f"cannot parse fixture line {line!r} in {name}")
    return out


def _expand_lines(lines: list[str], indices: list[int]) -> list[str]:
    out = []
    for line in lines:
        out.extend(expand_template(line, indices))
    return out


def _parse_generators(lines: list[str], indices: list[int]) -> list[tuple[str, int]]:
    gens: list[tuple[str, int]] = []
    seen = set()
    for line in _expand_lines(lines, indices):
        for tok in line.split():
            name, _, deg = tok.partition(":")
            name = canon_name(name)
            if name not in seen:
                seen.add(name)
                gens.append((name, int(deg)))
    return gens


def _dedupe_polys(polys: list[MultiPoly]) -> list[MultiPoly]:
    out = []
    seen = set()
    for p in polys:
        key = frozenset(p.terms.items())
        if key not in seen and p.terms:
            seen.add(key)
            out.append(p)
    return out


def _module_element(
    module: GradedModule, text: str, defs: dict[str, GradedElement]
) -> GradedElement:
    """Parse a module element, allowing class names from `defs`."""
    coeffs: dict[int, int] = {}
    degree: Optional[int] = None
    pieces: list[GradedElement] = []
    for c, mono in parse_terms(text):
        mono = {canon_name(n): p for n, p in mono.items()}
        k = mono.pop(LAMBDA, 0)
        if len(mono) != 1:
            raise ValueError(f"module term must be c*l^k*name: {text!r}")
        (name, power), = mono.items()
        if power != 1:
            raise ValueError(f"no powers of {name!r} in a module element")
        if name in defs:
            pieces.append(defs[name].times_lambda(k).scale(c))
        else:
            i = module.gen_index.get(name)
            if i is None:
                raise ValueError(f"unknown name {name!r} in {text!r}")
            d = k + module.gen_degrees[i]
            if degree is None:
                degree = d
            coeffs[i] = coeffs.get(i, 0) + c
    base = None
    if coeffs:
        if degree is None:
            raise AssertionError
        base = GradedElement.make(module, degree, coeffs)
    for p in pieces:
        base = p if base is None else base + p
    if base is None:
        # zero element; degree unknown, default 0
        base = GradedElement.make(module, 0, {})
    return base


def _load_space(fname: str, space_id: str) -> Space:
    fx = _read_fixture(fname)
    sec = fx["sections"]
    indices = [int(x) for x in " ".join(sec.get("indices", ["" ])).split()] or [1, 2, 3, 4]
    kind = " ".join(sec.get("kind", ["ring"])).strip()
    gens = _parse_generators(sec.get("generators", []), indices)

    classes: dict[str, object] = {}
    if kind == "ring":
        names = tuple(n for n, _ in gens)
        defs: dict[str, MultiPoly] = {}
        for line in _expand_lines(sec.get("classes", []), indices):
            lhs, rhs = (x.strip() for x in line.split("=", 1))
            defs[canon_name(lhs)] = parse_poly(rhs, names, defs)
        rels = [
            parse_poly(line, names, defs)
            for line in _expand_lines(sec.get("relations", []), indices)
        ]
        ring = GradedRing(gens, _dedupe_polys(rels))
        classes.update(defs)
        presentation: Union[GradedRing, GradedModule] = ring
    else:
        base = A_RING if " ".join(sec.get("base", ["A"])).strip() == "A" else LAMBDA_RING
        module = GradedModule(base, gens)
        defs_m: dict[str, GradedElement] = {}
        for key in ("classes",):
            for line in _expand_lines(sec.get(key, []), indices):
                lhs, rhs = (x.strip() for x in line.split("=", 1))
                defs_m[canon_name(lhs)] = _module_element(module, rhs, defs_m)
        rel_elts = []
        seen = set()
        for line in _expand_lines(sec.get("relations", []), indices):
            e = _module_element(module, line, defs_m)
            key = (e.degree, e.coeffs)
            if key not in seen and not e.is_zero():
                seen.add(key)
                rel_elts.append(e)
        module = module.with_relations(rel_elts)
        # re-anchor stored class elements onto the module with relations
        defs_m = {
            k: GradedElement.make(module, v.degree, v.as_dict())
            for k, v in defs_m.items()
        }
        for line in _expand_lines(sec.get("more_classes", []), indices):
            lhs, rhs = (x.strip() for x in line.split("=", 1))
            defs_m[canon_name(lhs)] = _module_element(module, rhs, defs_m)
        classes.update(defs_m)
        presentation = module

    sp = Space(space_id=space_id, source=fx["source"], presentation=presentation, classes=classes)
    if kind == "ring":
        # correspondence values may reference stored classes and earlier entries
        names = tuple(n for n, _ in gens)
        corr_defs: dict[str, MultiPoly] = {
            k: v for k, v in classes.items() if isinstance(v, MultiPoly)
        }
        for line in sec.get("correspondence", []):
            for expanded in expand_template(line, indices):
                lhs, rhs = (x.strip() for x in expanded.split("=", 1))
                lhs = canon_name(lhs)
                value = parse_poly(rhs, names, corr_defs)
                if lhs not in sp.correspondence:
                    sp.correspondence[lhs] = value
                    corr_defs[lhs] = value
    else:
        for line in sec.get("correspondence", []):
            for expanded in expand_template(line, indices):
                lhs, rhs = (x.strip() for x in expanded.split("=", 1))
                lhs = canon_name(lhs)
                if lhs not in sp.correspondence:
                    sp.correspondence[lhs] = rhs
    for line in sec.get("boundary_image", []):
        lhs, rhs = (x.strip() for x in line.split("=", 1))
        sp.boundary_image[lhs] = rhs
    for line in sec.get("lifts", []):
        lhs, rhs = (x.strip() for x in line.split("->", 1))
        sp.lifts.append((lhs.strip(), rhs.strip()))

    hg = sec.get("higher_generators", [])
    if hg:
        hgens = _parse_generators(hg, indices)
        hrels = []
        hmod = GradedModule(LAMBDA_RING, hgens)
        seenr = set()
        relts = []
        for line in _expand_lines(sec.get("higher_relations", []), indices):
            e = _module_element(hmod, line, {})
            key = (e.degree, e.coeffs)
            if key not in seenr and not e.is_zero():
                seenr.add(key)
                relts.append(e)
        sp.higher = hmod.with_relations(relts)
    return sp


_FILES = {
    "M11": "m11.txt",
    "M12": "m12.txt",
    "M120": "m120.txt",
    "M13": "m13.txt",
    "M130": "m130.txt",
    "M14": "m14.txt",
    "M140": "m140.txt",
    "Y12": "y12.txt",
    "bM11": "bm11.txt",
    "bM12": "bm12.txt",
    "bM13": "bm13.txt",
    "bM14": "bm14.txt",
    "dM11": "dm11.txt",
    "dM12": "dm12.txt",
    "dM13": "dm13.txt",
    "dM13stmt": "dm13_stmt.txt",
    "dM14": "dm14.txt",
}

_CACHE: dict[str, Space] = {}


def space(space_id: str) -> Space:
    """Load (and cache) a catalog space by id."""
    got = _CACHE.get(space_id)
    if got is None:
        fname = _FILES.get(space_id)
        if fname is None:
            from .keel import keel_space  # late import: keel ids are built, not stored

            got = keel_space(space_id)
            if got is None:
                raise KeyError(f"unknown space id {space_id!r}")
        else:
            got = _load_space(fname, space_id)
        _CACHE[space_id] = got
    return got


def get_presentation(space_id: str) -> Union[GradedRing, GradedModule]:
    return space(space_id).presentation


def known_space_ids() -> list[str]:
    from .keel import KEEL_IDS

    return sorted(_FILES) + sorted(KEEL_IDS)


# ---------------------------------------------------------------------------
# Generator name <-> stable graph dictionaries for the boundary modules.
# ---------------------------------------------------------------------------

def delta_graph(n: int, S: frozenset[int]) -> StableGraph:
    """The divisor whose genus-one vertex carries exactly the markings in S."""
    legs = [0 if (m in S) else 1 for m in range(1, n + 1)]
    return StableGraph.make([1, 0], legs, [(0, 1)])


def phi_graph(n: int) -> StableGraph:
    return StableGraph.make([0], [0] * n, [(0, 0)])


def theta_graph(n: int, left: frozenset[int]) -> StableGraph:
    """Two genus-0 vertices joined by two edges; `left` markings on vertex 0."""
    legs = [0 if (m in left) else 1 for m in range(1, n + 1)]
    return StableGraph.make([0, 0], legs, [(0, 1), (0, 1)])


def _subsets(items, size):
    from itertools import combinations

    return [frozenset(c) for c in combinations(items, size)]


def _delta_name(n: int, S: frozenset[int]) -> str:
    if not S:
        return "de"
    return "d" + "".join(str(x) for x in sorted(S))


def gen_graph_table(n: int) -> dict[str, list[StableGraph]]:
    """Boundary-module generator name -> representative graphs, for (1, n)."""
    table: dict[str, list[StableGraph]] = {}
    marks = range(1, n + 1)

    def add(name: str, g: StableGraph):
        table.setdefault(name, []).append(g.canonical())

    # codimension one
    for size in range(0, n - 1):
        for S in _subsets(marks, size):
            add(_delta_name(n, S), delta_graph(n, S))
    add("phi", phi_graph(n))
    # non-separating codimension two
    if n == 2:
        add("th", theta_graph(2, frozenset({1})))
    elif n == 3:
        for j in marks:
            add(f"th{j}", theta_graph(3, frozenset({j})))
    elif n == 4:
        for j in marks:
            add(f"th{j}", theta_graph(4, frozenset({j})))
        for pair in _subsets(marks, 2):
            name = canon_name(
                "th" + "".join(str(x) for x in sorted(pair)) + "_"
                + "".join(str(x) for x in sorted(set(marks) - pair))
            )
            add(name, theta_graph(4, pair))
    # nested separating strata
    if n == 3:
        for j in marks:
            # chain: genus 1 -- {j} -- rest
            g = StableGraph.make([1, 0, 0], _chain_legs(3, [frozenset(), frozenset({j})]), [(0, 1), (1, 2)])
            add("de_s", g)
    if n == 4:
        for j in marks:
            g = StableGraph.make([1, 0, 0], _chain_legs(4, [frozenset(), frozenset({j})]), [(0, 1), (1, 2)])
            add(f"de_{j}", g)
        for pair in _subsets(marks, 2):
            g = StableGraph.make([1, 0, 0], _chain_legs(4, [frozenset(), pair]), [(0, 1), (1, 2)])
            add("de_" + "".join(str(x) for x in sorted(pair)), g)
        for j in marks:
            for k in sorted(set(marks) - {j}):
                # genus side keeps {j}; middle tail carries k's pair partner
                g = StableGraph.make(
                    [1, 0, 0], _chain_legs(4, [frozenset({j}), frozenset({j, k})]), [(0, 1), (1, 2)]
                )
                add(f"d{j}_s", g)
        for pair in _subsets(marks, 2):
            comp = frozenset(set(marks) - pair)
            a = "".join(str(x) for x in sorted(pair))
            b = "".join(str(x) for x in sorted(comp))
            g = StableGraph.make(
                [0, 1, 0],
                [0 if m in pair else (2 if m in comp else 1) for m in marks],
                [(0, 1), (1, 2)],
            )
            add(canon_name(f"d{a}_{b}"), g)
        for j in marks:
            for k in sorted(set(marks) - {j}):
                legs = []
                rest = sorted(set(marks) - {j, k})
                for m in marks:
                    if m == j:
                        legs.append(1)
                    elif m == k:
                        legs.append(2)
                    else:
                        legs.append(3)
                g = StableGraph.make([1, 0, 0, 0], legs, [(0, 1), (1, 2), (2, 3)])
                add("de_s_s", g)
    return table


def _chain_legs(n: int, genus_side_sets: list[frozenset[int]]) -> list[int]:
    """Legs for a chain g1 - v1 - v2 where genus_side_sets[0] sits on g1 and
    genus_side_sets[1] - genus_side_sets[0] on v1; the rest on the far end."""
    S0, S1 = genus_side_sets
    legs = []
    for m in range(1, n + 1):
        if m in S0:
            legs.append(0)
        elif m in S1:
            legs.append(1)
        else:
            legs.append(2)
    return legs


def graph_to_gen_name(n: int, g: StableGraph) -> Optional[str]:
    """Name of the boundary-module generator whose stratum is g, if any."""
    table = gen_graph_table(n)
    c = g.canonical()
    for name, graphs in table.items():
        if c in graphs:
            return name
    return None


def boundary_module_id(n: int) -> str:
    return {1: "dM11", 2: "dM12", 3: "dM13", 4: "dM14"}[n]


def ring_id(g: int, n: int) -> str:
    if g == 1:
        return {1: "bM11", 2: "bM12", 3: "bM13", 4: "bM14"}[n]
    return {3: "K03", 4: "K04", 5: "K05", 6: "K06"}[n]
