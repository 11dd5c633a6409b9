"""Genus-zero data: Keel rings and the mu2-quotient boundary calculus.

`build_keel(n)` presents CH of the n-pointed stable genus-zero space with
the D_I generators and the three stated relation families.  The mu2 side
(markings 1..n-2, a, b with a<->b swapped) works in the free group on
orbit classes of irreducible boundary divisors; `wdvv_mu2_image(n)` returns
the stated generating family of the boundary image there together with a
freeness certificate from Smith normal form.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Optional, Sequence

from ..grading import GradedRing
from ..linalg import invariant_factors_sparse
from ..poly import MultiPoly

Mark = str  # markings are strings: "1".."6", "a", "b"


def _mark_key(m: Mark):
    return (m.isalpha(), m)


def _dname(I: Iterable[Mark]) -> str:
    return "D" + "".join(sorted(I, key=_mark_key))


def standard_marks(n: int) -> list[Mark]:
    return [str(i) for i in range(1, n + 1)]


def mu2_marks(n: int) -> list[Mark]:
    return [str(i) for i in range(1, n - 1)] + ["a", "b"]


def splits(marks: Sequence[Mark]) -> list[frozenset]:
    """Unordered 2-part splits {I, I^c} with both sides of size >= 2,
    represented by the canonical side (lexicographically smallest of the
    two, sizes first)."""
    marks = list(marks)
    out = []
    seen = set()
    n = len(marks)
    for size in range(2, n - 1):
        for I in combinations(marks, size):
            Iset = frozenset(I)
            comp = frozenset(marks) - Iset
            key = min(
                (len(Iset), tuple(sorted(Iset, key=_mark_key))),
                (len(comp), tuple(sorted(comp, key=_mark_key))),
            )
            if key not in seen:
                seen.add(key)
                out.append(frozenset(key[1]))
    return out


def build_keel(n: int, marks: Optional[Sequence[Mark]] = None) -> GradedRing:
    """Keel presentation of CH(stable genus-zero, n markings)."""
    if not 3 <= n <= 6:
        raise ValueError("supported range is 3 <= n <= 6")
    marks = list(marks) if marks is not None else standard_marks(n)
    gens: list[tuple[str, int]] = []
    gen_sets: list[frozenset] = []
    for size in range(2, n - 1):
        for I in combinations(marks, size):
            gens.append((_dname(I), 1))
            gen_sets.append(frozenset(I))
    names = tuple(g for g, _ in gens)
    ring_vars = names
    rels: list[MultiPoly] = []

    def D(I: frozenset) -> MultiPoly:
        return MultiPoly.var(ring_vars, _dname(I))

    universe = frozenset(marks)
    # D_I - D_{I^c}
    for I in gen_sets:
        comp = universe - I
        if 2 <= len(comp) <= n - 2 and _dname(comp) != _dname(I):
            rels.append(D(I) - D(comp))
    # crossing products D_I * D_J
    for i, I in enumerate(gen_sets):
        for J in gen_sets[i + 1:]:
            if not (I <= J or J <= I or I <= universe - J or universe - J <= I):
                rels.append(D(I) * D(J))
    # four-point relations
    for quad in combinations(marks, 4):
        j, k, l, m = quad

        def foursum(p, q, r, s):
            # gen_sets already lists every admissible subset exactly once
            tot = MultiPoly(ring_vars)
            for I in gen_sets:
                if p in I and q in I and r not in I and s not in I:
                    tot = tot + D(I)
            return tot

        rels.append(foursum(j, k, l, m) - foursum(j, l, k, m))
        rels.append(foursum(j, k, l, m) - foursum(j, m, k, l))
    dedup = []
    seen = set()
    for r in rels:
        key = frozenset(r.terms.items())
        nkey = frozenset((-r).terms.items())
        if key not in seen and nkey not in seen and r.terms:
            seen.add(key)
            dedup.append(r)
    return GradedRing(gens, dedup)


KEEL_IDS = ("K03", "K04", "K05", "K06", "K04_mu2", "K05_mu2", "K06_mu2")


def keel_space(space_id: str):
    from ..grading import LAMBDA_RING, GradedModule
    from .spaces import Space

    if space_id in ("K03", "K04", "K05", "K06"):
        n = int(space_id[2])
        if n == 3:
            ring = GradedRing([], [])
        else:
            ring = build_keel(n)
        return Space(space_id=space_id, source="barM0n", presentation=ring)
    if space_id in ("K04_mu2", "K05_mu2", "K06_mu2"):
        # degree-zero part of the quotient boundary: free on orbit classes
        n = int(space_id[2])
        bd = Mu2Boundary(n)
        gens = [("Dh" + "".join(key[1]), 0) for key in bd.orbits]
        module = GradedModule(LAMBDA_RING, gens)
        return Space(space_id=space_id, source="WDVV mod 2", presentation=module)
    return None


# ---------------------------------------------------------------------------
# mu2-orbit boundary classes.
# ---------------------------------------------------------------------------

def _swap_ab(I: frozenset) -> frozenset:
    out = set()
    for m in I:
        out.add({"a": "b", "b": "a"}.get(m, m))
    return frozenset(out)


class Mu2Boundary:
    """Free abelian group on a<->b orbit classes of irreducible divisors."""

    def __init__(self, n: int):
        self.n = n
        self.marks = mu2_marks(n)
        self.universe = frozenset(self.marks)
        irred = []
        seen = set()
        for size in range(2, n - 1):
            for I in combinations(self.marks, size):
                Iset = frozenset(I)
                key = self._split_key(Iset)
                if key not in seen:
                    seen.add(key)
                    irred.append(key)
        # orbit classes under a<->b
        self.orbits: list[tuple] = []
        self.orbit_index: dict[tuple, int] = {}
        for key in irred:
            okey = min(key, self._split_key(_swap_ab(frozenset(key[1]))))
            if okey not in self.orbit_index:
                self.orbit_index[okey] = len(self.orbits)
                self.orbits.append(okey)

    def _split_key(self, I: frozenset) -> tuple:
        comp = self.universe - I
        return min(
            (len(I), tuple(sorted(I, key=_mark_key))),
            (len(comp), tuple(sorted(comp, key=_mark_key))),
        )

    def orbit_of(self, I: Iterable[Mark]) -> int:
        Iset = frozenset(I)
        key = min(self._split_key(Iset), self._split_key(_swap_ab(Iset)))
        return self.orbit_index[key]

    def hat_divisor(self, A: Iterable[Mark], B: Iterable[Mark]) -> dict[int, int]:
        """Orbit-class vector of the (possibly non-irreducible) divisor
        D(A|B): the sum of irreducible splits separating A from B."""
        A, B = frozenset(A), frozenset(B)
        out: dict[int, int] = {}
        seen = set()
        for size in range(2, self.n - 1):
            for I in combinations(self.marks, size):
                Iset = frozenset(I)
                key = self._split_key(Iset)
                if key in seen:
                    continue
                seen.add(key)
                comp = self.universe - frozenset(key[1])
                Ic = frozenset(key[1])
                if (A <= Ic and B <= comp) or (B <= Ic and A <= comp):
                    idx = self.orbit_of(Ic)
                    out[idx] = out.get(idx, 0) + 1
        return out

    def alpha(self, p: Mark, q: Mark) -> dict[int, int]:
        """alpha_pq = D(pqb|1a) + D(1ab|pq) - D(1pq|ab) - D(qab|1p) - D(pab|1q)."""
        out: dict[int, int] = {}
        for sign, A, B in (
            (1, {p, q, "b"}, {"1", "a"}),
            (1, {"1", "a", "b"}, {p, q}),
            (-1, {"1", p, q}, {"a", "b"}),
            (-1, {q, "a", "b"}, {"1", p}),
            (-1, {p, "a", "b"}, {"1", q}),
        ):
            for idx, c in self.hat_divisor(A, B).items():
                out[idx] = out.get(idx, 0) + sign * c
        return {k: v for k, v in out.items() if v}

    def describe(self, vec: dict[int, int]) -> str:
        bits = []
        for idx in sorted(vec):
            I = self.orbits[idx][1]
            bits.append(f"{vec[idx]}*Dh({''.join(I)})")
        return " + ".join(bits) if bits else "0"


def wdvv_mu2_image(n: int) -> tuple["Mu2Boundary", list[dict[int, int]], bool]:
    """The stated generators of the boundary image of the mu2-quotient units
    in degree one, and whether Smith normal form certifies a free family."""
    if not 4 <= n <= 6:
        raise ValueError("supported range is 4 <= n <= 6")
    bd = Mu2Boundary(n)
    ps = [str(i) for i in range(2, n - 1)]
    family: list[dict[int, int]] = []
    for p in ps:
        v1 = bd.hat_divisor({p, "a"}, {"1", "b"})
        v2 = bd.hat_divisor({"1", p}, {"a", "b"})
        vec = dict(v1)
        for k, c in v2.items():
            vec[k] = vec.get(k, 0) - 2 * c
        family.append({k: v for k, v in vec.items() if v})
    seen_pairs = set()
    for p in ps:
        for q in ps:
            if p != q and (q, p) not in seen_pairs:
                seen_pairs.add((p, q))
                a23 = bd.alpha("2", "3")
                apq = bd.alpha(p, q)
                vec = dict(a23)
                for k, c in apq.items():
                    vec[k] = vec.get(k, 0) + c
                vec = {k: v for k, v in vec.items() if v}
                if vec:
                    family.append(vec)
    # the family is free iff it is linearly independent: the subgroup it
    # generates is then free of the same rank
    factors = invariant_factors_sparse([dict(v) for v in family], len(bd.orbits))
    free = len(factors) == len(family)
    return bd, family, free


def keel_rank_degree_one(n: int) -> int:
    ring = build_keel(n)
    _, grp = ring.degree_slice(1)
    return grp.isomorphism_type()[0]
