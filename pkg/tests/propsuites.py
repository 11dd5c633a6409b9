"""Shared randomized property suites (used by module tests and acceptance).

Each suite runs `trials` independent random instances and returns the trial
count, raising AssertionError on the first violated invariant.
"""

import random

from chowcalc.exprparse import parse_poly
from chowcalc.grading import GradedRing
from chowcalc.linalg import FPAbelianGroup, GroupMap, IntMatrix, cokernel, pushout, smith_normal_form
from chowcalc.poly import MultiPoly


def run_snf_suite(trials: int = 1000, seed: int = 424242) -> int:
    rng = random.Random(seed)
    for _ in range(trials):
        r = rng.randrange(0, 13)
        c = rng.randrange(0, 13)
        bound = 10 ** rng.choice((1, 2, 6))
        M = IntMatrix(
            [[rng.randrange(-bound, bound + 1) for _ in range(c)] for _ in range(r)],
            cols=c,
        )
        s = smith_normal_form(M)
        if r and c:
            assert s.U @ M @ s.V == s.D
        assert abs(s.U.det()) == 1 and abs(s.V.det()) == 1
        f = s.invariant_factors
        assert all(x > 0 for x in f)
        for i in range(len(f) - 1):
            assert f[i + 1] % f[i] == 0
    return trials


def run_pushout_suite(trials: int = 1000, seed: int = 31337) -> int:
    rng = random.Random(seed)
    for _ in range(trials):
        a, b, c = (rng.randrange(1, 3) for _ in range(3))
        A = FPAbelianGroup.from_rows([f"a{i}" for i in range(a)], [])
        B = FPAbelianGroup.from_rows(
            [f"b{i}" for i in range(b)],
            [[rng.randrange(-4, 5) for _ in range(b)] for _ in range(rng.randrange(0, 3))],
        )
        C = FPAbelianGroup.from_rows(
            [f"c{i}" for i in range(c)],
            [[rng.randrange(-4, 5) for _ in range(c)] for _ in range(rng.randrange(0, 3))],
        )
        F = IntMatrix([[rng.randrange(-4, 5) for _ in range(b)] for _ in range(a)], cols=b)
        G = IntMatrix([[rng.randrange(-4, 5) for _ in range(c)] for _ in range(a)], cols=c)
        P, _, _ = pushout(GroupMap(A, B, F), GroupMap(A, C, G))
        BC = FPAbelianGroup.from_rows(
            [f"b{i}" for i in range(b)] + [f"c{i}" for i in range(c)],
            [list(r) + [0] * c for r in B.relations.data]
            + [[0] * b + list(r) for r in C.relations.data],
        )
        stacked = IntMatrix(
            [list(F.data[i]) + [-x for x in G.data[i]] for i in range(a)], cols=b + c
        )
        C2, _ = cokernel(GroupMap(A, BC, stacked))
        assert P.isomorphism_type() == C2.isomorphism_type()
    return trials


_NF_RING = None


def _nf_ring() -> GradedRing:
    global _NF_RING
    if _NF_RING is None:
        V = ("l", "de")
        _NF_RING = GradedRing(
            [("l", 1), ("de", 1)],
            [parse_poly("24*l^2", V), parse_poly("de^2 + l*de", V)],
        )
    return _NF_RING


def run_normal_form_suite(trials: int = 1000, seed: int = 12345) -> int:
    r = _nf_ring()
    rng = random.Random(seed)
    V = r.gen_names
    lam = MultiPoly.var(V, "l")
    for _ in range(trials):
        d = rng.randrange(1, 6)
        monos = r.monomials(d)
        a = MultiPoly(V, {m: rng.randrange(-9, 10) for m in monos if rng.random() < 0.7})
        b = MultiPoly(V, {m: rng.randrange(-9, 10) for m in monos if rng.random() < 0.7})
        na, nb = r.normal_form(a), r.normal_form(b)
        assert r.normal_form(na) == na
        assert r.normal_form(na + nb) == r.normal_form(a + b)
        assert r.normal_form(lam * na) == r.normal_form(lam * a)
    return trials


def run_parser_suite(trials: int = 1000, seed: int = 2718) -> int:
    rng = random.Random(seed)
    V = ("x", "y", "z")
    for _ in range(trials):
        p = MultiPoly(V)
        for _ in range(rng.randrange(0, 6)):
            e = tuple(rng.randrange(0, 4) for _ in V)
            p = p + MultiPoly(V, {e: rng.randrange(-99, 100)})
        assert parse_poly(str(p), V) == p
    return trials
