"""Exact integer linear algebra: examples, oracles and property suites."""

import random
from itertools import combinations

import pytest

from chowcalc.linalg import (
    FPAbelianGroup,
    GroupMap,
    IllDefinedMap,
    IntMatrix,
    LatticeBasis,
    cokernel,
    invariant_factors_sparse,
    kernel,
    kernel_integer_right,
    pushout,
    smith_normal_form,
    solve_integer_right,
)


def minor_gcd_invariant_factors(M: IntMatrix) -> list[int]:
    """Independent oracle: d_1 ... d_k via gcds of k x k minors.

    The product d_1 ... d_k equals the gcd of all k x k minors, so invariant
    factors are ratios of consecutive determinantal divisors.
    """
    from math import gcd

    rows, cols = M.rows, M.cols
    factors = []
    prev = 1
    for k in range(1, min(rows, cols) + 1):
        g = 0
        for ri in combinations(range(rows), k):
            for ci in combinations(range(cols), k):
                sub = IntMatrix([[M[i, j] for j in ci] for i in ri], cols=k)
                g = gcd(g, sub.det())
                if g == 1:
                    break
            if g == 1:
                break
        if g == 0:
            break
        factors.append(g // prev)
        prev = g
    return factors


def test_snf_identity_and_zero():
    assert smith_normal_form(IntMatrix.identity(3)).invariant_factors == (1, 1, 1)
    assert smith_normal_form(IntMatrix.zero(2, 2)).invariant_factors == ()


def test_snf_two_by_two():
    # gcd of the entries is 2 and |det| = 12, forcing factors (2, 6)
    s = smith_normal_form(IntMatrix([[2, 4], [4, 2]]))
    assert s.invariant_factors == (2, 6)


def test_snf_against_minor_gcd_oracle():
    rng = random.Random(20251)
    for _ in range(150):
        r = rng.randrange(0, 5)
        c = rng.randrange(0, 5)
        M = IntMatrix([[rng.randrange(-9, 10) for _ in range(c)] for _ in range(r)], cols=c)
        assert list(smith_normal_form(M).invariant_factors) == minor_gcd_invariant_factors(M)


def test_snf_deterministic():
    rng = random.Random(7)
    M = IntMatrix([[rng.randrange(-50, 51) for _ in range(5)] for _ in range(4)])
    a = smith_normal_form(M)
    b = smith_normal_form(M)
    assert a.U == b.U and a.V == b.V and a.D == b.D


def test_snf_property_suite():
    """U M V = D, unimodularity and the divisibility chain on >= 1000
    randomized matrices up to 12 x 12 with entries in [-10^6, 10^6]."""
    from propsuites import run_snf_suite

    assert run_snf_suite(1000) == 1000


def test_isomorphism_type_examples():
    G = FPAbelianGroup.from_rows(("a", "b"), [[2, 0], [0, 3]])
    assert G.isomorphism_type() == (0, (6,))
    free = FPAbelianGroup.from_rows(("x", "y", "z"), [])
    assert free.isomorphism_type() == (3, ())


def test_isomorphism_type_invariance():
    rng = random.Random(99)
    for _ in range(300):
        r = rng.randrange(1, 5)
        c = rng.randrange(1, 5)
        rows = [[rng.randrange(-8, 9) for _ in range(c)] for _ in range(r)]
        base = FPAbelianGroup.from_rows([f"g{i}" for i in range(c)], rows).isomorphism_type()
        # row shuffle
        shuffled = rows[:]
        rng.shuffle(shuffled)
        assert FPAbelianGroup.from_rows([f"g{i}" for i in range(c)], shuffled).isomorphism_type() == base
        # column (generator) relabeling
        perm = list(range(c))
        rng.shuffle(perm)
        relabeled = [[row[perm[j]] for j in range(c)] for row in rows]
        assert FPAbelianGroup.from_rows([f"g{i}" for i in range(c)], relabeled).isomorphism_type() == base
        # unimodular row operation
        if r >= 2:
            i, j = rng.sample(range(r), 2)
            mult = rng.randrange(-3, 4)
            bumped = [row[:] for row in rows]
            bumped[i] = [x + mult * y for x, y in zip(bumped[i], bumped[j])]
            assert FPAbelianGroup.from_rows([f"g{i}" for i in range(c)], bumped).isomorphism_type() == base


def test_element_order_examples():
    G = FPAbelianGroup.from_rows(("a", "b"), [[2, 0], [0, 3]])
    assert G.element_order([0, 0]) == 1
    assert G.element_order([1, 1]) == 6
    Z = FPAbelianGroup.from_rows(("e",), [])
    assert Z.element_order([1]) is None


def test_element_order_relation_shift():
    rng = random.Random(5)
    for _ in range(300):
        c = rng.randrange(1, 5)
        r = rng.randrange(0, 4)
        rows = [[rng.randrange(-6, 7) for _ in range(c)] for _ in range(r)]
        G = FPAbelianGroup.from_rows([f"g{i}" for i in range(c)], rows)
        v = [rng.randrange(-6, 7) for _ in range(c)]
        base = G.element_order(v)
        if rows:
            rel = rows[rng.randrange(len(rows))]
            shifted = [x + y for x, y in zip(v, rel)]
            assert G.element_order(shifted) == base


def test_kernel_cokernel_examples():
    Z = FPAbelianGroup.from_rows(("e",), [])
    times12 = GroupMap(Z, Z, IntMatrix([[12]]))
    K, incl = kernel(times12)
    assert K.isomorphism_type() == (0, ())
    C, proj = cokernel(times12)
    assert C.isomorphism_type() == (0, (12,))

    zero_map = GroupMap(Z, Z, IntMatrix([[0]]))
    K2, incl2 = kernel(zero_map)
    assert K2.isomorphism_type() == Z.isomorphism_type()

    Z2 = FPAbelianGroup.from_rows(("x", "y"), [])
    f = GroupMap(Z, Z2, IntMatrix([[2, -2]]))
    C2, _ = cokernel(f)
    assert C2.isomorphism_type() == (1, (2,))


def test_kernel_universal_property():
    rng = random.Random(17)
    for _ in range(100):
        m, n = rng.randrange(1, 4), rng.randrange(1, 4)
        A = FPAbelianGroup.from_rows(
            [f"a{i}" for i in range(m)],
            [[rng.choice((0, 0, 2, 4)) for _ in range(m)] for _ in range(rng.randrange(0, 3))],
        )
        B = FPAbelianGroup.from_rows(
            [f"b{i}" for i in range(n)],
            [[rng.choice((0, 0, 3, 6)) for _ in range(n)] for _ in range(rng.randrange(0, 3))],
        )
        F = IntMatrix([[rng.choice((0, 3, 6, -3)) for _ in range(n)] for _ in range(m)], cols=n)
        f = GroupMap(A, B, F)
        try:
            K, incl = kernel(f)
        except IllDefinedMap:
            continue
        snf = smith_normal_form(B.relations)
        from chowcalc.linalg import in_row_span

        for i in range(K.ngens):
            e = [0] * K.ngens
            e[i] = 1
            img = f.apply(incl.apply(e))
            assert in_row_span(snf, img)


def test_ill_defined_map_reported():
    A = FPAbelianGroup.from_rows(("a",), [[2]])
    B = FPAbelianGroup.from_rows(("b",), [[3]])
    f = GroupMap(A, B, IntMatrix([[1]]))
    with pytest.raises(IllDefinedMap):
        f.check_well_defined()


def test_pushout_trivial_source():
    zero = FPAbelianGroup.from_rows((), [])
    B = FPAbelianGroup.from_rows(("b",), [[4]])
    C = FPAbelianGroup.from_rows(("c",), [[6]])
    P, _, _ = pushout(
        GroupMap(zero, B, IntMatrix((), cols=1)),
        GroupMap(zero, C, IntMatrix((), cols=1)),
    )
    assert P.isomorphism_type() == (0, (2, 12))


def test_pushout_vs_cokernel_property_suite():
    """pushout(f, g) has the isomorphism type of coker((f, -g)) on >= 1000
    randomized small instances, computed through independent code paths."""
    from propsuites import run_pushout_suite

    assert run_pushout_suite(1000) == 1000


def test_pushout_canonical_maps_commute():
    rng = random.Random(606)
    from chowcalc.linalg import in_row_span

    for _ in range(100):
        a, b, c = (rng.randrange(1, 3) for _ in range(3))
        A = FPAbelianGroup.from_rows([f"a{i}" for i in range(a)], [])
        B = FPAbelianGroup.from_rows([f"b{i}" for i in range(b)], [])
        C = FPAbelianGroup.from_rows([f"c{i}" for i in range(c)], [])
        F = IntMatrix([[rng.randrange(-4, 5) for _ in range(b)] for _ in range(a)], cols=b)
        G = IntMatrix([[rng.randrange(-4, 5) for _ in range(c)] for _ in range(a)], cols=c)
        f, g = GroupMap(A, B, F), GroupMap(A, C, G)
        P, inb, inc = pushout(f, g)
        snf = smith_normal_form(P.relations)
        for i in range(a):
            e = [0] * a
            e[i] = 1
            left = inb.apply(f.apply(e))
            right = inc.apply(g.apply(e))
            assert in_row_span(snf, [x - y for x, y in zip(left, right)])


def test_solvers():
    A = IntMatrix([[2, 0], [0, 3]])
    assert solve_integer_right(A, [4, 9]) == [2, 3]
    assert solve_integer_right(A, [1, 0]) is None
    K = kernel_integer_right(IntMatrix([[1, 1, 1]]))
    assert len(K) == 2
    for v in K:
        assert sum(v) == 0


def test_lattice_basis_reduction_canonical():
    rng = random.Random(3)
    L = LatticeBasis(4)
    rows = [{0: 2, 1: 4}, {1: 6, 3: 3}, {2: 5}]
    L.insert_many(rows)
    for _ in range(200):
        v = {i: rng.randrange(-20, 21) for i in range(4)}
        w = dict(v)
        for row in rows:
            m = rng.randrange(-3, 4)
            for cc, x in row.items():
                w[cc] = w.get(cc, 0) + m * x
        assert L.reduce(v) == L.reduce(w)


def test_pushout_degreewise_nodal_chart():
    """Degreewise shape of the two-chart pushout computations.

    The double-cover chart of the smooth two-pointed locus gives, in each
    positive degree, the kernel {(a, a)} of (a, b) -> 12(b - a) modulo the
    index-two image {(2a, 2a)}: a single two-torsion class per degree.
    """
    Z2 = FPAbelianGroup.from_rows(("chart", "curve"), [])
    Z = FPAbelianGroup.from_rows(("amb",), [])
    f = GroupMap(Z2, Z, IntMatrix([[-12], [12]]))
    K, incl = kernel(f)
    assert K.isomorphism_type() == (1, ())
    # image of the degree-two cover inside the kernel
    gen = incl.apply([1] if K.ngens == 1 else [1, 0])
    from chowcalc.linalg import quotient_by_rows

    quo = quotient_by_rows(K, [[2]])
    assert quo.isomorphism_type() == (0, (2,))


def test_pushout_seven_component_chart():
    """The chart with one birational and six degree-two pieces: pushing out
    against the vanishing ambient group leaves (Z/2)^6, and the ambient
    fundamental class contributes a free summand."""
    A = FPAbelianGroup.from_rows([f"t{i}" for i in range(7)], [])
    zero = FPAbelianGroup.from_rows((), [])
    C = FPAbelianGroup.from_rows([f"c{i}" for i in range(7)], [])
    degs = [1, 2, 2, 2, 2, 2, 2]
    G = IntMatrix([[degs[i] if i == j else 0 for j in range(7)] for i in range(7)], cols=7)
    f = GroupMap(A, zero, IntMatrix([[] for _ in range(7)], cols=0))
    g = GroupMap(A, C, G)
    P, _, _ = pushout(f, g)
    assert P.isomorphism_type() == (0, (2, 2, 2, 2, 2, 2))
