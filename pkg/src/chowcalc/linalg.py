"""Exact integer linear algebra over arbitrary-precision integers.

Smith normal form with unimodular transforms, Hermite-style lattice bases,
and the category of finitely presented abelian groups (maps, kernels,
cokernels, pushouts).  Everything works with plain Python ints, so there is
no overflow anywhere; intermediate coefficient growth is controlled by a
smallest-pivot rule with gcd row/column reduction.

Conventions: elements of a group with m generators are integer row vectors
of length m; a relation matrix has one relation per row; a map between
presented groups is a matrix acting on the right (v -> v @ F).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Optional, Sequence


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with g = gcd(a, b) >= 0 and x*a + y*b = g."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


class IntMatrix:
    """Immutable dense integer matrix (row-major tuples of Python ints)."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, data: Iterable[Iterable[int]], cols: Optional[int] = None):
        rows = tuple(tuple(int(x) for x in row) for row in data)
        if rows:
            width = len(rows[0])
            if any(len(r) != width for r in rows):
                raise ValueError("ragged matrix")
            if cols is not None and cols != width:
                raise ValueError("explicit column count disagrees with data")
            cols = width
        elif cols is None:
            cols = 0
        self.data = rows
        self.rows = len(rows)
        self.cols = cols

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)), cols=n)

    @classmethod
    def zero(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(tuple((0,) * cols for _ in range(rows)), cols=cols)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.data[i][j]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, IntMatrix)
            and self.cols == other.cols
            and self.data == other.data
        )

    def __hash__(self) -> int:
        return hash((self.cols, self.data))

    def __repr__(self) -> str:
        return f"IntMatrix({self.rows}x{self.cols})"

    def row(self, i: int) -> tuple[int, ...]:
        return self.data[i]

    def transpose(self) -> "IntMatrix":
        return IntMatrix(zip(*self.data), cols=self.rows) if self.rows else IntMatrix((), cols=0)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        ot = tuple(zip(*other.data)) if other.rows else ((),) * other.cols
        out = tuple(
            tuple(sum(a * b for a, b in zip(row, col)) for col in ot)
            for row in self.data
        )
        return IntMatrix(out, cols=other.cols)

    def stack(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.cols and self.rows and other.rows:
            raise ValueError("shape mismatch")
        cols = self.cols if self.rows else other.cols
        return IntMatrix(self.data + other.data, cols=cols)

    def det(self) -> int:
        """Determinant by fraction-free (Bareiss) elimination."""
        if self.rows != self.cols:
            raise ValueError("determinant of non-square matrix")
        n = self.rows
        if n == 0:
            return 1
        m = [list(r) for r in self.data]
        sign = 1
        prev = 1
        for k in range(n - 1):
            if m[k][k] == 0:
                for i in range(k + 1, n):
                    if m[i][k]:
                        m[k], m[i] = m[i], m[k]
                        sign = -sign
                        break
                else:
                    return 0
            pk = m[k][k]
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[i][j] * pk - m[i][k] * m[k][j]) // prev
                m[i][k] = 0
            prev = pk
        return sign * m[n - 1][n - 1]


def _mul_row(row: Sequence[int], mat: Sequence[Sequence[int]]) -> list[int]:
    ncols = len(mat[0]) if mat else 0
    out = [0] * ncols
    for a, mrow in zip(row, mat):
        if a:
            for j, b in enumerate(mrow):
                if b:
                    out[j] += a * b
    return out


@dataclass(frozen=True)
class SmithDecomposition:
    """U @ M @ V = D with D diagonal, U and V unimodular, d_i | d_{i+1} >= 0."""

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix
    invariant_factors: tuple[int, ...]


def smith_normal_form(M: IntMatrix) -> SmithDecomposition:
    """Smith normal form with transforms.

    Pivot rule: smallest nonzero magnitude in the remaining block, ties broken
    row-major, so output is reproducible.  After diagonalising, divisibility
    is repaired by folding offending diagonal entries together.
    """
    rows, cols = M.rows, M.cols
    a = [list(r) for r in M.data]
    u = [[1 if i == j else 0 for j in range(rows)] for i in range(rows)]
    v = [[1 if i == j else 0 for j in range(cols)] for i in range(cols)]

    def row_op(i, k, q):
        # row_i -= q * row_k  (applied to a and u)
        ai, ak = a[i], a[k]
        for j in range(cols):
            ai[j] -= q * ak[j]
        ui, uk = u[i], u[k]
        for j in range(rows):
            ui[j] -= q * uk[j]

    def col_op(j, k, q):
        # col_j -= q * col_k  (applied to a and v)
        for i in range(rows):
            a[i][j] -= q * a[i][k]
        for i in range(cols):
            v[i][j] -= q * v[i][k]

    def swap_rows(i, k):
        a[i], a[k] = a[k], a[i]
        u[i], u[k] = u[k], u[i]

    def swap_cols(j, k):
        for row in a:
            row[j], row[k] = row[k], row[j]
        for row in v:
            row[j], row[k] = row[k], row[j]

    t = 0
    limit = min(rows, cols)
    while t < limit:
        # Locate the smallest-magnitude nonzero entry in the trailing block.
        best = None
        for i in range(t, rows):
            ai = a[i]
            for j in range(t, cols):
                x = ai[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if abs(x) == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, pi, pj = best
        if pi != t:
            swap_rows(t, pi)
        if pj != t:
            swap_cols(t, pj)
        if a[t][t] < 0:
            for j in range(cols):
                a[t][j] = -a[t][j]
            for j in range(rows):
                u[t][j] = -u[t][j]
        pivot = a[t][t]
        clean = True
        for i in range(t + 1, rows):
            if a[i][t]:
                q = a[i][t] // pivot
                row_op(i, t, q)
                if a[i][t]:
                    clean = False
        for j in range(t + 1, cols):
            if a[t][j]:
                q = a[t][j] // pivot
                col_op(j, t, q)
                if a[t][j]:
                    clean = False
        if not clean:
            continue  # remainders became new, smaller pivot candidates
        t += 1

    # Enforce the divisibility chain d_i | d_{i+1}.
    rank = sum(1 for i in range(limit) if a[i][i])
    changed = True
    while changed:
        changed = False
        for i in range(rank - 1):
            x, y = a[i][i], a[i + 1][i + 1]
            if y % x:
                changed = True
                # col_i += col_{i+1}, then clear the 2x2 block again.
                for r in range(rows):
                    a[r][i] += a[r][i + 1]
                for r in range(cols):
                    v[r][i] += v[r][i + 1]
                g, s, tt = xgcd(x, y)
                # row_i = s*row_i + tt*row_{i+1}; row_{i+1} adjusted to keep U unimodular
                ri, rj = a[i], a[i + 1]
                wi, wj = u[i], u[i + 1]
                xi, yi = x // g, y // g
                for j in range(cols):
                    ri[j], rj[j] = s * ri[j] + tt * rj[j], -yi * ri[j] + xi * rj[j]
                for j in range(rows):
                    wi[j], wj[j] = s * wi[j] + tt * wj[j], -yi * wi[j] + xi * wj[j]
                # now a[i][i] = g, a[i+1][i] = 0, but col i+1 got dirty
                q = a[i][i + 1] // a[i][i]
                for r in range(rows):
                    a[r][i + 1] -= q * a[r][i]
                for r in range(cols):
                    v[r][i + 1] -= q * v[r][i]
                # a[i+1][i+1] may have changed sign
                if a[i + 1][i + 1] < 0:
                    for j in range(cols):
                        a[i + 1][j] = -a[i + 1][j]
                    for j in range(rows):
                        u[i + 1][j] = -u[i + 1][j]

    factors = tuple(a[i][i] for i in range(rank))
    D = IntMatrix(a, cols=cols)
    return SmithDecomposition(IntMatrix(u, cols=rows), D, IntMatrix(v, cols=cols), factors)


# ---------------------------------------------------------------------------
# Sparse invariant factors (no transforms) for large relation matrices.
# ---------------------------------------------------------------------------

def invariant_factors_sparse(rows: Iterable[dict[int, int]], ncols: int) -> list[int]:
    """Invariant factors of the lattice spanned by sparse rows in Z^ncols.

    First eliminates with +-1 pivots (each contributes an invariant factor 1),
    choosing pivots greedily by minimal fill; whatever survives is a small
    dense core handed to the generic Smith routine.
    """
    work: dict[int, dict[int, int]] = {}
    col_index: dict[int, set[int]] = {}
    next_id = 0

    def add_row(r: dict[int, int]) -> None:
        nonlocal next_id
        r = {c: x for c, x in r.items() if x}
        if not r:
            return
        rid = next_id
        next_id += 1
        work[rid] = r
        for c in r:
            col_index.setdefault(c, set()).add(rid)

    for r in rows:
        add_row(r)

    ones = 0
    while True:
        # pick a +-1 entry minimising (row_len - 1) * (col_len - 1)
        best = None
        for rid, r in work.items():
            rl = len(r)
            for c, x in r.items():
                if x == 1 or x == -1:
                    cost = (rl - 1) * (len(col_index[c]) - 1)
                    if best is None or cost < best[0] or (cost == best[0] and (rid, c) < best[1:]):
                        best = (cost, rid, c)
            if best is not None and best[0] == 0:
                break
        if best is None:
            break
        _, prid, pc = best
        prow = work.pop(prid)
        for c in prow:
            col_index[c].discard(prid)
        sign = prow[pc]
        prow = {c: sign * x for c, x in prow.items()}
        for rid in list(col_index.get(pc, ())):
            r = work[rid]
            mult = r.get(pc)
            if not mult:
                continue
            for c, x in prow.items():
                old = r.get(c, 0)
                new = old - mult * x
                if new:
                    if not old:
                        col_index.setdefault(c, set()).add(rid)
                    r[c] = new
                elif old:
                    del r[c]
                    col_index[c].discard(rid)
            if not r:
                del work[rid]
        col_index.pop(pc, None)
        ones += 1

    if not work:
        return [1] * ones
    # Dense core on the surviving columns.
    live_cols = sorted({c for r in work.values() for c in r})
    pos = {c: i for i, c in enumerate(live_cols)}
    dense = []
    for rid in sorted(work):
        row = [0] * len(live_cols)
        for c, x in work[rid].items():
            row[pos[c]] = x
        dense.append(row)
    core = smith_normal_form(IntMatrix(dense, cols=len(live_cols)))
    return [1] * ones + list(core.invariant_factors)


# ---------------------------------------------------------------------------
# Lattices: Hermite-style echelon bases and membership / reduction.
# ---------------------------------------------------------------------------

class LatticeBasis:
    """Echelon basis of a sublattice of Z^ncols built by row insertion.

    Rows are sparse dicts {column: coeff}; each basis row is keyed by its
    pivot (smallest) column.  `normalize()` makes pivots positive and reduces
    entries above each pivot into [0, pivot), after which `reduce()` yields
    the canonical coset representative.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.basis: dict[int, dict[int, int]] = {}
        self._normalized = False

    def insert(self, row: dict[int, int]) -> None:
        self._normalized = False
        stack = [{c: x for c, x in row.items() if x}]
        while stack:
            r = stack.pop()
            while r:
                c = min(r)
                b = self.basis.get(c)
                if b is None:
                    self.basis[c] = r
                    break
                a, x = b[c], r[c]
                if x % a == 0:
                    q = x // a
                    for cc, v in b.items():
                        nv = r.get(cc, 0) - q * v
                        if nv:
                            r[cc] = nv
                        else:
                            r.pop(cc, None)
                else:
                    g, s, t = xgcd(a, x)
                    ag, xg = a // g, x // g
                    new = {}
                    for cc in set(b) | set(r):
                        v = s * b.get(cc, 0) + t * r.get(cc, 0)
                        if v:
                            new[cc] = v
                    rem = {}
                    for cc in set(b) | set(r):
                        v = -xg * b.get(cc, 0) + ag * r.get(cc, 0)
                        if v:
                            rem[cc] = v
                    self.basis[c] = new
                    r = rem

    def insert_many(self, rows: Iterable[dict[int, int]]) -> None:
        for r in rows:
            self.insert(r)

    def normalize(self) -> None:
        if self._normalized:
            return
        for c in sorted(self.basis):
            b = self.basis[c]
            if b[c] < 0:
                self.basis[c] = {cc: -v for cc, v in b.items()}
        # reduce above-pivot entries, working from the largest pivot down
        for c in sorted(self.basis, reverse=True):
            b = self.basis[c]
            p = b[c]
            for c2 in sorted(self.basis):
                if c2 >= c:
                    break
                r2 = self.basis[c2]
                x = r2.get(c, 0)
                if x:
                    q = x // p  # floor division: canonical residue in [0, p)
                    if q:
                        for cc, v in b.items():
                            nv = r2.get(cc, 0) - q * v
                            if nv:
                                r2[cc] = nv
                            else:
                                r2.pop(cc, None)
        self._normalized = True

    def reduce(self, row: dict[int, int]) -> dict[int, int]:
        """Canonical representative of row modulo the lattice."""
        self.normalize()
        r = {c: x for c, x in row.items() if x}
        for c in sorted(self.basis):
            if c in r:
                b = self.basis[c]
                q = r[c] // b[c]
                if q:
                    for cc, v in b.items():
                        nv = r.get(cc, 0) - q * v
                        if nv:
                            r[cc] = nv
                        else:
                            r.pop(cc, None)
        return r

    def reduce_with_certificate(self, row: dict[int, int]) -> tuple[dict[int, int], list[tuple[int, int]]]:
        """Like reduce(), also returning [(pivot_col, multiplier), ...] used."""
        self.normalize()
        r = {c: x for c, x in row.items() if x}
        cert = []
        for c in sorted(self.basis):
            if c in r:
                b = self.basis[c]
                q = r[c] // b[c]
                if q:
                    cert.append((c, q))
                    for cc, v in b.items():
                        nv = r.get(cc, 0) - q * v
                        if nv:
                            r[cc] = nv
                        else:
                            r.pop(cc, None)
        return r, cert

    def contains(self, row: dict[int, int]) -> bool:
        return not self.reduce(row)

    def rank(self) -> int:
        return len(self.basis)

    def invariant_factors(self) -> list[int]:
        return invariant_factors_sparse(self.basis.values(), self.ncols)

    def copy(self) -> "LatticeBasis":
        out = LatticeBasis(self.ncols)
        out.basis = {c: dict(r) for c, r in self.basis.items()}
        out._normalized = self._normalized
        return out

    def rows(self) -> list[dict[int, int]]:
        return [dict(self.basis[c]) for c in sorted(self.basis)]


def in_row_span(snf: SmithDecomposition, v: Sequence[int]) -> bool:
    w = _mul_row(v, snf.V.data) if snf.V.rows else list(v)
    rank = len(snf.invariant_factors)
    for j, x in enumerate(w):
        if j < rank:
            if x % snf.invariant_factors[j]:
                return False
        elif x:
            return False
    return True


# ---------------------------------------------------------------------------
# Finitely presented abelian groups.
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FPAbelianGroup:
    """Finitely presented abelian group: labeled generators + relation rows."""

    generator_labels: tuple[str, ...]
    relations: IntMatrix

    def __post_init__(self):
        if self.relations.rows and self.relations.cols != len(self.generator_labels):
            raise ValueError("relation width must equal generator count")

    @classmethod
    def from_rows(cls, labels: Sequence[str], rows: Iterable[Sequence[int]]) -> "FPAbelianGroup":
        labels = tuple(labels)
        return cls(labels, IntMatrix(rows, cols=len(labels)))

    @property
    def ngens(self) -> int:
        return len(self.generator_labels)

    def isomorphism_type(self) -> tuple[int, tuple[int, ...]]:
        """(free rank, invariant factors > 1 in divisibility order)."""
        if self.relations.rows == 0:
            return (self.ngens, ())
        rows = [
            {j: x for j, x in enumerate(r) if x}
            for r in self.relations.data
        ]
        factors = invariant_factors_sparse(rows, self.ngens)
        torsion = tuple(d for d in factors if d > 1)
        return (self.ngens - len(factors), torsion)

    def order(self) -> Optional[int]:
        """Group order, or None if infinite."""
        rank, tors = self.isomorphism_type()
        if rank:
            return None
        n = 1
        for d in tors:
            n *= d
        return n

    def element_order(self, v: Sequence[int]):
        """Least k > 0 with k*v in the relation lattice, or None for infinite."""
        if len(v) != self.ngens:
            raise ValueError("vector length must equal generator count")
        snf = smith_normal_form(self.relations)
        w = _mul_row(v, snf.V.data) if snf.V.rows else list(v)
        rank = len(snf.invariant_factors)
        k = 1
        for j, x in enumerate(w):
            if j < rank:
                d = snf.invariant_factors[j]
                need = d // gcd(d, x % d if x % d else d) if x % d else 1
                # lcm accumulation
                k = k * need // gcd(k, need)
            elif x:
                return None
        return k

    def describe(self) -> str:
        rank, tors = self.isomorphism_type()
        parts = []
        if rank == 1:
            parts.append("Z")
        elif rank > 1:
            parts.append(f"Z^{rank}")
        parts.extend(f"Z/{d}" for d in tors)
        return " + ".join(parts) if parts else "0"


def isomorphism_type(G: FPAbelianGroup) -> tuple[int, tuple[int, ...]]:
    return G.isomorphism_type()


def element_order(G: FPAbelianGroup, v: Sequence[int]):
    return G.element_order(v)


class IllDefinedMap(ValueError):
    """A generator-level matrix does not send relations into relations."""


@dataclass(frozen=True)
class GroupMap:
    """Map of presented groups given by a matrix on generators (row action)."""

    source: FPAbelianGroup
    target: FPAbelianGroup
    matrix: IntMatrix

    def __post_init__(self):
        if self.source.ngens and self.matrix.rows != self.source.ngens:
            raise ValueError("matrix row count must equal source generators")
        if self.matrix.rows and self.matrix.cols != self.target.ngens:
            raise ValueError("matrix column count must equal target generators")

    def apply(self, v: Sequence[int]) -> list[int]:
        if not self.matrix.rows:
            return [0] * self.target.ngens
        return _mul_row(v, self.matrix.data)

    def check_well_defined(self) -> None:
        if self.source.relations.rows == 0:
            return
        snf = smith_normal_form(self.target.relations)
        for i, rel in enumerate(self.source.relations.data):
            img = self.apply(rel)
            if not in_row_span(snf, img):
                raise IllDefinedMap(
                    f"relation {i} of the source maps outside the target relations"
                )


def _left_kernel_basis(M: IntMatrix) -> list[list[int]]:
    """Basis of {v : v @ M = 0} from the Smith transform U."""
    if M.rows == 0:
        return []
    snf = smith_normal_form(M)
    rank = len(snf.invariant_factors)
    return [list(snf.U.data[i]) for i in range(rank, M.rows)]


def _preimage_lattice(F: IntMatrix, R: IntMatrix, nsrc: int) -> list[list[int]]:
    """Generators of {v in Z^nsrc : v @ F in rowspan(R)}.

    Computed as the projection of the left kernel of the stacked matrix
    [F; R] onto the first nsrc coordinates.
    """
    if F.cols == 0:
        return [[1 if i == j else 0 for j in range(nsrc)] for i in range(nsrc)]
    stacked = F.stack(R) if R.rows else F
    kern = _left_kernel_basis(stacked)
    return [k[:nsrc] for k in kern]


def kernel(f: GroupMap) -> tuple[FPAbelianGroup, GroupMap]:
    """Kernel with its inclusion into the source."""
    f.check_well_defined()
    A, B = f.source, f.target
    gens = _preimage_lattice(f.matrix, B.relations, A.ngens)
    # relations among the kernel generators: combinations landing in rel(A)
    V = IntMatrix(gens, cols=A.ngens) if gens else IntMatrix((), cols=A.ngens)
    rels = _preimage_lattice(V, A.relations, len(gens))
    K = FPAbelianGroup.from_rows(
        tuple(f"k{i}" for i in range(len(gens))), rels
    )
    incl = GroupMap(K, A, V)
    return K, incl


def cokernel(f: GroupMap) -> tuple[FPAbelianGroup, GroupMap]:
    """Cokernel with the projection from the target."""
    f.check_well_defined()
    B = f.target
    rels = B.relations.stack(f.matrix) if f.matrix.rows else B.relations
    C = FPAbelianGroup(B.generator_labels, rels)
    proj = GroupMap(B, C, IntMatrix.identity(B.ngens))
    return C, proj


def pushout(f: GroupMap, g: GroupMap) -> tuple[FPAbelianGroup, GroupMap, GroupMap]:
    """Pushout of B <-f- A -g-> C with its two canonical maps.

    Presented as (B + C) / <relations of B, relations of C, (f(a), -g(a))>.
    """
    if f.source is not g.source and f.source != g.source:
        raise ValueError("pushout requires a common source")
    A, B, C = f.source, f.target, g.target
    nb, nc = B.ngens, C.ngens
    labels = tuple(f"b.{x}" for x in B.generator_labels) + tuple(
        f"c.{x}" for x in C.generator_labels
    )
    rows: list[list[int]] = []
    for r in B.relations.data:
        rows.append(list(r) + [0] * nc)
    for r in C.relations.data:
        rows.append([0] * nb + list(r))
    for i in range(A.ngens):
        e = [0] * A.ngens
        e[i] = 1
        rows.append(f.apply(e) + [-x for x in g.apply(e)])
    P = FPAbelianGroup.from_rows(labels, rows)
    inb = GroupMap(B, P, IntMatrix([[1 if j == i else 0 for j in range(nb + nc)] for i in range(nb)], cols=nb + nc) if nb else IntMatrix((), cols=nb + nc))
    inc = GroupMap(C, P, IntMatrix([[1 if j == nb + i else 0 for j in range(nb + nc)] for i in range(nc)], cols=nb + nc) if nc else IntMatrix((), cols=nb + nc))
    return P, inb, inc


def solve_integer_right(A: IntMatrix, b: Sequence[int]) -> Optional[list[int]]:
    """An integer solution x of A x = b (column vector), or None."""
    snf = smith_normal_form(A)
    # U A V = D  =>  D (V^-1 x) = U b
    ub = [sum(snf.U.data[i][j] * b[j] for j in range(A.rows)) for i in range(A.rows)]
    rank = len(snf.invariant_factors)
    y = [0] * A.cols
    for i in range(A.rows):
        if i < rank:
            d = snf.invariant_factors[i]
            if ub[i] % d:
                return None
            if i < A.cols:
                y[i] = ub[i] // d
        elif ub[i]:
            return None
    return [sum(snf.V.data[i][j] * y[j] for j in range(A.cols)) for i in range(A.cols)]


def kernel_integer_right(A: IntMatrix) -> list[list[int]]:
    """Saturated basis of {x in Z^cols : A x = 0}."""
    snf = smith_normal_form(A)
    rank = len(snf.invariant_factors)
    out = []
    for j in range(rank, A.cols):
        out.append([snf.V.data[i][j] for i in range(A.cols)])
    return out


def quotient_by_rows(G: FPAbelianGroup, rows: Iterable[Sequence[int]]) -> FPAbelianGroup:
    """Quotient of G by the subgroup generated by the given element vectors."""
    extra = IntMatrix(rows, cols=G.ngens)
    rels = G.relations.stack(extra) if G.relations.rows else extra
    return FPAbelianGroup(G.generator_labels, rels)
