"""Sparse elimination backend for large degree slices.

A SliceQuotient presents Z^ncols / L for a lattice L spanned by sparse rows.
Unit (+-1) pivots are eliminated greedily by minimal fill-in; the pivot rows
are then back-cleaned so each contains its pivot column and residual
("core") columns only.  Reduction of a vector against the cleaned pivots is
a single pass and lands on the core/free columns, giving a canonical
representative once the small core lattice is put in Hermite form.
"""

from __future__ import annotations

from typing import Iterable, Optional

from .linalg import LatticeBasis


class SliceQuotient:
    def __init__(self, rows: Iterable[dict[int, int]], ncols: int):
        self.ncols = ncols
        work: dict[int, dict[int, int]] = {}
        col_index: dict[int, set[int]] = {}
        nid = 0
        for r in rows:
            r = {c: x for c, x in r.items() if x}
            if r:
                work[nid] = r
                for c in r:
                    col_index.setdefault(c, set()).add(nid)
                nid += 1

        pivots: list[tuple[int, dict[int, int]]] = []
        # greedy unit-pivot elimination, minimal (row-1)*(col-1) fill first
        while True:
            best = None
            for rid in work:
                r = work[rid]
                rl = len(r)
                for c, x in r.items():
                    if x == 1 or x == -1:
                        cost = (rl - 1) * (len(col_index[c]) - 1)
                        cand = (cost, c, rid)
                        if best is None or cand < best:
                            best = cand
                if best is not None and best[0] == 0:
                    break
            if best is None:
                break
            _, pc, prid = best
            prow = work.pop(prid)
            for c in prow:
                col_index[c].discard(prid)
            if prow[pc] == -1:
                prow = {c: -x for c, x in prow.items()}
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
            pivots.append((pc, prow))

        # Back-clean.  A pivot row can only reference pivot columns chosen
        # LATER (its own column was purged from rows still active when it
        # retired), so one reverse sweep leaves every pivot row supported on
        # its own column plus non-pivot columns.
        clean: dict[int, dict[int, int]] = {}
        for i in range(len(pivots) - 1, -1, -1):
            c0, row = pivots[i]
            row = dict(row)
            changed = True
            while changed:
                changed = False
                for c in list(row):
                    if c != c0 and c in clean:
                        mult = row.pop(c)
                        for cc, x in clean[c].items():
                            if cc == c:
                                continue
                            old = row.get(cc, 0)
                            new = old - mult * x
                            if new:
                                row[cc] = new
                            else:
                                row.pop(cc, None)
                        changed = True
            clean[c0] = row
        self.pivot_rows = clean                      # col -> cleaned row
        self.core_rows = [dict(r) for _, r in sorted(work.items())]
        core_cols = sorted({c for r in self.core_rows for c in r})
        self.core_cols = core_cols
        self._core = LatticeBasis(ncols)
        for r in sorted(self.core_rows, key=lambda r: sorted(r.items())):
            self._core.insert(dict(r))
        self._core.normalize()

    # -- queries ---------------------------------------------------------------

    def reduce(self, vec: dict[int, int]) -> dict[int, int]:
        """Canonical representative modulo the lattice."""
        v = {c: x for c, x in vec.items() if x}
        for c in sorted(v):
            if c in self.pivot_rows and c in v:
                mult = v.pop(c)
                for cc, x in self.pivot_rows[c].items():
                    if cc == c:
                        continue
                    old = v.get(cc, 0)
                    new = old - mult * x
                    if new:
                        v[cc] = new
                    else:
                        v.pop(cc, None)
        return self._core.reduce(v)

    def reduce_with_certificate(self, vec: dict[int, int]):
        v = {c: x for c, x in vec.items() if x}
        cert: list[tuple[int, dict[int, int]]] = []
        for c in sorted(v):
            if c in self.pivot_rows and c in v:
                mult = v.pop(c)
                row = self.pivot_rows[c]
                cert.append((mult, row))
                for cc, x in row.items():
                    if cc == c:
                        continue
                    old = v.get(cc, 0)
                    new = old - mult * x
                    if new:
                        v[cc] = new
                    else:
                        v.pop(cc, None)
        red, core_cert = self._core.reduce_with_certificate(v)
        for pivot, q in core_cert:
            cert.append((q, self._core.basis[pivot]))
        return red, cert

    def contains(self, vec: dict[int, int]) -> bool:
        return not self.reduce(vec)

    def rank(self) -> int:
        return len(self.pivot_rows) + self._core.rank()

    def basis_rows(self) -> list[dict[int, int]]:
        """Short spanning rows of the lattice (cleaned pivots + core)."""
        out = [dict(r) for _, r in sorted(self.pivot_rows.items())]
        out.extend(dict(r) for r in self._core.rows())
        return out

    def invariant_factors(self) -> list[int]:
        core = self._core.invariant_factors()
        return [1] * len(self.pivot_rows) + core

    def isomorphism_type(self) -> tuple[int, tuple[int, ...]]:
        factors = self.invariant_factors()
        tors = tuple(d for d in factors if d > 1)
        return (self.ncols - len(factors), tors)

    def linear_coordinates(self, vec: dict[int, int]):
        """Linear coordinates of the class of vec in the quotient group.

        Returns (free, torsion): `free` maps coordinate labels to integers,
        `torsion` is a list of (value, modulus) pairs; the class is zero iff
        all free values are 0 and each torsion value is divisible by its
        modulus.  The map vec -> coordinates is Z-linear (values are not
        reduced mod the modulus).
        """
        if not hasattr(self, "_snf_data"):
            from .linalg import IntMatrix, smith_normal_form

            live = list(self.core_cols)
            pos = {c: i for i, c in enumerate(live)}
            dense = []
            for r in self.core_rows_echelon():
                row = [0] * len(live)
                for c, x in r.items():
                    row[pos[c]] = x
                dense.append(row)
            snf = smith_normal_form(IntMatrix(dense, cols=len(live)))
            self._snf_data = (live, pos, snf)
        live, pos, snf = self._snf_data
        red = self.reduce(vec)
        free: dict = {}
        w_in = [0] * len(live)
        for c, x in red.items():
            if c in pos:
                w_in[pos[c]] = x
            else:
                free[("col", c)] = x
        if live:
            V = snf.V.data
            w = [sum(w_in[i] * V[i][j] for i in range(len(live))) for j in range(len(live))]
        else:
            w = []
        rank = len(snf.invariant_factors)
        torsion = []
        for j in range(len(live)):
            if j < rank:
                d = snf.invariant_factors[j]
                if d > 1:
                    torsion.append((w[j], d))
                elif w[j] % d:
                    raise AssertionError
            else:
                free[("snf", j)] = w[j]
        return free, torsion

    def core_rows_echelon(self) -> list[dict[int, int]]:
        return [dict(r) for r in self._core.rows()]

    def element_order(self, vec: dict[int, int]) -> Optional[int]:
        """Least k > 0 with k*vec in the lattice, or None if infinite."""
        red = self.reduce(vec)
        if not red:
            return 1
        core_set = set(self.core_cols)
        if any(c not in core_set for c in red):
            return None  # a coordinate no relation touches survives
        live = sorted(core_set)
        pos = {c: i for i, c in enumerate(live)}
        rows = []
        for r in self._core.rows():
            rows.append([0] * len(live))
            for c, x in r.items():
                rows[-1][pos[c]] = x
        from .linalg import FPAbelianGroup

        grp = FPAbelianGroup.from_rows([str(c) for c in live], rows)
        v = [0] * len(live)
        for c, x in red.items():
            v[pos[c]] = x
        return grp.element_order(v)
