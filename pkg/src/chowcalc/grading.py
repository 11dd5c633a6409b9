"""Graded modules over Z[l] and Z[l]/(24 l^2), and graded ring presentations.

Every degreewise question (normal forms, slice groups, comparisons) is
answered by exact integer linear algebra on the degree-d piece: a graded
piece of a finitely presented module or ring here is a finitely generated
abelian group, so no Groebner machinery over Z is needed.

The coefficient variable is called "l" throughout (it is the first Chern
class of the Hodge bundle on every space in the catalog).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Sequence, Union

from .exprparse import ExprError, parse_terms
from .linalg import FPAbelianGroup, LatticeBasis, invariant_factors_sparse
from .sparselim import SliceQuotient
from .poly import MultiPoly

LAMBDA = "l"


@dataclass(frozen=True)
class BaseRing:
    """Coefficient ring: Z[l] ('Lambda') or Z[l]/(24 l^2) ('A'); deg l = 1."""

    tag: str

    def __post_init__(self):
        if self.tag not in ("Lambda", "A"):
            raise ValueError("base ring tag must be 'Lambda' or 'A'")

    @property
    def torsion_relation(self) -> Optional[tuple[int, int]]:
        """(coefficient, l-power) of the defining relation, if any."""
        return (24, 2) if self.tag == "A" else None


LAMBDA_RING = BaseRing("Lambda")
A_RING = BaseRing("A")


class HomogeneityError(ValueError):
    """Input expected to be homogeneous was not."""


@dataclass(frozen=True)
class GradedElement:
    """Homogeneous element of a graded module: degree + generator coefficients.

    The l-power on generator i is implied: degree - deg(gen_i).
    """

    module: "GradedModule"
    degree: int
    coeffs: tuple[tuple[int, int], ...]  # sorted (gen_index, coeff), coeff != 0

    @classmethod
    def make(cls, module: "GradedModule", degree: int, coeffs: Mapping[int, int]) -> "GradedElement":
        items = tuple(sorted((i, c) for i, c in coeffs.items() if c))
        for i, _ in items:
            if module.gen_degrees[i] > degree:
                raise HomogeneityError(
                    f"generator {module.gen_names[i]} has degree above {degree}"
                )
        return cls(module, degree, items)

    def as_dict(self) -> dict[int, int]:
        return dict(self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "GradedElement") -> "GradedElement":
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        if self.degree != other.degree or self.module is not other.module:
            raise HomogeneityError("cannot add elements of different degrees")
        d = self.as_dict()
        for i, c in other.coeffs:
            d[i] = d.get(i, 0) + c
        return GradedElement.make(self.module, self.degree, d)

    def __neg__(self) -> "GradedElement":
        return GradedElement(self.module, self.degree, tuple((i, -c) for i, c in self.coeffs))

    def __sub__(self, other: "GradedElement") -> "GradedElement":
        return self + (-other)

    def scale(self, k: int) -> "GradedElement":
        return GradedElement.make(self.module, self.degree, {i: k * c for i, c in self.coeffs})

    def times_lambda(self, power: int = 1) -> "GradedElement":
        return GradedElement(self.module, self.degree + power, self.coeffs)

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        m = self.module
        bits = []
        for i, c in self.coeffs:
            k = self.degree - m.gen_degrees[i]
            lpart = "" if k == 0 else (f"{LAMBDA}*" if k == 1 else f"{LAMBDA}^{k}*")
            piece = f"{lpart}{m.gen_names[i]}"
            if c == -1:
                piece = "-" + piece
            elif c != 1:
                piece = f"{c}*{piece}"
            bits.append(piece)
        out = bits[0]
        for b in bits[1:]:
            out += f" - {b[1:]}" if b.startswith("-") else f" + {b}"
        return out


class GradedModule:
    """Finitely presented graded module over Lambda or A.

    Generators carry nonnegative degrees; every relation is homogeneous, so
    a relation is stored as (degree, {gen_index: integer coefficient}) with
    the l-power on each generator implied by the degrees.
    """

    def __init__(
        self,
        base: BaseRing,
        generators: Sequence[tuple[str, int]],
        relations: Iterable[tuple[int, Mapping[int, int]]] = (),
    ):
        self.base = base
        self.gen_names = tuple(n for n, _ in generators)
        if len(set(self.gen_names)) != len(self.gen_names):
            raise ValueError("generator names must be unique")
        self.gen_degrees = tuple(int(d) for _, d in generators)
        if any(d < 0 for d in self.gen_degrees):
            raise ValueError("generator degrees must be nonnegative")
        self.gen_index = {n: i for i, n in enumerate(self.gen_names)}
        rels = []
        for deg, coeffs in relations:
            coeffs = {i: int(c) for i, c in coeffs.items() if c}
            for i in coeffs:
                if self.gen_degrees[i] > deg:
                    raise HomogeneityError("relation involves a generator above its degree")
            rels.append((int(deg), coeffs))
        self.relations = tuple(rels)
        self._slice_cache: dict[int, tuple[tuple[str, ...], FPAbelianGroup]] = {}

    # -- construction helpers -------------------------------------------------

    def element(self, expr: Union[str, GradedElement], degree: Optional[int] = None) -> GradedElement:
        """Parse an expression like '2*th1 - 12*l*d1' into a homogeneous element."""
        if isinstance(expr, GradedElement):
            return expr
        terms = parse_terms(expr)
        coeffs: dict[int, int] = {}
        deg: Optional[int] = None
        for c, mono in terms:
            mono = dict(mono)
            k = mono.pop(LAMBDA, 0)
            if len(mono) != 1:
                raise ExprError(
                    f"module element term must be int * l^k * generator: {expr!r}"
                )
            (name, power), = mono.items()
            if power != 1:
                raise ExprError(f"generator {name!r} cannot carry a power in a module")
            i = self.gen_index.get(name)
            if i is None:
                raise ExprError(f"unknown generator {name!r}")
            d = k + self.gen_degrees[i]
            if deg is None:
                deg = d
            elif deg != d:
                raise HomogeneityError(f"inhomogeneous module element: {expr!r}")
            coeffs[i] = coeffs.get(i, 0) + c
        if deg is None:
            deg = degree if degree is not None else 0
        if degree is not None and deg != degree:
            raise HomogeneityError(f"element {expr!r} has degree {deg}, expected {degree}")
        return GradedElement.make(self, deg, coeffs)

    def with_relations(self, extra: Iterable[GradedElement]) -> "GradedModule":
        rels = list(self.relations)
        for e in extra:
            if e.module.gen_names != self.gen_names:
                raise ValueError("relation from a different module")
            rels.append((e.degree, e.as_dict()))
        return GradedModule(self.base, list(zip(self.gen_names, self.gen_degrees)), rels)

    def shift(self, s: int) -> "GradedModule":
        """Shift all generator degrees (and hence relation degrees) by s."""
        gens = [(n, d + s) for n, d in zip(self.gen_names, self.gen_degrees)]
        rels = [(d + s, dict(coeffs)) for d, coeffs in self.relations]
        return GradedModule(self.base, gens, rels)

    def as_lambda(self) -> "GradedModule":
        """Present the same module over Z[l] (materialising 24 l^2 rows)."""
        if self.base.tag == "Lambda":
            return self
        gens = list(zip(self.gen_names, self.gen_degrees))
        rels = [(d, dict(coeffs)) for d, coeffs in self.relations]
        for i, d in enumerate(self.gen_degrees):
            rels.append((d + 2, {i: 24}))
        return GradedModule(LAMBDA_RING, gens, rels)

    # -- slices ----------------------------------------------------------------

    def slice_basis(self, d: int) -> list[int]:
        return [i for i, gd in enumerate(self.gen_degrees) if gd <= d]

    def slice_labels(self, d: int) -> tuple[str, ...]:
        labels = []
        for i in self.slice_basis(d):
            k = d - self.gen_degrees[i]
            if k == 0:
                labels.append(self.gen_names[i])
            elif k == 1:
                labels.append(f"{LAMBDA}*{self.gen_names[i]}")
            else:
                labels.append(f"{LAMBDA}^{k}*{self.gen_names[i]}")
        return tuple(labels)

    def slice_rows(self, d: int) -> list[dict[int, int]]:
        """Relation rows of the degree-d piece, indexed by slice position."""
        basis = self.slice_basis(d)
        pos = {g: p for p, g in enumerate(basis)}
        rows = []
        for deg, coeffs in self.relations:
            if deg <= d:
                rows.append({pos[i]: c for i, c in coeffs.items()})
        tors = self.base.torsion_relation
        if tors:
            c, k = tors
            for i, gd in enumerate(self.gen_degrees):
                if gd + k <= d:
                    rows.append({pos[i]: c})
        return rows

    def degree_slice(self, d: int) -> tuple[tuple[str, ...], FPAbelianGroup]:
        """The degree-d piece as a finitely presented abelian group."""
        if d < 0:
            raise ValueError("degree must be nonnegative")
        got = self._slice_cache.get(d)
        if got is None:
            labels = self.slice_labels(d)
            rows = self.slice_rows(d)
            dense = []
            for r in rows:
                row = [0] * len(labels)
                for p, c in r.items():
                    row[p] = c
                dense.append(row)
            got = (labels, FPAbelianGroup.from_rows(labels, dense))
            self._slice_cache[d] = got
        return got

    def slice_lattice(self, d: int) -> LatticeBasis:
        lat = LatticeBasis(len(self.slice_basis(d)))
        for r in sorted(self.slice_rows(d), key=lambda r: sorted(r.items())):
            lat.insert(r)
        return lat

    def slice_vector(self, e: GradedElement, d: int) -> dict[int, int]:
        if e.degree != d:
            raise HomogeneityError("element degree disagrees with the slice")
        pos = {g: p for p, g in enumerate(self.slice_basis(d))}
        return {pos[i]: c for i, c in e.coeffs}

    def normal_form(self, e: GradedElement) -> GradedElement:
        lat = self._lattice(e.degree)
        vec = self.slice_vector(e, e.degree)
        red = lat.reduce(vec)
        basis = self.slice_basis(e.degree)
        return GradedElement.make(self, e.degree, {basis[p]: c for p, c in red.items()})

    def reduces_to_zero(self, e: GradedElement) -> bool:
        return self.normal_form(e).is_zero()

    def _lattice(self, d: int) -> LatticeBasis:
        if not hasattr(self, "_lat_cache"):
            self._lat_cache: dict[int, LatticeBasis] = {}
        lat = self._lat_cache.get(d)
        if lat is None:
            lat = self.slice_lattice(d)
            self._lat_cache[d] = lat
        return lat

    def __repr__(self):
        return f"GradedModule({self.base.tag}; {len(self.gen_names)} gens, {len(self.relations)} rels)"


def assemble_extension(
    L: GradedModule,
    N: GradedModule,
    lifts: Sequence[GradedElement],
) -> GradedModule:
    """Presentation of the middle of 0 -> L -> M -> N -> 0.

    `lifts[j]` expresses, in L's generators, the value in M of the j-th
    relation of N applied to chosen lifts of N's generators.  The result has
    generators of N followed by generators of L and relations
    { p(lifted gens) - lift_p } + relations of L.
    """
    if len(lifts) != len(N.relations):
        raise ValueError("need exactly one lift per relation of N")
    if L.base.tag == N.base.tag:
        base = L.base
        Lm, Nm = L, N
    else:
        base = LAMBDA_RING
        Lm = L.as_lambda()
        Nm = N.as_lambda()
    nn = len(Nm.gen_names)
    gens = list(zip(Nm.gen_names, Nm.gen_degrees)) + list(zip(Lm.gen_names, Lm.gen_degrees))
    rels: list[tuple[int, dict[int, int]]] = []
    # relations of N, corrected by lifts (indices shifted for the L block)
    for (deg, coeffs), lift in zip(N.relations, lifts):
        row = dict(coeffs)
        if lift is not None and not lift.is_zero():
            if lift.degree != deg:
                raise HomogeneityError(
                    f"lift of a degree-{deg} relation has degree {lift.degree}"
                )
            for i, c in lift.coeffs:
                row[nn + i] = row.get(nn + i, 0) - c
        rels.append((deg, row))
    # extra relations materialised by as_lambda on the N side
    for deg, coeffs in Nm.relations[len(N.relations):]:
        rels.append((deg, dict(coeffs)))
    for deg, coeffs in Lm.relations:
        rels.append((deg, {nn + i: c for i, c in coeffs.items()}))
    return GradedModule(base, gens, rels)


# ---------------------------------------------------------------------------
# Graded rings.
# ---------------------------------------------------------------------------

class GradedRing:
    """Graded commutative ring presented by generators/relations over Z.

    The coefficient class l is an ordinary generator here.  Monomials are
    exponent vectors; ideal questions are answered per degree by the lattice
    spanned by {monomial x relation}.
    """

    def __init__(self, generators: Sequence[tuple[str, int]], relations: Iterable[MultiPoly] = ()):
        self.gen_names = tuple(n for n, _ in generators)
        self.gen_degrees = tuple(int(d) for _, d in generators)
        if any(d <= 0 for d in self.gen_degrees):
            raise ValueError("ring generator degrees must be positive")
        self.gen_index = {n: i for i, n in enumerate(self.gen_names)}
        rels = []
        for r in relations:
            if r.vars != self.gen_names:
                r = r.rename(self.gen_names)
            if not self._is_homogeneous(r):
                raise HomogeneityError(f"relation is not homogeneous: {r}")
            if not r.is_zero():
                rels.append(r)
        self.relations = tuple(rels)
        self._monomials: dict[int, list[tuple[int, ...]]] = {}
        self._mono_index: dict[int, dict[tuple[int, ...], int]] = {}
        self._lattices: dict[int, LatticeBasis] = {}

    def poly(self, expr: Union[str, MultiPoly], defs: Mapping[str, MultiPoly] | None = None) -> MultiPoly:
        if isinstance(expr, MultiPoly):
            return expr if expr.vars == self.gen_names else expr.rename(self.gen_names)
        from .exprparse import parse_poly

        return parse_poly(expr, self.gen_names, defs)

    def weighted_degree(self, e: tuple[int, ...]) -> int:
        return sum(n * d for n, d in zip(e, self.gen_degrees))

    def _is_homogeneous(self, p: MultiPoly) -> bool:
        degs = {self.weighted_degree(e) for e in p.terms}
        return len(degs) <= 1

    def poly_degree(self, p: MultiPoly) -> int:
        if p.is_zero():
            return 0
        degs = {self.weighted_degree(e) for e in p.terms}
        if len(degs) != 1:
            raise HomogeneityError("polynomial is not homogeneous")
        return degs.pop()

    def monomials(self, d: int) -> list[tuple[int, ...]]:
        """Degree-d monomials, ascending lex in the declared generator order.

        With l declared first, l-rich monomials sort last; since reduction
        eliminates the earliest column, normal forms are pushed onto l-rich
        monomials (e.g. de^2 reduces to -l*de rather than the other way).
        """
        got = self._monomials.get(d)
        if got is None:
            out: list[tuple[int, ...]] = []
            n = len(self.gen_names)

            def rec(i: int, remaining: int, prefix: list[int]):
                if i == n - 1:
                    w = self.gen_degrees[i]
                    if remaining % w == 0:
                        out.append(tuple(prefix + [remaining // w]))
                    return
                w = self.gen_degrees[i]
                for k in range(remaining // w, -1, -1):
                    rec(i + 1, remaining - k * w, prefix + [k])

            if n:
                rec(0, d, [])
            elif d == 0:
                out.append(())
            out.sort()
            got = out
            self._monomials[d] = got
            self._mono_index[d] = {m: i for i, m in enumerate(got)}
        return got

    def slice_lattice(self, d: int) -> SliceQuotient:
        """Quotient structure of the degree-d part by the relation ideal.

        The ideal slice is spanned recursively: g * L_{d - deg g} over the
        generators g together with the relations of degree exactly d; the
        rows are handed to the sparse elimination backend.
        """
        got = self._lattices.get(d)
        if got is not None:
            return got
        monos = self.monomials(d)
        idx = self._mono_index[d]
        rows: list[dict[int, int]] = []
        for r in self.relations:
            if not r.is_zero() and self.poly_degree(r) == d:
                rows.append(self._vectorize(r, d))
        for gi, gd in enumerate(self.gen_degrees):
            if 0 < d - gd:
                lower = self.slice_lattice(d - gd)
                lower_monos = self.monomials(d - gd)
                for row in lower.basis_rows():
                    shifted: dict[int, int] = {}
                    for p, c in row.items():
                        e = list(lower_monos[p])
                        e[gi] += 1
                        shifted[idx[tuple(e)]] = c
                    rows.append(shifted)
        rows.sort(key=lambda r: sorted(r.items()))
        quo = SliceQuotient(rows, len(monos))
        self._lattices[d] = quo
        return quo

    def _vectorize(self, p: MultiPoly, d: int) -> dict[int, int]:
        idx = self._mono_index[d]
        out = {}
        for e, c in p.terms.items():
            out[idx[e]] = c
        return out

    def vectorize(self, p: MultiPoly, d: int) -> dict[int, int]:
        p = self.poly(p)
        if not p.is_zero() and self.poly_degree(p) != d:
            raise HomogeneityError(f"expected degree {d}")
        self.monomials(d)
        return self._vectorize(p, d)

    def normal_form(self, expr: Union[str, MultiPoly], d: Optional[int] = None) -> MultiPoly:
        """Canonical representative of expr in the degree-d slice."""
        p = self.poly(expr)
        if p.is_zero():
            return p
        deg = self.poly_degree(p)
        if d is not None and deg != d:
            raise HomogeneityError(f"expression has degree {deg}, expected {d}")
        lat = self.slice_lattice(deg)
        red = lat.reduce(self.vectorize(p, deg))
        monos = self.monomials(deg)
        return MultiPoly(self.gen_names, {monos[p_]: c for p_, c in red.items()})

    def reduces_to_zero(self, expr: Union[str, MultiPoly]) -> tuple[bool, list[tuple[int, MultiPoly]]]:
        """Whether expr is 0 in the ring; certificate = echelon rows used.

        The certificate lists (multiplier, relation-lattice row as polynomial)
        with expr equal to the sum of multiplier * row when the answer is yes.
        """
        p = self.poly(expr)
        if p.is_zero():
            return True, []
        deg = self.poly_degree(p)
        lat = self.slice_lattice(deg)
        red, cert = lat.reduce_with_certificate(self.vectorize(p, deg))
        monos = self.monomials(deg)
        rows = []
        for q, row in cert:
            rows.append((q, MultiPoly(self.gen_names, {monos[c]: v for c, v in row.items()})))
        return (not red), rows

    def degree_slice(self, d: int) -> tuple[tuple[str, ...], FPAbelianGroup]:
        monos = self.monomials(d)
        labels = tuple(_mono_label(self.gen_names, m) for m in monos)
        lat = self.slice_lattice(d)
        dense = []
        for r in lat.basis_rows():
            row = [0] * len(monos)
            for p, c in r.items():
                row[p] = c
            dense.append(row)
        return labels, FPAbelianGroup.from_rows(labels, dense)

    def slice_type(self, d: int) -> tuple[int, tuple[int, ...]]:
        return self.slice_lattice(d).isomorphism_type()

    def element_order(self, expr: Union[str, MultiPoly]):
        p = self.poly(expr)
        if p.is_zero():
            return 1
        d = self.poly_degree(p)
        return self.slice_lattice(d).element_order(self.vectorize(p, d))

    def __repr__(self):
        return f"GradedRing({len(self.gen_names)} gens, {len(self.relations)} rels)"


def _mono_label(names: Sequence[str], e: tuple[int, ...]) -> str:
    bits = []
    for n, k in zip(names, e):
        if k == 1:
            bits.append(n)
        elif k:
            bits.append(f"{n}^{k}")
    return "*".join(bits) if bits else "1"


# ---------------------------------------------------------------------------
# Presentation comparison.
# ---------------------------------------------------------------------------

@dataclass
class DegreeReport:
    degree: int
    well_defined: bool
    surjective: bool
    source_type: tuple[int, tuple[int, ...]]
    target_type: tuple[int, tuple[int, ...]]

    @property
    def ok(self) -> bool:
        return self.well_defined and self.surjective and self.source_type == self.target_type


@dataclass
class ComparisonReport:
    per_degree: list[DegreeReport]

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.per_degree)

    def first_failure(self) -> Optional[DegreeReport]:
        for r in self.per_degree:
            if not r.ok:
                return r
        return None

    def __str__(self):
        if self.ok:
            return f"match through degree {self.per_degree[-1].degree}"
        f = self.first_failure()
        why = []
        if not f.well_defined:
            why.append("relations do not map to zero")
        if not f.surjective:
            why.append("not surjective")
        if f.source_type != f.target_type:
            why.append(f"types differ: {f.source_type} vs {f.target_type}")
        return f"failure in degree {f.degree}: " + "; ".join(why)


def compare_presentations(
    P: Union[GradedModule, GradedRing],
    Q: Union[GradedModule, GradedRing],
    correspondence: Mapping[str, Union[str, MultiPoly, GradedElement]],
    d_max: int,
) -> ComparisonReport:
    """Degreewise isomorphism check along a generator correspondence.

    For each degree d <= d_max, checks that the correspondence sends the
    degree-d relations of P into those of Q (well-defined), that the images
    of P's degree-d basis together with Q's relations span Q's slice
    (surjective), and that the two slice groups have equal isomorphism type;
    together these force a degreewise isomorphism.
    """
    target_images = _resolve_correspondence(P, Q, correspondence)
    reports = []
    for d in range(d_max + 1):
        reports.append(_compare_degree(P, Q, target_images, d))
    return ComparisonReport(reports)


def _resolve_correspondence(P, Q, correspondence):
    images = {}
    for name in P.gen_names:
        if name not in correspondence:
            raise ValueError(f"correspondence missing generator {name!r}")
        img = correspondence[name]
        if isinstance(Q, GradedRing):
            img = Q.poly(img) if not isinstance(img, MultiPoly) else img.rename(Q.gen_names)
        else:
            img = Q.element(img) if not isinstance(img, GradedElement) else img
        images[name] = img
    return images


def _image_of_basis(P, Q, images, d):
    """Vectors in Q's degree-d slice for each basis element of P's slice."""
    out = []
    if isinstance(P, GradedModule):
        for i in P.slice_basis(d):
            name = P.gen_names[i]
            k = d - P.gen_degrees[i]
            img = images[name]
            if isinstance(Q, GradedRing):
                lam = MultiPoly.var(Q.gen_names, LAMBDA)
                p = img * lam ** k
                out.append(Q.vectorize(p, d))
            else:
                out.append(Q.slice_vector(img.times_lambda(k), d))
    else:
        monos = P.monomials(d)
        if isinstance(Q, GradedRing):
            for e in monos:
                p = MultiPoly.const(Q.gen_names, 1)
                for i, n in enumerate(e):
                    if n:
                        p = p * images[P.gen_names[i]] ** n
                out.append(Q.vectorize(p, d))
        else:
            raise ValueError("ring-to-module comparison is not supported")
    return out


def _compare_degree(P, Q, images, d) -> DegreeReport:
    _, src_grp = P.degree_slice(d)
    _, tgt_grp = Q.degree_slice(d)
    src_type = src_grp.isomorphism_type()
    tgt_type = tgt_grp.isomorphism_type()
    basis_images = _image_of_basis(P, Q, images, d)

    if isinstance(Q, GradedRing):
        tgt_lat = Q.slice_lattice(d)
        ncols = len(Q.monomials(d))
    else:
        tgt_lat = Q._lattice(d)
        ncols = len(Q.slice_basis(d))

    # well-definedness: P-slice relations map into Q's relation lattice
    well = True
    if isinstance(P, GradedModule):
        rows = P.slice_rows(d)
    else:
        rows = P.slice_lattice(d).basis_rows()
    for r in rows:
        img: dict[int, int] = {}
        for p_, c in r.items():
            for cc, v in basis_images[p_].items():
                img[cc] = img.get(cc, 0) + c * v
        if not tgt_lat.contains(img):
            well = False
            break

    # surjectivity: images + target relations span the whole slice lattice
    if isinstance(Q, GradedRing):
        reduced = [tgt_lat.reduce(v) for v in basis_images]
        small = list(tgt_lat.core_rows) + [r for r in reduced if r]
        npivot = len(tgt_lat.pivot_rows)
        factors = invariant_factors_sparse(small, ncols)
        surj = len(factors) == ncols - npivot and all(f == 1 for f in factors)
    else:
        span = tgt_lat.copy()
        span.insert_many(basis_images)
        span.normalize()
        surj = len(span.basis) == ncols and all(
            row[c] == 1 for c, row in span.basis.items()
        )
    return DegreeReport(d, well, surj, src_type, tgt_type)


# ---------------------------------------------------------------------------
# Finite group actions on presentations.
# ---------------------------------------------------------------------------

class PermutationAction:
    """Action of a permutation group on a graded module's generators.

    `tables` maps each generating permutation (a tuple sigma with
    sigma[i] = image of marking i+1) to {generator name: image element}.
    The closure under composition is computed on demand; the group law is
    verified modulo relations rather than assumed.
    """

    def __init__(self, module: GradedModule, tables: Mapping[tuple, Mapping[str, Union[str, GradedElement]]]):
        self.module = module
        self.n = len(next(iter(tables)))
        self.gen_tables: dict[tuple, dict[str, GradedElement]] = {}
        for sigma, table in tables.items():
            if len(sigma) != self.n or sorted(sigma) != list(range(1, self.n + 1)):
                raise ValueError(f"not a permutation of 1..{self.n}: {sigma}")
            resolved = {}
            for name in module.gen_names:
                if name not in table:
                    raise ValueError(f"action table for {sigma} missing {name!r}")
                resolved[name] = module.element(table[name])
            self.gen_tables[sigma] = resolved
        self._tables: dict[tuple, dict[str, GradedElement]] = dict(self.gen_tables)
        self._tables[tuple(range(1, self.n + 1))] = {
            name: module.element(name) for name in module.gen_names
        }

    @staticmethod
    def compose(sigma: tuple, tau: tuple) -> tuple:
        # (sigma tau)(i) = sigma(tau(i))
        return tuple(sigma[tau[i] - 1] for i in range(len(tau)))

    def act(self, sigma: tuple, x: GradedElement) -> GradedElement:
        table = self._table_for(sigma)
        out = GradedElement.make(self.module, x.degree, {})
        for i, c in x.coeffs:
            name = self.module.gen_names[i]
            k = x.degree - self.module.gen_degrees[i]
            out = out + table[name].times_lambda(k).scale(c)
        return out

    def _table_for(self, sigma: tuple) -> dict[str, GradedElement]:
        got = self._tables.get(sigma)
        if got is not None:
            return got
        # breadth-first word search over the stored generators
        frontier = list(self._tables)
        seen = set(frontier)
        parents: dict[tuple, tuple[tuple, tuple]] = {}
        while frontier:
            nxt = []
            for g in self.gen_tables:
                for h in frontier:
                    prod = self.compose(g, h)
                    if prod not in seen:
                        seen.add(prod)
                        parents[prod] = (g, h)
                        nxt.append(prod)
            for p in nxt:
                if p not in self._tables:
                    g, h = parents[p]
                    self._tables[p] = self._compose_tables(g, h)
            if sigma in self._tables:
                return self._tables[sigma]
            frontier = nxt
        raise ValueError(f"{sigma} is not in the group generated by the action tables")

    def _compose_tables(self, g: tuple, h: tuple) -> dict[str, GradedElement]:
        gh = {}
        htab = self._tables[h]
        for name in self.module.gen_names:
            gh[name] = self.act_with_table(self._tables[g], htab[name])
        return gh

    def act_with_table(self, table: dict[str, GradedElement], x: GradedElement) -> GradedElement:
        out = GradedElement.make(self.module, x.degree, {})
        for i, c in x.coeffs:
            name = self.module.gen_names[i]
            k = x.degree - self.module.gen_degrees[i]
            out = out + table[name].times_lambda(k).scale(c)
        return out

    def verify_group_law(self) -> bool:
        """act(sigma tau, g) == act(sigma, act(tau, g)) modulo relations."""
        gens = list(self.gen_tables)
        for s in gens:
            for t in gens:
                st = self.compose(s, t)
                for name in self.module.gen_names:
                    x = self.module.element(name)
                    a = self.act(st, x)
                    b = self.act(s, self.act(t, x))
                    if not self.module.reduces_to_zero(a - b):
                        return False
        return True
