"""Re-derivation of the compactified Chow rings from their pieces.

For each n <= 4 the pipeline takes the stored boundary-module presentation,
quotients by the stored boundary images of the indecomposable unit classes,
shifts degrees by one (boundary classes sit one codimension deeper in the
total space), extends by the open-part module along the stored lifts, and
compares the result degreewise against the stated ring.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from ..grading import (
    LAMBDA_RING,
    ComparisonReport,
    GradedElement,
    GradedModule,
    GradedRing,
    assemble_extension,
    compare_presentations,
)
from .spaces import boundary_module_id, ring_id, space

OPEN_IDS = {1: "M11", 2: "M12", 3: "M13", 4: "M14"}


def open_part_module(n: int) -> GradedModule:
    """The stated Chow ring of the open part as a module over Z[l] on `one`."""
    sp = space(OPEN_IDS[n])
    ring: GradedRing = sp.presentation  # type: ignore[assignment]
    mod = GradedModule(LAMBDA_RING, [("one", 0)])
    rels = []
    for r in ring.relations:
        # rings of the open parts are univariate in l
        (e, c), = r.terms.items()
        rels.append((sum(e), {0: c}))
    return GradedModule(LAMBDA_RING, [("one", 0)], rels)


def boundary_image_elements(n: int, variant: Optional[str] = None) -> list[GradedElement]:
    """Stored generators of the boundary image of the unit classes."""
    if n == 1:
        return []
    dmod_id = boundary_module_id(n) if variant is None else variant
    dsp = space(dmod_id)
    dmod: GradedModule = dsp.presentation  # type: ignore[assignment]
    if n == 2:
        expr = space("M12").boundary_image["p"]
        return [dmod.element(expr)]
    if n == 3:
        out = []
        for key in ("p12", "p13", "p23"):
            expr = space("M13").boundary_image[key]
            out.append(dmod.element(expr))
        return out
    # n == 4: generated by the tau, upsilon and epsilon classes
    names = [f"tau{a}{b}" for a, b in ((1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4))]
    names += [f"ups{a}{b}" for a, b in ((1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4))]
    names += ["eps"]
    return [dsp.classes[name] for name in names]


@dataclass
class ReplayResult:
    n: int
    assembled: GradedModule
    report: ComparisonReport

    @property
    def ok(self) -> bool:
        return self.report.ok


def replay_localization(n: int, d_max: int = 6, variant: Optional[str] = None) -> ReplayResult:
    """Boundary module -> quotient by the unit-class image -> extension by
    the open part along the stored lifts -> degreewise comparison with the
    stated compactified ring."""
    if not 1 <= n <= 4:
        raise ValueError("n must be between 1 and 4")
    dmod_id = boundary_module_id(n) if variant is None else variant
    dmod: GradedModule = space(dmod_id).presentation  # type: ignore[assignment]
    images = boundary_image_elements(n, variant)
    quotient = dmod.with_relations(images) if images else dmod
    L = quotient.shift(1)
    N = open_part_module(n)

    # align stored lifts with the relations of N
    lift_exprs = {}
    for lhs, rhs in space(OPEN_IDS[n]).lifts:
        key = _relation_key_from_expr(lhs)
        lift_exprs[key] = rhs
    if not lift_exprs and n <= 2:
        lift_exprs = {(1, 12): "phi"}
    from .spaces import _module_element

    dsp_classes = space(dmod_id).classes
    lifts = []
    for deg, coeffs in N.relations:
        key = (deg, coeffs[0])
        if key not in lift_exprs:
            raise ValueError(f"no stored lift for the degree-{deg} relation")
        raw = _module_element(dmod, lift_exprs[key], dsp_classes)
        lifts.append(GradedElement.make(L, raw.degree + 1, raw.as_dict()))
    M = assemble_extension(L, N, lifts)

    ring: GradedRing = space(ring_id(1, n)).presentation  # type: ignore[assignment]
    corr = dict(space(ring_id(1, n)).correspondence)
    report = compare_presentations(M, ring, corr, d_max)
    return ReplayResult(n, M, report)


def _relation_key_from_expr(expr: str) -> tuple[int, int]:
    """(degree, coefficient) of a one-term l-power relation like '12*l'."""
    from ..exprparse import parse_terms

    terms = parse_terms(expr)
    if len(terms) != 1:
        raise ValueError(f"lift key must be a single term: {expr!r}")
    c, mono = terms[0]
    mono = dict(mono)
    mono.pop("one", None)
    k = mono.pop("l", 0)
    if mono:
        raise ValueError(f"lift key must be c*l^k: {expr!r}")
    return (k, c)
