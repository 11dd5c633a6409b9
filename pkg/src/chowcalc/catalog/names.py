"""Canonical generator names for the genus-one catalog.

Boundary classes are named after their strata: `de` is the divisor whose
genus-one piece carries no markings, `d1`/`d12` carry the indicated
markings, `th*` are the two-vertex non-separating strata, `de_1`, `d1_s`,
`de_12`, `d12_34`, `de_s`, `de_s_s` the nested codimension-two and -three
strata, and `phi` the irreducible nodal divisor.  Index-template expansion
("forall J K | ...") produces non-canonical spellings like `d21` or
`th23_14`; `canon_name` folds those onto the canonical one.
"""

from __future__ import annotations

import re

_PAIR = re.compile(r"^(d|de_|th)(\d)(\d)$")
_PAIRPAIR = re.compile(r"^(d|th)(\d)(\d)_(\d)(\d)$")


def canon_name(name: str) -> str:
    m = _PAIR.match(name)
    if m:
        p, a, b = m.group(1), int(m.group(2)), int(m.group(3))
        a, b = sorted((a, b))
        return f"{p}{a}{b}"
    m = _PAIRPAIR.match(name)
    if m:
        p = m.group(1)
        pair1 = tuple(sorted((int(m.group(2)), int(m.group(3)))))
        pair2 = tuple(sorted((int(m.group(4)), int(m.group(5)))))
        if pair1 > pair2:
            pair1, pair2 = pair2, pair1
        return f"{p}{pair1[0]}{pair1[1]}_{pair2[0]}{pair2[1]}"
    return name


_INDEX_VARS = "JKLM"


def expand_template(line: str, indices: list[int]) -> list[str]:
    """Expand 'forall J K | expr' over injective index assignments.

    Index variables are substituted inside name tokens and the resulting
    names canonicalised, so `dJK` with J=2, K=1 becomes `d12`.
    """
    if "|" not in line:
        return [line]
    head, expr = line.split("|", 1)
    head = head.strip()
    if not head.startswith("forall"):
        raise ValueError(f"bad template head: {head!r}")
    vars_ = head.split()[1:]
    if not vars_ or any(v not in _INDEX_VARS for v in vars_):
        raise ValueError(f"bad index variables in {head!r}")
    from itertools import permutations

    out = []
    for assign in permutations(indices, len(vars_)):
        sub = dict(zip(vars_, assign))
        out.append(_substitute(expr.strip(), sub))
    return out


def _substitute(expr: str, sub: dict[str, int]) -> str:
    def fix(m: re.Match) -> str:
        name = m.group(0)
        new = "".join(str(sub[ch]) if ch in sub else ch for ch in name)
        return canon_name(new)

    return re.sub(r"[A-Za-z][A-Za-z0-9_]*", fix, expr)
