"""Sparse multivariate polynomial arithmetic over Z and Q.

Terms are stored as {exponent tuple: coefficient} against a fixed variable
list; printing follows graded-lex order so printed forms re-parse to equal
polynomials.  Division, gcd (subresultant PRS with an evaluation-based fast
path), squarefree parts and Sylvester resultants are exact; coefficients are
Python ints, with Fractions allowed where a caller substitutes rationals.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Mapping, Optional, Sequence, Union

Coeff = Union[int, Fraction]


class MultiPoly:
    __slots__ = ("vars", "terms")

    def __init__(self, variables: Sequence[str], terms: Optional[Mapping[tuple, Coeff]] = None):
        self.vars = tuple(variables)
        t = {}
        if terms:
            for e, c in terms.items():
                if c:
                    t[tuple(e)] = c
        self.terms = t

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, variables: Sequence[str]) -> "MultiPoly":
        return cls(variables)

    @classmethod
    def const(cls, variables: Sequence[str], c: Coeff) -> "MultiPoly":
        p = cls(variables)
        if c:
            p.terms[(0,) * len(p.vars)] = c
        return p

    @classmethod
    def var(cls, variables: Sequence[str], name: str) -> "MultiPoly":
        variables = tuple(variables)
        i = variables.index(name)
        e = [0] * len(variables)
        e[i] = 1
        return cls(variables, {tuple(e): 1})

    def same(self, terms: Mapping[tuple, Coeff]) -> "MultiPoly":
        return MultiPoly(self.vars, terms)

    # -- basic queries -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_const(self) -> bool:
        z = (0,) * len(self.vars)
        return not self.terms or (len(self.terms) == 1 and z in self.terms)

    def const_value(self) -> Coeff:
        z = (0,) * len(self.vars)
        return self.terms.get(z, 0)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def degree_in(self, var: str) -> int:
        i = self.vars.index(var)
        return max((e[i] for e in self.terms), default=0)

    def is_homogeneous(self) -> bool:
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self.is_const() and self.const_value() == other
        return isinstance(other, MultiPoly) and self.vars == other.vars and self.terms == other.terms

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.const(self.vars, other)
        t = dict(self.terms)
        for e, c in other.terms.items():
            v = t.get(e, 0) + c
            if v:
                t[e] = v
            else:
                t.pop(e, None)
        return MultiPoly(self.vars, t)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.const(self.vars, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return MultiPoly(self.vars)
            return MultiPoly(self.vars, {e: c * other for e, c in self.terms.items()})
        if self.vars != other.vars:
            raise ValueError("variable lists differ")
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        out: dict = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                v = out.get(e, 0) + ca * cb
                if v:
                    out[e] = v
                else:
                    del out[e]
        return MultiPoly(self.vars, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = MultiPoly.const(self.vars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    # -- structure -----------------------------------------------------------

    def content(self) -> int:
        g = 0
        for c in self.terms.values():
            g = gcd(g, c if isinstance(c, int) else 0)
            if g == 1:
                return 1
        return g

    def primitive(self) -> "MultiPoly":
        """Divide by integer content and normalise the leading sign."""
        if not self.terms:
            return self
        g = self.content()
        if g == 0:
            g = 1
        lead = self.terms[max(self.terms, key=_grlex_key)]
        if (lead if isinstance(lead, int) else lead.numerator) < 0:
            g = -g
        return MultiPoly(self.vars, {e: c // g if isinstance(c, int) else c / g for e, c in self.terms.items()})

    def map_coeffs(self, f) -> "MultiPoly":
        return MultiPoly(self.vars, {e: f(c) for e, c in self.terms.items()})

    def derivative(self, var: str) -> "MultiPoly":
        i = self.vars.index(var)
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                e2 = list(e)
                e2[i] -= 1
                out[tuple(e2)] = out.get(tuple(e2), 0) + c * e[i]
        return MultiPoly(self.vars, out)

    # -- substitution ----------------------------------------------------------

    def substitute(self, bindings: Mapping[str, Union["MultiPoly", Coeff]]) -> "MultiPoly":
        """Exact composition: each bound variable is replaced, others retained.

        Polynomial values must share this polynomial's variable list.
        """
        vs = self.vars
        vals: list[Optional[MultiPoly]] = []
        for name in vs:
            if name in bindings:
                b = bindings[name]
                if isinstance(b, MultiPoly):
                    if b.vars != vs:
                        raise ValueError("binding polynomial has a different variable list")
                    vals.append(b)
                else:
                    vals.append(MultiPoly.const(vs, b))
            else:
                vals.append(None)
        # cache powers per variable index
        powers: dict[tuple[int, int], MultiPoly] = {}

        def power(i: int, n: int) -> MultiPoly:
            key = (i, n)
            got = powers.get(key)
            if got is None:
                got = vals[i] ** n
                powers[key] = got
            return got

        out = MultiPoly(vs)
        for e, c in self.terms.items():
            term = None  # lazily built product of bound parts
            residual = list(e)
            for i, n in enumerate(e):
                if n and vals[i] is not None:
                    residual[i] = 0
                    term = power(i, n) if term is None else term * power(i, n)
            mono = MultiPoly(vs, {tuple(residual): c})
            out = out + (mono if term is None else mono * term)
        return out

    def rename(self, variables: Sequence[str]) -> "MultiPoly":
        """Reinterpret over a new variable list (old vars must all appear)."""
        variables = tuple(variables)
        idx = []
        for i, v in enumerate(self.vars):
            if any(e[i] for e in self.terms):
                idx.append((i, variables.index(v)))
        out = {}
        n = len(variables)
        for e, c in self.terms.items():
            e2 = [0] * n
            for i, j in idx:
                e2[j] = e[i]
            out[tuple(e2)] = c
        return MultiPoly(variables, out)

    # -- printing / parsing -----------------------------------------------------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for e in sorted(self.terms, key=_grlex_key, reverse=True):
            c = self.terms[e]
            factors = []
            for v, n in zip(self.vars, e):
                if n == 1:
                    factors.append(v)
                elif n:
                    factors.append(f"{v}^{n}")
            mono = "*".join(factors)
            if not mono:
                piece = str(c)
            elif c == 1:
                piece = mono
            elif c == -1:
                piece = f"-{mono}"
            else:
                piece = f"{c}*{mono}"
            if bits and not piece.startswith("-"):
                bits.append("+ " + piece)
            elif bits:
                bits.append("- " + piece[1:])
            else:
                bits.append(piece)
        return " ".join(bits)

    __repr__ = __str__


def _grlex_key(e: tuple) -> tuple:
    return (sum(e), e)


# ---------------------------------------------------------------------------
# Division and gcd.
# ---------------------------------------------------------------------------

def exact_divide(p: MultiPoly, q: MultiPoly) -> Optional[MultiPoly]:
    """Return p / q when q divides p exactly, else None.

    Leading-term cancellation in graded-lex order; for an exact division over
    a domain every intermediate leading term stays divisible, so a single
    failed step certifies non-divisibility.
    """
    if q.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if p.is_zero():
        return MultiPoly(p.vars)
    if p.vars != q.vars:
        raise ValueError("variable lists differ")
    qlead = max(q.terms, key=_grlex_key)
    qc = q.terms[qlead]
    rem = dict(p.terms)
    quo: dict = {}
    while rem:
        e = max(rem, key=_grlex_key)
        c = rem[e]
        de = tuple(a - b for a, b in zip(e, qlead))
        if any(x < 0 for x in de):
            return None
        if isinstance(c, int) and isinstance(qc, int):
            if c % qc:
                return None
            f = c // qc
        else:
            f = Fraction(c) / Fraction(qc)
        quo[de] = f
        for eq, cq in q.terms.items():
            ee = tuple(a + b for a, b in zip(de, eq))
            v = rem.get(ee, 0) - f * cq
            if v:
                rem[ee] = v
            else:
                rem.pop(ee, None)
    return MultiPoly(p.vars, quo)


def _to_univar(p: MultiPoly, var: str) -> list[MultiPoly]:
    """Coefficient list of p in var (index = power), coefficients in the rest."""
    i = p.vars.index(var)
    d = p.degree_in(var)
    coeffs = [dict() for _ in range(d + 1)]
    for e, c in p.terms.items():
        e2 = list(e)
        n = e2[i]
        e2[i] = 0
        coeffs[n][tuple(e2)] = c
    return [MultiPoly(p.vars, t) for t in coeffs]


def _from_univar(coeffs: Sequence[MultiPoly], var: str, vars_: Sequence[str]) -> MultiPoly:
    i = list(vars_).index(var)
    out: dict = {}
    for n, c in enumerate(coeffs):
        for e, v in c.terms.items():
            e2 = list(e)
            e2[i] += n
            out[tuple(e2)] = out.get(tuple(e2), 0) + v
    return MultiPoly(vars_, {e: c for e, c in out.items() if c})


def _prem(f: list[MultiPoly], g: list[MultiPoly], vars_: Sequence[str]) -> list[MultiPoly]:
    """Pseudo-remainder lc(g)^(df-dg+1) f mod g (coefficient lists)."""
    dg = len(g) - 1
    lc_g = g[-1]
    r = list(f)
    e = len(f) - 1 - dg + 1
    while len(r) - 1 >= dg and not (len(r) == 1 and r[0].is_zero()):
        lr = r[-1]
        shift = len(r) - 1 - dg
        newr = [c * lc_g for c in r]
        for j, cg in enumerate(g):
            newr[j + shift] = newr[j + shift] - lr * cg
        newr.pop()  # the leading term cancels exactly
        while len(newr) > 1 and newr[-1].is_zero():
            newr.pop()
        if not newr:
            newr = [MultiPoly(vars_)]
        r = newr
        e -= 1
    if e > 0:
        scale = lc_g ** e
        r = [c * scale for c in r]
    return r


def _int_content_and_primitive(p: MultiPoly, var: str) -> tuple[MultiPoly, list[MultiPoly]]:
    coeffs = _to_univar(p, var)
    cont = coeffs[0]
    for c in coeffs[1:]:
        cont = gcd_poly(cont, c)
        if cont.is_const() and abs(cont.const_value()) == 1:
            break
    prim = []
    for c in coeffs:
        if c.is_zero():
            prim.append(c)
        else:
            q = exact_divide(c, cont)
            assert q is not None
            prim.append(q)
    return cont, prim


def gcd_poly(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    """Primitive gcd of integer polynomials.

    An evaluation/reconstruction pass (gcd of the polynomials at a tall
    integer, digits read back in balanced form, verified by exact division)
    handles large inputs quickly; on verification failure we fall back to
    primitive-part recursion with the subresultant PRS.
    """
    if p.is_zero():
        return q.primitive()
    if q.is_zero():
        return p.primitive()
    if p.is_const() or q.is_const():
        g = gcd(p.content(), q.content())
        return MultiPoly.const(p.vars, g if g else 1)
    g = _gcd_heuristic(p, q, tries=6)
    if g is not None:
        return g.primitive()
    return _gcd_prs(p, q)


def _gcd_prs(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    # main variable: first variable occurring in both
    var = None
    for i, v in enumerate(p.vars):
        if any(e[i] for e in p.terms) and any(e[i] for e in q.terms):
            var = v
            break
    if var is None:
        # disjoint variable supports: gcd is the content gcd
        g = gcd(p.content(), q.content())
        return MultiPoly.const(p.vars, g if g else 1)
    cp, fp = _int_content_and_primitive(p, var)
    cq, fq = _int_content_and_primitive(q, var)
    cont = gcd_poly(cp, cq)
    f, g = (fp, fq) if len(fp) >= len(fq) else (fq, fp)
    # subresultant polynomial remainder sequence (Brown's beta/psi recipe)
    vars_ = p.vars
    one = MultiPoly.const(vars_, 1)
    d = len(f) - len(g)
    beta = MultiPoly.const(vars_, (-1) ** (d + 1))
    psi = MultiPoly.const(vars_, -1)
    while True:
        r = _prem(f, g, vars_)
        if len(r) == 1 and r[0].is_zero():
            break
        rr = []
        for c in r:
            if c.is_zero():
                rr.append(c)
            else:
                qq = exact_divide(c, beta)
                assert qq is not None, "subresultant division failed"
                rr.append(qq)
        lc_old = g[-1]
        f, g = g, rr
        if d > 0:
            num = (-lc_old) ** d
            den = psi ** (d - 1) if d > 1 else one
            psi = exact_divide(num, den) if d > 1 else num
            assert psi is not None
        d = len(f) - len(g)
        beta = -lc_old * psi ** d
        if len(g) == 1:
            break
    if len(g) == 1 and not g[0].is_zero():
        # coprime primitive parts: the gcd is the content part
        return cont.primitive()
    _, prim = _int_content_and_primitive(_from_univar(g, var, vars_), var)
    result = cont * _from_univar(prim, var, vars_)
    return result.primitive()


def _eval_bound(p: MultiPoly) -> int:
    return max(abs(c) for c in p.terms.values()) if p.terms else 0


def _gcd_heuristic(p: MultiPoly, q: MultiPoly, tries: int) -> Optional[MultiPoly]:
    """GCDHEU: evaluate one variable at a tall integer, recurse, reconstruct.

    Integer content is split off first: the true gcd of primitive inputs is
    primitive, so a reconstructed candidate may be primitivised before the
    division check, and the content gcd is multiplied back at the end.  The
    return value is the FULL gcd (content included) so that reconstruction
    digits stay faithful at enclosing recursion levels.
    """
    if any(isinstance(c, Fraction) for c in p.terms.values()):
        return None
    if any(isinstance(c, Fraction) for c in q.terms.values()):
        return None
    live = [i for i in range(len(p.vars))
            if any(e[i] for e in p.terms) or any(e[i] for e in q.terms)]
    if not live:
        g = gcd(p.content(), q.content())
        return MultiPoly.const(p.vars, g if g else 1)
    ic = gcd(p.content(), q.content())
    pp, qq = p.primitive(), q.primitive()
    i = live[-1]
    var = pp.vars[i]
    xi = 2 * min(_eval_bound(pp), _eval_bound(qq)) + 29
    for _ in range(tries):
        if xi.bit_length() * max(pp.degree_in(var), qq.degree_in(var)) > 600_000:
            return None
        pe = _eval_var(pp, i, xi)
        qe = _eval_var(qq, i, xi)
        if pe.is_zero() or qe.is_zero():
            xi = xi * 2 + 1
            continue
        if pe.is_const() and qe.is_const():
            ge = MultiPoly.const(pp.vars, gcd(pe.const_value(), qe.const_value()))
        else:
            ge = _gcd_heuristic(pe, qe, tries)
            if ge is None:
                return None
        cand = _reconstruct(ge, i, xi).primitive()
        if not cand.is_zero() and exact_divide(pp, cand) is not None and exact_divide(qq, cand) is not None:
            return cand * ic
        xi = xi * 73794 // 27011 * 2 + 1  # quasi-random growth, stays odd
    return None


def _eval_var(p: MultiPoly, i: int, x: int) -> MultiPoly:
    out: dict = {}
    powcache = {0: 1}

    def pw(n):
        got = powcache.get(n)
        if got is None:
            got = x ** n
            powcache[n] = got
        return got

    for e, c in p.terms.items():
        e2 = list(e)
        n = e2[i]
        e2[i] = 0
        key = tuple(e2)
        out[key] = out.get(key, 0) + c * pw(n)
    return MultiPoly(p.vars, {e: c for e, c in out.items() if c})


def _reconstruct(g: MultiPoly, i: int, x: int) -> MultiPoly:
    """Read balanced base-x digits back into powers of variable i."""
    out: dict = {}
    work = dict(g.terms)
    n = 0
    while work:
        nxt = {}
        for e, c in work.items():
            r = c % x
            if r > x // 2:
                r -= x
            if r:
                e2 = list(e)
                e2[i] = n
                out[tuple(e2)] = r
            rest = (c - r) // x
            if rest:
                nxt[e] = rest
        work = nxt
        n += 1
        if n > 4000:
            return MultiPoly(g.vars)
    return MultiPoly(g.vars, out)


def squarefree_part(p: MultiPoly) -> MultiPoly:
    """Product of the distinct irreducible factors of p, primitive.

    Over characteristic zero this is p / gcd(p, dp/dv_1, ..., dp/dv_n),
    iterating the gcd over the variables that occur.
    """
    if p.is_zero() or p.is_const():
        return p.primitive() if p.terms else p
    g = p
    for i, v in enumerate(p.vars):
        if any(e[i] for e in p.terms):
            g = gcd_poly(g, p.derivative(v))
            if g.is_const():
                break
    if g.is_const():
        return p.primitive()
    q = exact_divide(p, g)
    assert q is not None
    return q.primitive()


def resultant(p: MultiPoly, q: MultiPoly, var: str) -> MultiPoly:
    """Sylvester resultant eliminating var, by fraction-free determinant."""
    f = _to_univar(p, var)
    g = _to_univar(q, var)
    m, n = len(f) - 1, len(g) - 1
    if m < 1 and n < 1:
        raise ValueError("both inputs are constant in the elimination variable")
    if m < 0 or n < 0:
        return MultiPoly(p.vars)
    size = m + n
    if size == 0:
        return MultiPoly.const(p.vars, 1)
    rows: list[list[MultiPoly]] = []
    zero = MultiPoly(p.vars)
    for i in range(n):
        row = [zero] * size
        for j, c in enumerate(reversed(f)):
            row[i + j] = c
        rows.append(row)
    for i in range(m):
        row = [zero] * size
        for j, c in enumerate(reversed(g)):
            row[i + j] = c
        rows.append(row)
    return _bareiss_det(rows, p.vars)


def _bareiss_det(m: list[list[MultiPoly]], vars_: Sequence[str]) -> MultiPoly:
    n = len(m)
    if n == 0:
        return MultiPoly.const(vars_, 1)
    sign = 1
    prev = MultiPoly.const(vars_, 1)
    for k in range(n - 1):
        if m[k][k].is_zero():
            for i in range(k + 1, n):
                if not m[i][k].is_zero():
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return MultiPoly(vars_)
        pk = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            for j in range(k + 1, n):
                num = m[i][j] * pk - mik * m[k][j]
                if num.is_zero():
                    m[i][j] = num
                else:
                    q = exact_divide(num, prev)
                    assert q is not None, "Bareiss division failed"
                    m[i][j] = q
            m[i][k] = MultiPoly(vars_)
        prev = pk
    d = m[n - 1][n - 1]
    return d if sign == 1 else -d


def strip_monomial_content(p: MultiPoly) -> MultiPoly:
    """Divide out the largest common monomial factor and the integer content."""
    if p.is_zero():
        return p
    mins = [min(e[i] for e in p.terms) for i in range(len(p.vars))]
    out = {tuple(a - b for a, b in zip(e, mins)): c for e, c in p.terms.items()}
    return MultiPoly(p.vars, out).primitive()
