"""Truncated univariate series with rational coefficients and branch solving.

A PowerSeries keeps coefficients for exponents val..val+N-1 where val may be
negative (Laurent tails show up when composing with projective charts).  A
BranchSolution solves F(u, v) = 0 for u = u(v) near a point (u0, 0) with
F_u(u0, 0) != 0 by plain Newton iteration in Q[[v]].
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .poly import MultiPoly


class PrecisionExhausted(ArithmeticError):
    """A valuation question exceeded the current truncation order."""


class SingularBranch(ValueError):
    """branch_expand was called at a point where F_u vanishes."""


class PowerSeries:
    """Truncated series sum c_k v^k, k in [val, val+prec), coefficients in Q."""

    __slots__ = ("val", "prec", "coeffs")

    def __init__(self, coeffs: dict[int, Fraction], prec_end: int):
        """coeffs: exponent -> coefficient; prec_end: exponents >= prec_end unknown."""
        self.prec = prec_end
        cs = {k: Fraction(c) for k, c in coeffs.items() if c and k < prec_end}
        self.coeffs = cs
        self.val = min(cs) if cs else prec_end

    @classmethod
    def zero(cls, prec_end: int) -> "PowerSeries":
        return cls({}, prec_end)

    @classmethod
    def const(cls, c, prec_end: int) -> "PowerSeries":
        return cls({0: Fraction(c)}, prec_end)

    @classmethod
    def variable(cls, prec_end: int) -> "PowerSeries":
        return cls({1: Fraction(1)}, prec_end)

    def is_zero(self) -> bool:
        return not self.coeffs

    def valuation(self) -> int:
        """Order of vanishing; raises if no nonzero coefficient is known."""
        if not self.coeffs:
            raise PrecisionExhausted(
                f"series is 0 through v^{self.prec - 1}; raise the precision"
            )
        return self.val

    def __add__(self, other: "PowerSeries") -> "PowerSeries":
        prec = min(self.prec, other.prec)
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, Fraction(0)) + c
        return PowerSeries(out, prec)

    def __neg__(self) -> "PowerSeries":
        return PowerSeries({k: -c for k, c in self.coeffs.items()}, self.prec)

    def __sub__(self, other: "PowerSeries") -> "PowerSeries":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return PowerSeries({k: c * other for k, c in self.coeffs.items()}, self.prec)
        # product precision: unknown tails shift by the other factor's valuation
        prec = min(self.prec + other.val, other.prec + self.val) if self.coeffs and other.coeffs else min(self.prec, other.prec)
        out: dict[int, Fraction] = {}
        for k1, c1 in self.coeffs.items():
            for k2, c2 in other.coeffs.items():
                k = k1 + k2
                if k < prec:
                    out[k] = out.get(k, Fraction(0)) + c1 * c2
        return PowerSeries(out, prec)

    __rmul__ = __mul__

    def shift(self, n: int) -> "PowerSeries":
        return PowerSeries({k + n: c for k, c in self.coeffs.items()}, self.prec + n)

    def invert(self) -> "PowerSeries":
        """Multiplicative inverse (valuation may be nonzero)."""
        if not self.coeffs:
            raise ZeroDivisionError("inverting a series that is 0 to precision")
        v = self.val
        # normalise to a unit u with u(0) != 0
        unit = {k - v: c for k, c in self.coeffs.items()}
        n = self.prec - v  # number of known coefficients of the unit
        a0 = unit[0]
        inv = {0: 1 / a0}
        for k in range(1, n):
            s = Fraction(0)
            for j in range(1, k + 1):
                if j in unit and (k - j) in inv:
                    s += unit[j] * inv[k - j]
            if s:
                inv[k] = -s / a0
        return PowerSeries({k - v: c for k, c in inv.items()}, n - v)

    def truncate(self, prec_end: int) -> "PowerSeries":
        return PowerSeries({k: c for k, c in self.coeffs.items() if k < prec_end}, min(prec_end, self.prec))

    def __str__(self) -> str:
        if not self.coeffs:
            return f"O(v^{self.prec})"
        bits = []
        for k in sorted(self.coeffs):
            c = self.coeffs[k]
            bits.append(f"{c}*v^{k}")
        return " + ".join(bits) + f" + O(v^{self.prec})"

    __repr__ = __str__


def eval_poly_at_series(p: MultiPoly, values: dict[str, PowerSeries], prec_end: int) -> PowerSeries:
    """Evaluate a polynomial with every occurring variable bound to a series."""
    cache: dict[tuple[int, int], PowerSeries] = {}
    series_vars: list[Optional[PowerSeries]] = []
    for i, v in enumerate(p.vars):
        if v in values:
            series_vars.append(values[v])
        elif any(e[i] for e in p.terms):
            raise KeyError(f"no series bound for occurring variable {v!r}")
        else:
            series_vars.append(None)

    def power(i: int, n: int) -> PowerSeries:
        key = (i, n)
        got = cache.get(key)
        if got is None:
            got = PowerSeries.const(1, prec_end)
            base = series_vars[i]
            m = n
            while m:
                if m & 1:
                    got = got * base
                base = base * base if m > 1 else base
                m >>= 1
            cache[key] = got
        return got

    total = PowerSeries.zero(prec_end)
    for e, c in p.terms.items():
        term = PowerSeries.const(c, prec_end)
        for i, n in enumerate(e):
            if n:
                term = term * power(i, n)
        total = total + term
    return total


@dataclass
class BranchSolution:
    """u(v) with F(u(v), v) = 0 mod v^N at a smooth branch point (u0, 0)."""

    curve: MultiPoly
    u_var: str
    v_var: str
    u0: Fraction
    series: PowerSeries  # u as a series in v, including the constant u0

    @property
    def order(self) -> int:
        return self.series.prec


def branch_expand(F: MultiPoly, u_var: str, v_var: str, u0, N: int) -> BranchSolution:
    """Newton-solve F(u, v) = 0 for u(v) with u(0) = u0, to order N.

    Requires F(u0, 0) = 0 and dF/du (u0, 0) != 0; otherwise SingularBranch.
    """
    u0 = Fraction(u0)
    zero_val = F.substitute({u_var: u0, v_var: 0})
    if not zero_val.is_zero():
        raise SingularBranch("the base point does not lie on the curve")
    Fu = F.derivative(u_var)
    slope = Fu.substitute({u_var: u0, v_var: 0})
    if slope.is_zero():
        raise SingularBranch("dF/du vanishes at the base point")

    u = PowerSeries({0: u0}, 1)
    prec = 1
    while prec < N:
        prec = min(2 * prec, N)
        u = u.truncate(prec)
        u = PowerSeries(dict(u.coeffs), prec)
        v = PowerSeries.variable(prec)
        fu = eval_poly_at_series(F, {u_var: u, v_var: v}, prec)
        if fu.is_zero():
            continue
        dfu = eval_poly_at_series(Fu, {u_var: u, v_var: v}, prec)
        u = u - fu * dfu.invert()
        u = u.truncate(prec)
    # final residual check
    v = PowerSeries.variable(N)
    res = eval_poly_at_series(F, {u_var: u, v_var: v}, N)
    if not res.is_zero():
        raise ArithmeticError("Newton iteration failed to cancel the residual")
    return BranchSolution(F, u_var, v_var, u0, u)


def valuation_along_branch(num: MultiPoly, den: MultiPoly, branch: BranchSolution) -> int:
    """ord of num/den along the branch: val(num(u(v),v)) - val(den(u(v),v)).

    Raises PrecisionExhausted when either valuation is >= the branch order;
    callers retry with a re-expanded branch.
    """
    N = branch.order
    v = PowerSeries.variable(N)
    env = {branch.u_var: branch.series, branch.v_var: v}
    nv = eval_poly_at_series(num, env, N)
    dv = eval_poly_at_series(den, env, N)
    return nv.valuation() - dv.valuation()
