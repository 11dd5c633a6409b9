"""Truncated series and branch solving."""

from fractions import Fraction

import pytest

from chowcalc.poly import MultiPoly
from chowcalc.series import (
    PowerSeries,
    PrecisionExhausted,
    SingularBranch,
    branch_expand,
    eval_poly_at_series,
    valuation_along_branch,
)

UV = ("u", "v")


def test_branch_parabola():
    u = MultiPoly.var(UV, "u").map_coeffs(Fraction)
    v = MultiPoly.var(UV, "v").map_coeffs(Fraction)
    br = branch_expand(u - v * v, "u", "v", 0, 12)
    assert br.series.coeffs == {2: Fraction(1)}


def test_branch_catalan_oracle():
    # u = v + v^2 + 2v^3 + 5v^4 + ...: coefficients satisfy the convolution
    # recursion c_n = sum c_i c_j (i + j = n), c_1 = 1
    u = MultiPoly.var(UV, "u").map_coeffs(Fraction)
    v = MultiPoly.var(UV, "v").map_coeffs(Fraction)
    F = u * u - u + v
    br = branch_expand(F, "u", "v", 0, 14)
    cs = {k: br.series.coeffs.get(k, Fraction(0)) for k in range(1, 14)}
    oracle = {1: Fraction(1)}
    for n in range(2, 14):
        oracle[n] = sum(oracle[i] * oracle[n - i] for i in range(1, n))
    assert cs == oracle


def test_branch_requires_smooth_point():
    u = MultiPoly.var(UV, "u").map_coeffs(Fraction)
    v = MultiPoly.var(UV, "v").map_coeffs(Fraction)
    with pytest.raises(SingularBranch):
        branch_expand(u * u - v * v, "u", "v", 0, 8)
    with pytest.raises(SingularBranch):
        branch_expand(u - 1, "u", "v", 0, 8)


def test_valuation_unit_and_multiplicativity():
    u = MultiPoly.var(UV, "u").map_coeffs(Fraction)
    v = MultiPoly.var(UV, "v").map_coeffs(Fraction)
    br = branch_expand(u - v * v - v * v * v, "u", "v", 0, 20)
    one = MultiPoly.const(UV, Fraction(1))
    assert valuation_along_branch(one, one, br) == 0
    f = u
    g = u + v
    # val(f * g) = val(f) + val(g)
    vf = valuation_along_branch(f, one, br)
    vg = valuation_along_branch(g, one, br)
    vfg = valuation_along_branch(f * g, one, br)
    assert vfg == vf + vg
    assert valuation_along_branch(f, g, br) == vf - vg


def test_precision_exhausted_signal():
    u = MultiPoly.var(UV, "u").map_coeffs(Fraction)
    v = MultiPoly.var(UV, "v").map_coeffs(Fraction)
    br = branch_expand(u - v * v, "u", "v", 0, 5)
    big = (v ** 9).map_coeffs(Fraction)
    one = MultiPoly.const(UV, Fraction(1))
    with pytest.raises(PrecisionExhausted):
        valuation_along_branch(big, one, br)


def test_series_inversion():
    s = PowerSeries({0: Fraction(2), 1: Fraction(1)}, 8)
    inv = s.invert()
    prod = s * inv
    assert prod.coeffs == {0: Fraction(1)}
