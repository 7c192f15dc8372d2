from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from dtpar import oracles
from dtpar.algebra import RatFun
from dtpar.cone_series import RATFUN, ConeSeries, Geometry
from dtpar.errors import ConstantTermNotOne, InadmissibleKey
from dtpar.pt import (
    genus_zero_log_coefficient,
    gv_expand,
    l_series_solve,
    l_symmetry_report,
    prefactor_log,
    pt_beta,
    rationality_check,
)
from dtpar.cone_series import series_exp

CONIFOLD_PT = RatFun.parse("q / (1 + 2*q + q^2)")


def test_gv_expand_examples():
    g = Geometry.single(3)
    assert gv_expand(g, {}) == ConeSeries.one(g, RATFUN)
    assert gv_expand(g, {(0, (1,)): 0}) == ConeSeries.one(g, RATFUN)
    s = gv_expand(g, {(1, (1,)): 1})
    assert all(pt_beta(s, (m,)) == RatFun.const(1) for m in (1, 2, 3))
    assert pt_beta(gv_expand(Geometry.single(1), {(0, (1,)): 1}), (1,)) == CONIFOLD_PT
    assert pt_beta(ConeSeries.one(g, RATFUN), (2,)) == RatFun.zero()


def test_rationality_examples():
    assert rationality_check(CONIFOLD_PT)
    assert not rationality_check(RatFun.q(1))
    assert rationality_check(RatFun.const(7))


@pytest.mark.parametrize("n0,m", [(1, 1), (1, 2), (-2, 1), (3, 2)])
def test_closed_form_matches_truncated_product(n0, m):
    ref = oracles.gv_product_oracle(n0, 1, 40, 30)
    got = genus_zero_log_coefficient(n0, 1).q_expansion(30)
    assert got == ref
    full = gv_expand(Geometry.single(m), {(0, (1,)): n0})
    top = oracles.gv_product_oracle(n0, m, 40, 30)
    assert pt_beta(full, (m,)).q_expansion(30) == top


def test_l_series_examples():
    g = Geometry.single(4)
    pt = gv_expand(g, {(0, (1,)): 1})
    L = l_series_solve(g, pt, N1_cover={(1,): 1})
    assert L == ConeSeries.one(g, RATFUN)
    assert l_symmetry_report(L) == []
    assert l_series_solve(g, pt) == pt
    N = {(1, (1,)): F(3), (2, (2,)): F(1, 2)}
    same = series_exp(prefactor_log(g, N))
    assert l_series_solve(g, same, N) == ConeSeries.one(g, RATFUN)


def test_l_symmetry_report_flags():
    g = Geometry.single(2)
    L = ConeSeries(g, {(0, (0,)): 1, (0, (1,)): RatFun.parse("q / (1 - q)")}, RATFUN)
    (row,) = l_symmetry_report(L)
    assert not row.symmetric and not row.laurent
    with pytest.raises(ConstantTermNotOne):
        l_symmetry_report(ConeSeries(g, {}, RATFUN))


def test_genus_two_l_is_symmetric_laurent():
    g = Geometry.single(4)
    pt = gv_expand(g, {(0, (1,)): 1, (2, (1,)): 1, (1, (2,)): -2})
    rows = l_symmetry_report(l_series_solve(g, pt, N1_cover={(1,): 1}))
    assert rows and all(r.symmetric and r.laurent for r in rows)


def test_gv_validation():
    g = Geometry.single(2)
    with pytest.raises(InadmissibleKey):
        gv_expand(g, {(0, (0,)): 1})
    with pytest.raises(InadmissibleKey):
        gv_expand(g, {(0, (1,)): F(1, 2)})


@given(st.integers(-3, 3).filter(bool), st.integers(0, 3), st.integers(-3, 3))
def test_pt_coefficients_symmetric(n0, g_top, ng):
    geo = Geometry.single(3)
    pt = gv_expand(geo, {(0, (1,)): n0, (g_top, (1,)): ng} if g_top else {(0, (1,)): n0})
    for m in (1, 2, 3):
        assert rationality_check(pt_beta(pt, (m,)))
