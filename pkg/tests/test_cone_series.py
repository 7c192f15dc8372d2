from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from dtpar import oracles
from dtpar.cone_series import (
    RATFUN,
    ConeSeries,
    Generator,
    Geometry,
    coefficient,
    series_exp,
    series_invert,
    series_log,
    series_pow,
)
from dtpar.algebra import RatFun
from dtpar.errors import ConstantTermNotOne, GeometryMismatch, InvalidGeometry, NonzeroConstantTerm, OutOfTruncation

from helpers import geometries, series


def S(g, terms):
    return ConeSeries(g, {(n, tuple(b)): v for (n, b), v in terms.items()})


def g1(d):
    return Geometry.single(d)


def test_mul_examples():
    g = g1(2)
    assert S(g, {(0, (0,)): 1, (1, (1,)): 1}) * S(g, {(0, (0,)): 1, (1, (1,)): -1}) == S(g, {(0, (0,)): 1, (2, (2,)): -1})
    g = g1(1)
    x = S(g, {(0, (0,)): 1, (1, (1,)): 1})
    assert x * x == S(g, {(0, (0,)): 1, (1, (1,)): 2})
    g2 = Geometry((Generator("a", 1, 1), Generator("b", 1, 1)), 2)
    a = S(g2, {(0, (0, 0)): 1, (0, (1, 0)): 1})
    b = S(g2, {(0, (0, 0)): 1, (0, (0, 1)): 1})
    assert (a * b).terms == {(0, (0, 0)): 1, (0, (1, 0)): 1, (0, (0, 1)): 1, (0, (1, 1)): 1}


def test_exp_log_examples():
    g = g1(2)
    c = F(3, 7)
    assert series_exp(S(g, {(1, (1,)): c})) == S(g, {(0, (0,)): 1, (1, (1,)): c, (2, (2,)): c * c / 2})
    assert series_exp(ConeSeries(g)) == ConeSeries.one(g)
    assert series_exp(S(g, {(1, (1,)): 1, (2, (2,)): 1})) == S(g, {(0, (0,)): 1, (1, (1,)): 1, (2, (2,)): F(3, 2)})
    g = g1(3)
    assert series_log(S(g, {(0, (0,)): 1, (1, (1,)): 1})) == S(g, {(1, (1,)): 1, (2, (2,)): F(-1, 2), (3, (3,)): F(1, 3)})
    assert not series_log(ConeSeries.one(g))
    g = g1(4)
    assert series_log(series_exp(S(g, {(1, (1,)): 1}))) == S(g, {(1, (1,)): 1})


def test_pow_invert_examples():
    g = g1(2)
    x = S(g, {(0, (0,)): 1, (1, (1,)): 1})
    assert series_pow(x, 2) == S(g, {(0, (0,)): 1, (1, (1,)): 2, (2, (2,)): 1})
    assert series_pow(x, F(1, 2)) == S(g, {(0, (0,)): 1, (1, (1,)): F(1, 2), (2, (2,)): F(-1, 8)})
    assert series_pow(x, 0) == ConeSeries.one(g)
    g = g1(3)
    assert series_invert(S(g, {(0, (0,)): 1, (1, (1,)): -1})) == S(g, {(0, (0,)): 1, (1, (1,)): 1, (2, (2,)): 1, (3, (3,)): 1})
    assert series_invert(ConeSeries.one(g)) == ConeSeries.one(g)
    g = g1(2)
    assert series_invert(S(g, {(0, (0,)): 1, (1, (1,)): 1, (2, (2,)): 1})) == S(g, {(0, (0,)): 1, (1, (1,)): -1})


def test_coefficient_examples():
    g = g1(2)
    assert coefficient(S(g, {(0, (0,)): 1, (1, (1,)): 3}), 1, (1,)) == 3
    assert coefficient(ConeSeries.one(g), 5, (1,)) == 0
    assert coefficient(series_exp(S(g, {(1, (1,)): 1})), 2, (2,)) == F(1, 2)
    with pytest.raises(OutOfTruncation):
        coefficient(ConeSeries.one(g), 0, (3,))


def test_errors():
    g = g1(2)
    with pytest.raises(NonzeroConstantTerm):
        series_exp(ConeSeries.one(g))
    with pytest.raises(ConstantTermNotOne):
        series_log(S(g, {(0, (0,)): 2}))
    with pytest.raises(NonzeroConstantTerm):
        series_exp(S(g, {(1, (0,)): 1}))
    with pytest.raises(ConstantTermNotOne):
        series_invert(S(g, {(0, (0,)): 1, (-1, (0,)): 1}))
    with pytest.raises(GeometryMismatch):
        ConeSeries.one(g) * ConeSeries.one(g1(3))
    with pytest.raises(GeometryMismatch):
        S(g, {(0, (1, 0)): 1})
    with pytest.raises(InvalidGeometry):
        Geometry((Generator("a", 0, 1),), 2)


def test_truncation_drops_high_degree():
    assert not S(g1(2), {(0, (3,)): 5})


def test_ratfun_coefficients():
    g = g1(3)
    x = ConeSeries(g, {(0, (0,)): 1, (0, (1,)): RatFun.parse("q / (1 - q)")}, RATFUN)
    assert series_exp(series_log(x)) == x
    assert x.pretty() == "1 + (-q / (-1 + q)) t"


def test_text_forms():
    g = g1(3)
    s = S(g, {(0, (0,)): 1, (1, (1,)): F(-1, 2), (-1, (2,)): 3})
    assert ConeSeries.from_tsv(g, s.to_tsv()) == s
    assert ConeSeries.from_doc(s.to_doc()) == s
    assert s.pretty() == "1 - 1/2 q t + 3 q^-1 t^2"
    assert Geometry.from_doc(g.to_doc()) == g


@given(st.data())
def test_exp_matches_taylor_oracle(data):
    g = data.draw(geometries())
    a = data.draw(series(g, constant=0))
    assert series_exp(a).terms == oracles.naive_exp(dict(a.terms), g.omegas, g.d)
    assert series_log(series_exp(a)) == a


@given(st.data())
def test_ring_laws(data):
    g = data.draw(geometries(max_d=4))
    a, b, c = (data.draw(series(g)) for _ in range(3))
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert (a * b).terms == oracles.naive_mul(dict(a.terms), dict(b.terms), g.omegas, g.d)


@given(st.data())
def test_exp_is_homomorphism_and_inverse(data):
    g = data.draw(geometries(max_d=4))
    a, b = data.draw(series(g, constant=0)), data.draw(series(g, constant=0))
    assert series_exp(a + b) == series_exp(a) * series_exp(b)
    u = series_exp(a)
    assert u * series_invert(u) == ConeSeries.one(g)
    assert series_pow(u, 3) == u * u * u
