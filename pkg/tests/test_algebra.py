from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from dtpar.algebra import LaurentPoly, Poly, RatFun, format_rational, parse_rational, poly_gcd, ratfun_canonical, ratfun_q_inverse
from dtpar.errors import ParseError, ZeroDenominator

from helpers import fractions

q = Poly([0, 1])
one = Poly([1])

polys = st.lists(fractions, max_size=5).map(Poly)


def test_parse_rational_exact():
    assert parse_rational("-3/6") == F(-1, 2)
    assert parse_rational(7) == 7
    assert format_rational(F(4, 2)) == "2"


@pytest.mark.parametrize("bad", ["1.5", 0.5, "1/0", "", "a/b"])
def test_parse_rational_rejects(bad):
    with pytest.raises((ParseError, ZeroDenominator)):
        parse_rational(bad)


def test_gcd_examples():
    assert poly_gcd(q * q - 1, q - 1) == q - 1
    p = Poly([2, 0, 4])
    assert poly_gcd(p, Poly()) == p.monic()
    a = (one + q) ** 2 * q
    b = (one + q) * q**3
    assert poly_gcd(a, b) == q * (one + q)


def test_canonical_examples():
    assert ratfun_canonical(Poly([0, 0, 2]), Poly([0, 2])) == RatFun.q(1)
    assert ratfun_canonical(q * q - 1, q + 1) == RatFun.parse("q - 1")
    f = ratfun_canonical(q, Poly([1, 2, 1]))
    assert (f.num, f.den) == (q, Poly([1, 2, 1]))
    assert str(f) == "q / (1 + 2*q + q^2)"


def test_canonical_zero_denominator():
    with pytest.raises(ZeroDenominator):
        ratfun_canonical(q, Poly())


def test_q_inverse_examples():
    f = RatFun.parse("q / (1 + 2*q + q^2)")
    assert ratfun_q_inverse(f) == f
    assert ratfun_q_inverse(RatFun.q(1)) == RatFun.q(-1)
    assert ratfun_q_inverse(RatFun.const(7)) == RatFun.const(7)


def test_ratfun_render_parse_roundtrip():
    for text in ["0", "7", "-q^3", "1 / q", "(q^2 - 1) / (2 + q)", "-2*q^3 / (1 + q)"]:
        f = RatFun.parse(text)
        assert RatFun.parse(str(f)) == f


def test_laurent_expansion():
    f = RatFun.parse("q / (1 + 2*q + q^2)")
    assert f.q_expansion(6) == {1: 1, 2: -2, 3: 3, 4: -4, 5: 5}
    lp = LaurentPoly.parse("q^-1 + 2 + q")
    assert lp.q_inverse() == lp
    assert lp.to_ratfun().is_laurent()
    assert not RatFun.parse("q / (1 - q)").is_laurent()


@given(polys, polys)
def test_gcd_divides_both(a, b):
    g = poly_gcd(a, b)
    if not g:
        assert not a and not b
        return
    assert not (a % g) and not (b % g)
    assert g.lead == 1


@given(polys, polys.filter(bool), polys, polys.filter(bool))
def test_ratfun_field_axioms(a, b, c, d):
    x, y = ratfun_canonical(a, b), ratfun_canonical(c, d)
    assert x + y == y + x
    assert x * y == y * x
    assert (x - y) + y == x
    if y:
        assert (x / y) * y == x
    assert ratfun_q_inverse(ratfun_q_inverse(x)) == x
    assert ratfun_q_inverse(x * y) == ratfun_q_inverse(x) * ratfun_q_inverse(y)


@given(polys, polys.filter(bool))
def test_canonical_form_is_unique(a, b):
    f = ratfun_canonical(a, b)
    g = ratfun_canonical(a * Poly([3, 1]), b * Poly([3, 1]))
    assert f == g and hash(f) == hash(g)
    assert f.den.lead == 1
    assert poly_gcd(f.num, f.den) == one or not f.num
