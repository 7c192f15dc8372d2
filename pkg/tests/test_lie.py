import random
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from dtpar.cone_series import Geometry
from dtpar.errors import NonPositiveSupport
from dtpar.lie import LieElement, ad_exp, euler_pairing, lie_bracket, lie_transform_check, transform_element
from dtpar.transforms import SlopeContext
from dtpar.verify import random_context, random_lie_element, random_table


def c(g, mu, r, beta, n, coef=1):
    return LieElement.basis(g, mu, r, tuple(beta), n, coef)


def test_euler_pairing_examples():
    g = Geometry((Geometry.single(5, h=3).generators[0],), 5)
    assert euler_pairing(g, (0, (2,), 2), (1, (0,), 0)) == 6
    assert euler_pairing(g, (1, (2,), 2), (1, (2,), 2)) == 0
    conifold = Geometry.single(5)
    assert euler_pairing(conifold, (2, (3,), 3), (1, (1,), 1)) == 1


def test_bracket_examples():
    for h in (1, 2, 3):
        g = Geometry.single(3, h=h)
        x = lie_bracket(c(g, 1, 0, [2], 2), c(g, 1, 1, [0], 0))
        bh = 2 * h
        assert x == c(g, 1, 1, [2], 2, (-1) ** bh * bh)
    g = Geometry.single(1)
    x = c(g, 1, 0, [1], 1) + c(g, 1, 1, [0], 0)
    assert not lie_bracket(x, x)
    # the product lands at 2[C], killed by truncation at d = 1
    assert not lie_bracket(c(g, 1, 0, [1], 1), c(g, 1, 1, [1], 1))


def test_ad_exp_examples():
    g = Geometry.single(2)
    seed = c(g, 1, 1, [0], 0)
    assert ad_exp(LieElement(g, 1, {}), seed) == seed
    E = c(g, 1, 0, [1], 1, -1) + c(g, 1, 0, [2], 2, F(-1, 4))
    # seed +c_(1,0,0) reproduces +DT^par; the transform uses the negated seed
    assert ad_exp(E, seed).coefficient(1, (1,), 1) == 1
    assert ad_exp(E, -seed).coefficient(1, (1,), 1) == -1
    assert transform_element(SlopeContext(g, 1), {(1, (1,)): 1, (2, (2,)): F(1, 4)}).coefficient(1, (1,), 1) == -1
    top = c(g, 1, 0, [2], 2, 5)
    assert ad_exp(top, seed) == seed + lie_bracket(top, seed)
    with pytest.raises(NonPositiveSupport):
        ad_exp(c(g, 1, 1, [0], 0), seed)


def test_transform_check_conifold():
    ctx = SlopeContext(Geometry.single(4), 1)
    rows = lie_transform_check(ctx, {(m, (m,)): F(1, m * m) for m in range(1, 5)})
    assert all(r.ok for r in rows)
    assert [r.from_lie for r in rows] == [1, 1, 0, 0, 0]
    empty = lie_transform_check(ctx, {})
    assert [r.from_lie for r in empty] == [1, 0, 0, 0, 0]


@given(st.integers(0, 2**32))
def test_lie_axioms(seed):
    rng = random.Random(seed)
    ctx = random_context(rng, max_d=5)
    x, y, z = (random_lie_element(rng, ctx.geometry, ctx.mu) for _ in range(3))
    assert lie_bracket(x, y) == -lie_bracket(y, x)
    jac = lie_bracket(x, lie_bracket(y, z)) + lie_bracket(y, lie_bracket(z, x)) + lie_bracket(z, lie_bracket(x, y))
    assert not jac
    assert lie_bracket(x + y, z) == lie_bracket(x, z) + lie_bracket(y, z)


@given(st.integers(0, 2**32))
def test_bch_agrees_with_product(seed):
    rng = random.Random(seed)
    ctx = random_context(rng, max_d=5)
    assert all(r.ok for r in lie_transform_check(ctx, random_table(rng, ctx)))
