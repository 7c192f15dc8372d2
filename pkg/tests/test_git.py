from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from dtpar.algebra import Poly
from dtpar.errors import MalformedFiltration, NotProperSubspace
from dtpar.git import Sign, SubspaceDatum, WeightData, asymptotic_sign, git_stability_test, hm_weight, two_step_weight


def test_trivial_filtration_has_zero_weight():
    assert not hm_weight(WeightData(3, [(3, "2*l + 1", 4)], "2*l + 1", 4))


def test_hm_weight_example():
    w = WeightData(2, [(1, "l", 1), (2, "2*l + 1", 3)], "2*l + 1", 3)
    assert hm_weight(w) == Poly([-1])
    assert hm_weight(w.scaled(2)) == Poly([-2])


def test_stability_examples():
    # larger normalised leading coefficient on the subspace side
    assert git_stability_test((4, "2*l + 5", 0), SubspaceDatum(1, "l - 7", 0)) is Sign.POSITIVE
    assert git_stability_test((2, "2*l + 2", 2), SubspaceDatum(1, "l + 1", 1)) is Sign.ZERO
    # rank-two quotient with equal slopes and half of the framing missing
    assert git_stability_test((22, "2*l + 2", 1), SubspaceDatum(11, "l + 1", 0)) is Sign.NEGATIVE


def test_errors():
    with pytest.raises(NotProperSubspace):
        git_stability_test((2, "l", 1), SubspaceDatum(2, "l", 1))
    with pytest.raises(MalformedFiltration):
        WeightData(2, [(1, "l", 1), (2, "l", 3)], "2*l", 3)
    with pytest.raises(MalformedFiltration):
        WeightData(2, [(2, "l^2", 0)], "l^2", 0)
    with pytest.raises(MalformedFiltration):
        WeightData(2, [(2, "l", 1), (1, "l", 1)], "l", 1)


def test_asymptotic_sign_uses_leading_term():
    assert asymptotic_sign(Poly([-1000, 1])) is Sign.POSITIVE
    assert asymptotic_sign(Poly([5, -1])) is Sign.NEGATIVE
    assert asymptotic_sign(Poly([F(1, 3)])) is Sign.POSITIVE


@given(
    st.integers(2, 9), st.integers(1, 4), st.integers(-5, 5), st.integers(0, 6), st.data(), st.integers(2, 5)
)
def test_homogeneity(dim_v, r, c0, dim_a, data, k):
    sub = SubspaceDatum(
        data.draw(st.integers(1, dim_v - 1)),
        Poly([data.draw(st.integers(-5, 5)), data.draw(st.integers(0, r))]),
        data.draw(st.integers(0, dim_a)),
    )
    totals = (dim_v, Poly([c0, r]), dim_a)
    w = two_step_weight(totals, sub)
    assert hm_weight(w.scaled(k)) == hm_weight(w) * k
    scaled = git_stability_test((dim_v * k, totals[1] * k, dim_a * k), SubspaceDatum(sub.dim_v * k, sub.chi_f * k, sub.dim_a * k))
    assert scaled is git_stability_test(totals, sub)
