import random
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from dtpar.chow import ChowModel, Stratum, aggregate_local, euler_integrate, local_to_global_check
from dtpar.cone_series import Geometry, Generator
from dtpar.errors import GeometryMismatch
from dtpar.transforms import SlopeContext, dt_par_from_N, multiple_cover_extend
from dtpar.verify import random_chow_model


def test_euler_integrate_examples():
    assert euler_integrate([("a", 2, 3), ("b", -1, 5)]) == 1
    assert euler_integrate([]) == 0
    assert euler_integrate([("p", 1, F(7, 3))]) == F(7, 3)
    with pytest.raises(ValueError):
        euler_integrate([("a", 1, 1), ("a", 1, 1)])


def _rigid(m, mu=1):
    g = Geometry.single(m)
    ctx = SlopeContext(g, mu)
    s = dt_par_from_N(ctx, multiple_cover_extend(ctx, {(1, (1,)): 1}))
    dtpar = {k: v for k, v in s.terms.items() if any(k[1])}
    return ChowModel(g, (m,), (Stratum("pt", 1, (m,), (), dtpar, {(1,): 1}),))


def test_aggregate_examples():
    model = _rigid(1)
    assert aggregate_local(model, 1) == 1
    g = Geometry.single(1)
    zero = ChowModel(g, (1,), (Stratum("a", 3, (1,)),))
    assert aggregate_local(zero, 1) == 0
    two = ChowModel(g, (1,), (Stratum("a", 1, (1,), (), {(1, (1,)): 2}), Stratum("b", -2, (1,), (), {(1, (1,)): 1})))
    assert aggregate_local(two, 1) == 0


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_rigid_curve_local_to_global(m):
    rep = local_to_global_check(_rigid(m), 1)
    assert rep.ok and rep.regroup_ok
    assert rep.dt_hat_global == F((-1) ** (m - 1), m)


def test_zero_data_model():
    g = Geometry.single(2)
    rep = local_to_global_check(ChowModel(g, (2,), (Stratum("a", 4, (2,)),)), 1)
    assert rep.ok and rep.dt_hat_global == 0 and rep.rhs == 0


def test_two_stratum_model_mixed_chi():
    g = Geometry((Generator("a", 1, 1), Generator("b", 1, 2)), 2)
    beta = (2, 0)
    # doubled curve versus two distinct curves in the same class
    doubled = Stratum("double", 3, (2,), ((1, 0),), {}, {(1,): F(1, 2)})
    split = Stratum("split", -2, (1, 1), ((1, 0), (1, 0)), {}, {(1, 0): 1, (0, 1): 2, (1, 1): F(-1, 3)})
    strata = []
    for s in (doubled, split):
        lg = s.local_geometry(g, 2)
        ctx = SlopeContext(lg, 1)
        series = dt_par_from_N(ctx, multiple_cover_extend(ctx, {(1, c): v for c, v in s.n1.items()}))
        strata.append(Stratum(s.label, s.chi, s.gamma, s.components, {k: v for k, v in series.terms.items() if any(k[1])}, s.n1))
    model = ChowModel(g, beta, tuple(strata))
    rep = local_to_global_check(model, 1)
    assert rep.ok and rep.regroup_ok and not rep.inconsistent
    assert [c.divisibility for c in rep.strata] == [2, 1]


def test_pushforward_mismatch():
    g = Geometry.single(3)
    with pytest.raises(GeometryMismatch):
        ChowModel(g, (2,), (Stratum("a", 1, (3,)),))


@given(st.integers(0, 2**32))
def test_consistent_models_pass(seed):
    rng = random.Random(seed)
    model, mu = random_chow_model(rng)
    rep = local_to_global_check(model, mu)
    assert rep.ok and rep.regroup_ok and not rep.inconsistent


@given(st.integers(0, 2**32))
def test_perturbed_stratum_is_flagged(seed):
    rng = random.Random(seed)
    model, mu = random_chow_model(rng, consistent=False)
    rep = local_to_global_check(model, mu)
    assert rep.inconsistent and rep.inconsistent[0] == model.strata[0].label
