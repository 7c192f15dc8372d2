"""Random instance generators and the built-in randomized check suite."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from . import oracles
from .algebra import Poly
from .chow import ChowModel, Stratum, local_to_global_check
from .cone_series import ConeSeries, Generator, Geometry, series_exp, series_log
from .git import SubspaceDatum, git_stability_test, hm_weight, two_step_weight
from .lie import LieElement, lie_bracket, lie_transform_check
from .pt import genus_zero_log_coefficient
from .transforms import (
    SlopeContext,
    N_from_dt_par,
    check_multcover_equiv,
    dt_par_from_N,
    gv_product_side,
    multiple_cover_extend,
)


def random_fraction(rng: random.Random, num: int = 5, den: int = 4, nonzero: bool = True) -> Fraction:
    while True:
        v = Fraction(rng.randint(-num, num), rng.randint(1, den))
        if v or not nonzero:
            return v


def random_geometry(rng: random.Random, max_d: int = 6, max_gens: int = 3, max_omega: int = 2) -> Geometry:
    k = rng.randint(1, max_gens)
    gens = tuple(
        Generator(f"C{i + 1}", rng.randint(1, max_omega), rng.randint(1, 3)) for i in range(k)
    )
    lo = min(g.omega for g in gens)
    return Geometry(gens, rng.randint(lo, max(lo, max_d)))


def random_context(rng: random.Random, max_d: int = 6, max_gens: int = 3) -> SlopeContext:
    g = random_geometry(rng, max_d, max_gens)
    mu = rng.choice([Fraction(0), Fraction(1), Fraction(2), Fraction(-1), Fraction(1, 2)])
    return SlopeContext(g, mu)


def random_table(rng: random.Random, ctx: SlopeContext, density: float = 0.6) -> dict:
    return {key: random_fraction(rng) for key in ctx.admissible_keys() if rng.random() < density}


def random_primitive(rng: random.Random, geometry: Geometry, density: float = 0.5) -> dict:
    return {(1, b): random_fraction(rng) for b in geometry.classes() if rng.random() < density}


def random_series(rng: random.Random, geometry: Geometry, constant=0, n_terms: int = 6) -> ConeSeries:
    classes = geometry.classes()
    terms = {(rng.randint(-2, 2), rng.choice(classes)): random_fraction(rng) for _ in range(n_terms)}
    terms[(0, geometry.zero)] = constant
    return ConeSeries(geometry, terms)


def random_lie_element(rng: random.Random, geometry: Geometry, mu, n_terms: int = 4) -> LieElement:
    mu = Fraction(mu)
    keys = []
    for b in geometry.classes(include_zero=True):
        x = mu * geometry.omega_degree(b)
        if x.denominator == 1:
            keys.append((b, int(x)))
    terms = {}
    for _ in range(n_terms):
        b, n = rng.choice(keys)
        terms[(rng.randint(0, 2), b, n)] = random_fraction(rng)
    return LieElement(geometry, mu, terms)


def _split_class(rng: random.Random, beta: tuple) -> dict:
    """Random decomposition ``beta = sum a_j c_j`` with distinct classes c_j."""
    rest = list(beta)
    parts: dict = {}
    while any(rest):
        c = tuple(rng.randint(0, r) for r in rest)
        if not any(c):
            continue
        amax = min(r // x for r, x in zip(rest, c) if x)
        a = rng.randint(1, amax)
        parts[c] = parts.get(c, 0) + a
        rest = [r - a * x for r, x in zip(rest, c)]
    return parts


def random_chow_model(rng: random.Random, max_gens: int = 2, max_d: int = 4, consistent: bool = True):
    """A model whose strata each satisfy the local multiple cover identity.

    Returns ``(model, mu)``.  Local parabolic series are generated from random
    local primitive data through the multiple cover formula, so every stratum
    is consistent by construction when ``consistent`` is true; otherwise one
    local series value is perturbed.
    """
    while True:
        g = random_geometry(rng, max_d=max_d, max_gens=max_gens)
        beta = rng.choice(g.classes())
        # bias towards divisible classes so that the divisibility grouping matters
        mult = rng.randint(1, max(1, g.d // g.omega_degree(beta)))
        beta = tuple(mult * m for m in beta)
        if g.omega_degree(beta) <= g.d:
            break
    g = g.with_d(g.omega_degree(beta))
    n = rng.choice([0, mult, 2 * mult, -mult, rng.randint(-3, 3)])
    mu = Fraction(n, g.omega_degree(beta))
    strata = []
    for i in range(rng.randint(1, 3)):
        parts = _split_class(rng, beta)
        comps = tuple(parts)
        gamma = tuple(parts[c] for c in comps)
        proto = Stratum(f"S{i}", 0, gamma, comps)
        lg = proto.local_geometry(g, g.omega_degree(beta))
        below = [c for c in lg.classes() if all(x <= y for x, y in zip(c, gamma))]
        n1 = {c: random_fraction(rng) for c in below if rng.random() < 0.6}
        lctx = SlopeContext(lg, mu)
        series = dt_par_from_N(lctx, multiple_cover_extend(lctx, {(1, c): v for c, v in n1.items()}))
        dtpar = {k: v for k, v in series.terms.items() if any(k[1])}
        chi = rng.choice([-3, -2, -1, 1, 2, 3])
        strata.append(Stratum(f"S{i}", chi, gamma, comps, dtpar, n1))
    if not consistent:
        s = strata[0]
        key = (n, tuple(s.gamma))
        bumped = dict(s.dtpar)
        bumped[key] = bumped.get(key, 0) + 1
        strata[0] = Stratum(s.label, s.chi, s.gamma, s.components, bumped, s.n1)
    return ChowModel(g, beta, tuple(strata)), mu


# --------------------------------------------------------------------------
# suite
# --------------------------------------------------------------------------


@dataclass
class CheckResult:
    name: str
    trials: int
    failures: int
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.failures == 0


def _as_dict(s: ConeSeries) -> dict:
    return dict(s.terms)


def check_exp_log(rng, max_d, trials=50) -> CheckResult:
    bad = 0
    for _ in range(trials):
        g = random_geometry(rng, max_d)
        a = random_series(rng, g, 0)
        e = series_exp(a)
        if _as_dict(e) != oracles.naive_exp(_as_dict(a), g.omegas, g.d) or series_log(e) != a:
            bad += 1
    return CheckResult("exp-log-oracle", trials, bad)


def check_forward_product(rng, max_d, trials=30) -> CheckResult:
    bad = 0
    for _ in range(trials):
        ctx = random_context(rng, max_d)
        N = random_table(rng, ctx)
        s = dt_par_from_N(ctx, N)
        g = ctx.geometry
        if _as_dict(s) != oracles.dt_par_product_oracle(N, g.omegas, g.hs, g.d):
            bad += 1
        elif N_from_dt_par(ctx, s) != N:
            bad += 1
    return CheckResult("forward-product-roundtrip", trials, bad)


def check_multcover(rng, max_d, trials=30) -> CheckResult:
    bad = 0
    for _ in range(trials):
        ctx = random_context(rng, max_d)
        N1 = random_primitive(rng, ctx.geometry)
        N = multiple_cover_extend(ctx, N1)
        same = dt_par_from_N(ctx, N) == gv_product_side(ctx, N1)
        flags = all(r.ok for r in check_multcover_equiv(ctx, N, N1))
        if not (same and flags):
            bad += 1
    return CheckResult("multiple-cover-equivalence", trials, bad)


def check_lie(rng, max_d, trials=30) -> CheckResult:
    bad = 0
    for _ in range(trials):
        ctx = random_context(rng, min(max_d, 5))
        if not all(r.ok for r in lie_transform_check(ctx, random_table(rng, ctx))):
            bad += 1
            continue
        x, y, z = (random_lie_element(rng, ctx.geometry, ctx.mu) for _ in range(3))
        jac = lie_bracket(x, lie_bracket(y, z)) + lie_bracket(y, lie_bracket(z, x)) + lie_bracket(z, lie_bracket(x, y))
        if jac or lie_bracket(x, y) != -lie_bracket(y, x):
            bad += 1
    return CheckResult("lie-bch-axioms", trials, bad)


def check_gv(rng, trials=5, max_j=25, order=20) -> CheckResult:
    bad = 0
    for _ in range(trials):
        n0 = rng.choice([-2, -1, 1, 2, 3])
        m = rng.randint(1, 2)
        ref = oracles.gv_product_oracle(n0, m, max_j, order)
        # m-th t-power of exp(sum_k log-coefficients); for m <= 2 written explicitly
        c1 = genus_zero_log_coefficient(n0, 1)
        coef = c1 if m == 1 else genus_zero_log_coefficient(n0, 2) + c1 * c1 * Fraction(1, 2)
        got = coef.q_expansion(min(max_j, order))
        ref = {k: v for k, v in ref.items() if k < min(max_j, order)}
        if got != ref:
            bad += 1
    return CheckResult("gv-closed-form-oracle", trials, bad)


def check_local_global(rng, trials=20) -> CheckResult:
    bad = 0
    for _ in range(trials):
        model, mu = random_chow_model(rng)
        rep = local_to_global_check(model, mu)
        if not (rep.ok and rep.regroup_ok and not rep.inconsistent):
            bad += 1
    return CheckResult("local-to-global", trials, bad)


def check_git(rng, trials=30) -> CheckResult:
    bad = 0
    for _ in range(trials):
        dim_v = rng.randint(2, 8)
        r = rng.randint(1, 4)
        totals = (dim_v, Poly([rng.randint(-3, 3), r]), rng.randint(0, 4))
        sub = SubspaceDatum(rng.randint(1, dim_v - 1), Poly([rng.randint(-3, 3), rng.randint(0, r)]), rng.randint(0, totals[2]))
        w = two_step_weight(totals, sub)
        c = rng.randint(2, 4)
        scaled_sub = SubspaceDatum(sub.dim_v * c, sub.chi_f * c, sub.dim_a * c)
        scaled_tot = (totals[0] * c, totals[1] * c, totals[2] * c)
        ok = hm_weight(w.scaled(c)) == hm_weight(w) * c
        ok &= git_stability_test(totals, sub) == git_stability_test(scaled_tot, scaled_sub)
        ok &= git_stability_test(totals, sub).value == _sign_name(hm_weight(w))
        if not ok:
            bad += 1
    return CheckResult("git-homogeneity", trials, bad)


def _sign_name(p: Poly) -> str:
    if not p:
        return "zero"
    return "positive" if p.lead > 0 else "negative"


def run_all(seed: int = 0, max_d: int = 5) -> list:
    rng = random.Random(seed)
    return [
        check_exp_log(rng, max_d),
        check_forward_product(rng, max_d),
        check_multcover(rng, max_d),
        check_lie(rng, max_d),
        check_gv(rng),
        check_local_global(rng),
        check_git(rng),
    ]


__all__ = ["run_all", "CheckResult"]
