"""Brute-force reference computations.

Nothing here calls the convolution kernels or the exp/log routines of
:mod:`dtpar.cone_series`; series are plain dicts ``{(n, beta): value}`` and
products are naive double loops.  These are the independent sides of the
oracle checks run by ``dtpar verify`` and the test-suite.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial


def naive_mul(a: dict, b: dict, omegas, d: int) -> dict:
    out: dict = {}
    for (n1, b1), v1 in a.items():
        for (n2, b2), v2 in b.items():
            beta = tuple(x + y for x, y in zip(b1, b2))
            if sum(m * w for m, w in zip(beta, omegas)) > d:
                continue
            key = (n1 + n2, beta)
            out[key] = out.get(key, 0) + v1 * v2
    return {k: v for k, v in out.items() if v}


def naive_exp(a: dict, omegas, d: int) -> dict:
    """Taylor sum ``sum_k a^k / k!`` with k running until the power vanishes."""
    rank = len(omegas)
    one = {(0, (0,) * rank): Fraction(1)}
    result = dict(one)
    power = dict(one)
    k = 0
    while True:
        k += 1
        power = naive_mul(power, a, omegas, d)
        if not power:
            return {kk: v for kk, v in result.items() if v}
        for key, v in power.items():
            result[key] = result.get(key, 0) + v / factorial(k)


def naive_power(a: dict, e: int, omegas, d: int) -> dict:
    rank = len(omegas)
    out = {(0, (0,) * rank): Fraction(1)}
    for _ in range(e):
        out = naive_mul(out, a, omegas, d)
    return out


def exp_monomial(c, n: int, beta, omegas, d: int) -> dict:
    """``exp(c q^n t^beta)`` written out term by term."""
    out = {}
    w = sum(m * x for m, x in zip(beta, omegas))
    k = 0
    while k * w <= d:
        out[(k * n, tuple(k * m for m in beta))] = Fraction(c) ** k / factorial(k)
        k += 1
    return {kk: v for kk, v in out.items() if v}


def dt_par_product_oracle(N: dict, omegas, hs, d: int) -> dict:
    """Product over keys of ``exp((-1)^(h-1) N q^n t^beta)^h``, factor by factor."""
    rank = len(omegas)
    out = {(0, (0,) * rank): Fraction(1)}
    for (n, beta), v in N.items():
        h = sum(m * x for m, x in zip(beta, hs))
        factor = exp_monomial((-1) ** (h - 1) * Fraction(v), n, beta, omegas, d)
        out = naive_mul(out, naive_power(factor, h, omegas, d), omegas, d)
    return out


def binomial_series(c, n: int, beta, e, omegas, d: int) -> dict:
    """``(1 + c q^n t^beta)^e`` by the generalized binomial theorem."""
    out = {}
    w = sum(m * x for m, x in zip(beta, omegas))
    e = Fraction(e)
    coef = Fraction(1)
    k = 0
    while k * w <= d:
        out[(k * n, tuple(k * m for m in beta))] = coef * Fraction(c) ** k
        coef = coef * (e - k) / (k + 1)
        k += 1
    return {kk: v for kk, v in out.items() if v}


def gv_product_oracle(n0, m: int, max_j: int, order: int) -> dict:
    """q-expansion (exponents < ``order``) of the t^m coefficient of
    ``prod_{j <= max_j} (1 - (-q)^j t)^(j n0)`` by expanding every factor.

    Integer ``n0`` only; never uses the closed form of the j-sum.
    """
    n0 = int(n0)
    series = {(0, 0): Fraction(1)}  # (q exponent, t exponent) -> coefficient
    for j in range(1, max_j + 1):
        e = j * n0
        c = -1 if j % 2 else 1  # (-q)^j = c q^j
        factor = {}
        coef = Fraction(1)
        for i in range(m + 1):
            if i * j >= order:
                break
            factor[(i * j, i)] = coef * (-c) ** i
            coef = coef * (e - i) / (i + 1)
        out: dict = {}
        for (qa, ta), va in series.items():
            for (qb, tb), vb in factor.items():
                if ta + tb <= m and qa + qb < order:
                    out[(qa + qb, ta + tb)] = out.get((qa + qb, ta + tb), 0) + va * vb
        series = out
    return {qe: v for (qe, te), v in series.items() if te == m and v}
