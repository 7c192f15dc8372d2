"""Wall-crossing between generalized DT invariants and parabolic pair series.

Invariant tables are plain dicts ``{(n, beta): Fraction}``.  Within a slope
context only *admissible* keys occur: ``beta != 0``, ``omega(beta) <= d`` and
``n == mu * omega(beta)``.  Primitive tables ``N1`` are keyed ``(1, beta)``
and are not slope-fibred (``N_{1,beta}`` is a single invariant of the class).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Mapping

from .cone_series import (
    Class,
    ConeSeries,
    Geometry,
    coefficient,
    format_class,
    series_exp,
    series_log,
    series_mul,
    series_pow,
)
from .errors import BadPrimitiveTable, ConstantTermNotOne, InadmissibleKey, OutOfTruncation

Table = Mapping  # {(n, beta): Fraction}


@dataclass(frozen=True)
class SlopeContext:
    geometry: Geometry
    mu: Fraction

    def __post_init__(self):
        object.__setattr__(self, "mu", Fraction(self.mu))

    def euler_char(self, beta: Class):
        """``mu * omega(beta)`` when it is an integer, else ``None``."""
        x = self.mu * self.geometry.omega_degree(beta)
        return int(x) if x.denominator == 1 else None

    def admissible_keys(self) -> list:
        """Admissible ``(n, beta)`` in canonical order."""
        out = []
        for beta in self.geometry.classes():
            n = self.euler_char(beta)
            if n is not None:
                out.append((n, beta))
        return out

    def is_admissible(self, n: int, beta: Class) -> bool:
        g = self.geometry
        if len(beta) != g.rank or any(m < 0 for m in beta) or not any(beta):
            return False
        return g.omega_degree(beta) <= g.d and self.euler_char(beta) == n

    def check_key(self, n: int, beta) -> tuple:
        beta = tuple(beta)
        if not self.is_admissible(n, beta):
            raise InadmissibleKey(
                f"(n={n}, beta={format_class(beta)}) is not admissible for mu={self.mu}, d={self.geometry.d}"
            )
        return n, beta


def divisibility(n: int, beta: Class) -> int:
    """gcd of |n| and the multiplicities of beta (``gcd(0, x) = x``)."""
    g = abs(n)
    for m in beta:
        g = gcd(g, m)
    return g


def divisors(k: int) -> list:
    return [i for i in range(1, k + 1) if k % i == 0]


def _sign(e: int) -> int:
    return -1 if e % 2 else 1


def _check_table(ctx: SlopeContext, N: Table) -> dict:
    out = {}
    for (n, beta), v in N.items():
        key = ctx.check_key(n, beta)
        v = Fraction(v)
        if v:
            out[key] = v
    return out


def _check_primitive(N1: Table) -> dict:
    out = {}
    for (n, beta), v in N1.items():
        if n != 1:
            raise BadPrimitiveTable(f"primitive table key has n={n}, expected 1")
        v = Fraction(v)
        if v:
            out[tuple(beta)] = v
    return out


def log_dt_par(ctx: SlopeContext, N: Table) -> ConeSeries:
    """``sum (-1)^(beta.H - 1) (beta.H) N q^n t^beta``."""
    g = ctx.geometry
    terms = {}
    for (n, beta), v in _check_table(ctx, N).items():
        h = g.h_degree(beta)
        terms[(n, beta)] = _sign(h - 1) * h * v
    return ConeSeries(g, terms)


def dt_par_from_N(ctx: SlopeContext, N: Table) -> ConeSeries:
    """The parabolic pair series as the product of ``exp(...)^(beta.H)`` factors.

    All factors commute, so the product is the exponential of the summed
    logarithms.
    """
    return series_exp(log_dt_par(ctx, N))


def N_from_dt_par(ctx: SlopeContext, s: ConeSeries) -> dict:
    if s.constant_term() != 1:
        raise ConstantTermNotOne("parabolic pair series must start with 1")
    g = ctx.geometry
    out = {}
    for (n, beta), c in series_log(s).terms.items():
        if not ctx.is_admissible(n, beta):
            raise InadmissibleKey(f"log has support at inadmissible (n={n}, beta={format_class(beta)})")
        h = g.h_degree(beta)
        out[(n, beta)] = _sign(h - 1) * c / h
    return out


def n_hat(ctx: SlopeContext, N1: Table, n: int, beta) -> Fraction:
    """Divisor sum ``sum_{k | (n, beta)} N_{1, beta/k} / k^2``."""
    beta = tuple(beta)
    if ctx.geometry.omega_degree(beta) > ctx.geometry.d:
        raise OutOfTruncation(f"class {format_class(beta)} exceeds d={ctx.geometry.d}")
    prim = _check_primitive(N1)
    return _divisor_sum(prim, n, beta)


def _divisor_sum(prim: Mapping, n: int, beta: Class) -> Fraction:
    total = Fraction(0)
    for k in divisors(divisibility(n, beta)):
        v = prim.get(tuple(m // k for m in beta))
        if v:
            total += v / (k * k)
    return total


def multiple_cover_extend(ctx: SlopeContext, N1: Table) -> dict:
    prim = _check_primitive(N1)
    out = {}
    for n, beta in ctx.admissible_keys():
        v = _divisor_sum(prim, n, beta)
        if v:
            out[(n, beta)] = v
    return out


def gv_product_side(ctx: SlopeContext, N1: Table) -> ConeSeries:
    """``prod (1 - (-1)^(beta.H) q^n t^beta)^((beta.H) N_{1,beta})``."""
    prim = _check_primitive(N1)
    g = ctx.geometry
    out = ConeSeries.one(g)
    for n, beta in ctx.admissible_keys():
        v = prim.get(beta)
        if not v:
            continue
        h = g.h_degree(beta)
        factor = ConeSeries(g, {(0, g.zero): 1, (n, beta): -_sign(h)})
        out = series_mul(out, series_pow(factor, h * v))
    return out


def dt_hat(ctx: SlopeContext, s: ConeSeries, n: int, beta) -> Fraction:
    beta = tuple(beta)
    if ctx.geometry.omega_degree(beta) > ctx.geometry.d:
        raise OutOfTruncation(f"class {format_class(beta)} exceeds d={ctx.geometry.d}")
    return coefficient(series_log(s), n, beta)


@dataclass(frozen=True)
class EquivRow:
    n: int
    beta: Class
    dt_hat: Fraction
    rhs: Fraction
    ok: bool

    def tsv(self) -> str:
        return f"{self.n}\t{format_class(self.beta)}\t{self.dt_hat}\t{self.rhs}\t{'true' if self.ok else 'false'}"

    def doc(self) -> dict:
        return {
            "n": self.n,
            "beta": list(self.beta),
            "dt_hat": str(self.dt_hat),
            "rhs": str(self.rhs),
            "ok": self.ok,
        }


def check_multcover_equiv(ctx: SlopeContext, N: Table, N1: Table | None = None) -> list:
    """Compare both sides of the coefficient-wise multiple cover identity.

    The left side is the log-coefficient of the series built from ``N``; the
    right side is ``(-1)^(beta.H-1) (beta.H) N_hat`` built from the primitive
    data.  When ``N1`` is omitted it is read off the divisibility-one keys of
    ``N``, where the divisor sum has the single term ``k = 1``.
    """
    g = ctx.geometry
    if N1 is None:
        N1 = {(1, tuple(b)): v for (n, b), v in N.items() if divisibility(n, b) == 1}
    prim = _check_primitive(N1)
    log_s = series_log(dt_par_from_N(ctx, N))
    rows = []
    for n, beta in ctx.admissible_keys():
        left = log_s.terms.get((n, beta), Fraction(0))
        h = g.h_degree(beta)
        right = _sign(h - 1) * h * _divisor_sum(prim, n, beta)
        rows.append(EquivRow(n, beta, left, right, left == right))
    return rows


def format_table(N: Mapping, geometry: Geometry) -> list:
    """Rows ``n<TAB>beta<TAB>value`` in canonical order."""
    keys = sorted(N, key=lambda k: (geometry.omega_degree(k[1]), tuple(k[1]), k[0]))
    return [f"{n}\t{format_class(beta)}\t{N[(n, beta)]}" for n, beta in keys]
