"""Stable pair series in Gopakumar-Vafa form over the coefficient field Q(q).

PT series are :class:`ConeSeries` over :data:`RATFUN` whose keys all have
``n == 0``: the q-dependence of each ``t^beta`` coefficient is a rational
function.  The genus-zero product over ``j >= 1`` is summed in closed form,
``sum_j j y^j = y / (1 - y)^2``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Mapping

from .algebra import RatFun, ratfun_q_inverse
from .cone_series import (
    RATFUN,
    Class,
    ConeSeries,
    Geometry,
    format_class,
    series_exp,
    series_invert,
    series_mul,
)
from .errors import ConstantTermNotOne, InadmissibleKey, OutOfTruncation
from .transforms import divisibility, divisors


def _minus_q_pow(e: int) -> RatFun:
    """``(-q)^e`` for any integer e."""
    return RatFun.q(e, -1 if e % 2 else 1)


def _y_over_one_minus_y_squared(y: RatFun) -> RatFun:
    one = RatFun.const(1)
    return y / ((one - y) * (one - y))


def genus_zero_log_coefficient(n0, m: int) -> RatFun:
    """t^(m beta) log-coefficient of ``prod_j (1 - (-q)^j t^beta)^(j n0)``."""
    y = _minus_q_pow(m)
    return _y_over_one_minus_y_squared(y) * Fraction(-Fraction(n0), m)


def _check_gv(geometry: Geometry, gv: Mapping) -> dict:
    out = {}
    for (g, beta), v in gv.items():
        beta = geometry.check_class(beta)
        if not any(beta):
            raise InadmissibleKey("GV invariants need beta > 0")
        if g < 0:
            raise InadmissibleKey(f"negative genus {g}")
        if int(v) != v:
            raise InadmissibleKey(f"GV invariant n_{g}^{format_class(beta)} = {v} is not an integer")
        if geometry.omega_degree(beta) > geometry.d:
            raise OutOfTruncation(f"GV class {format_class(beta)} exceeds d={geometry.d}")
        if v:
            out[(int(g), beta)] = int(v)
    return out


def gv_log(geometry: Geometry, gv: Mapping) -> ConeSeries:
    """Logarithm of the Gopakumar-Vafa product, truncated at ``d``."""
    terms: dict = {}

    def add(beta, m, c):
        key = (0, tuple(m * b for b in beta))
        terms[key] = terms[key] + c if key in terms else c

    for (g, beta), v in _check_gv(geometry, gv).items():
        max_m = geometry.d // geometry.omega_degree(beta)
        if g == 0:
            for m in range(1, max_m + 1):
                add(beta, m, genus_zero_log_coefficient(v, m))
            continue
        for k in range(2 * g - 1):
            e = (-1 if (k + g) % 2 else 1) * v * comb(2 * g - 2, k)
            c = _minus_q_pow(g - 1 - k)
            # log (1 - c t^beta)^e = -e sum_m c^m t^(m beta) / m
            for m in range(1, max_m + 1):
                add(beta, m, (c**m) * Fraction(-e, m))
    return ConeSeries(geometry, terms, RATFUN)


def gv_expand(geometry: Geometry, gv: Mapping) -> ConeSeries:
    return series_exp(gv_log(geometry, gv))


def pt_beta(s: ConeSeries, beta) -> RatFun:
    beta = s.geometry.check_class(beta)
    if s.geometry.omega_degree(beta) > s.geometry.d:
        raise OutOfTruncation(f"class {format_class(beta)} exceeds d={s.geometry.d}")
    return s.terms.get((0, beta), RatFun.zero())


def rationality_check(f: RatFun) -> bool:
    return ratfun_q_inverse(f) == f


# --------------------------------------------------------------------------
# L-series
# --------------------------------------------------------------------------


def prefactor_log(geometry: Geometry, N: Mapping | None = None, N1_cover: Mapping | None = None) -> ConeSeries:
    """Log of ``prod_{n>0, beta>0} exp((-1)^(n-1) N q^n t^beta)^n``.

    ``N`` is a finite table ``{(n, beta): value}``.  ``N1_cover`` is a map
    ``{beta: N_{1,beta}}`` standing for the full multiple-cover table
    ``N_{n,beta} = sum_{k | (n, beta)} N_{1,beta/k} / k^2`` over *all* n > 0;
    its n-sum is taken in closed form.
    """
    terms: dict = {}

    def add(beta, c):
        key = (0, beta)
        terms[key] = terms[key] + c if key in terms else c

    for (n, beta), v in (N or {}).items():
        beta = geometry.check_class(beta)
        if n <= 0 or not any(beta):
            raise InadmissibleKey(f"L-series prefactor needs n > 0 and beta > 0, got ({n}, {format_class(beta)})")
        if geometry.omega_degree(beta) > geometry.d:
            raise OutOfTruncation(f"class {format_class(beta)} exceeds d={geometry.d}")
        add(beta, RatFun.q(n, (-1 if (n - 1) % 2 else 1) * n * Fraction(v)))

    prim = {geometry.check_class(b): Fraction(v) for b, v in (N1_cover or {}).items()}
    for beta in geometry.classes():
        e = divisibility(0, beta)
        total = RatFun.zero()
        for k in divisors(e):
            v = prim.get(tuple(m // k for m in beta))
            if v:
                # sum_{j>=1} (-1)^(jk-1) jk q^(jk) v / k^2 = -(v/k) y/(1-y)^2, y = (-q)^k
                total = total + _y_over_one_minus_y_squared(_minus_q_pow(k)) * (-v / k)
        if total:
            add(beta, total)
    return ConeSeries(geometry, terms, RATFUN)


def l_series_solve(geometry: Geometry, pt: ConeSeries, N: Mapping | None = None, N1_cover: Mapping | None = None) -> ConeSeries:
    if pt.constant_term() != RatFun.const(1):
        raise ConstantTermNotOne("PT series must have constant term 1")
    pre = series_exp(prefactor_log(geometry, N, N1_cover))
    return series_mul(pt, series_invert(pre))


@dataclass(frozen=True)
class SymmetryRow:
    beta: Class
    f: RatFun
    symmetric: bool
    laurent: bool

    def tsv(self) -> str:
        return f"{format_class(self.beta)}\t{self.f.format()}\t{str(self.symmetric).lower()}\t{str(self.laurent).lower()}"

    def doc(self) -> dict:
        return {
            "beta": list(self.beta),
            "f": self.f.format(),
            "symmetric": self.symmetric,
            "laurent": self.laurent,
        }


def l_symmetry_report(L: ConeSeries) -> list:
    if L.constant_term() != RatFun.const(1):
        raise ConstantTermNotOne("L-series must have constant term 1")
    rows = []
    for (n, beta), f in L.terms.items():
        if not any(beta):
            continue
        f = RatFun.coerce(f)
        rows.append(SymmetryRow(beta, f, rationality_check(f), f.is_laurent()))
    return rows
