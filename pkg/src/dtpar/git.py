"""Hilbert-Mumford weights and the asymptotic (l >> 0) stability sign.

Hilbert polynomials are :class:`~dtpar.algebra.Poly` values in the variable
``l``.  "For l large" is decided by comparing coefficients from the top
degree down; no value of ``l`` is ever substituted.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .algebra import Poly
from .errors import MalformedFiltration, NotProperSubspace


class Sign(enum.Enum):
    POSITIVE = "positive"
    ZERO = "zero"
    NEGATIVE = "negative"

    def __str__(self):
        return self.value


def _poly(p) -> Poly:
    if isinstance(p, Poly):
        return p
    if isinstance(p, str):
        return Poly.parse(p, var="l")
    return Poly([p])


@dataclass(frozen=True)
class Step:
    dim_v: int
    chi_f: Poly
    dim_a: int

    def __post_init__(self):
        object.__setattr__(self, "chi_f", _poly(self.chi_f))


@dataclass(frozen=True)
class WeightData:
    """Filtration data ``V_{<=k}, F_{<=k}, A_{<=k}`` plus the totals."""

    dim_v: int
    steps: tuple
    chi_f: Poly
    dim_a: int

    def __post_init__(self):
        object.__setattr__(self, "chi_f", _poly(self.chi_f))
        object.__setattr__(
            self, "steps", tuple(s if isinstance(s, Step) else Step(*s) for s in self.steps)
        )
        if self.dim_v < 1:
            raise MalformedFiltration("dim V must be positive")
        if not self.steps:
            raise MalformedFiltration("filtration needs at least one step")
        if self.chi_f.degree > 1:
            raise MalformedFiltration("Hilbert polynomial of a one-dimensional sheaf has degree <= 1")
        prev_v = prev_a = 0
        for s in self.steps:
            if s.dim_v < prev_v or s.dim_a < prev_a or s.dim_v < 0 or s.dim_a < 0:
                raise MalformedFiltration("dimensions must be non-negative and weakly increasing")
            if s.chi_f.degree > 1:
                raise MalformedFiltration("step Hilbert polynomial has degree > 1")
            prev_v, prev_a = s.dim_v, s.dim_a
        last = self.steps[-1]
        if last.dim_v != self.dim_v or last.dim_a != self.dim_a or last.chi_f != self.chi_f:
            raise MalformedFiltration("last step must equal the totals")

    def scaled(self, c: int) -> "WeightData":
        return WeightData(
            self.dim_v * c,
            tuple(Step(s.dim_v * c, s.chi_f * c, s.dim_a * c) for s in self.steps),
            self.chi_f * c,
            self.dim_a * c,
        )


def hm_weight(w: WeightData) -> Poly:
    total = Poly()
    for s in w.steps:
        total = total + (s.chi_f + s.dim_a) * w.dim_v - (w.chi_f + w.dim_a) * s.dim_v
    return total * Fraction(1, w.dim_v)


def asymptotic_sign(p: Poly) -> Sign:
    if not p:
        return Sign.ZERO
    return Sign.POSITIVE if p.lead > 0 else Sign.NEGATIVE


@dataclass(frozen=True)
class SubspaceDatum:
    dim_v: int
    chi_f: Poly
    dim_a: int

    def __post_init__(self):
        object.__setattr__(self, "chi_f", _poly(self.chi_f))


def stability_polynomial(dim_v: int, chi_f, dim_a: int, sub: SubspaceDatum) -> Poly:
    """``dim V (chi_F'(l) + dim A') - dim V' (chi_F(l) + dim A)``."""
    return (sub.chi_f + sub.dim_a) * dim_v - (_poly(chi_f) + dim_a) * sub.dim_v


def git_stability_test(totals: tuple, sub: SubspaceDatum) -> Sign:
    dim_v, chi_f, dim_a = totals
    if not 0 < sub.dim_v < dim_v:
        raise NotProperSubspace(f"need 0 < dim V' < dim V, got {sub.dim_v} and {dim_v}")
    return asymptotic_sign(stability_polynomial(dim_v, chi_f, dim_a, sub))


def two_step_weight(totals: tuple, sub: SubspaceDatum) -> WeightData:
    """Filtration ``0 = V_{<=-1} ⊂ V_{<=0} = V' ⊂ V_{<=1} = V``."""
    dim_v, chi_f, dim_a = totals
    return WeightData(dim_v, ((sub.dim_v, sub.chi_f, sub.dim_a), (dim_v, chi_f, dim_a)), chi_f, dim_a)
