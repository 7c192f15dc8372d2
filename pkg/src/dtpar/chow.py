"""Euler-characteristic integration over finite stratifications and the
local-to-global aggregation of log-coefficients and divisor sums.

A stratum models a piece of the cycle space on which a cycle ``gamma`` has
constant local data.  ``gamma`` is a multiplicity vector over the stratum's
own *components*, each of which is a class in the ambient geometry; the
push-forward ``sum gamma_j * component_j`` must equal the ambient class.
Divisibility ``div(gamma, n)`` is taken in the component basis, so a doubled
curve and a pair of distinct curves in the same class land in different
groups.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .cone_series import Class, ConeSeries, Generator, Geometry, format_class, series_log
from .errors import GeometryMismatch, InadmissibleKey, InvalidGeometry
from .transforms import divisibility, divisors


@dataclass(frozen=True)
class StratumValue:
    label: str
    euler_char: int
    value: Fraction


def euler_integrate(strata: Iterable) -> Fraction:
    """``sum value_i * chi_i`` over ``(label, chi, value)`` triples."""
    total = Fraction(0)
    seen = set()
    for s in strata:
        label, chi, value = (s.label, s.euler_char, s.value) if isinstance(s, StratumValue) else s
        if label in seen:
            raise ValueError(f"duplicate stratum label {label!r}")
        seen.add(label)
        total += Fraction(value) * int(chi)
    return total


@dataclass(frozen=True)
class Stratum:
    label: str
    chi: int
    gamma: Class
    components: tuple = ()  # ambient class of each component; () = ambient generators
    dtpar: Mapping = field(default_factory=dict)  # {(n, local class): value}, constant term implied
    n1: Mapping = field(default_factory=dict)  # {local class: N_1}

    def local_geometry(self, ambient: Geometry, d: int) -> Geometry:
        if not self.components:
            return ambient.with_d(d)
        gens = []
        for j, comp in enumerate(self.components):
            gens.append(
                Generator(f"{self.label}.{j}", ambient.omega_degree(comp), ambient.h_degree(comp))
            )
        return Geometry(tuple(gens), d)

    def pushforward(self, ambient: Geometry) -> Class:
        if not self.components:
            return tuple(self.gamma)
        out = [0] * ambient.rank
        for m, comp in zip(self.gamma, self.components):
            for i, c in enumerate(comp):
                out[i] += m * c
        return tuple(out)


@dataclass(frozen=True)
class ChowModel:
    geometry: Geometry
    beta: Class
    strata: tuple

    def __post_init__(self):
        g = self.geometry
        object.__setattr__(self, "beta", g.check_class(self.beta))
        object.__setattr__(self, "strata", tuple(self.strata))
        labels = [s.label for s in self.strata]
        if len(set(labels)) != len(labels):
            raise InvalidGeometry(f"duplicate stratum labels in {labels}")
        for s in self.strata:
            if s.components:
                for comp in s.components:
                    g.check_class(comp)
                    if not any(comp):
                        raise InvalidGeometry(f"stratum {s.label!r} has a zero component")
                if len(s.gamma) != len(s.components):
                    raise GeometryMismatch(f"stratum {s.label!r}: gamma arity differs from component count")
            if s.pushforward(g) != self.beta:
                raise GeometryMismatch(
                    f"stratum {s.label!r} pushes forward to {format_class(s.pushforward(g))}, "
                    f"not {format_class(self.beta)}"
                )

    def local_geometry(self, s: Stratum) -> Geometry:
        return s.local_geometry(self.geometry, self.geometry.omega_degree(self.beta))


def aggregate_local(model: ChowModel, n: int) -> Fraction:
    """Global parabolic pair count at ``(n, beta)`` from local counts."""
    return euler_integrate(
        (s.label, s.chi, s.dtpar.get((n, tuple(s.gamma)), 0)) for s in model.strata
    )


def _sign(e: int) -> int:
    return -1 if e % 2 else 1


@dataclass(frozen=True)
class StratumCheck:
    label: str
    chi: int
    divisibility: int
    dt_hat: Fraction
    n_hat: Fraction
    ok: bool


@dataclass(frozen=True)
class LocalGlobalReport:
    n: int
    beta: Class
    dt_hat_global: Fraction
    n_hat_global: Fraction  # divisibility-grouped order of summation
    n_hat_regrouped: Fraction  # sum over k | e first
    n_hat_direct: Fraction  # integral of the local divisor sums
    rhs: Fraction
    ok: bool
    strata: tuple
    inconsistent: tuple

    @property
    def regroup_ok(self) -> bool:
        return self.n_hat_global == self.n_hat_regrouped == self.n_hat_direct

    def rows(self) -> list:
        out = [
            f"{s.label}\t{s.chi}\t{s.divisibility}\t{s.dt_hat}\t{s.n_hat}\t{'true' if s.ok else 'false'}"
            for s in self.strata
        ]
        out.append(
            f"global\t-\t{divisibility(self.n, self.beta)}\t{self.dt_hat_global}\t{self.n_hat_global}\t"
            f"{'true' if self.ok else 'false'}"
        )
        return out

    def summary(self) -> str:
        return f"n={self.n} beta={format_class(self.beta)} rhs={self.rhs} regroup={'ok' if self.regroup_ok else 'mismatch'}"

    def doc(self) -> dict:
        return {
            "n": self.n,
            "beta": list(self.beta),
            "dt_hat_global": str(self.dt_hat_global),
            "n_hat_global": str(self.n_hat_global),
            "n_hat_regrouped": str(self.n_hat_regrouped),
            "n_hat_direct": str(self.n_hat_direct),
            "rhs": str(self.rhs),
            "ok": self.ok,
            "regroup_ok": self.regroup_ok,
            "inconsistent": list(self.inconsistent),
            "strata": [
                {
                    "label": s.label,
                    "chi": s.chi,
                    "divisibility": s.divisibility,
                    "dt_hat": str(s.dt_hat),
                    "n_hat": str(s.n_hat),
                    "ok": s.ok,
                }
                for s in self.strata
            ],
        }


def _local_dt_hat(model: ChowModel, s: Stratum, n: int) -> Fraction:
    lg = model.local_geometry(s)
    terms = {(0, lg.zero): 1}
    for (m, cls), v in s.dtpar.items():
        cls = lg.check_class(cls)
        if not any(cls):
            if m != 0 or v != 1:
                raise InadmissibleKey(f"stratum {s.label!r}: constant term must be 1")
            continue
        terms[(m, cls)] = Fraction(v)
    return series_log(ConeSeries(lg, terms)).terms.get((n, tuple(s.gamma)), Fraction(0))


def _n1_at(s: Stratum, gamma_over_k: Class) -> Fraction:
    return Fraction(s.n1.get(gamma_over_k, 0))


def local_to_global_check(model: ChowModel, mu) -> LocalGlobalReport:
    g = model.geometry
    mu = Fraction(mu)
    x = mu * g.omega_degree(model.beta)
    if x.denominator != 1:
        raise InadmissibleKey(f"mu={mu} gives non-integral n for {format_class(model.beta)}")
    n = int(x)
    h = g.h_degree(model.beta)
    sign = _sign(h - 1) * h

    checks = []
    groups: dict = defaultdict(list)
    for s in model.strata:
        gamma = tuple(s.gamma)
        a = divisibility(n, gamma)
        groups[a].append(s)
        dt = _local_dt_hat(model, s, n)
        nh = sum(
            (_n1_at(s, tuple(m // k for m in gamma)) / (k * k) for k in divisors(a)), Fraction(0)
        )
        # gamma.H equals beta.H by the push-forward constraint
        checks.append(StratumCheck(s.label, s.chi, a, dt, nh, dt == sign * nh))

    dt_global = euler_integrate((c.label, c.chi, c.dt_hat) for c in checks)
    n_direct = euler_integrate((c.label, c.chi, c.n_hat) for c in checks)

    def integral(strata: Sequence, k: int) -> Fraction:
        return euler_integrate(
            (s.label, s.chi, _n1_at(s, tuple(m // k for m in s.gamma))) for s in strata
        )

    n_grouped = Fraction(0)
    for a in sorted(groups):
        for k in divisors(a):
            n_grouped += integral(groups[a], k) / (k * k)

    e = divisibility(n, model.beta)
    n_regrouped = Fraction(0)
    for k in divisors(e):
        pieces = [s for a in sorted(groups) if a % k == 0 and e % a == 0 for s in groups[a]]
        n_regrouped += integral(pieces, k) / (k * k)

    rhs = sign * n_grouped
    inconsistent = tuple(c.label for c in checks if not c.ok)
    return LocalGlobalReport(
        n, model.beta, dt_global, n_grouped, n_regrouped, n_direct, rhs,
        dt_global == rhs, tuple(checks), inconsistent,
    )
