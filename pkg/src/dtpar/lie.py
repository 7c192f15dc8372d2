"""The Lie algebra C(mu, d) spanned by symbols ``c_(r, beta, n)``.

Bracket: ``[c_v, c_w] = (-1)^chi(v,w) chi(v,w) c_(v+w)`` with the Euler pairing
``chi((r1,b1,n1), (r2,b2,n2)) = r2 (b1.H) - r1 (b2.H)``, reduced modulo the
ideal of symbols with ``omega(beta) > d``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil
from typing import Mapping

from .cone_series import Geometry, coefficient, format_class
from .errors import GeometryMismatch, InadmissibleKey, NonPositiveSupport
from .transforms import SlopeContext, Table, dt_par_from_N

Gamma = tuple  # (r, beta, n)


class LieElement:
    """Finite rational combination of basis symbols, immutable."""

    __slots__ = ("geometry", "mu", "terms")

    def __init__(self, geometry: Geometry, mu, terms: Mapping | None = None):
        self.geometry = geometry
        self.mu = Fraction(mu)
        clean = {}
        for (r, beta, n), c in (terms or {}).items():
            key = self._check_key(r, beta, n)
            if geometry.omega_degree(key[1]) > geometry.d:
                continue
            c = Fraction(c)
            if c:
                clean[key] = clean.get(key, 0) + c
        self.terms = {
            k: clean[k] for k in sorted(clean, key=self._order) if clean[k]
        }

    def _check_key(self, r, beta, n) -> Gamma:
        beta = self.geometry.check_class(beta)
        if r < 0:
            raise InadmissibleKey(f"negative rank r={r}")
        if self.mu * self.geometry.omega_degree(beta) != n:
            raise InadmissibleKey(
                f"(r={r}, beta={format_class(beta)}, n={n}) violates n = mu*omega(beta) for mu={self.mu}"
            )
        return int(r), beta, int(n)

    def _order(self, key):
        r, beta, n = key
        return (self.geometry.omega_degree(beta), beta, n, r)

    @classmethod
    def basis(cls, geometry, mu, r, beta, n, c=1) -> "LieElement":
        return cls(geometry, mu, {(r, tuple(beta), n): c})

    def _compatible(self, other: "LieElement"):
        if self.geometry != other.geometry or self.mu != other.mu:
            raise GeometryMismatch("Lie elements live in different algebras")

    def __eq__(self, other):
        if not isinstance(other, LieElement):
            return NotImplemented
        return self.geometry == other.geometry and self.mu == other.mu and self.terms == other.terms

    def __hash__(self):
        return hash((self.geometry, self.mu, tuple(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other: "LieElement"):
        self._compatible(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return LieElement(self.geometry, self.mu, out)

    def __neg__(self):
        return LieElement(self.geometry, self.mu, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "LieElement":
        return LieElement(self.geometry, self.mu, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, c):
        return self.scale(c)

    __rmul__ = __mul__

    def __repr__(self):
        return f"LieElement({self.terms!r})"

    def coefficient(self, r, beta, n) -> Fraction:
        return self.terms.get((r, tuple(beta), n), Fraction(0))

    def to_tsv(self) -> str:
        return "".join(
            f"{r}\t{format_class(beta)}\t{n}\t{c}\n" for (r, beta, n), c in self.terms.items()
        )


def euler_pairing(geometry: Geometry, v: Gamma, w: Gamma) -> int:
    r1, b1, _ = v
    r2, b2, _ = w
    if len(b1) != geometry.rank or len(b2) != geometry.rank:
        raise GeometryMismatch("class arity does not match the geometry")
    return r2 * geometry.h_degree(b1) - r1 * geometry.h_degree(b2)


def lie_bracket(x: LieElement, y: LieElement) -> LieElement:
    x._compatible(y)
    g = x.geometry
    out: dict = {}
    for v, cv in x.terms.items():
        dv = g.omega_degree(v[1])
        for w, cw in y.terms.items():
            if dv + g.omega_degree(w[1]) > g.d:
                continue
            chi = euler_pairing(g, v, w)
            if not chi:
                continue
            key = (v[0] + w[0], tuple(a + b for a, b in zip(v[1], w[1])), v[2] + w[2])
            out[key] = out.get(key, 0) + (-1 if chi % 2 else 1) * chi * cv * cw
    return LieElement(g, x.mu, out)


def ad_exp(E: LieElement, seed: LieElement) -> LieElement:
    """``sum_k Ad_E^k(seed) / k!``; finite since ``Ad_E`` raises degree."""
    E._compatible(seed)
    if any(not any(beta) for _, beta, _ in E.terms):
        raise NonPositiveSupport("Ad-exponent has a term with beta = 0")
    g = E.geometry
    result = seed
    term = seed
    for k in range(1, ceil(g.d / g.min_omega) + 1):
        term = lie_bracket(E, term).scale(Fraction(1, k))
        if not term:
            break
        result = result + term
    return result


@dataclass(frozen=True)
class LieRow:
    n: int
    beta: tuple
    from_lie: Fraction  # -coefficient of c_(1, beta, n), i.e. DT^par
    from_product: Fraction
    ok: bool

    def tsv(self) -> str:
        return f"{self.n}\t{format_class(self.beta)}\t{self.from_lie}\t{self.from_product}\t{'true' if self.ok else 'false'}"

    def doc(self) -> dict:
        return {
            "n": self.n,
            "beta": list(self.beta),
            "dt_par_lie": str(self.from_lie),
            "dt_par_product": str(self.from_product),
            "ok": self.ok,
        }


def transform_element(ctx: SlopeContext, N: Table) -> LieElement:
    """``Ad_exp(E)`` applied to ``-c_(1,0,0)`` with ``E = -sum N c_(0,beta,n)``.

    The seed carries the same sign flip as every rank-one symbol, so the
    result is ``-sum DT^par_(n,beta) c_(1,beta,n)`` including ``(0, 0)``.
    """
    g = ctx.geometry
    E = LieElement(g, ctx.mu, {(0, tuple(beta), n): -Fraction(v) for (n, beta), v in N.items()})
    for _, beta, n in E.terms:
        ctx.check_key(n, beta)
    seed = LieElement.basis(g, ctx.mu, 1, g.zero, 0, -1)
    return ad_exp(E, seed)


def lie_transform_check(ctx: SlopeContext, N: Table) -> list:
    """Per-key comparison of the adjoint expansion with the product formula."""
    g = ctx.geometry
    lie = transform_element(ctx, N)
    series = dt_par_from_N(ctx, N)
    rows = []
    for n, beta in [(0, g.zero)] + ctx.admissible_keys():
        a = -lie.coefficient(1, beta, n)
        b = coefficient(series, n, beta)
        rows.append(LieRow(n, beta, a, b, a == b))
    return rows
