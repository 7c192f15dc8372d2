"""Truncated series graded by an effective cone of curve classes.

A :class:`ConeSeries` is a finite map ``(n, beta) -> coefficient`` living in
the quotient ring where every monomial ``q^n t^beta`` with
``omega(beta) > d`` is zero.  All positive-degree elements are nilpotent
there, so ``exp``/``log``/rational powers are finite sums and exact.

Classes ``beta`` are plain tuples of non-negative multiplicities, one per
generator of the :class:`Geometry`.
"""

from __future__ import annotations

import itertools
from array import array
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import lcm
from typing import Callable, Iterable, Iterator, Mapping

from . import kernels
from .algebra import LaurentPoly, RatFun, format_rational, parse_rational
from .errors import (
    ConstantTermNotOne,
    GeometryMismatch,
    InvalidGeometry,
    NonzeroConstantTerm,
    OutOfTruncation,
    ParseError,
)

Class = tuple  # tuple[int, ...]
Key = tuple  # (n, Class)


@dataclass(frozen=True)
class Generator:
    name: str
    omega: int
    h: int


@dataclass(frozen=True)
class Geometry:
    """Curve-class generators with their omega/H degrees and the bound ``d``."""

    generators: tuple
    d: int

    def __post_init__(self):
        gens = tuple(g if isinstance(g, Generator) else Generator(*g) for g in self.generators)
        object.__setattr__(self, "generators", gens)
        if not gens:
            raise InvalidGeometry("geometry needs at least one generator")
        names = [g.name for g in gens]
        if len(set(names)) != len(names):
            raise InvalidGeometry(f"duplicate generator names {names}")
        for g in gens:
            if int(g.omega) != g.omega or g.omega < 1 or int(g.h) != g.h or g.h < 1:
                raise InvalidGeometry(f"generator {g.name!r} needs positive integer degrees")
        if int(self.d) != self.d or self.d < min(g.omega for g in gens):
            raise InvalidGeometry(f"truncation d={self.d} below the smallest omega-degree")

    @classmethod
    def single(cls, d: int, omega: int = 1, h: int = 1, name: str = "C") -> "Geometry":
        return cls((Generator(name, omega, h),), d)

    def with_d(self, d: int) -> "Geometry":
        return Geometry(self.generators, d)

    @property
    def rank(self) -> int:
        return len(self.generators)

    @cached_property
    def omegas(self) -> tuple:
        return tuple(g.omega for g in self.generators)

    @cached_property
    def hs(self) -> tuple:
        return tuple(g.h for g in self.generators)

    @cached_property
    def min_omega(self) -> int:
        return min(self.omegas)

    @cached_property
    def nilpotency(self) -> int:
        """Largest k with a nonzero k-fold product of positive-degree terms."""
        return self.d // self.min_omega

    def omega_degree(self, beta: Class) -> int:
        return sum(m * w for m, w in zip(beta, self.omegas))

    def h_degree(self, beta: Class) -> int:
        return sum(m * h for m, h in zip(beta, self.hs))

    def check_class(self, beta) -> Class:
        beta = tuple(int(m) for m in beta)
        if len(beta) != self.rank:
            raise GeometryMismatch(f"class {list(beta)} has arity {len(beta)}, expected {self.rank}")
        if any(m < 0 for m in beta):
            raise GeometryMismatch(f"class {list(beta)} is not effective")
        return beta

    @property
    def zero(self) -> Class:
        return (0,) * self.rank

    def classes(self, include_zero: bool = False) -> list:
        """All effective classes with omega-degree <= d in canonical order."""
        return list(self._classes if include_zero else self._classes[1:])

    @cached_property
    def _classes(self) -> tuple:
        ranges = [range(self.d // w + 1) for w in self.omegas]
        found = [b for b in itertools.product(*ranges) if self.omega_degree(b) <= self.d]
        found.sort(key=lambda b: (self.omega_degree(b), b))
        return tuple(found)

    @cached_property
    def _degree_table(self) -> dict:
        return {b: self.omega_degree(b) for b in self._classes}

    # additive integer codes for (n, beta); used by the convolution kernels
    @cached_property
    def _strides(self) -> tuple:
        strides, acc = [], 1
        for w in self.omegas:
            strides.append(acc)
            acc *= self.d // w + 1
        return tuple(strides) + (acc,)

    def encode(self, n: int, beta: Class) -> int:
        s = self._strides
        return n * s[-1] + sum(m * st for m, st in zip(beta, s))

    def decode(self, code: int) -> Key:
        s = self._strides
        n, rem = divmod(code, s[-1])
        beta = []
        for i in range(self.rank):
            beta.append(rem // s[i] % (self.d // self.omegas[i] + 1))
        return n, tuple(beta)

    def to_doc(self) -> dict:
        return {
            "generators": [{"name": g.name, "omega": g.omega, "H": g.h} for g in self.generators],
            "d": self.d,
        }

    @classmethod
    def from_doc(cls, doc: Mapping) -> "Geometry":
        if not isinstance(doc, Mapping):
            raise ParseError("geometry must be a mapping")
        unknown = set(doc) - {"generators", "d"}
        if unknown:
            raise ParseError(f"unknown geometry keys {sorted(unknown)}")
        gens = []
        for g in doc.get("generators") or []:
            unknown = set(g) - {"name", "omega", "H"}
            if unknown:
                raise ParseError(f"unknown generator keys {sorted(unknown)}")
            try:
                gens.append(Generator(str(g["name"]), int(g["omega"]), int(g["H"])))
            except KeyError as exc:
                raise ParseError(f"generator missing {exc}") from exc
        if "d" not in doc:
            raise ParseError("geometry missing 'd'")
        return cls(tuple(gens), int(doc["d"]))


# --------------------------------------------------------------------------
# coefficient rings
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class CoefficientRing:
    """Operations a coefficient type must offer beyond ``+ - * ==``."""

    name: str
    zero: object
    one: object
    coerce: Callable = field(compare=False)
    parse: Callable = field(compare=False)
    format: Callable = field(compare=False)


QQ = CoefficientRing("QQ", Fraction(0), Fraction(1), parse_rational, parse_rational, format_rational)
LAURENT = CoefficientRing(
    "LaurentPoly",
    LaurentPoly(),
    LaurentPoly({0: 1}),
    lambda x: x if isinstance(x, LaurentPoly) else LaurentPoly({0: x}),
    LaurentPoly.parse,
    lambda x: x.format(),
)
RATFUN = CoefficientRing(
    "RatFun", RatFun.zero(), RatFun.const(1), RatFun.coerce, RatFun.parse, lambda x: x.format()
)
RINGS = {r.name: r for r in (QQ, LAURENT, RATFUN)}


# --------------------------------------------------------------------------
# the series type
# --------------------------------------------------------------------------


class ConeSeries:
    """Immutable element of the truncated ring, with sparse coefficients."""

    __slots__ = ("geometry", "ring", "terms", "_packed", "_packed_int")

    def __init__(self, geometry: Geometry, terms: Mapping | None = None, ring: CoefficientRing = QQ):
        clean = {}
        if terms:
            for (n, beta), c in terms.items():
                beta = geometry.check_class(beta)
                if geometry.omega_degree(beta) > geometry.d:
                    continue
                c = ring.coerce(c)
                if c:
                    clean[(int(n), beta)] = c
        self.geometry = geometry
        self.ring = ring
        self.terms = {k: clean[k] for k in sorted(clean, key=lambda k: _order(geometry, k))}
        self._packed = None
        self._packed_int = None

    @classmethod
    def _trusted(cls, geometry: Geometry, terms: Mapping, ring: CoefficientRing) -> "ConeSeries":
        """Build from keys already known to be valid and below ``d``; skips validation."""
        deg = geometry._degree_table
        self = object.__new__(cls)
        self.geometry = geometry
        self.ring = ring
        keys = sorted((k for k, c in terms.items() if c), key=lambda k: (deg[k[1]], k[1], k[0]))
        self.terms = {k: terms[k] for k in keys}
        self._packed = None
        self._packed_int = None
        return self

    @classmethod
    def one(cls, geometry: Geometry, ring: CoefficientRing = QQ) -> "ConeSeries":
        return cls(geometry, {(0, geometry.zero): ring.one}, ring)

    @classmethod
    def monomial(cls, geometry, n, beta, c=1, ring=QQ) -> "ConeSeries":
        return cls(geometry, {(n, tuple(beta)): c}, ring)

    def keys_in_order(self) -> list:
        return list(self.terms)

    def constant_term(self):
        return self.terms.get((0, self.geometry.zero), self.ring.zero)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, ConeSeries):
            return NotImplemented
        return self.geometry == other.geometry and self.terms == other.terms

    def __hash__(self):
        return hash((self.geometry, tuple(self.terms.items())))

    def __repr__(self):
        return f"ConeSeries({self.pretty()!r}, d={self.geometry.d})"

    def _check(self, other: "ConeSeries"):
        if self.geometry != other.geometry:
            raise GeometryMismatch("series live over different geometries")
        if self.ring != other.ring:
            raise GeometryMismatch(f"coefficient rings differ: {self.ring.name} vs {other.ring.name}")

    def _lift(self, other):
        if isinstance(other, ConeSeries):
            self._check(other)
            return other
        return ConeSeries(self.geometry, {(0, self.geometry.zero): other}, self.ring)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out[k] + c if k in out else c
        return ConeSeries._trusted(self.geometry, out, self.ring)

    __radd__ = __add__

    def __neg__(self):
        return ConeSeries._trusted(self.geometry, {k: -c for k, c in self.terms.items()}, self.ring)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "ConeSeries":
        c = self.ring.coerce(c) if self.ring is not QQ else Fraction(c)
        return ConeSeries._trusted(self.geometry, {k: v * c for k, v in self.terms.items()}, self.ring)

    def __mul__(self, other):
        if isinstance(other, ConeSeries):
            return series_mul(self, other)
        return self.scale(other)

    __rmul__ = __mul__

    def __pow__(self, e):
        return series_pow(self, e)

    def _pack(self):
        if self._packed is None:
            g = self.geometry
            keys = list(self.terms)  # already sorted by degree
            self._packed = (
                array("q", [g.encode(n, b) for n, b in keys]),
                array("q", [g.omega_degree(b) for _, b in keys]),
                [self.terms[k] for k in keys],
            )
        return self._packed

    def _pack_int(self):
        """Codes, degrees, integer numerators and their common denominator."""
        if self._packed_int is None:
            codes, degs, vals = self._pack()
            den = lcm(*(v.denominator for v in vals)) if vals else 1
            nums = [v.numerator * (den // v.denominator) for v in vals]
            self._packed_int = (codes, degs, nums, den)
        return self._packed_int

    # ----- rendering -----

    def pretty(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (n, beta), c in self.terms.items():
            mono = _monomial_text(self.geometry, n, beta)
            if self.ring is QQ:
                neg = c < 0
                a = -c if neg else c
                body = mono if (a == 1 and mono) else (f"{a} {mono}" if mono else str(a))
            else:
                neg = False
                text = self.ring.format(c)
                if " " in text or text.startswith("-"):
                    text = f"({text})"
                body = f"{text} {mono}" if mono else text
            if not parts:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append(("- " if neg else "+ ") + body)
        return " ".join(parts)

    def to_tsv(self) -> str:
        lines = [
            f"{n}\t{format_class(beta)}\t{self.ring.format(c)}" for (n, beta), c in self.terms.items()
        ]
        return "\n".join(lines) + ("\n" if lines else "")

    @classmethod
    def from_tsv(cls, geometry: Geometry, text: str, ring: CoefficientRing = QQ) -> "ConeSeries":
        terms = {}
        for lineno, line in enumerate(text.splitlines(), 1):
            if not line.strip():
                continue
            fields = line.split("\t")
            if len(fields) != 3:
                raise ParseError(f"line {lineno}: expected 3 tab-separated fields")
            key = (int(fields[0]), parse_class(fields[1]))
            terms[key] = terms.get(key, ring.zero) + ring.parse(fields[2])
        return cls(geometry, terms, ring)

    def to_doc(self) -> dict:
        return {
            "geometry": self.geometry.to_doc(),
            "ring": self.ring.name,
            "terms": [
                {"n": n, "beta": list(beta), "value": self.ring.format(c)}
                for (n, beta), c in self.terms.items()
            ],
        }

    @classmethod
    def from_doc(cls, doc: Mapping) -> "ConeSeries":
        ring = RINGS[doc.get("ring", "QQ")]
        geometry = Geometry.from_doc(doc["geometry"])
        terms = {}
        for t in doc.get("terms", []):
            key = (int(t["n"]), tuple(t["beta"]))
            terms[key] = terms.get(key, ring.zero) + ring.parse(str(t["value"]))
        return cls(geometry, terms, ring)


def _order(geometry: Geometry, key: Key):
    n, beta = key
    return (geometry.omega_degree(beta), beta, n)


def format_class(beta: Class) -> str:
    return "[" + ",".join(str(m) for m in beta) + "]"


def parse_class(text: str) -> Class:
    s = text.strip()
    if not (s.startswith("[") and s.endswith("]")):
        raise ParseError(f"class vector must look like [a,b,...]: {text!r}")
    body = s[1:-1].strip()
    try:
        return tuple(int(x) for x in body.split(",")) if body else ()
    except ValueError as exc:
        raise ParseError(f"bad class vector {text!r}") from exc


def _monomial_text(geometry: Geometry, n: int, beta: Class) -> str:
    bits = []
    if n:
        bits.append("q" if n == 1 else f"q^{n}")
    for g, m in zip(geometry.generators, beta):
        if not m:
            continue
        t = "t" if geometry.rank == 1 else f"t_{g.name}"
        bits.append(t if m == 1 else f"{t}^{m}")
    return " ".join(bits)


# --------------------------------------------------------------------------
# ring operations
# --------------------------------------------------------------------------


def series_mul(a: ConeSeries, b: ConeSeries) -> ConeSeries:
    """Truncated convolution product."""
    a._check(b)
    if not a.terms or not b.terms:
        return ConeSeries(a.geometry, None, a.ring)
    g = a.geometry
    terms = {}
    if a.ring is QQ:
        ac, ad, an, aden = a._pack_int()
        bc, bd, bn, bden = b._pack_int()
        den = aden * bden
        for code, c in kernels.convolve_int(ac, ad, an, bc, bd, bn, g.d).items():
            if c:
                terms[g.decode(code)] = Fraction(c, den)
    else:
        for code, c in kernels.convolve(*a._pack(), *b._pack(), g.d).items():
            if c:
                terms[g.decode(code)] = c
    return ConeSeries._trusted(g, terms, a.ring)


def _require_constant(a: ConeSeries, value, exc):
    if a.constant_term() != value:
        raise exc(f"constant term is {a.ring.format(a.constant_term())}, expected {a.ring.format(value)}")
    # q^n t^0 with n != 0 is not nilpotent, so no finite sum would be exact
    zero = a.geometry.zero
    for n, beta in a.terms:
        if n and beta == zero:
            raise exc(f"degree-zero part has a q^{n} term; only the constant is allowed at beta = 0")


def series_exp(a: ConeSeries) -> ConeSeries:
    """``sum_k a^k / k!``; exact because ``a`` is nilpotent."""
    _require_constant(a, a.ring.zero, NonzeroConstantTerm)
    result = ConeSeries.one(a.geometry, a.ring)
    term = result
    for k in range(1, a.geometry.nilpotency + 1):
        term = series_mul(term, a).scale(Fraction(1, k))
        if not term:
            break
        result = result + term
    return result


def series_log(a: ConeSeries) -> ConeSeries:
    _require_constant(a, a.ring.one, ConstantTermNotOne)
    x = a - a.ring.one
    result = ConeSeries(a.geometry, None, a.ring)
    power = ConeSeries.one(a.geometry, a.ring)
    for l in range(1, a.geometry.nilpotency + 1):
        power = series_mul(power, x)
        if not power:
            break
        result = result + power.scale(Fraction((-1) ** (l - 1), l))
    return result


def series_pow(a: ConeSeries, e) -> ConeSeries:
    """``a^e = exp(e log a)`` for any rational exponent ``e``."""
    _require_constant(a, a.ring.one, ConstantTermNotOne)
    e = Fraction(e)
    if not e:
        return ConeSeries.one(a.geometry, a.ring)
    return series_exp(series_log(a).scale(e))


def series_invert(a: ConeSeries) -> ConeSeries:
    """Inverse of a unit: ``sum_k (1 - a)^k``."""
    _require_constant(a, a.ring.one, ConstantTermNotOne)
    y = a.ring.one - a
    result = ConeSeries.one(a.geometry, a.ring)
    power = result
    for _ in range(a.geometry.nilpotency):
        power = series_mul(power, y)
        if not power:
            break
        result = result + power
    return result


def coefficient(a: ConeSeries, n: int, beta: Class):
    beta = a.geometry.check_class(beta)
    if a.geometry.omega_degree(beta) > a.geometry.d:
        raise OutOfTruncation(f"class {list(beta)} exceeds truncation d={a.geometry.d}")
    return a.terms.get((n, beta), a.ring.zero)


def product(factors: Iterable[ConeSeries], geometry: Geometry, ring=QQ) -> ConeSeries:
    out = ConeSeries.one(geometry, ring)
    for f in factors:
        out = series_mul(out, f)
    return out


def iter_support_classes(a: ConeSeries) -> Iterator[Class]:
    seen = set()
    for _, beta in a.terms:
        if beta not in seen:
            seen.add(beta)
            yield beta
