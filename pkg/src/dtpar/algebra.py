"""Exact scalar arithmetic: rationals, polynomials and Laurent polynomials in q,
and the field of rational functions Q(q) with a canonical form.

Rationals are plain :class:`fractions.Fraction` values.  Polynomials are
stored densely (ascending coefficient tuples), Laurent polynomials sparsely
(exponent -> coefficient), and a :class:`RatFun` always keeps a coprime
numerator/denominator pair with a monic denominator so that equality is a
field-wise comparison.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping, Union

from .errors import ParseError, ZeroDenominator

Scalar = Union[int, Fraction]

_ZERO = Fraction(0)
_ONE = Fraction(1)


def parse_rational(text) -> Fraction:
    """Parse ``"p/q"``, ``"p"`` or an int into an exact :class:`Fraction`.

    Floats are refused: nothing in this package is allowed to round.
    """
    if isinstance(text, bool):
        raise ParseError(f"not a rational: {text!r}")
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    if not isinstance(text, str):
        raise ParseError(f"not a rational: {text!r}")
    s = text.strip()
    if not re.fullmatch(r"[+-]?\d+(/\d+)?", s):
        raise ParseError(f"not a rational: {text!r}")
    try:
        return Fraction(s)
    except ZeroDivisionError as exc:
        raise ZeroDenominator(f"zero denominator in {text!r}") from exc


def format_rational(x: Scalar) -> str:
    return str(Fraction(x))


# --------------------------------------------------------------------------
# term-level text grammar shared by Poly / LaurentPoly
# --------------------------------------------------------------------------

_TERM = re.compile(
    r"""\s*(?P<sign>[+-])?\s*
        (?P<coef>\d+(?:/\d+)?)?\s*
        (?P<star>\*)?\s*
        (?P<var>[a-zA-Z])?
        (?:\^(?P<exp>-?\d+))?\s*""",
    re.VERBOSE,
)


def _parse_terms(text: str, var: str) -> dict[int, Fraction]:
    s = text.strip()
    if not s:
        raise ParseError("empty polynomial")
    out: dict[int, Fraction] = {}
    pos = 0
    first = True
    while pos < len(s):
        m = _TERM.match(s, pos)
        if m is None or m.end() == pos:
            raise ParseError(f"cannot parse polynomial {text!r} at {pos}")
        if not first and m.group("sign") is None:
            raise ParseError(f"missing operator in {text!r}")
        if m.group("coef") is None and m.group("var") is None:
            raise ParseError(f"dangling sign in {text!r}")
        if m.group("var") is not None and m.group("var") != var:
            raise ParseError(f"unexpected variable {m.group('var')!r} in {text!r}")
        if m.group("exp") is not None and m.group("var") is None:
            raise ParseError(f"exponent without variable in {text!r}")
        if m.group("star") and (m.group("coef") is None or m.group("var") is None):
            raise ParseError(f"misplaced '*' in {text!r}")
        coef = Fraction(m.group("coef")) if m.group("coef") else _ONE
        if m.group("sign") == "-":
            coef = -coef
        if m.group("var") is None:
            e = 0
        else:
            e = int(m.group("exp")) if m.group("exp") is not None else 1
        out[e] = out.get(e, _ZERO) + coef
        pos = m.end()
        first = False
    return {e: c for e, c in out.items() if c}


def _format_terms(items: Iterable[tuple[int, Fraction]], var: str) -> str:
    parts: list[str] = []
    for e, c in items:
        neg = c < 0
        a = -c if neg else c
        if e == 0:
            body = str(a)
        else:
            mono = var if e == 1 else f"{var}^{e}"
            body = mono if a == 1 else f"{a}*{mono}"
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append(("- " if neg else "+ ") + body)
    return " ".join(parts) if parts else "0"


# --------------------------------------------------------------------------
# dense univariate polynomials
# --------------------------------------------------------------------------


class Poly:
    """Polynomial over Q with coefficients in ascending degree order.

    The zero polynomial has an empty coefficient tuple and degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        c = [Fraction(x) for x in coeffs]
        while c and not c[-1]:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def monomial(cls, e: int, c: Scalar = 1) -> "Poly":
        if e < 0:
            raise ValueError("negative exponent in a polynomial")
        return cls([0] * e + [c])

    @classmethod
    def parse(cls, text: str, var: str = "q") -> "Poly":
        terms = _parse_terms(text, var)
        if any(e < 0 for e in terms):
            raise ParseError(f"negative exponent in polynomial {text!r}")
        if not terms:
            return cls()
        top = max(terms)
        return cls(terms.get(e, 0) for e in range(top + 1))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else _ZERO

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Poly([other]).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(("Poly", self.coeffs))

    def __repr__(self):
        return f"Poly({self.format()!r})"

    def format(self, var: str = "q") -> str:
        return _format_terms(((e, c) for e, c in enumerate(self.coeffs) if c), var)

    __str__ = format

    def __neg__(self):
        return Poly(-c for c in self.coeffs)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly([other])
        if not isinstance(other, Poly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return Poly([x + y for x, y in zip(a, b)] + list(a[len(b):]))

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly([other])
        if not isinstance(other, Poly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Poly(c * other for c in self.coeffs)
        if not isinstance(other, Poly):
            return NotImplemented
        if not self or not other:
            return Poly()
        out = [_ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(other.coeffs):
                    out[i + j] += x * y
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        out, base = Poly([1]), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __divmod__(self, other: "Poly"):
        if not other:
            raise ZeroDenominator("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        lead = other.lead
        if self.degree < dq:
            return Poly(), self
        quot = [_ZERO] * (self.degree - dq + 1)
        for i in range(self.degree - dq, -1, -1):
            c = rem[i + dq] / lead
            quot[i] = c
            if c:
                for j, y in enumerate(other.coeffs):
                    rem[i + j] -= c * y
        return Poly(quot), Poly(rem[:dq])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self) -> "Poly":
        if not self:
            return self
        return self * (1 / self.lead)

    def __call__(self, x):
        acc = _ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def valuation(self) -> int:
        """Order of vanishing at q = 0 (-1 for the zero polynomial)."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return -1

    def reversed(self, n: int | None = None) -> "Poly":
        """``q^n * p(1/q)``; ``n`` defaults to the degree."""
        if n is None:
            n = self.degree
        if n < self.degree:
            raise ValueError("reversal length below degree")
        c = list(self.coeffs) + [_ZERO] * (n + 1 - len(self.coeffs))
        return Poly(reversed(c))


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd via the Euclidean algorithm; ``gcd(0, 0) = 0``."""
    while b:
        a, b = b, a % b
    return a.monic()


# --------------------------------------------------------------------------
# Laurent polynomials
# --------------------------------------------------------------------------


class LaurentPoly:
    """Sparse Laurent polynomial in q: signed exponent -> nonzero rational."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[int, Scalar] | None = None):
        clean = {}
        if terms:
            for e, c in terms.items():
                c = Fraction(c)
                if c:
                    clean[int(e)] = c
        object.__setattr__(self, "terms", dict(sorted(clean.items())))
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentPoly is immutable")

    @classmethod
    def monomial(cls, e: int, c: Scalar = 1) -> "LaurentPoly":
        return cls({e: c})

    @classmethod
    def parse(cls, text: str, var: str = "q") -> "LaurentPoly":
        return cls(_parse_terms(text, var))

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == LaurentPoly({0: other}).terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash(("LaurentPoly", tuple(self.terms.items()))))
        return self._hash

    def __repr__(self):
        return f"LaurentPoly({self.format()!r})"

    def format(self, var: str = "q") -> str:
        return _format_terms(self.terms.items(), var)

    __str__ = format

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self.terms.items()})

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly({0: other})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, _ZERO) + c
        return LaurentPoly(out)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly({0: other})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return LaurentPoly({e: c * other for e, c in self.terms.items()})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        out: dict[int, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                out[e1 + e2] = out.get(e1 + e2, _ZERO) + c1 * c2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if len(self.terms) != 1:
                raise ValueError("only monomials are invertible Laurent polynomials")
            ((e, c),) = self.terms.items()
            return LaurentPoly({e * k: c**k})
        out = LaurentPoly({0: 1})
        for _ in range(k):
            out = out * self
        return out

    def q_inverse(self) -> "LaurentPoly":
        return LaurentPoly({-e: c for e, c in self.terms.items()})

    def to_ratfun(self) -> "RatFun":
        if not self.terms:
            return RatFun.zero()
        low = min(self.terms)
        shift = -low if low < 0 else 0
        top = max(self.terms) + shift
        coeffs = [_ZERO] * (top + 1)
        for e, c in self.terms.items():
            coeffs[e + shift] = c
        num = Poly(coeffs)
        return ratfun_canonical(num, Poly.monomial(shift))


# --------------------------------------------------------------------------
# rational functions
# --------------------------------------------------------------------------


class RatFun:
    """Element of Q(q) in canonical form: coprime num/den, den monic.

    Build values through :func:`ratfun_canonical` (or the arithmetic
    operators); the raw constructor trusts its arguments.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly):
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RatFun is immutable")

    @classmethod
    def zero(cls) -> "RatFun":
        return cls(Poly(), Poly([1]))

    @classmethod
    def const(cls, c: Scalar) -> "RatFun":
        return cls(Poly([c]), Poly([1]))

    @classmethod
    def q(cls, e: int = 1, c: Scalar = 1) -> "RatFun":
        """The monomial ``c * q^e`` for any integer ``e``."""
        if not c:
            return cls.zero()
        if e >= 0:
            return cls(Poly.monomial(e, c), Poly([1]))
        return cls(Poly([c]), Poly.monomial(-e))

    @classmethod
    def coerce(cls, x) -> "RatFun":
        if isinstance(x, RatFun):
            return x
        if isinstance(x, (int, Fraction)):
            return cls.const(x)
        if isinstance(x, Poly):
            return cls(x, Poly([1]))
        if isinstance(x, LaurentPoly):
            return x.to_ratfun()
        raise TypeError(f"cannot coerce {type(x).__name__} to RatFun")

    @classmethod
    def parse(cls, text: str, var: str = "q") -> "RatFun":
        s = text.strip()
        parts = _split_top_level_div(s)
        if len(parts) == 1:
            return LaurentPoly.parse(_strip_parens(parts[0]), var).to_ratfun()
        if len(parts) == 2:
            num = LaurentPoly.parse(_strip_parens(parts[0]), var).to_ratfun()
            den = LaurentPoly.parse(_strip_parens(parts[1]), var).to_ratfun()
            if not den:
                raise ZeroDenominator(f"zero denominator in {text!r}")
            return num / den
        raise ParseError(f"cannot parse rational function {text!r}")

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, Poly, LaurentPoly)):
            other = RatFun.coerce(other)
        if not isinstance(other, RatFun):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash(("RatFun", self.num.coeffs, self.den.coeffs))

    def __repr__(self):
        return f"RatFun({self.format()!r})"

    def format(self, var: str = "q") -> str:
        def wrap(p: Poly) -> str:
            s = p.format(var)
            return f"({s})" if sum(1 for c in p.coeffs if c) > 1 else s

        if self.den == Poly([1]):
            return self.num.format(var)
        return f"{wrap(self.num)} / {wrap(self.den)}"

    __str__ = format

    def __neg__(self):
        return RatFun(-self.num, self.den)

    def __add__(self, other):
        try:
            other = RatFun.coerce(other)
        except TypeError:
            return NotImplemented
        if self.den == other.den:
            return ratfun_canonical(self.num + other.num, self.den)
        return ratfun_canonical(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            other = RatFun.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return RatFun.zero()
            return RatFun(self.num * other, self.den)
        try:
            other = RatFun.coerce(other)
        except TypeError:
            return NotImplemented
        return ratfun_canonical(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "RatFun":
        if not self:
            raise ZeroDenominator("inverse of zero rational function")
        return ratfun_canonical(self.den, self.num)

    def __truediv__(self, other):
        try:
            other = RatFun.coerce(other)
        except TypeError:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return RatFun.coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return RatFun(self.num**k, self.den**k) if k else RatFun.const(1)

    def q_inverse(self) -> "RatFun":
        return ratfun_q_inverse(self)

    def is_laurent(self) -> bool:
        """True iff the denominator is a power of q (finite q-support)."""
        return sum(1 for c in self.den.coeffs if c) == 1

    def to_laurent(self) -> LaurentPoly:
        if not self.is_laurent():
            raise ValueError(f"{self} is not a Laurent polynomial")
        shift = self.den.degree
        return LaurentPoly({e - shift: c for e, c in enumerate(self.num.coeffs) if c})

    def q_expansion(self, order: int) -> dict[int, Fraction]:
        """Laurent expansion around q = 0, all exponents ``< order``."""
        if not self.num:
            return {}
        v = self.den.valuation()
        den = Poly(self.den.coeffs[v:])
        n_terms = order + v
        if n_terms <= 0:
            return {}
        inv = [_ZERO] * n_terms
        inv[0] = 1 / den.coeffs[0]
        for i in range(1, n_terms):
            acc = _ZERO
            for j in range(1, min(i, den.degree) + 1):
                acc += den.coeffs[j] * inv[i - j]
            inv[i] = -acc * inv[0]
        out: dict[int, Fraction] = {}
        for i in range(n_terms):
            acc = _ZERO
            for j in range(min(i, self.num.degree) + 1):
                acc += self.num.coeffs[j] * inv[i - j]
            if acc:
                out[i - v] = acc
        return out


def _split_top_level_div(s: str) -> list[str]:
    depth = 0
    parts, start = [], 0
    for i, ch in enumerate(s):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "/" and depth == 0 and i > 0 and s[i - 1] == " ":
            parts.append(s[start:i])
            start = i + 1
    parts.append(s[start:])
    return [p.strip() for p in parts]


def _strip_parens(s: str) -> str:
    s = s.strip()
    if s.startswith("(") and s.endswith(")"):
        return s[1:-1]
    return s


def ratfun_canonical(num: Poly, den: Poly) -> RatFun:
    """Reduce ``num/den`` to coprime form with a monic denominator."""
    if not den:
        raise ZeroDenominator("rational function with zero denominator")
    if not num:
        return RatFun.zero()
    g = poly_gcd(num, den)
    if g.degree > 0:
        num, den = num // g, den // g
    lead = den.lead
    if lead != 1:
        num, den = num * (1 / lead), den * (1 / lead)
    return RatFun(num, den)


def ratfun_q_inverse(f: RatFun) -> RatFun:
    """Canonical form of ``f(1/q)``."""
    if not f:
        return f
    n = max(f.num.degree, f.den.degree)
    return ratfun_canonical(f.num.reversed(n), f.den.reversed(n))
