"""Exact scalar arithmetic in Q(q).

Two value types live here. ``ZPolyQ`` is a univariate polynomial in q with
arbitrary-precision integer coefficients, stored densely in ascending powers
with trailing zeros trimmed. ``RatQ`` is a reduced ratio of two ``ZPolyQ``;
it is the field every other module computes over.

The q-combinatorial primitives (q-integers, q-factorials, Gaussian binomials,
q-Pochhammer) are provided as module functions and memoized, since every
rewriting step downstream consumes them.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Sequence


class ForbiddenQValueError(ZeroDivisionError):
    """Raised when evaluating at a q where a required denominator vanishes."""


class ZPolyQ:
    """Integer-coefficient polynomial in q, coefficients ascending by degree."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        cs = list(coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[int, ...] = tuple(cs)

    # -- constructors -------------------------------------------------

    @staticmethod
    def const(n: int) -> "ZPolyQ":
        return ZPolyQ((n,))

    @staticmethod
    def monomial(coeff: int, power: int) -> "ZPolyQ":
        if coeff == 0:
            return ZPolyQ()
        return ZPolyQ((0,) * power + (coeff,))

    # -- structure ----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self) -> int:
        """Degree, with the zero polynomial conventionally at -1."""
        return len(self.coeffs) - 1

    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def content(self) -> int:
        """Gcd of the coefficients (0 for the zero polynomial)."""
        g = 0
        for c in self.coeffs:
            g = gcd(g, c)
            if g == 1:
                return 1
        return g

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def has_nonneg_coeffs(self) -> bool:
        return all(c >= 0 for c in self.coeffs)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = ZPolyQ.const(other)
        if not isinstance(other, ZPolyQ):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    # -- arithmetic ---------------------------------------------------

    def __neg__(self) -> "ZPolyQ":
        return ZPolyQ(-c for c in self.coeffs)

    def __add__(self, other: "ZPolyQ | int") -> "ZPolyQ":
        if isinstance(other, int):
            other = ZPolyQ.const(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return ZPolyQ(out)

    __radd__ = __add__

    def __sub__(self, other: "ZPolyQ | int") -> "ZPolyQ":
        if isinstance(other, int):
            other = ZPolyQ.const(other)
        return self + (-other)

    def __rsub__(self, other: int) -> "ZPolyQ":
        return ZPolyQ.const(other) - self

    def __mul__(self, other: "ZPolyQ | int") -> "ZPolyQ":
        if isinstance(other, int):
            if other == 0:
                return ZPolyQ()
            return ZPolyQ(other * c for c in self.coeffs)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return ZPolyQ()
        out = [0] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    out[i + j] += ca * cb
        return ZPolyQ(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "ZPolyQ":
        if k < 0:
            raise ValueError("negative power of a polynomial")
        out = ZPolyQ.const(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def shift(self, k: int) -> "ZPolyQ":
        """Multiply by q^k (k >= 0)."""
        if self.is_zero():
            return self
        return ZPolyQ((0,) * k + self.coeffs)

    def reversed(self) -> "ZPolyQ":
        """Coefficient reversal: q^deg * p(1/q)."""
        return ZPolyQ(tuple(reversed(self.coeffs)))

    def divmod(self, other: "ZPolyQ") -> tuple["ZPolyQ", "ZPolyQ"]:
        """Division with remainder over Q[q]; raises if quotient is not integral."""
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        if other.is_monic():
            rem = list(self.coeffs)
            d = other.degree()
            quo = [0] * max(len(rem) - d, 0)
            oc = other.coeffs
            for i in range(len(rem) - 1, d - 1, -1):
                c = rem[i]
                if c:
                    quo[i - d] = c
                    for j, b in enumerate(oc):
                        rem[i - d + j] -= c * b
            return ZPolyQ(quo), ZPolyQ(rem)
        rem = [Fraction(c) for c in self.coeffs]
        d = other.degree()
        lc = Fraction(other.leading())
        quo = [Fraction(0)] * max(len(rem) - d, 0)
        oc = other.coeffs
        for i in range(len(rem) - 1, d - 1, -1):
            c = rem[i]
            if c:
                t = c / lc
                quo[i - d] = t
                for j, b in enumerate(oc):
                    rem[i - d + j] -= t * b
        if any(f.denominator != 1 for f in quo) or any(f.denominator != 1 for f in rem):
            raise ValueError("division of integer polynomials is not integral")
        return ZPolyQ(int(f) for f in quo), ZPolyQ(int(f) for f in rem)

    def divexact(self, other: "ZPolyQ") -> "ZPolyQ":
        quo, rem = self.divmod(other)
        if not rem.is_zero():
            raise ValueError(f"inexact polynomial division: {self} by {other}")
        return quo

    def __call__(self, q0: Fraction | int) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * q0 + c
        return acc

    # -- serialization / display ---------------------------------------

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coeffs]

    @staticmethod
    def from_json(data: Sequence[str]) -> "ZPolyQ":
        return ZPolyQ(int(s) for s in data)

    def __str__(self) -> str:
        return format_zpoly(self)

    def __repr__(self) -> str:
        return f"ZPolyQ({format_zpoly(self)})"


ZERO = ZPolyQ()
ONE = ZPolyQ.const(1)
Q = ZPolyQ.monomial(1, 1)


def format_zpoly(p: ZPolyQ) -> str:
    """Render ascending in q, e.g. ``2q+2q^2`` or ``-1-q``."""
    if p.is_zero():
        return "0"
    parts: list[str] = []
    for k, c in enumerate(p.coeffs):
        if c == 0:
            continue
        mag = abs(c)
        if k == 0:
            body = str(mag)
        elif k == 1:
            body = "q" if mag == 1 else f"{mag}q"
        else:
            body = f"q^{k}" if mag == 1 else f"{mag}q^{k}"
        if not parts:
            parts.append(body if c > 0 else "-" + body)
        else:
            parts.append(("+" if c > 0 else "-") + body)
    return "".join(parts)


def _primitive(p: ZPolyQ) -> ZPolyQ:
    c = p.content()
    if c in (0, 1):
        return p
    return ZPolyQ(x // c for x in p.coeffs)


def _pseudo_rem(a: ZPolyQ, b: ZPolyQ) -> ZPolyQ:
    """lc(b)^k * a mod b for some k, computed entirely over Z[q]."""
    lc = b.leading()
    r = a
    while not r.is_zero() and r.degree() >= b.degree():
        r = r * lc - b * ZPolyQ.monomial(r.leading(), r.degree() - b.degree())
    return r


def poly_gcd(a: ZPolyQ, b: ZPolyQ) -> ZPolyQ:
    """Primitive gcd over Z[q] (a generator of the gcd over Q[q]).

    Primitive pseudo-remainder sequence; adequate for the modest degrees
    produced by q-factorial denominators.
    """
    a, b = _primitive(a), _primitive(b)
    if a.degree() < b.degree():
        a, b = b, a
    while not b.is_zero():
        a, b = b, _primitive(_pseudo_rem(a, b))
    if a.leading() < 0:
        a = -a
    return a


class RatQ:
    """Element of Q(q): reduced ratio of integer polynomials.

    Canonical form: num/den share no polynomial factor over Q[q], the pair
    has joint integer content 1, and den has positive leading coefficient.
    Zero is 0/1. Equality is structural.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: ZPolyQ | int, den: ZPolyQ | int = 1, *, _normalized: bool = False):
        if isinstance(num, int):
            num = ZPolyQ.const(num)
        if isinstance(den, int):
            den = ZPolyQ.const(den)
        if den.is_zero():
            raise ZeroDivisionError("RatQ with zero denominator")
        if not _normalized:
            num, den = _ratq_normalize(num, den)
        self.num = num
        self.den = den

    @staticmethod
    def from_fraction(f: Fraction | int) -> "RatQ":
        f = Fraction(f)
        return RatQ(ZPolyQ.const(f.numerator), ZPolyQ.const(f.denominator), _normalized=True)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den == ONE

    def as_poly(self) -> ZPolyQ:
        if not self.is_polynomial():
            raise ValueError(f"{self} is not a polynomial in q")
        return self.num

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, ZPolyQ)):
            other = RatQ(other if isinstance(other, ZPolyQ) else ZPolyQ.const(other))
        if not isinstance(other, RatQ):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __neg__(self) -> "RatQ":
        return RatQ(-self.num, self.den, _normalized=True)

    def __add__(self, other: "RatQ | ZPolyQ | int") -> "RatQ":
        other = _as_ratq(other)
        if self.den == other.den:
            return RatQ(self.num + other.num, self.den)
        return RatQ(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other: "RatQ | ZPolyQ | int") -> "RatQ":
        return self + (-_as_ratq(other))

    def __rsub__(self, other: "RatQ | ZPolyQ | int") -> "RatQ":
        return _as_ratq(other) + (-self)

    def __mul__(self, other: "RatQ | ZPolyQ | int | Fraction") -> "RatQ":
        if isinstance(other, Fraction):
            return RatQ(self.num * other.numerator, self.den * other.denominator)
        other = _as_ratq(other)
        return RatQ(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other: "RatQ | ZPolyQ | int") -> "RatQ":
        other = _as_ratq(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero RatQ")
        return RatQ(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other: "RatQ | ZPolyQ | int") -> "RatQ":
        return _as_ratq(other) / self

    def subs_inverse_q(self) -> "RatQ":
        """The image under q -> 1/q."""
        dn = self.num.degree()
        dd = self.den.degree()
        num = self.num.reversed()
        den = self.den.reversed()
        if dn > dd:
            den = den.shift(dn - dd)
        elif dd > dn:
            num = num.shift(dd - dn)
        return RatQ(num, den)

    def eval(self, q0: Fraction | int) -> Fraction:
        """Exact evaluation at a rational q0; errors where the denominator vanishes."""
        q0 = Fraction(q0)
        d = self.den(q0)
        if d == 0:
            raise ForbiddenQValueError(f"forbidden q: denominator {self.den} vanishes at q={q0}")
        return self.num(q0) / d

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @staticmethod
    def from_json(data: dict) -> "RatQ":
        return RatQ(ZPolyQ.from_json(data["num"]), ZPolyQ.from_json(data["den"]))

    def __str__(self) -> str:
        if self.den == ONE:
            return format_zpoly(self.num)
        return f"({format_zpoly(self.num)}) / ({format_zpoly(self.den)})"

    def __repr__(self) -> str:
        return f"RatQ({self})"


def _as_ratq(x: "RatQ | ZPolyQ | int") -> RatQ:
    if isinstance(x, RatQ):
        return x
    if isinstance(x, ZPolyQ):
        return RatQ(x, ONE, _normalized=True)
    return RatQ(ZPolyQ.const(x), ONE, _normalized=True)


def _ratq_normalize(num: ZPolyQ, den: ZPolyQ) -> tuple[ZPolyQ, ZPolyQ]:
    if num.is_zero():
        return ZERO, ONE
    g = poly_gcd(num, den)
    if g.degree() > 0:
        # g is primitive and divides both over Q[q]; by Gauss's lemma the
        # quotients stay in Z[q]
        num = num.divexact(g)
        den = den.divexact(g)
    c = gcd(num.content(), den.content())
    if c > 1:
        num = ZPolyQ(x // c for x in num.coeffs)
        den = ZPolyQ(x // c for x in den.coeffs)
    if den.leading() < 0:
        num, den = -num, -den
    return num, den


R_ZERO = RatQ(0)
R_ONE = RatQ(1)


# -- q-combinatorial primitives ---------------------------------------


@lru_cache(maxsize=None)
def qint(n: int) -> ZPolyQ:
    """[n]_q = 1 + q + ... + q^(n-1)."""
    if n < 0:
        raise ValueError(f"qint of negative {n}")
    return ZPolyQ((1,) * n)


@lru_cache(maxsize=None)
def qfact(n: int) -> ZPolyQ:
    """[n]_q! = [1][2]...[n]."""
    if n < 0:
        raise ValueError(f"qfact of negative {n}")
    if n == 0:
        return ONE
    return qfact(n - 1) * qint(n)


@lru_cache(maxsize=None)
def qbinom(n: int, k: int) -> ZPolyQ:
    """Gaussian binomial [n]!/([k]![n-k]!), always a polynomial."""
    if not 0 <= k <= n:
        raise ValueError(f"qbinom({n}, {k}) out of range")
    return qfact(n).divexact(qfact(k)).divexact(qfact(n - k))


def qmultinomial(n: int, parts: Sequence[int]) -> ZPolyQ:
    """[n]! / prod [p_i]! for a weak composition of n."""
    if sum(parts) != n or any(p < 0 for p in parts):
        raise ValueError(f"qmultinomial parts {parts} do not sum to {n}")
    out = qfact(n)
    for p in parts:
        out = out.divexact(qfact(p))
    return out


@lru_cache(maxsize=None)
def qpoch(n: int) -> tuple[ZPolyQ, ...]:
    """(t;q)_n as coefficients of t^0..t^n, each a ZPolyQ.

    Coefficient of t^j is (-1)^j q^binom(j,2) qbinom(n,j).
    """
    if n < 0:
        raise ValueError(f"qpoch of negative {n}")
    out: list[ZPolyQ] = [ONE]
    for i in range(n):
        # multiply by (1 - t q^i)
        nxt = [ZERO] * (len(out) + 1)
        for j, c in enumerate(out):
            nxt[j] = nxt[j] + c
            nxt[j + 1] = nxt[j + 1] - c.shift(i)
        out = nxt
    return tuple(out)


def qpower(k: int) -> RatQ:
    """q^k as a RatQ, valid for negative k too."""
    if k >= 0:
        return RatQ(ZPolyQ.monomial(1, k), ONE, _normalized=True)
    return RatQ(ONE, ZPolyQ.monomial(1, -k), _normalized=True)
