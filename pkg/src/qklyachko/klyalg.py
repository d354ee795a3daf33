"""The q-Klyachko algebra and its quotients.

The algebra is commutative on generators u_i (i in Z) with relations
(q+1) u_i^2 = q u_i u_{i-1} + u_i u_{i+1}; the quotients kill generators
outside Z_+ ("positive") or outside [1, n-1] ("finite n"). Squarefree
monomials u_I over finite subsets I form a linear basis, and every monomial
u^c rewrites into it by the gambler's-ruin step

    [b-a+2] u^c  =  q^(i-a+1) [b-i+1] u^(L_i c)  +  [i-a+1] u^(R_i c)

where [a, b] is the maximal support interval containing a pivot i with
c_i >= 2, and L/R move one particle from i to a-1 / b+1.

Internally the rewriting runs over Z[q] on the rescaled element [|c|]! u^c,
where every division is exact; rational coefficients only appear at the
public boundary. The memo table is shared and safe to reuse across calls.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping

from .exactq import ONE, R_ONE, R_ZERO, RatQ, ZPolyQ, qfact, qint
from .vectors import NVector, SubsetZ, as_nvector, as_subset, interval


@dataclass(frozen=True)
class Quotient:
    """Selects the full algebra, its positive half, or a finite interval quotient."""

    kind: str  # "full" | "positive" | "finite"
    n: int | None = None

    def __post_init__(self):
        if self.kind not in ("full", "positive", "finite"):
            raise ValueError(f"unknown quotient kind {self.kind!r}")
        if self.kind == "finite" and (self.n is None or self.n < 1):
            raise ValueError("finite quotient requires n >= 1")

    def allows(self, i: int) -> bool:
        if self.kind == "full":
            return True
        if self.kind == "positive":
            return i >= 1
        return 1 <= i <= self.n - 1

    def allows_all(self, indices: Iterable[int]) -> bool:
        return all(self.allows(i) for i in indices)

    def __str__(self) -> str:
        return {"full": "K", "positive": "K+", "finite": f"K_{self.n}"}[self.kind]


FULL = Quotient("full")
POSITIVE = Quotient("positive")


def finite(n: int) -> Quotient:
    return Quotient("finite", n)


class KElement:
    """Element of a Klyachko algebra in the squarefree basis.

    ``terms`` maps finite subsets of Z (increasing tuples) to nonzero RatQ
    coefficients; the quotient tags which algebra the element lives in.
    """

    __slots__ = ("terms", "quotient")

    def __init__(self, terms: Mapping[SubsetZ, RatQ], quotient: Quotient):
        clean: dict[SubsetZ, RatQ] = {}
        for subset, coeff in terms.items():
            subset = tuple(subset)
            if any(subset[i] >= subset[i + 1] for i in range(len(subset) - 1)):
                raise ValueError(f"subset {subset} is not strictly increasing")
            if not quotient.allows_all(subset):
                raise ValueError(f"subset {subset} escapes quotient {quotient}")
            if coeff:
                clean[subset] = coeff
        self.terms = clean
        self.quotient = quotient

    @staticmethod
    def zero(quotient: Quotient) -> "KElement":
        return KElement({}, quotient)

    @staticmethod
    def unit(quotient: Quotient) -> "KElement":
        return KElement({(): R_ONE}, quotient)

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, subset: Iterable[int]) -> RatQ:
        return self.terms.get(as_subset(subset), R_ZERO)

    def sorted_terms(self) -> list[tuple[SubsetZ, RatQ]]:
        return sorted(self.terms.items())

    def __add__(self, other: "KElement") -> "KElement":
        if self.quotient != other.quotient:
            raise ValueError(f"quotient mismatch: {self.quotient} vs {other.quotient}")
        out = dict(self.terms)
        for subset, coeff in other.terms.items():
            acc = out.get(subset)
            coeff = coeff if acc is None else acc + coeff
            if coeff:
                out[subset] = coeff
            elif acc is not None:
                del out[subset]
        return KElement(out, self.quotient)

    def __neg__(self) -> "KElement":
        return KElement({s: -c for s, c in self.terms.items()}, self.quotient)

    def __sub__(self, other: "KElement") -> "KElement":
        return self + (-other)

    def scale(self, factor: RatQ | ZPolyQ | int) -> "KElement":
        if not factor:
            return KElement.zero(self.quotient)
        return KElement({s: c * factor for s, c in self.terms.items()}, self.quotient)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, KElement):
            return NotImplemented
        return self.quotient == other.quotient and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.quotient, frozenset(self.terms.items())))

    def to_json(self) -> list[dict]:
        return [
            {"subset": list(subset), "coeff": coeff.to_json()}
            for subset, coeff in self.sorted_terms()
        ]

    def __repr__(self) -> str:
        if self.is_zero():
            return f"KElement(0; {self.quotient})"
        body = " + ".join(f"({c})*u_{list(s)}" for s, c in self.sorted_terms())
        return f"KElement({body}; {self.quotient})"


# -- gambler's ruin coefficients ---------------------------------------


def gamblers_ruin_coeffs(i: int, a: int, b: int) -> tuple[RatQ, RatQ]:
    """Exit coefficients of the rewriting step at pivot i in the interval [a, b].

    Returns (left, right) with
        left  = q^(i-a+1) [b-i+1] / [b-a+2],
        right = [i-a+1] / [b-a+2],
    so that u_i u_[a,b] = left * u_[a-1,b] + right * u_[a,b+1].
    """
    if not a <= i <= b:
        raise ValueError(f"pivot {i} outside [{a}, {b}]")
    den = qint(b - a + 2)
    left = RatQ(qint(b - i + 1).shift(i - a + 1), den)
    right = RatQ(qint(i - a + 1), den)
    return left, right


# -- the scaled rewriting engine ---------------------------------------

# memo: (counts, quotient-tag) -> {subset: ZPolyQ}, holding [|c|]! u^c.
# Full-quotient keys are shift-normalized to start at index 1.
_REDUCE_MEMO: dict[tuple, dict[SubsetZ, ZPolyQ]] = {}

PivotPolicy = Callable[[NVector], int]


def _leftmost_pivot(c: NVector) -> int:
    for i, cnt in c.items():
        if cnt >= 2:
            return i
    raise ValueError("no pivot: vector is squarefree")


def _rightmost_pivot(c: NVector) -> int:
    for i, cnt in reversed(list(c.items())):
        if cnt >= 2:
            return i
    raise ValueError("no pivot: vector is squarefree")


def _quotient_tag(quot: Quotient) -> tuple:
    return (quot.kind, quot.n)


def _step(c: NVector, i: int, quot: Quotient) -> list[tuple[ZPolyQ, NVector]]:
    """One rewriting step at pivot i: list of (Z[q] weight, vector), denominator [b-a+2] implied."""
    a, b = c.max_support_interval(i)
    moved = c.bumped(i, -1)
    out: list[tuple[ZPolyQ, NVector]] = []
    if quot.allows(a - 1):
        out.append((qint(b - i + 1).shift(i - a + 1), moved.bumped(a - 1, +1)))
    if quot.allows(b + 1):
        out.append((qint(i - a + 1), moved.bumped(b + 1, +1)))
    return out


def _reduce_scaled(c: NVector, quot: Quotient) -> dict[SubsetZ, ZPolyQ]:
    """Coefficients of [|c|]! u^c in the squarefree basis, all in Z[q]."""
    if c.is_zero():
        return {(): ONE}
    shift = 0
    if quot.kind == "full":
        shift = 1 - c.min_index()
        c = c.shifted(shift)
    key = ((c.offset, c.counts), _quotient_tag(quot))
    cached = _REDUCE_MEMO.get(key)
    if cached is None:
        cached = _reduce_scaled_uncached(c, quot)
        _REDUCE_MEMO[key] = cached
    if shift:
        return {tuple(i - shift for i in s): p for s, p in cached.items()}
    return cached


def _reduce_scaled_uncached(c: NVector, quot: Quotient) -> dict[SubsetZ, ZPolyQ]:
    if c.excess() == 0:
        return {c.support(): qfact(c.weight())}
    i = _leftmost_pivot(c)
    a, b = c.max_support_interval(i)
    acc: dict[SubsetZ, ZPolyQ] = {}
    for weight, nxt in _step(c, i, quot):
        for subset, poly in _reduce_scaled(nxt, quot).items():
            prev = acc.get(subset)
            term = poly * weight
            acc[subset] = term if prev is None else prev + term
    den = qint(b - a + 2)
    return {s: p.divexact(den) for s, p in acc.items() if p}


def reduce_monomial(
    c: "NVector | Iterable[int]",
    quot: Quotient = FULL,
    *,
    pivot: str = "leftmost",
    seed: int | None = None,
) -> KElement:
    """Expand the monomial u^c in the squarefree basis of the chosen quotient.

    Vectors whose support escapes the quotient window are zero by definition.
    The pivot policy is semantically irrelevant (abelian property) and only
    the default leftmost policy is memoized; the others exist so tests can
    exercise confluence.
    """
    c = as_nvector(c)
    if not quot.allows_all(c.support()):
        return KElement.zero(quot)
    if pivot == "leftmost":
        scaled = _reduce_scaled(c, quot)
    else:
        scaled = _reduce_scaled_policy(c, quot, pivot, seed)
    denom = qfact(c.weight())
    return KElement({s: RatQ(p, denom) for s, p in scaled.items()}, quot)


def _reduce_scaled_policy(
    c: NVector, quot: Quotient, pivot: str, seed: int | None
) -> dict[SubsetZ, ZPolyQ]:
    rng = random.Random(seed) if pivot == "random" else None

    def choose(v: NVector) -> int:
        if pivot == "rightmost":
            return _rightmost_pivot(v)
        if pivot == "random":
            options = [i for i, cnt in v.items() if cnt >= 2]
            return rng.choice(options)
        raise ValueError(f"unknown pivot policy {pivot!r}")

    def go(v: NVector) -> dict[SubsetZ, ZPolyQ]:
        if v.excess() == 0:
            return {v.support(): qfact(v.weight())}
        i = choose(v)
        a, b = v.max_support_interval(i)
        acc: dict[SubsetZ, ZPolyQ] = {}
        for weight, nxt in _step(v, i, quot):
            for subset, poly in go(nxt).items():
                prev = acc.get(subset)
                term = poly * weight
                acc[subset] = term if prev is None else prev + term
        den = qint(b - a + 2)
        return {s: p.divexact(den) for s, p in acc.items() if p}

    return go(c)


# -- algebra operations -------------------------------------------------


def kmul(x: KElement, y: KElement) -> KElement:
    """Product in the algebra: distribute, merge exponents, reduce."""
    if x.quotient != y.quotient:
        raise ValueError(f"quotient mismatch: {x.quotient} vs {y.quotient}")
    out = KElement.zero(x.quotient)
    for sx, cx in x.terms.items():
        vx = NVector.from_subset(sx)
        for sy, cy in y.terms.items():
            c = vx.added(NVector.from_subset(sy))
            out = out + reduce_monomial(c, x.quotient).scale(cx * cy)
    return out


def kshift(x: KElement, k: int) -> KElement:
    """Apply the shift automorphism u_i -> u_{i+k}; only defined on the full algebra."""
    if x.quotient.kind != "full":
        raise ValueError("shift is only an automorphism of the full algebra")
    return KElement({tuple(i + k for i in s): c for s, c in x.terms.items()}, x.quotient)


def top_coefficient(x: KElement, r: int) -> RatQ:
    """Coefficient of u_{[1, r]} (the unit's coefficient when r = 0)."""
    if r < 0:
        raise ValueError(f"top_coefficient window size {r} < 0")
    return x.terms.get(interval(1, r), R_ZERO)


def sp_specialize(x: KElement) -> RatQ:
    """The morphism sending u_i to [i]_q for i > 0 and to 0 for i <= 0."""
    total = R_ZERO
    for subset, coeff in x.terms.items():
        if subset and subset[0] <= 0:
            continue
        prod = ONE
        for i in subset:
            prod = prod * qint(i)
        total = total + coeff * prod
    return total


def reduce_monomial_scaled(c: "NVector | Iterable[int]", quot: Quotient = FULL) -> dict[SubsetZ, ZPolyQ]:
    """The Z[q]-coefficient expansion of [|c|]! u^c (empty when u^c = 0)."""
    c = as_nvector(c)
    if not quot.allows_all(c.support()):
        return {}
    return dict(_reduce_scaled(c, quot))


def reduce_polynomial(f, quot: Quotient = FULL) -> KElement:
    """Image under the defining projection of a polynomial in the z-generators.

    Terms with polynomial coefficients are accumulated degree by degree over
    Z[q] against the rescaled expansions, deferring all rational
    normalization to one pass at the end; genuinely rational coefficients
    fall back to direct RatQ accumulation.
    """
    scaled_acc: dict[int, dict[SubsetZ, ZPolyQ]] = {}
    out: dict[SubsetZ, RatQ] = {}
    for exps, coeff in f.terms.items():
        if not quot.allows_all(exps.support()):
            continue
        scaled = _reduce_scaled(exps, quot)
        d = exps.weight()
        if coeff.is_polynomial():
            p = coeff.num
            acc = scaled_acc.setdefault(d, {})
            for subset, poly in scaled.items():
                prev = acc.get(subset)
                term = poly * p
                acc[subset] = term if prev is None else prev + term
        else:
            denom = RatQ(qfact(d))
            for subset, poly in scaled.items():
                term = coeff * RatQ(poly) / denom
                prev = out.get(subset)
                out[subset] = term if prev is None else prev + term
    for d, acc in scaled_acc.items():
        denom = qfact(d)
        for subset, poly in acc.items():
            if poly.is_zero():
                continue
            term = RatQ(poly, denom)
            prev = out.get(subset)
            out[subset] = term if prev is None else prev + term
    return KElement({s: c for s, c in out.items() if c}, quot)


def coefficient_via_qds(f, I: Iterable[int]) -> RatQ:
    """Coefficient of u_I in the image of a z-polynomial, by divided symmetrization.

    Independent route: decompose I into maximal intervals, substitute prefix
    sums of fresh x-variables on each interval, pad the gaps with the
    (q x_i - x_{i+1}) factors, q-divided-symmetrize over the covering window,
    and divide by the window's q-factorial. Degree mismatches yield 0.
    """
    from .polyring import XPoly
    from .qds import qds_antisym

    I = as_subset(I)
    if f.is_zero():
        return R_ZERO
    d = f.degree()
    if not f.is_homogeneous():
        raise ValueError("coefficient extraction requires a homogeneous polynomial")
    if d != len(I):
        return R_ZERO
    if not I:
        return f.terms.get(NVector(), R_ZERO)

    from .vectors import subset_maximal_intervals

    intervals = subset_maximal_intervals(I)
    a1 = intervals[0][0]
    bk = intervals[-1][1]
    iset = set(I)

    def z_image(i: int) -> XPoly:
        if i not in iset:
            return XPoly.zero()
        for a, b in intervals:
            if a <= i <= b:
                return XPoly.linear_sum(range(a, i + 1))
        raise AssertionError

    g = f.substitute(z_image)
    for (a, b), (a2, _b2) in zip(intervals, intervals[1:]):
        for t in range(b + 1, a2):
            g = g * XPoly.qx_minus_x(t, t + 1)
    # reindex the window [a1, bk + 1] down to [1, N]
    n = bk + 1 - a1 + 1
    g = g.reindex(lambda i: i - a1 + 1)
    return qds_antisym(g, n) / RatQ(qfact(bk - a1 + 1))


def clear_reduce_memo() -> None:
    """Drop the shared rewriting cache (tests use this to measure cold runs)."""
    _REDUCE_MEMO.clear()
