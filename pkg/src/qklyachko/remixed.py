"""Remixed Eulerian numbers A_c(q) and the machinery built on them.

A_c(q), for c a nonnegative vector of weight r supported on [1, r], is the
q-divided symmetrization of y_c = prod (x_1+...+x_i)^(c_i) over r+1
variables. Here they are computed by the interval recurrence

    [b-a+2] A_c = q^(i-a+1) [b-i+1] A_(L_i c) + [i-a+1] A_(R_i c)

with base A_(1^r) = [r]! and terms whose support escapes [1, r] set to 0.
A subtraction-free variant computes the reduced numbers
A~_c = A_c / prod [m_j]! over the maximal support interval sizes m_j,
witnessing nonnegativity of the coefficients. The cyclic-class machinery,
the connected generating function, and the q-volume of the permutahedron
round out the module.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Iterable, Iterator, Sequence

from .exactq import ONE, R_ZERO, RatQ, ZPolyQ, qbinom, qfact, qint, qpoch
from .polyring import XPoly
from .vectors import NVector, as_nvector


def _window_key(c: "NVector | Sequence[int]") -> tuple[int, ...]:
    """Validate support within [1, r] for r = |c| and return the length-r tuple."""
    v = as_nvector(c)
    r = v.weight()
    if v.is_zero():
        return ()
    if v.min_index() < 1 or v.max_index() > r:
        raise ValueError(f"support {v.support()} escapes the window [1, {r}]")
    return v.to_tuple(1, r)


@lru_cache(maxsize=None)
def _remixed(key: tuple[int, ...]) -> ZPolyQ:
    r = sum(key)
    if all(x == 1 for x in key):
        return qfact(r)
    c = NVector.from_seq(key, 1)
    i = next(j for j, cnt in c.items() if cnt >= 2)
    a, b = c.max_support_interval(i)
    moved = c.bumped(i, -1)
    acc = ZPolyQ()
    if a > 1:
        left = _remixed(moved.bumped(a - 1, +1).to_tuple(1, r))
        acc = acc + left * qint(b - i + 1).shift(i - a + 1)
    if b < r:
        right = _remixed(moved.bumped(b + 1, +1).to_tuple(1, r))
        acc = acc + right * qint(i - a + 1)
    return acc.divexact(qint(b - a + 2))


def remixed_eulerian(c: "NVector | Sequence[int]") -> ZPolyQ:
    """A_c(q) for c of weight r supported on [1, r]."""
    return _remixed(_window_key(c))


@lru_cache(maxsize=None)
def _remixed_reduced(key: tuple[int, ...]) -> ZPolyQ:
    r = sum(key)
    if all(x == 1 for x in key):
        return ONE
    c = NVector.from_seq(key, 1)
    i = next(j for j, cnt in c.items() if cnt >= 2)
    a, b = c.max_support_interval(i)
    moved = c.bumped(i, -1)
    acc = ZPolyQ()
    if a > 1:
        left = _remixed_reduced(moved.bumped(a - 1, +1).to_tuple(1, r))
        if a == 2 or c[a - 2] == 0:
            b_l = ONE
        else:
            f = a - 2
            while c[f - 1] > 0:
                f -= 1
            b_l = qbinom(b - f + 1, b - a + 2)
        acc = acc + left * b_l * qint(b - i + 1).shift(i - a + 1)
    if b < r:
        right = _remixed_reduced(moved.bumped(b + 1, +1).to_tuple(1, r))
        if b == r - 1 or c[b + 2] == 0:
            b_r = ONE
        else:
            g = b + 2
            while c[g + 1] > 0 and g + 1 <= r:
                g += 1
            b_r = qbinom(g - a + 1, b - a + 2)
        acc = acc + right * b_r * qint(i - a + 1)
    if not acc.has_nonneg_coeffs():
        raise AssertionError(f"reduced recursion produced a negative coefficient at {key}")
    return acc


def remixed_reduced(c: "NVector | Sequence[int]") -> ZPolyQ:
    """A~_c = A_c / prod [m_j]!; computed subtraction-free, coefficients in N."""
    return _remixed_reduced(_window_key(c))


def interval_factorials(c: "NVector | Sequence[int]") -> ZPolyQ:
    """prod [|I_j|]! over the maximal intervals of the support."""
    v = as_nvector(c)
    out = ONE
    for a, b in v.support_intervals():
        out = out * qfact(b - a + 1)
    return out


def cyclic_class(c: "NVector | Sequence[int]") -> set[tuple[int, ...]]:
    """All c' of weight r with (c', 0) a cyclic rotation of (c, 0) and support in [1, r]."""
    key = _window_key(c)
    r = len(key)
    padded = key + (0,)
    out: set[tuple[int, ...]] = set()
    for k in range(r + 1):
        rot = padded[k:] + padded[:k]
        if rot[-1] == 0:
            out.add(rot[:-1])
    return out


def connected_numerator(c: Sequence[int]) -> tuple[ZPolyQ, ...]:
    """The r-k+1 numbers A_(0^i, c, 0^(r-k-i)) for a strong composition c of r.

    Also replays the generating identity
        (sum_m t^m prod_i [m+i]^(c_i)) * (t;q)_(r+1) = sum_i A_... t^i
    through order t^(r-k+3) and raises if it fails.
    """
    if not c or any(p <= 0 for p in c):
        raise ValueError(f"need a strong composition, got {c}")
    k = len(c)
    r = sum(c)
    out = tuple(
        remixed_eulerian((0,) * i + tuple(c) + (0,) * (r - k - i)) for i in range(r - k + 1)
    )

    order = r - k + 3
    series = [ZPolyQ() for _ in range(order + 1)]
    for m in range(order + 1):
        prod = ONE
        for i, ci in enumerate(c, start=1):
            prod = prod * qint(m + i) ** ci
        series[m] = prod
    poch = qpoch(r + 1)
    for j in range(order + 1):
        acc = ZPolyQ()
        for i in range(min(j, r + 1) + 1):
            acc = acc + poch[i] * series[j - i]
        expected = out[j] if j <= r - k else ZPolyQ()
        if acc != expected:
            raise AssertionError(f"connected generating identity fails at t^{j} for c={c}")
    return out


def eulerian_series_lhs(c: Sequence[int], order: int) -> list[ZPolyQ]:
    """Coefficients of t^0..t^order in sum_m t^m prod_i [m+i]^(c_i)."""
    out = []
    for m in range(order + 1):
        prod = ONE
        for i, ci in enumerate(c, start=1):
            prod = prod * qint(m + i) ** ci
        out.append(prod)
    return out


def weak_compositions(total: int, length: int) -> Iterator[tuple[int, ...]]:
    """All length-`length` tuples of nonnegative ints summing to `total`."""
    if length == 0:
        if total == 0:
            yield ()
        return
    if length == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in weak_compositions(total - first, length - 1):
            yield (first,) + rest


def qvolume(mu: Sequence[Fraction | int]) -> RatQ:
    """q-volume of the permutahedron with edge parameters mu_1..mu_(n-1).

    V^q(mu) = sum over |c| = n-1 of A_c(q) mu^c / prod c_i!.
    """
    if not mu:
        raise ValueError("need at least one parameter")
    r = len(mu)
    mu = [Fraction(m) for m in mu]
    total = R_ZERO
    for c in weak_compositions(r, r):
        scalar = Fraction(1)
        for ci, mi in zip(c, mu):
            scalar *= mi**ci
        if scalar == 0:
            continue
        denom = 1
        for ci in c:
            denom *= factorial(ci)
        total = total + RatQ(remixed_eulerian(c)) * (scalar / denom)
    return total


def qvolume_symbolic(n: int) -> dict[tuple[int, ...], RatQ]:
    """Coefficient table {c -> A_c(q) / prod c_i!} for the degree n-1 expansion."""
    if n < 2:
        raise ValueError("need n >= 2")
    r = n - 1
    out: dict[tuple[int, ...], RatQ] = {}
    for c in weak_compositions(r, r):
        denom = 1
        for ci in c:
            denom *= factorial(ci)
        out[c] = RatQ(remixed_eulerian(c)) * Fraction(1, denom)
    return out


def qvolume_via_qds(n: int) -> XPoly:
    """The q-volume as a polynomial in mu_1..mu_(n-1), computed from the qDS route.

    Expands <(lambda_1 x_1 + ... + lambda_n x_n)^(n-1)>_n / (n-1)! with
    lambda_i = mu_i + ... + mu_(n-1), using the monomial formula termwise.
    The returned XPoly has the mu's as its variables.
    """
    from .qds import qds_monomial

    if n < 2:
        raise ValueError("need n >= 2")
    r = n - 1
    out = XPoly.zero()
    for c in weak_compositions(r, n):
        scalar = qds_monomial(NVector.from_seq(c, 1), n)
        if not scalar:
            continue
        denom = 1
        for ci in c:
            denom *= factorial(ci)
        term = XPoly.const(scalar * Fraction(1, denom))
        for i, ci in enumerate(c, start=1):
            if ci:
                term = term * (XPoly.linear_sum(range(i, n)) ** ci)
        out = out + term
    return out


def qvolume_symbolic_poly(n: int) -> XPoly:
    """The table route as an XPoly in mu_1..mu_(n-1), for comparison with the qDS route."""
    out = XPoly.zero()
    for c, coeff in qvolume_symbolic(n).items():
        out = out + XPoly.monomial(NVector.from_seq(c, 1), coeff)
    return out
