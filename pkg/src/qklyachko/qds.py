"""q-divided symmetrization: a linear form on degree n-1 polynomials in n variables.

Three independent routes compute the same scalar:

* ``qds_antisym`` is the reference definition. Multiply f by the staircase
  product of (q x_i - x_j) over pairs with j - i >= 2, antisymmetrize, and
  divide by the Vandermonde determinant. Because the product has total
  degree binom(n,2) exactly, only exponent vectors that permute
  (n-1, ..., 1, 0) survive antisymmetrization, so the form reduces to a
  signed coefficient extraction.

* ``qds_monomial`` evaluates monomials by the closed descent-class formula
  driven by the lattice-path heights of the exponent vector.

* ``qds_via_top`` reads the scalar off the top squarefree coefficient of the
  polynomial's image in the finite algebra quotient, rescaled by [n-1]!.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import permutations
from typing import Iterable

from .exactq import ONE, R_ZERO, RatQ, ZPolyQ, qfact, qmultinomial, qpower
from .klyalg import finite, top_coefficient
from .polyring import XPoly, rho
from .vectors import NVector, as_nvector


@lru_cache(maxsize=None)
def _staircase_product(n: int) -> tuple[tuple[tuple[int, ...], ZPolyQ], ...]:
    """Expansion of prod_{j-i>=2} (q x_i - x_j) over x_1..x_n as (exponents, Z[q] coeff)."""
    terms: dict[tuple[int, ...], ZPolyQ] = {(0,) * n: ONE}
    for i in range(1, n + 1):
        for j in range(i + 2, n + 1):
            nxt: dict[tuple[int, ...], ZPolyQ] = {}
            for exps, coeff in terms.items():
                lo = list(exps)
                lo[i - 1] += 1
                lo_t = tuple(lo)
                hi = list(exps)
                hi[j - 1] += 1
                hi_t = tuple(hi)
                c_lo = coeff.shift(1)
                prev = nxt.get(lo_t)
                nxt[lo_t] = c_lo if prev is None else prev + c_lo
                prev = nxt.get(hi_t)
                c_hi = -coeff
                nxt[hi_t] = c_hi if prev is None else prev + c_hi
            terms = {e: c for e, c in nxt.items() if c}
    return tuple(terms.items())


@lru_cache(maxsize=None)
def _signed_arrangements(n: int) -> tuple[tuple[tuple[int, ...], int], ...]:
    """All rearrangements of (n-1, ..., 1, 0) with the sign sorting them descending."""
    out = []
    for perm in permutations(range(n)):
        exps = tuple(n - 1 - perm[k] for k in range(n))
        inv = sum(1 for a in range(n) for b in range(a + 1, n) if perm[a] > perm[b])
        out.append((exps, -1 if inv & 1 else 1))
    return tuple(out)


def qds_antisym(f: XPoly, n: int) -> RatQ:
    """Reference route; f must have degree <= n-1 and variables within x_1..x_n."""
    if n < 1:
        raise ValueError("need at least one variable")
    vs = f.variables()
    if any(not 1 <= i <= n for i in vs):
        raise ValueError(f"variables {sorted(vs)} escape x_1..x_{n}")
    d = f.degree()
    if d > n - 1:
        raise ValueError(f"degree {d} exceeds n-1 = {n - 1}; the form is only defined there")
    if f.is_zero() or d < n - 1:
        return R_ZERO

    vdict = dict(_staircase_product(n))
    total = R_ZERO
    for exps, coeff in f.terms.items():
        mono = tuple(exps[i] for i in range(1, n + 1))
        for target, sign in _signed_arrangements(n):
            need = tuple(t - m for t, m in zip(target, mono))
            if any(x < 0 for x in need):
                continue
            vc = vdict.get(need)
            if vc is not None:
                total = total + coeff * (vc if sign > 0 else -vc)
    return total


@lru_cache(maxsize=None)
def _descent_class_inv_gf(n: int, S: tuple[int, ...]) -> ZPolyQ:
    """Sum of q^inv over permutations of S_n with descent set exactly S."""
    out = ZPolyQ()
    k = len(S)
    for mask in range(1 << k):
        subset = [S[i] for i in range(k) if mask >> i & 1]
        parts = []
        prev = 0
        for s in subset:
            parts.append(s - prev)
            prev = s
        parts.append(n - prev)
        term = qmultinomial(n, tuple(parts))
        if (k - len(subset)) & 1:
            out = out - term
        else:
            out = out + term
    return out


def qds_monomial(c: "NVector | Iterable[int]", n: int) -> RatQ:
    """Closed formula route for a monomial x^c of degree n-1 in x_1..x_n."""
    c = as_nvector(c)
    if not c.is_zero() and (c.min_index() < 1 or c.max_index() > n):
        raise ValueError(f"support {c.support()} escapes [1, {n}]")
    if c.weight() != n - 1:
        raise ValueError(f"weight {c.weight()} != n-1 = {n - 1}")
    heights = [c.partial_sum(i) - i for i in range(1, n)]
    S = tuple(i for i, h in zip(range(1, n), heights) if h < 0)
    hbar = sum(heights)
    P = _descent_class_inv_gf(n, S)
    if P.is_zero():
        return R_ZERO
    # sum over the class of q^(binom(n-1,2) - inv - hbar), via reversal of P
    exponent = (n - 1) * (n - 2) // 2 - hbar - P.degree()
    out = RatQ(P.reversed()) * qpower(exponent)
    if len(S) & 1:
        out = -out
    return out


def qds_via_top(f: XPoly, n: int) -> RatQ:
    """Top-coefficient route: [n-1]! times the u_[1,n-1] coefficient in the finite quotient."""
    if f.degree() != n - 1:
        raise ValueError(f"degree {f.degree()} != n-1 = {n - 1}")
    return top_coefficient(rho(f, finite(n)), n - 1) * RatQ(qfact(n - 1))
