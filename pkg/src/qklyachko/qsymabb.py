"""Fundamental quasisymmetric polynomials, the ABB basis, and the interval property.

The fundamental polynomial F_alpha(x_1..x_m) sums monomials over weakly
increasing index tuples with strict rises at the descent set of alpha. Its
image in the positive quotient collapses to a single squarefree interval
term, which drives the specialization identities checked here. The ABB
monomials index the quotient by the positive quasisymmetric ideal; on the
interesting degree they evaluate under divided symmetrization to powers of
q. The interval property (strong over the full algebra, weak over the
positive one) classifies elements whose squarefree support consists only of
integer intervals, with a generating function identity attached to
compatible families of such polynomials.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .exactq import ONE, R_ZERO, RatQ, ZPolyQ, qbinom, qfact, qint, qpoch, qpower
from .klyalg import FULL, POSITIVE, KElement, Quotient, reduce_polynomial
from .polyring import XPoly, build_yc, delta, principal_specialize, rho
from .qds import qds_antisym, qds_monomial
from .vectors import (
    NVector,
    as_nvector,
    interval,
    subset_is_interval,
)


def compositions(total: int, max_parts: int | None = None) -> Iterator[tuple[int, ...]]:
    """Strong compositions of `total` (optionally bounded length)."""
    if total == 0:
        yield ()
        return
    for first in range(1, total + 1):
        if max_parts == 0:
            return
        for rest in compositions(total - first, None if max_parts is None else max_parts - 1):
            yield (first,) + rest


def descent_set(alpha: Sequence[int]) -> frozenset[int]:
    out = set()
    acc = 0
    for part in alpha[:-1]:
        acc += part
        out.add(acc)
    return frozenset(out)


def coarea(alpha: Sequence[int]) -> int:
    """n(alpha) = sum (i-1) alpha_i."""
    return sum(i * part for i, part in enumerate(alpha))


def fundamental_poly(alpha: Sequence[int], m: int) -> XPoly:
    """F_alpha(x_1..x_m); zero when alpha has more parts than m."""
    if any(p < 1 for p in alpha):
        raise ValueError(f"need a strong composition, got {alpha}")
    if m < 0:
        raise ValueError("m must be nonnegative")
    if len(alpha) > m:
        return XPoly.zero()
    d = sum(alpha)
    if d == 0:
        return XPoly.const(1)
    strict = descent_set(alpha)
    out = XPoly.zero()

    def rec(pos: int, lo: int, chosen: dict[int, int]) -> None:
        nonlocal out
        if pos == d:
            out = out + XPoly.monomial(dict(chosen))
            return
        start = lo + 1 if pos in strict else lo
        for i in range(start, m + 1):
            chosen[i] = chosen.get(i, 0) + 1
            rec(pos + 1, i, chosen)
            chosen[i] -= 1
            if not chosen[i]:
                del chosen[i]

    rec(0, 1, {})
    return out


def rho_fundamental_expansion(alpha: Sequence[int], m: int) -> KElement:
    """Image of F_alpha(x_1..x_m) in the positive quotient, by direct reduction.

    Asserts the closed form: the single term (q^n(alpha) / [r]!) u_I for the
    interval I = [1, r] shifted by m - l(alpha).
    """
    f = fundamental_poly(alpha, m)
    if f.is_zero():
        return KElement.zero(POSITIVE)
    out = rho(f, POSITIVE)
    r = sum(alpha)
    shift = m - len(alpha)
    expected = KElement(
        {interval(1 + shift, r + shift): RatQ(ZPolyQ.monomial(1, coarea(alpha)), qfact(r))},
        POSITIVE,
    )
    if out != expected:
        raise AssertionError(f"fundamental expansion mismatch for alpha={alpha}, m={m}")
    return out


def qds_fundamental(alpha: Sequence[int], m: int, n: int) -> RatQ:
    """Divided symmetrization of F_alpha(x_1..x_m) over n variables.

    For alpha of weight n-1 and l(alpha) <= m <= n this is q^n(alpha) when
    m = l(alpha) and 0 otherwise; the closed value is cross-checked against
    the antisymmetrization route.
    """
    if sum(alpha) != n - 1:
        raise ValueError(f"alpha must have weight n-1 = {n - 1}")
    if not len(alpha) <= m <= n:
        raise ValueError(f"need l(alpha) <= m <= n, got m={m}")
    value = qds_antisym(fundamental_poly(alpha, m), n)
    expected = qpower(coarea(alpha)) if m == len(alpha) else R_ZERO
    if value != expected:
        raise AssertionError(f"fundamental qDS mismatch for alpha={alpha}, m={m}, n={n}")
    return value


# -- ABB monomials -----------------------------------------------------------


def abb_membership(c: "NVector | Sequence[int]", n: int) -> bool:
    """Tail condition sum_(j>=i) c_j <= n-i for all 1 <= i <= n."""
    v = as_nvector(c)
    if not v.is_zero() and (v.min_index() < 1 or v.max_index() > n):
        raise ValueError(f"support {v.support()} escapes [1, {n}]")
    tail = 0
    for i in range(n, 0, -1):
        tail += v[i]
        if tail > n - i:
            return False
    return True


def abb_set(n: int) -> list[tuple[int, ...]]:
    """All ABB exponent vectors for n variables, as length-n tuples."""
    out: list[tuple[int, ...]] = []

    def rec(i: int, prefix: list[int], budget_used: int) -> None:
        # entries from position n down to i+1 are chosen; tail sums bounded
        if i == 0:
            out.append(tuple(prefix))
            return
        for ci in range(0, n - i - budget_used + 1):
            rec(i - 1, [ci] + prefix, budget_used + ci)

    rec(n, [], 0)
    return sorted(out)


def abb_qds(c: "NVector | Sequence[int]", n: int) -> RatQ:
    """qDS of an ABB monomial of degree n-1: q to its coarea statistic.

    Cross-checked against the monomial formula route.
    """
    v = as_nvector(c)
    if not abb_membership(v, n):
        raise ValueError(f"{v} is not an ABB vector for n={n}")
    if v.weight() != n - 1:
        raise ValueError(f"need weight n-1 = {n - 1}")
    value = qds_monomial(v, n)
    expected = qpower(v.coarea_stat())
    if value != expected:
        raise AssertionError(f"ABB qDS mismatch for c={v}, n={n}")
    return value


# -- the interval property ---------------------------------------------------


@dataclass
class IntervalReport:
    classification: str  # "SIP" | "WIP" | "neither"
    witness: tuple[int, ...] | None
    element: KElement


def interval_property(f: XPoly, variant: Quotient, *, from_x: bool = False) -> IntervalReport:
    """Classify the squarefree expansion of a polynomial's algebra image.

    ``f`` is a polynomial in the z-generators, or in the x-variables when
    ``from_x`` is set (the image under the difference morphism is classified,
    matching how Schubert polynomials are treated). The full variant decides
    the strong property, the positive variant the weak one; the first
    non-interval subset in lexicographic order is reported as witness.
    """
    if variant.kind not in ("full", "positive"):
        raise ValueError("interval property is defined over the full or positive algebra")
    g = delta(f, variant) if from_x else f
    element = reduce_polynomial(g, variant)
    for subset in sorted(element.terms):
        if not subset_is_interval(subset):
            label = "neither"
            return IntervalReport(classification=label, witness=subset, element=element)
    label = "SIP" if variant.kind == "full" else "WIP"
    return IntervalReport(classification=label, witness=None, element=element)


def wip_coefficients(f: XPoly, d: int) -> list[tuple[int, RatQ]]:
    """Interval coefficients f_a of a weakly-interval homogeneous z-polynomial.

    Returns the pairs (a, f_a) with the image equal to sum f_a u_[a, a+d-1];
    verifies the specialization identity
        f([1], [2], ...) = sum_a f_a qbinom(a+d-1, d)
    before returning. Raises if f is not WIP of degree d.
    """
    if f.is_zero():
        return []
    if not f.is_homogeneous() or f.degree() != d:
        raise ValueError(f"need a homogeneous polynomial of degree {d}")
    report = interval_property(f, POSITIVE)
    if report.classification != "WIP":
        raise ValueError(f"polynomial is not WIP; witness {report.witness}")
    out: list[tuple[int, RatQ]] = []
    for subset, coeff in report.element.sorted_terms():
        if len(subset) != d:
            raise AssertionError("inhomogeneous expansion of a homogeneous input")
        out.append((subset[0], coeff))
    lhs = f.eval_scalars(lambda i: RatQ(qint(i)) if i >= 1 else R_ZERO)
    rhs = R_ZERO
    for a, coeff in out:
        rhs = rhs + coeff * RatQ(qbinom(a + d - 1, d))
    if lhs != rhs:
        raise AssertionError("interval coefficients fail the specialization identity")
    return out


@dataclass
class GFReport:
    family: str
    numerator: list[RatQ]
    order: int
    equal: bool


def gf_identity_check(family: str, parameter, order: int = 8) -> GFReport:
    """Check sum_i f_i(1, q, ...) t^i (t;q)_(d+1) = sum_(j<=d) <f_j> t^j to t^order.

    Families: "connected" takes a strong composition and uses the prefix-sum
    products; "fundamental" takes a composition and uses F_alpha in a growing
    number of variables; "schubert" takes an indecomposable permutation and
    delegates to the quasiindecomposable machinery.
    """
    if family == "connected":
        c = tuple(parameter)
        if not c or any(p <= 0 for p in c):
            raise ValueError("connected family needs a strong composition")
        d = sum(c)
        series = [_principal_spec_shifted_yc(c, i) for i in range(order + 1)]
        numer = [qds_antisym(build_yc((0,) * j + c), d + 1) for j in range(d - len(c) + 1)]
    elif family == "fundamental":
        alpha = tuple(parameter)
        if any(p < 1 for p in alpha):
            raise ValueError("fundamental family needs a strong composition")
        d = sum(alpha)
        k = len(alpha)
        series = [principal_specialize(fundamental_poly(alpha, k + i)) for i in range(order + 1)]
        numer = [qds_antisym(fundamental_poly(alpha, k + j), d + 1) for j in range(d + 1) if k + j <= d + 1]
    elif family == "schubert":
        from .schubert import Permutation, a_w, principal_spec_bjs, quasiindec_numerator

        v: Permutation = parameter.trimmed()
        d = v.length()
        p = v.n - 1
        series = [
            RatQ(principal_spec_bjs(Permutation.identity(i).times(v) if i else v))
            for i in range(order + 1)
        ]
        numer = [RatQ(x) for x in quasiindec_numerator(v, order=order)]
    else:
        raise ValueError(f"unknown family {family!r}")

    poch = qpoch(d + 1)
    ok = True
    for j in range(order + 1):
        acc = R_ZERO
        for i in range(min(j, d + 1) + 1):
            acc = acc + RatQ(poch[i]) * series[j - i]
        expected = numer[j] if j < len(numer) else R_ZERO
        if acc != expected:
            ok = False
            break
    return GFReport(family=family, numerator=list(numer), order=order, equal=ok)


def _principal_spec_shifted_yc(c: tuple[int, ...], i: int) -> RatQ:
    """(x_1+...+x_(i+1))^(c_1) ... evaluated at x_t = q^(t-1): prod [i+j]^(c_j)."""
    prod = ONE
    for j, cj in enumerate(c, start=1):
        prod = prod * qint(i + j) ** cj
    return RatQ(prod)
