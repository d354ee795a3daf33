"""Sparse multivariate polynomials over Q(q), variables indexed by Z.

One type serves both alphabets used in this package: the x-variables that
polynomials and Schubert calculus live in, and the z-generators that map
onto the algebra. The consecutive-difference morphisms x_i -> z_i - z_{i-1}
(with boundary conventions for the positive and finite variants) and the
principal specialization x_i -> q^(i-1) are provided here.
"""

from __future__ import annotations

from typing import Callable, Iterable, Mapping

from .exactq import R_ONE, R_ZERO, RatQ, ZPolyQ, qpower
from .klyalg import FULL, KElement, Quotient, reduce_polynomial
from .vectors import NVector, as_nvector


class XPoly:
    """Finite map from exponent vectors to nonzero RatQ coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[NVector, RatQ] | None = None):
        clean: dict[NVector, RatQ] = {}
        if terms:
            for exps, coeff in terms.items():
                if coeff:
                    clean[exps] = coeff
        self.terms = clean

    # -- constructors ---------------------------------------------------

    @staticmethod
    def zero() -> "XPoly":
        return XPoly()

    @staticmethod
    def const(c: RatQ | ZPolyQ | int) -> "XPoly":
        c = c if isinstance(c, RatQ) else RatQ(c)
        return XPoly({NVector(): c})

    @staticmethod
    def var(i: int, power: int = 1, coeff: RatQ | int = 1) -> "XPoly":
        coeff = coeff if isinstance(coeff, RatQ) else RatQ(coeff)
        if power == 0:
            return XPoly.const(coeff)
        return XPoly({NVector.from_items({i: power}): coeff})

    @staticmethod
    def monomial(exps: "NVector | Mapping[int, int]", coeff: RatQ | int = 1) -> "XPoly":
        coeff = coeff if isinstance(coeff, RatQ) else RatQ(coeff)
        return XPoly({as_nvector(exps): coeff})

    @staticmethod
    def linear_sum(indices: Iterable[int]) -> "XPoly":
        """x_{i1} + x_{i2} + ... for the given indices."""
        return XPoly({NVector.from_items({i: 1}): R_ONE for i in indices})

    @staticmethod
    def qx_minus_x(i: int, j: int) -> "XPoly":
        """q x_i - x_j."""
        from .exactq import Q

        return XPoly(
            {
                NVector.from_items({i: 1}): RatQ(Q),
                NVector.from_items({j: 1}): RatQ(-1),
            }
        )

    # -- structure ------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        if not self.terms:
            return -1
        return max(e.weight() for e in self.terms)

    def is_homogeneous(self) -> bool:
        degs = {e.weight() for e in self.terms}
        return len(degs) <= 1

    def variables(self) -> set[int]:
        out: set[int] = set()
        for e in self.terms:
            out.update(e.support())
        return out

    def coefficient(self, exps: "NVector | Mapping[int, int]") -> RatQ:
        return self.terms.get(as_nvector(exps), R_ZERO)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, XPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other: "XPoly") -> "XPoly":
        out = dict(self.terms)
        for exps, coeff in other.terms.items():
            acc = out.get(exps)
            coeff = coeff if acc is None else acc + coeff
            if coeff:
                out[exps] = coeff
            elif acc is not None:
                del out[exps]
        return XPoly(out)

    def __neg__(self) -> "XPoly":
        return XPoly({e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "XPoly") -> "XPoly":
        return self + (-other)

    def __mul__(self, other: "XPoly") -> "XPoly":
        out: dict[NVector, RatQ] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1.added(e2)
                c = c1 * c2
                acc = out.get(e)
                c = c if acc is None else acc + c
                if c:
                    out[e] = c
                elif acc is not None:
                    del out[e]
        return XPoly(out)

    def scale(self, factor: RatQ | ZPolyQ | int) -> "XPoly":
        factor = factor if isinstance(factor, RatQ) else RatQ(factor)
        if not factor:
            return XPoly.zero()
        return XPoly({e: c * factor for e, c in self.terms.items()})

    def __pow__(self, k: int) -> "XPoly":
        if k < 0:
            raise ValueError("negative power")
        out = XPoly.const(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- substitutions ----------------------------------------------------

    def substitute(self, image: Callable[[int], "XPoly"]) -> "XPoly":
        """Algebra morphism determined by variable images."""
        cache: dict[tuple[int, int], XPoly] = {}
        out = XPoly.zero()
        for exps, coeff in self.terms.items():
            term = XPoly.const(coeff)
            for i, p in exps.items():
                key = (i, p)
                pw = cache.get(key)
                if pw is None:
                    pw = image(i) ** p
                    cache[key] = pw
                term = term * pw
            out = out + term
        return out

    def reindex(self, mapping: Callable[[int], int]) -> "XPoly":
        out: dict[NVector, RatQ] = {}
        for exps, coeff in self.terms.items():
            e = NVector.from_items({mapping(i): p for i, p in exps.items()})
            if e in out:
                raise ValueError("reindex collision")
            out[e] = coeff
        return XPoly(out)

    def swap_vars(self, i: int, j: int) -> "XPoly":
        def m(k: int) -> int:
            if k == i:
                return j
            if k == j:
                return i
            return k

        out: dict[NVector, RatQ] = {}
        for exps, coeff in self.terms.items():
            e = NVector.from_items({m(k): p for k, p in exps.items()})
            out[e] = coeff
        return XPoly(out)

    def eval_scalars(self, value: Callable[[int], RatQ]) -> RatQ:
        """Substitute a scalar for every variable."""
        total = R_ZERO
        cache: dict[tuple[int, int], RatQ] = {}
        for exps, coeff in self.terms.items():
            prod = coeff
            for i, p in exps.items():
                key = (i, p)
                pw = cache.get(key)
                if pw is None:
                    v = value(i)
                    pw = v
                    for _ in range(p - 1):
                        pw = pw * v
                    cache[key] = pw
                prod = prod * pw
            total = total + prod
        return total

    def to_json(self) -> list[dict]:
        out = []
        for exps, coeff in sorted(self.terms.items(), key=lambda t: sorted(t[0].items())):
            out.append({"exps": {str(i): p for i, p in exps.items()}, "coeff": coeff.to_json()})
        return out

    def __repr__(self) -> str:
        if self.is_zero():
            return "XPoly(0)"
        parts = []
        for exps, coeff in sorted(self.terms.items(), key=lambda t: sorted(t[0].items())):
            mono = "*".join(f"x{i}^{p}" if p > 1 else f"x{i}" for i, p in exps.items()) or "1"
            parts.append(f"({coeff})*{mono}")
        return "XPoly(" + " + ".join(parts) + ")"


# -- builders and morphisms -----------------------------------------------


def build_yc(c: "NVector | Iterable[int]") -> XPoly:
    """prod_i (x_1 + ... + x_i)^(c_i), expanded; support must be positive."""
    c = as_nvector(c)
    if not c.is_zero() and c.min_index() < 1:
        raise ValueError(f"y_c needs support in Z_+, got {c.support()}")
    out = XPoly.const(1)
    for i, p in c.items():
        out = out * (XPoly.linear_sum(range(1, i + 1)) ** p)
    return out


def delta(f: XPoly, variant: Quotient = FULL) -> XPoly:
    """The morphism x_i -> z_i - z_{i-1} with the variant's boundary convention.

    The positive variant sets z_0 = 0 (so x_1 -> z_1) and requires variables
    with index >= 1; the finite-n variant additionally sets z_n = 0 (so
    x_n -> -z_{n-1}) and requires variables within x_1..x_n.
    """
    vs = f.variables()
    if variant.kind == "positive" and any(i < 1 for i in vs):
        raise ValueError("positive variant needs variables with index >= 1")
    if variant.kind == "finite" and any(not 1 <= i <= variant.n for i in vs):
        raise ValueError(f"finite({variant.n}) variant needs variables within x_1..x_{variant.n}")

    def image(i: int) -> XPoly:
        lo = XPoly.var(i - 1, coeff=RatQ(-1))
        hi = XPoly.var(i)
        if variant.kind == "full":
            return hi + lo
        if i == 1:
            return hi
        if variant.kind == "finite" and i == variant.n:
            return lo
        return hi + lo

    return f.substitute(image)


def rho(f: XPoly, variant: Quotient = FULL) -> KElement:
    """Project into the algebra: reduce the image of the difference morphism."""
    return reduce_polynomial(delta(f, variant), variant)


def principal_specialize(f: XPoly) -> RatQ:
    """Substitute x_i = q^(i-1); variable indices must be positive."""
    if any(i < 1 for i in f.variables()):
        raise ValueError("principal specialization needs variables with index >= 1")
    return f.eval_scalars(lambda i: qpower(i - 1))
