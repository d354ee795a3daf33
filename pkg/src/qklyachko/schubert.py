"""Permutations, reduced words, Schubert polynomials and their algebra images.

Reduced words are enumerated by peeling right descents, so every word
arrives exactly once with its content and comaj statistics. Schubert
polynomials come from two independent routes: divided differences walking
down from the staircase monomial, and the compatible-sequence (pipe dream)
expansion over reduced words. On top of these sit the identity checkers:
the squarefree-basis lift of the reduced word identity, the scalars a_w(q)
with their two routes, cyclic shift sums, the quasiindecomposable
generating function, and the Grassmannian special case via tableaux.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations as iter_permutations
from typing import Iterable, Iterator, Sequence

from .exactq import ONE, R_ZERO, RatQ, ZPolyQ, qfact, qint, qpoch, qpower
from .klyalg import (
    POSITIVE,
    KElement,
    reduce_polynomial,
)
from .polyring import XPoly, delta, principal_specialize, rho
from .remixed import remixed_eulerian
from .vectors import NVector, as_nvector


class Permutation:
    """A permutation in one-line notation (values 1..n)."""

    __slots__ = ("oneline",)

    def __init__(self, oneline: Iterable[int]):
        ol = tuple(oneline)
        if sorted(ol) != list(range(1, len(ol) + 1)):
            raise ValueError(f"{ol} is not a permutation of 1..{len(ol)}")
        self.oneline = ol

    @staticmethod
    def identity(n: int) -> "Permutation":
        return Permutation(range(1, n + 1))

    @staticmethod
    def longest(n: int) -> "Permutation":
        return Permutation(range(n, 0, -1))

    @staticmethod
    def from_code(code: Sequence[int]) -> "Permutation":
        n = len(code)
        remaining = list(range(1, n + 1))
        out = []
        for c in code:
            out.append(remaining.pop(c))
        return Permutation(out)

    @property
    def n(self) -> int:
        return len(self.oneline)

    def __call__(self, i: int) -> int:
        return self.oneline[i - 1]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Permutation):
            return NotImplemented
        return self.trimmed().oneline == other.trimmed().oneline

    def __hash__(self) -> int:
        return hash(self.trimmed().oneline)

    def __repr__(self) -> str:
        return f"Permutation({''.join(map(str, self.oneline)) if self.n < 10 else self.oneline})"

    def trimmed(self) -> "Permutation":
        """Drop trailing fixed points (canonical key; identity trims to S_1)."""
        ol = list(self.oneline)
        while len(ol) > 1 and ol[-1] == len(ol):
            ol.pop()
        return Permutation(ol)

    def padded(self, n: int) -> "Permutation":
        if n < self.n:
            raise ValueError("cannot pad downward")
        return Permutation(self.oneline + tuple(range(self.n + 1, n + 1)))

    def length(self) -> int:
        ol = self.oneline
        return sum(1 for i in range(len(ol)) for j in range(i + 1, len(ol)) if ol[i] > ol[j])

    def descents(self) -> list[int]:
        """Right descents: positions i with w(i) > w(i+1), 1-based."""
        ol = self.oneline
        return [i + 1 for i in range(len(ol) - 1) if ol[i] > ol[i + 1]]

    def code(self) -> tuple[int, ...]:
        ol = self.oneline
        return tuple(
            sum(1 for j in range(i + 1, len(ol)) if ol[i] > ol[j]) for i in range(len(ol))
        )

    def inverse(self) -> "Permutation":
        out = [0] * self.n
        for i, v in enumerate(self.oneline, start=1):
            out[v - 1] = i
        return Permutation(out)

    def right_mult_s(self, i: int) -> "Permutation":
        """w s_i: swap the entries in positions i, i+1."""
        if not 1 <= i <= self.n - 1:
            raise ValueError(f"s_{i} undefined in S_{self.n}")
        ol = list(self.oneline)
        ol[i - 1], ol[i] = ol[i], ol[i - 1]
        return Permutation(ol)

    def times(self, other: "Permutation") -> "Permutation":
        """Direct sum u x v acting on consecutive blocks."""
        a = self.n
        return Permutation(self.oneline + tuple(v + a for v in other.oneline))

    def support(self) -> tuple[int, ...]:
        """Letters occurring in reduced words: i where the prefix [1..i] is not preserved."""
        out = []
        mx = 0
        for i in range(1, self.n):
            mx = max(mx, self.oneline[i - 1])
            if mx > i:
                out.append(i)
        return tuple(out)

    def indecomposable_blocks(self) -> list["Permutation"]:
        """The factors of the unique factorization into direct summands."""
        blocks = []
        start = 0
        mx = 0
        for i, v in enumerate(self.oneline, start=1):
            mx = max(mx, v)
            if mx == i:
                chunk = self.oneline[start:i]
                blocks.append(Permutation(tuple(v - start for v in chunk)))
                start = i
        return blocks

    def is_grassmannian(self) -> bool:
        return len(self.descents()) == 1

    def shape(self) -> tuple[int, ...]:
        """Sorted nonzero code entries, a partition."""
        return tuple(sorted((c for c in self.code() if c), reverse=True))


def all_permutations(n: int) -> Iterator[Permutation]:
    for ol in iter_permutations(range(1, n + 1)):
        yield Permutation(ol)


def permutations_of_length(n: int, length: int) -> Iterator[Permutation]:
    for w in all_permutations(n):
        if w.length() == length:
            yield w


@dataclass(frozen=True)
class ReducedWord:
    """A reduced word a_1..a_l of the permutation it was generated from."""

    letters: tuple[int, ...]

    def comaj(self) -> int:
        a = self.letters
        return sum(j for j in range(1, len(a)) if a[j - 1] < a[j])

    def content(self) -> NVector:
        items: dict[int, int] = {}
        for a in self.letters:
            items[a] = items.get(a, 0) + 1
        return NVector.from_items(items)

    def permutation(self, n: int | None = None) -> Permutation:
        if n is None:
            n = max(self.letters, default=0) + 1
        w = Permutation.identity(n)
        for a in self.letters:
            w = w.right_mult_s(a)
        return w


def reduced_words(w: Permutation) -> Iterator[ReducedWord]:
    """Enumerate Red(w) exactly once each, by recursive peeling of descents."""

    def rec(v: Permutation) -> Iterator[tuple[int, ...]]:
        ds = v.descents()
        if not ds:
            yield ()
            return
        for i in ds:
            for prefix in rec(v.right_mult_s(i)):
                yield prefix + (i,)

    for letters in rec(w):
        yield ReducedWord(letters)


# -- Schubert polynomials ------------------------------------------------

_SCHUBERT_MEMO: dict[tuple[int, ...], XPoly] = {}


def divided_difference(f: XPoly, i: int) -> XPoly:
    """(f - s_i f) / (x_i - x_{i+1}), an exact division."""
    if i < 1:
        raise ValueError("divided difference index must be >= 1")
    g = f - f.swap_vars(i, i + 1)
    if g.is_zero():
        return XPoly.zero()
    # long division in x_i; the i <-> i+1 antisymmetry of g makes it exact
    by_deg: dict[int, dict[NVector, RatQ]] = {}
    for exps, coeff in g.terms.items():
        k = exps[i]
        rest = exps.bumped(i, -k) if k else exps
        by_deg.setdefault(k, {})[rest] = coeff
    top = max(by_deg)
    quo = XPoly.zero()
    carry = XPoly.zero()  # h_k while descending
    xi1 = XPoly.var(i + 1)
    for k in range(top, 0, -1):
        level = XPoly(by_deg.get(k, {}))
        hk = level + xi1 * carry
        quo = quo + hk * XPoly.var(i, power=k - 1)
        carry = hk
    rem = XPoly(by_deg.get(0, {})) + xi1 * carry
    if not rem.is_zero():
        raise ValueError("inexact divided difference: input was not antisymmetrized correctly")
    return quo


def schubert_poly(w: Permutation, route: str = "divdiff") -> XPoly:
    """Schubert polynomial, homogeneous of degree l(w); both routes agree."""
    if route == "divdiff":
        return _schubert_divdiff(w.trimmed())
    if route == "pipedream":
        return _schubert_pipedream(w)
    raise ValueError(f"unknown route {route!r}")


def _schubert_divdiff(w: Permutation) -> XPoly:
    key = w.oneline
    cached = _SCHUBERT_MEMO.get(key)
    if cached is not None:
        return cached
    n = w.n
    if w.length() == n * (n - 1) // 2:
        out = XPoly.monomial({i: n - i for i in range(1, n)})
    else:
        i = next(i for i in range(1, n) if w(i) < w(i + 1))
        out = divided_difference(_schubert_divdiff(w.right_mult_s(i)), i)
    _SCHUBERT_MEMO[key] = out
    return out


def _schubert_pipedream(w: Permutation) -> XPoly:
    out = XPoly.zero()
    for word in reduced_words(w):
        for seq in _compatible_sequences(word.letters):
            items: dict[int, int] = {}
            for i in seq:
                items[i] = items.get(i, 0) + 1
            out = out + XPoly.monomial(items)
    return out


def _compatible_sequences(a: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    """Weakly increasing i with i_j <= a_j, strictly rising where a does."""
    l = len(a)
    if l == 0:
        yield ()
        return

    def rec(j: int, prev: int) -> Iterator[tuple[int, ...]]:
        if j == l:
            yield ()
            return
        lo = prev + 1 if (j > 0 and a[j - 1] < a[j]) else prev
        for i in range(max(lo, 1), a[j] + 1):
            for rest in rec(j + 1, i):
                yield (i,) + rest

    yield from rec(0, 1)


def principal_spec_bjs(w: Permutation) -> ZPolyQ:
    """Schubert principal specialization x_i = q^(i-1), summed over pipe dreams."""
    total = ZPolyQ()
    for word in reduced_words(w):
        for seq in _compatible_sequences(word.letters):
            total = total + ZPolyQ.monomial(1, sum(i - 1 for i in seq))
    return total


# -- the reduced word identity in the algebra ------------------------------


@dataclass
class IdentityReport:
    lhs: KElement
    rhs: KElement
    equal: bool


def km_identity_check(w: Permutation) -> IdentityReport:
    """Compare the algebra image of the Schubert polynomial with the word sum.

    Both sides live in the positive quotient: the left side is the image of
    the Schubert polynomial under the difference morphism, the right side is
    (1/[l]!) sum over reduced words of q^comaj u_{a_1}...u_{a_l}.
    """
    ell = w.length()
    lhs = rho(schubert_poly(w), POSITIVE)
    word_poly = XPoly.zero()
    for word in reduced_words(w):
        word_poly = word_poly + XPoly.monomial(word.content(), RatQ(ZPolyQ.monomial(1, word.comaj())))
    rhs = reduce_polynomial(word_poly, POSITIVE).scale(RatQ(ONE, qfact(ell)))
    return IdentityReport(lhs=lhs, rhs=rhs, equal=lhs == rhs)


# -- the scalars a_w(q) ----------------------------------------------------


def a_w(w: Permutation, route: str = "words") -> ZPolyQ:
    """a_w(q) for w of length r in S_(r+1); nonnegative integer coefficients.

    Route "words" averages remixed Eulerian numbers over reduced words;
    route "qds" divided-symmetrizes the Schubert polynomial directly.
    """
    w = w.trimmed()
    r = w.length()
    if w.n > r + 1:
        raise ValueError(f"need length {w.n - 1} in S_{w.n}, got length {r}")
    if route == "words":
        total = ZPolyQ()
        for word in reduced_words(w):
            c = word.content()
            total = total + remixed_eulerian(c.to_tuple(1, r)) * ZPolyQ.monomial(1, word.comaj())
        out = total.divexact(qfact(r))
    elif route == "qds":
        from .qds import qds_antisym

        val = qds_antisym(schubert_poly(w), r + 1)
        out = val.as_poly()
    else:
        raise ValueError(f"unknown route {route!r}")
    if not out.has_nonneg_coeffs():
        raise AssertionError(f"a_w({w}) left N[q]: {out}")
    return out


def comaj_generating_function(w: Permutation) -> ZPolyQ:
    total = ZPolyQ()
    for word in reduced_words(w):
        total = total + ZPolyQ.monomial(1, word.comaj())
    return total


@dataclass
class CyclicShiftReport:
    shifts: list[Permutation]
    values: list[ZPolyQ]
    total: ZPolyQ
    comaj_gf: ZPolyQ
    equal: bool


def cyclic_shift_check(w: Permutation) -> CyclicShiftReport:
    """Sum of a_w over the cyclic shifts of the direct-sum factorization.

    The sum must reproduce the comaj generating function over Red(w).
    """
    w = w.trimmed()
    blocks = w.indecomposable_blocks()
    k = len(blocks)
    shifts = []
    for i in range(k):
        rotated = blocks[i:] + blocks[:i]
        out = rotated[0]
        for b in rotated[1:]:
            out = out.times(b)
        shifts.append(out)
    values = [a_w(s) for s in shifts]
    total = ZPolyQ()
    for v in values:
        total = total + v
    gf = comaj_generating_function(w)
    return CyclicShiftReport(shifts=shifts, values=values, total=total, comaj_gf=gf, equal=total == gf)


def quasiindec_numerator(v: Permutation, order: int | None = None) -> tuple[ZPolyQ, ...]:
    """The a-values of 1^m x v x 1^(l-p-m) for v indecomposable in S_(p+1) of length l.

    Verifies that they form the numerator of the principal-specialization
    generating function: sum_j S_(1^j x v)(1, q, ...) t^j times (t;q)_(l+1)
    agrees with sum_m a_... t^m through order t^(l-p+3) by default.
    """
    v = v.trimmed()
    p = v.n - 1
    ell = v.length()
    if len(v.indecomposable_blocks()) != 1:
        raise ValueError(f"{v} is decomposable")
    values = []
    for m in range(ell - p + 1):
        shifted = Permutation.identity(m).times(v) if m else v
        tail = ell - p - m
        w = shifted.times(Permutation.identity(tail)) if tail else shifted
        values.append(a_w(w))
    out = tuple(values)

    if order is None:
        order = ell - p + 3
    nu = [principal_spec_bjs(Permutation.identity(j).times(v) if j else v) for j in range(order + 1)]
    poch = qpoch(ell + 1)
    for j in range(order + 1):
        acc = ZPolyQ()
        for i in range(min(j, ell + 1) + 1):
            acc = acc + poch[i] * nu[j - i]
        expected = out[j] if j <= ell - p else ZPolyQ()
        if acc != expected:
            raise AssertionError(f"quasiindecomposable generating identity fails at t^{j}")
    return out


# -- Grassmannian permutations and tableaux ---------------------------------


def standard_tableaux_maj(shape: Sequence[int]) -> dict[int, ZPolyQ]:
    """Major-index generating functions of SYT(shape), keyed by descent count."""
    shape = tuple(shape)
    if any(shape[i] < shape[i + 1] for i in range(len(shape) - 1)) or any(
        p <= 0 for p in shape
    ):
        raise ValueError(f"{shape} is not a partition")
    total = sum(shape)
    rows = len(shape)
    gf: dict[int, ZPolyQ] = {}
    row_of = [0] * (total + 1)
    filled = [0] * rows

    def rec(val: int) -> None:
        if val > total:
            descents = [i for i in range(1, total) if row_of[i + 1] > row_of[i]]
            d = len(descents)
            maj = sum(descents)
            gf[d] = gf.get(d, ZPolyQ()) + ZPolyQ.monomial(1, maj)
            return
        for r in range(rows):
            if filled[r] < shape[r] and (r == 0 or filled[r - 1] > filled[r]):
                filled[r] += 1
                row_of[val] = r
                rec(val + 1)
                filled[r] -= 1

    rec(1)
    return gf


def grassmannian_permutation(shape: Sequence[int], m: int) -> Permutation:
    """The m-Grassmannian permutation with the given shape."""
    shape = tuple(shape)
    if len(shape) > m:
        raise ValueError(f"shape {shape} too long for descent position {m}")
    n = m + (shape[0] if shape else 0)
    code = [0] * n
    for i, part in enumerate(shape):
        code[m - 1 - i] = part
    return Permutation.from_code(code)


def grassmannian_aw(shape: Sequence[int], m: int) -> ZPolyQ:
    """a_w for the m-Grassmannian w of this shape: maj over SYT with m-1 descents."""
    gf = standard_tableaux_maj(shape)
    return gf.get(m - 1, ZPolyQ())


def grassmannian_content_vector(shape: Sequence[int], m: int) -> tuple[int, ...]:
    """c with c_i the number of cells of content i - m, over the window [1, |shape|]."""
    r = sum(shape)
    counts = [0] * r
    for row, part in enumerate(shape, start=1):
        for col in range(1, part + 1):
            i = (col - row) + m
            if not 1 <= i <= r:
                raise ValueError(f"cell content {col - row} escapes the window for m={m}")
            counts[i - 1] += 1
    return tuple(counts)


def hook_lengths(shape: Sequence[int]) -> list[int]:
    shape = tuple(shape)
    conj = [sum(1 for p in shape if p > i) for i in range(shape[0])] if shape else []
    out = []
    for i, part in enumerate(shape, start=1):
        for j in range(1, part + 1):
            out.append(part + conj[j - 1] - i - j + 1)
    return out


def hook_Ac(shape: Sequence[int], m: int) -> ZPolyQ:
    """A_c for the Grassmannian content vector, by the hook-length product formula."""
    aw = grassmannian_aw(shape, m)
    prod = aw
    for h in hook_lengths(shape):
        prod = prod * qint(h)
    n_stat = sum(i * part for i, part in enumerate(shape))
    if any(c != 0 for c in prod.coeffs[:n_stat]):
        raise AssertionError("hook formula product is not divisible by the q-power")
    return ZPolyQ(prod.coeffs[n_stat:])


# -- Lukasiewicz classification --------------------------------------------


def is_luk_vector(c: "NVector | Sequence[int]") -> bool:
    """Partial sums at least j for every j = 1..|c| (forces c_1 >= 1)."""
    c = as_nvector(c)
    if c.is_zero():
        return True
    if c.min_index() < 1:
        return False
    run = 0
    for j in range(1, c.weight() + 1):
        run += c[j]
        if run < j:
            return False
    return True


def is_quasi_luk_vector(c: "NVector | Sequence[int]") -> bool:
    """Partial sums at least j on the window from the first support gap to the top."""
    c = as_nvector(c)
    if c.is_zero():
        return True
    if c.min_index() < 1:
        return False
    m_c = next(j for j in range(1, c.max_index() + 1) if c[j] > 0 and c[j + 1] == 0)
    run = c.partial_sum(m_c)
    for j in range(m_c, c.max_index() + 1):
        if j > m_c:
            run += c[j]
        if run < j:
            return False
    return True


def classify_permutation(w: Permutation) -> str:
    """One of "lukasiewicz", "quasi_lukasiewicz", "neither" (any word suffices)."""
    word = next(iter(reduced_words(w)), None)
    if word is None or not word.letters:
        return "lukasiewicz"
    c = word.content()
    if is_luk_vector(c):
        return "lukasiewicz"
    if is_quasi_luk_vector(c):
        return "quasi_lukasiewicz"
    return "neither"
