"""Monte Carlo simulator for the jumping-particle process on the integer line.

A configuration holds c_i particles at site i. While some site holds at
least two particles, the top particle of a chosen such site hops left with
probability q/(1+q) and right with probability 1/(1+q), until every site
holds at most one. The stabilization probabilities are exactly the
squarefree-basis coefficients of u^c, which is what ``compare_exact``
validates at numeric q.

Trials run vectorized across a numpy state matrix. Randomness comes from a
counter-based Philox generator keyed by the seed; row t of the draw blocks
is the private stream of trial t, so results are bitwise reproducible and
independent of how/whether other trials are still running.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .klyalg import FULL, reduce_monomial
from .vectors import NVector, SubsetZ, as_nvector

MAX_STEPS_PER_TRIAL = 10**6
_BLOCK = 64  # uniforms drawn per trial per refill


@dataclass
class SimParams:
    qval: float
    trials: int
    seed: int
    pivot_policy: str = "leftmost"

    def __post_init__(self):
        if not self.qval > 0:
            raise ValueError("qval must be positive")
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        if self.pivot_policy not in ("leftmost", "rightmost", "random"):
            raise ValueError(f"unknown pivot policy {self.pivot_policy!r}")


@dataclass
class SiteRow:
    subset: SubsetZ
    exact: float
    empirical: float
    count: int
    zscore: float
    flagged: bool


@dataclass
class ComparisonReport:
    params: SimParams
    config: tuple[int, ...]
    rows: list[SiteRow] = field(default_factory=list)

    @property
    def all_within_tolerance(self) -> bool:
        return not any(r.flagged for r in self.rows)


def simulate(c: "NVector | Sequence[int]", params: SimParams) -> dict[SubsetZ, Fraction]:
    """Run the process to stabilization for every trial; exact empirical frequencies.

    Deterministic for fixed (config, params). Raises if any trial exceeds the
    hard step cap, which signals pathological parameters.
    """
    counts = simulate_counts(c, params)
    return {s: Fraction(k, params.trials) for s, k in counts.items()}


def simulate_counts(c: "NVector | Sequence[int]", params: SimParams) -> dict[SubsetZ, int]:
    v = as_nvector(c)
    if v.is_zero():
        return {(): params.trials}
    total = v.weight()
    lo = v.min_index() - total - 1
    hi = v.max_index() + total + 1
    width = hi - lo + 1
    start = np.zeros(width, dtype=np.int16)
    for i, k in v.items():
        start[i - lo] = k

    trials = params.trials
    state = np.tile(start, (trials, 1))
    q = params.qval
    p_left = q / (1.0 + q)

    bitgen = np.random.Philox(key=params.seed)
    gen = np.random.Generator(bitgen)
    blocks = [gen.random((trials, _BLOCK))]
    cursor = np.zeros(trials, dtype=np.int64)
    steps = np.zeros(trials, dtype=np.int64)
    random_policy = params.pivot_policy == "random"

    def draw(active: np.ndarray) -> np.ndarray:
        """Next uniform for each active trial, from its own row stream."""
        need = cursor[active]
        while need.max(initial=-1) >= len(blocks) * _BLOCK:
            blocks.append(gen.random((trials, _BLOCK)))
        flat_rows = np.nonzero(active)[0]
        out = np.empty(len(flat_rows))
        for b_idx in range(len(blocks)):
            in_block = (need >= b_idx * _BLOCK) & (need < (b_idx + 1) * _BLOCK)
            if in_block.any():
                rows = flat_rows[in_block]
                cols = need[in_block] - b_idx * _BLOCK
                out[in_block] = blocks[b_idx][rows, cols]
        cursor[active] += 1
        return out

    unstable = state >= 2
    active = unstable.any(axis=1)
    while active.any():
        rows = np.nonzero(active)[0]
        sub = unstable[rows]
        if params.pivot_policy == "leftmost":
            pivot = sub.argmax(axis=1)
        elif params.pivot_policy == "rightmost":
            pivot = width - 1 - sub[:, ::-1].argmax(axis=1)
        else:
            u_site = draw(active)
            n_unstable = sub.sum(axis=1)
            kth = np.minimum((u_site * n_unstable).astype(np.int64), n_unstable - 1)
            pivot = (sub.cumsum(axis=1) > kth[:, None]).argmax(axis=1)
        u_dir = draw(active)
        dest = np.where(u_dir < p_left, pivot - 1, pivot + 1)
        state[rows, pivot] -= 1
        state[rows, dest] += 1
        steps[rows] += 1
        if steps[rows].max() > MAX_STEPS_PER_TRIAL:
            raise RuntimeError(f"trial exceeded {MAX_STEPS_PER_TRIAL} steps; parameters look pathological")
        if state[rows, 0].any() or state[rows, -1].any():
            raise AssertionError("particle escaped the padded window")
        touched = state[rows]
        unstable[rows] = touched >= 2
        active = unstable.any(axis=1)

    out: dict[SubsetZ, int] = {}
    for row in state:
        subset = tuple(int(j) + lo for j in np.nonzero(row)[0])
        out[subset] = out.get(subset, 0) + 1
    return out


def compare_exact(c: "NVector | Sequence[int]", params: SimParams) -> ComparisonReport:
    """Empirical stabilization frequencies against the exact coefficients of u^c.

    Exact probabilities are the squarefree coefficients of u^c in the full
    algebra, evaluated at q = qval in exact rational arithmetic before the
    float boundary. The z-score uses the binomial standard error; |z| > 4 is
    flagged.
    """
    v = as_nvector(c)
    q0 = Fraction(params.qval)
    exact: dict[SubsetZ, Fraction] = {}
    for subset, coeff in reduce_monomial(v, FULL).terms.items():
        exact[subset] = coeff.eval(q0)
    counts = simulate_counts(v, params)

    config = v.to_tuple(v.min_index(), v.max_index()) if not v.is_zero() else ()
    report = ComparisonReport(params=params, config=config, rows=[])
    trials = params.trials
    for subset in sorted(set(exact) | set(counts)):
        p = float(exact.get(subset, Fraction(0)))
        k = counts.get(subset, 0)
        emp = k / trials
        se = math.sqrt(p * (1.0 - p) / trials)
        if se == 0.0:
            z = 0.0 if emp == p else math.inf
        else:
            z = (emp - p) / se
        report.rows.append(
            SiteRow(
                subset=subset,
                exact=p,
                empirical=emp,
                count=k,
                zscore=z,
                flagged=abs(z) > 4.0,
            )
        )
    return report
