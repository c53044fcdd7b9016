"""Exhaustive and sampled joint laws of carries and shuffle descents.

Exact laws enumerate every digit array (odometer order, C_1 fastest).
Empirical laws come from seeded numpy generators; the generator name and
seed travel with the result.
"""
from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Optional

import numpy as np
from scipy import stats

from .bijections import ColumnArray, column_carry_trace, pi_label
from .carries import build_P
from .errors import ResourceCapError
from .exact import fmt_rational
from .permutations import Permutation

ENUMERATION_CAP = 10**7
GENERATOR = "numpy.random.PCG64"


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


@dataclass
class JointLaw:
    """Law of a trace (i_1, ..., i_m): exact probabilities or raw counts."""

    table: dict
    n: int
    m: int
    b: int
    mode: str = "exact"
    seed: Optional[int] = None
    generator: Optional[str] = None

    def total(self):
        return sum(self.table.values())

    def marginal(self, j: int) -> dict:
        """Law of the j-th coordinate (1-based)."""
        out = defaultdict(int)
        for trace, p in self.table.items():
            out[trace[j - 1]] += p
        return dict(out)

    def to_json(self) -> dict:
        fmt = fmt_rational if self.mode == "exact" else int
        return {
            "n": self.n, "m": self.m, "b": self.b, "mode": self.mode,
            "seed": self.seed, "generator": self.generator,
            "table": {",".join(map(str, k)): fmt(v) for k, v in sorted(self.table.items())},
        }


def _check_cap(n: int, m: int, b: int):
    if b ** (n * m) > ENUMERATION_CAP:
        raise ResourceCapError(f"b^(nm) = {b ** (n * m)} exceeds enumeration cap {ENUMERATION_CAP}")


def sample_columns(n: int, m: int, b: int, rng: np.random.Generator) -> ColumnArray:
    """n numbers of m uniform base-b digits."""
    return ColumnArray(tuple(map(tuple, rng.integers(0, b, size=(n, m)).tolist())), b)


def sample_carry_traces(n: int, m: int, b: int, size: int, rng: np.random.Generator) -> np.ndarray:
    """Carry traces of ``size`` independent uniform arrays, shape (size, m).

    Vectorised schoolbook addition; column j of the result is kappa_j.
    """
    digits = rng.integers(0, b, size=(size, n, m))
    sums = digits.sum(axis=1)  # (size, m); last column is C_1, as in sample_columns
    carry = np.zeros(size, dtype=np.int64)
    out = np.empty((size, m), dtype=np.int64)
    for j in range(m):
        carry = (carry + sums[:, m - 1 - j]) // b
        out[:, j] = carry
    return out


def exhaustive_joint_carries(n: int, m: int, b: int) -> JointLaw:
    _check_cap(n, m, b)
    words = list(product(range(b), repeat=n))
    weight = Fraction(1, b ** (n * m))
    table = defaultdict(Fraction)
    # columns listed C_m ... C_1 so that C_1 varies fastest
    for cols in product(words, repeat=m):
        arr = ColumnArray.from_columns(cols[::-1], b)
        table[column_carry_trace(arr)] += weight
    return JointLaw(dict(table), n, m, b)


def exhaustive_joint_descents(n: int, m: int, b: int) -> JointLaw:
    """Joint law of d(tau_1), ..., d(tau_m) with tau_j = pi(A_j) ... pi(A_1)."""
    _check_cap(n, m, b)
    labels = [pi_label(ColumnArray.from_columns([w], b)) for w in product(range(b), repeat=n)]
    weight = Fraction(1, b ** (n * m))
    ident = Permutation.identity(n)
    table = defaultdict(Fraction)
    for seq in product(labels, repeat=m):
        tau, trace = ident, []
        for lab in reversed(seq):  # seq[-1] is A_1
            tau = lab * tau
            trace.append(tau.descents())
        table[tuple(trace)] += weight
    return JointLaw(dict(table), n, m, b)


def markov_joint_law(n: int, m: int, b: int) -> JointLaw:
    """prod_j P(i_{j-1}, i_j) with i_0 = 0, over all traces with positive mass."""
    P = build_P(n, b)
    table = {}
    for trace in product(range(n), repeat=m):
        p, prev = Fraction(1), 0
        for i in trace:
            p *= P[prev, i]
            prev = i
        if p:
            table[trace] = p
    return JointLaw(table, n, m, b)


def empirical_joint_carries(n: int, m: int, b: int, samples: int, seed: int) -> JointLaw:
    traces = sample_carry_traces(n, m, b, samples, make_rng(seed))
    counts = Counter(map(tuple, traces.tolist()))
    return JointLaw(dict(counts), n, m, b, mode="empirical", seed=seed, generator=GENERATOR)


@dataclass
class ChiSquareResult:
    statistic: float
    dof: int
    groups: list = field(default_factory=list)

    def p_value(self) -> float:
        return float(stats.chi2.sf(self.statistic, self.dof)) if self.dof > 0 else 1.0


def chi2_threshold(dof: int, quantile: float = 0.999) -> float:
    return float(stats.chi2.ppf(quantile, dof)) if dof > 0 else 0.0


def chi_square(observed: JointLaw, expected: JointLaw, min_expected: float = 5.0) -> ChiSquareResult:
    """Pearson statistic of empirical counts against an exact law.

    Cells are visited in lexicographic trace order and merged with their
    neighbours until each group expects at least ``min_expected`` counts;
    a short final group joins the one before it.  ``groups`` lists the
    traces in each pooled cell.
    """
    if observed.mode != "empirical" or expected.mode != "exact":
        raise ValueError("chi_square compares an empirical law to an exact one")
    support = {k for k, p in expected.table.items() if p}
    stray = [k for k, c in observed.table.items() if c and k not in support]
    if stray:
        raise ValueError(f"observed traces outside the expected support: {stray[:5]}")
    total = observed.total()
    groups, cur, cur_e = [], [], Fraction(0)
    for k in sorted(support):
        cur.append(k)
        cur_e += Fraction(expected.table[k]) * total
        if cur_e >= min_expected:
            groups.append(cur)
            cur, cur_e = [], Fraction(0)
    if cur:
        if groups:
            groups[-1].extend(cur)
        else:
            groups.append(cur)
    stat = Fraction(0)
    for g in groups:
        e = sum((Fraction(expected.table[k]) for k in g), Fraction(0)) * total
        o = sum(observed.table.get(k, 0) for k in g)
        stat += (o - e) ** 2 / e
    return ChiSquareResult(float(stat), len(groups) - 1, groups)
