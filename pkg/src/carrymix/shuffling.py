"""Riffle shuffles (GSR b-shuffles) and the card-tracking chain.

A shuffle outcome is the deck read top to bottom, as a permutation
``s`` with ``s(p)`` the card at position p.  Samplers take an explicit
``numpy.random.Generator``; there is no module-level random state.
"""
from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from itertools import product

import numpy as np

from .bijections import ColumnArray, pi_label
from .errors import ResourceCapError
from .exact import RationalMatrix, binomial, fmt_rational
from .permutations import Permutation, descents

ENUMERATION_CAP = 10**7


def gsr_sample(n: int, b: int, rng: np.random.Generator) -> Permutation:
    """One b-shuffle: label n uniform base-b digits and read off the labelling."""
    if n < 1 or b < 1:
        raise ValueError("need n >= 1 and b >= 1")
    digits = rng.integers(0, b, size=n)
    return pi_label(ColumnArray.from_columns([digits.tolist()], b))


def riffle_sample(n: int, rng: np.random.Generator) -> Permutation:
    """Physical GSR riffle: binomial cut, then drop cards from packet bottoms
    with probability proportional to packet size."""
    cut = int(rng.binomial(n, 0.5))
    left, right = cut, n - cut
    dropped = []
    while left + right:
        if rng.random() * (left + right) < left:
            dropped.append(left)
            left -= 1
        else:
            dropped.append(cut + right)
            right -= 1
    return Permutation(reversed(dropped))


def qb_probability(p, b: int) -> Fraction:
    """Chance of ``p`` after one b-shuffle: C(n + b - r, n)/b^n, r = 1 + d(p^-1)."""
    if b < 1:
        raise ValueError("b must be >= 1")
    p = Permutation(p)
    r = 1 + descents(p.inverse())
    return Fraction(binomial(p.n + b - r, p.n), b**p.n)


def exhaustive_shuffle_dist(n: int, b: int) -> dict[Permutation, Fraction]:
    """Exact b-shuffle law by pushing all b^n digit words through pi_label."""
    if b**n > ENUMERATION_CAP:
        raise ResourceCapError(f"b^n = {b**n} exceeds enumeration cap {ENUMERATION_CAP}")
    weight = Fraction(1, b**n)
    dist: dict[Permutation, Fraction] = defaultdict(Fraction)
    for word in product(range(b), repeat=n):
        dist[pi_label(ColumnArray.from_columns([word], b))] += weight
    return dict(dist)


def convolve(first: dict, second: dict) -> dict[Permutation, Fraction]:
    """Law of ``y * x`` with x ~ first, then y ~ second applied after it."""
    out: dict[Permutation, Fraction] = defaultdict(Fraction)
    for x, px in first.items():
        for y, py in second.items():
            out[Permutation(y) * Permutation(x)] += px * py
    return dict(out)


def point_mass(p) -> dict[Permutation, Fraction]:
    return {Permutation(p): Fraction(1)}


def dist_to_json_table(dist: dict) -> dict[str, str]:
    return {str(Permutation(p)): fmt_rational(q) for p, q in sorted(dist.items())}


def card_tracking_matrix(n: int, b: int) -> RationalMatrix:
    """Transition matrix for the position of card 1 under repeated b-shuffles.

    Entry ``[i-1, j-1]`` is the chance of moving from position i to
    position j (positions 1..n).
    """
    if n < 1 or b < 1:
        raise ValueError("need n >= 1 and b >= 1")
    rows = []
    for i in range(1, n + 1):
        row = []
        for j in range(1, n + 1):
            lo, hi = max(0, i + j - (n + 1)), min(i - 1, j - 1)
            s = 0
            for h in range(1, b + 1):
                for r in range(lo, hi + 1):
                    s += (
                        binomial(j - 1, r)
                        * binomial(n - j, i - r - 1)
                        * h**r
                        * (b - h) ** (j - 1 - r)
                        * (h - 1) ** (i - 1 - r)
                        * (b - h + 1) ** ((n - j) - (i - r - 1))
                    )
            row.append(Fraction(s, b**n))
        rows.append(row)
    return RationalMatrix(rows)


def track_card_one(n: int, b: int, steps: int, rng: np.random.Generator, sampler=None) -> list[int]:
    """Positions (1-based) of card 1 over ``steps`` successive shuffles, starting on top."""
    sampler = sampler or (lambda: gsr_sample(n, b, rng))
    pos, out = 1, [1]
    for _ in range(steps):
        pos = sampler().inverse()(pos)
        out.append(pos)
    return out
