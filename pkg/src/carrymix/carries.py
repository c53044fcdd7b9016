"""The carries Markov chain for adding n random base-b numbers.

States are the possible carries 0..n-1.  The transition matrix is built
twice, from the alternating binomial sum and from coefficient extraction in
((1 - x^b)/(1 - x))^(n+1), and the two must agree exactly.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import ConsistencyError
from .exact import RationalMatrix, binomial, composition_count, eulerian

MAX_POWER_SIDE = 64
MAX_POWER_STEPS = 64


@dataclass(frozen=True)
class ChainSpec:
    n: int
    b: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"need at least one addend, got n={self.n}")
        if self.b < 2:
            raise ValueError(f"base must be >= 2, got b={self.b}")


@dataclass(frozen=True)
class CarryMoments:
    j: int
    mean: Fraction
    variance: Fraction


def holte_entry(n: int, b: int, i: int, j: int) -> Fraction:
    """One transition probability from the alternating binomial sum."""
    total = 0
    for r in range(j - i // b + 1):
        total += (-1) ** r * binomial(n + 1, r) * binomial(n - 1 - i + (j + 1 - r) * b, n)
    return Fraction(total, b**n)


def coefficient_entry(n: int, b: int, i: int, j: int) -> Fraction:
    """Same probability as b^-n [x^((j+1)b - i - 1)] ((1-x^b)/(1-x))^(n+1)."""
    return Fraction(composition_count(b, n + 1, (j + 1) * b - i - 1), b**n)


@lru_cache(maxsize=128)
def build_P(n: int, b: int) -> RationalMatrix:
    """Transition matrix of the carries chain, ``P[i, j] = P(carry j | carry i)``."""
    ChainSpec(n, b)
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            h = holte_entry(n, b, i, j)
            c = coefficient_entry(n, b, i, j)
            if h != c:
                raise ConsistencyError(f"P({i},{j}) for n={n}, b={b}: sum gives {h}, coefficient gives {c}")
            row.append(h)
        rows.append(row)
    return RationalMatrix(rows)


def binary_P(n: int) -> RationalMatrix:
    """Closed form for base 2: ``2^-n * C(n+1, 2j - i + 1)``."""
    return RationalMatrix(
        [[Fraction(binomial(n + 1, 2 * j - i + 1), 2**n) for j in range(n)] for i in range(n)]
    )


def stationary(n: int) -> tuple[Fraction, ...]:
    """Eulerian distribution A(n, j)/n!, the same for every base."""
    if n < 1:
        raise ValueError("n must be >= 1")
    f = math.factorial(n)
    return tuple(Fraction(eulerian(n, j), f) for j in range(n))


def _check_power(n: int, r: int):
    if r < 0:
        raise ValueError("r must be >= 0")
    if n > MAX_POWER_SIDE or r > MAX_POWER_STEPS:
        raise ValueError(f"matrix powers capped at n <= {MAX_POWER_SIDE}, r <= {MAX_POWER_STEPS}")


def carry_distribution(n: int, b: int, r: int) -> tuple[Fraction, ...]:
    """Law of the carry out of column r, i.e. row 0 of P^r."""
    _check_power(n, r)
    return (build_P(n, b) ** r).row(0)


def _moments(dist) -> tuple[Fraction, Fraction]:
    mean = sum((k * p for k, p in enumerate(dist)), Fraction(0))
    second = sum((k * k * p for k, p in enumerate(dist)), Fraction(0))
    return mean, second - mean * mean


def closed_form_mean(n: int, b: int, j: int) -> Fraction:
    return Fraction(n - 1, 2) * (1 - Fraction(1, b**j))


def closed_form_variance(n: int, b: int, j: int) -> Fraction:
    # (n+1)/12 is the descent variance only for n >= 2; one addend never carries.
    if n == 1:
        return Fraction(0)
    return Fraction(n + 1, 12) * (1 - Fraction(1, b ** (2 * j)))


def carry_moments(n: int, b: int, j: int) -> CarryMoments:
    """Mean and variance of the j-th carry.

    Computed both from the closed forms and from the chain itself; raises
    :class:`ConsistencyError` if they differ.
    """
    ChainSpec(n, b)
    if j < 1:
        raise ValueError("column index j must be >= 1")
    mean, var = _moments(carry_distribution(n, b, j))
    cmean, cvar = closed_form_mean(n, b, j), closed_form_variance(n, b, j)
    if (mean, var) != (cmean, cvar):
        raise ConsistencyError(
            f"moments for n={n}, b={b}, j={j}: chain ({mean}, {var}) vs closed form ({cmean}, {cvar})"
        )
    return CarryMoments(j, mean, var)


def total_carries_mean(n: int, b: int, m: int) -> Fraction:
    """Expected total number of carries over m columns."""
    ChainSpec(n, b)
    if m < 1:
        raise ValueError("m must be >= 1")
    closed = Fraction(n - 1, 2) * (m - Fraction(1, b - 1) * (1 - Fraction(1, b**m)))
    summed = sum((carry_moments(n, b, j).mean for j in range(1, m + 1)), Fraction(0))
    if closed != summed:
        raise ConsistencyError(f"total carries mean {closed} != summed column means {summed}")
    return closed


def ratio_profile(n: int, b: int, r: int) -> tuple[Fraction, ...]:
    """f_r(i) = P^r(0, i) / pi(i) for each state i."""
    return tuple(p / s for p, s in zip(carry_distribution(n, b, r), stationary(n)))


def separation_exact(n: int, b: int, r: int) -> Fraction:
    """max_j (1 - P^r(0, j)/pi(j)) from the matrix power."""
    ChainSpec(n, b)
    return max(1 - f for f in ratio_profile(n, b, r))


def separation_closed(n: int, b: int, r: int) -> Fraction:
    """1 - prod_{i<n} (1 - i/b^r), each factor clamped at 0.

    Needs no matrix, so it is usable for large n.
    """
    ChainSpec(n, b)
    if r < 0:
        raise ValueError("r must be >= 0")
    br = b**r
    prod = Fraction(1)
    for i in range(1, n):
        factor = Fraction(br - i, br)
        if factor <= 0:
            return Fraction(1)
        prod *= factor
    return 1 - prod


def separation_limit(c: float) -> float:
    """Large-n separation when b^r = c n^2."""
    return 1 - math.exp(-1 / (2 * c))


def tv_from_start(n: int, b: int, r: int) -> Fraction:
    """Total variation distance between P^r(0, .) and the stationary law."""
    ChainSpec(n, b)
    dist = carry_distribution(n, b, r)
    return sum((abs(p - s) for p, s in zip(dist, stationary(n))), Fraction(0)) / 2
