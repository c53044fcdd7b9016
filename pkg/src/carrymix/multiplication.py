"""Carries when a random base-b number is multiplied by a fixed k."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import ConsistencyError, ResourceCapError
from .exact import RationalMatrix

MAX_K = 10**4
COUNTING_CAP = 10**6


@dataclass(frozen=True)
class MultSpec:
    k: int
    b: int

    def __post_init__(self):
        if self.k < 1:
            raise ValueError(f"multiplier must be >= 1, got k={self.k}")
        if self.b < 2:
            raise ValueError(f"base must be >= 2, got b={self.b}")


def mult_carry_trace(k: int, b: int, digits: Sequence[int]) -> tuple[int, ...]:
    """Carries kappa_1, kappa_2, ... for digits given least significant first."""
    MultSpec(k, b)
    carry, out = 0, []
    for d in digits:
        if not 0 <= d < b:
            raise ValueError(f"digit {d} out of range for base {b}")
        carry = (carry + k * d) // b
        out.append(carry)
    return tuple(out)


def build_K(k: int, b: int) -> RationalMatrix:
    """K[i, j] = (1/b) #{d : (i + k d) // b == j}."""
    MultSpec(k, b)
    if k > MAX_K:
        raise ResourceCapError(f"k capped at {MAX_K} for matrix builds")
    rows = [[0] * k for _ in range(k)]
    for i in range(k):
        for d in range(b):
            rows[i][(i + k * d) // b] += 1
    return RationalMatrix(rows).scale(Fraction(1, b))


def k_row_power(k: int, b: int, r: int) -> tuple[Fraction, ...]:
    """Row 0 of K^r, by iterating the chain r steps."""
    if r < 0:
        raise ValueError("r must be >= 0")
    K = build_K(k, b)
    v = tuple(Fraction(int(j == 0)) for j in range(k))
    for _ in range(r):
        v = K.vecmul(v)
    return v


def k_row_by_counting(k: int, b: int, r: int) -> tuple[Fraction, ...]:
    """Row 0 of K^r by counting x < b^r with floor(k x / b^r) = j."""
    MultSpec(k, b)
    br = b**r
    if br > COUNTING_CAP:
        raise ResourceCapError(f"b^r = {br} exceeds counting cap {COUNTING_CAP}")
    counts = np.bincount((np.arange(br, dtype=np.int64) * k) // br, minlength=k)
    return tuple(Fraction(int(c), br) for c in counts)


def mult_tv_exact(k: int, b: int, r: int) -> Fraction:
    """Exact TV distance of K^r(0, .) from uniform; checked against k/(2 b^r)."""
    MultSpec(k, b)
    if r < 1:
        raise ValueError("r must be >= 1")
    u = Fraction(1, k)
    tv = sum((abs(p - u) for p in k_row_power(k, b, r)), Fraction(0)) / 2
    bound = Fraction(k, 2 * b**r)
    if tv > bound:
        raise ConsistencyError(f"TV {tv} exceeds bound {bound} for k={k}, b={b}, r={r}")
    return tv


def is_generalized_circulant(K: RationalMatrix, shift: int) -> bool:
    """Each column equals the previous one shifted down cyclically by ``shift``."""
    k = K.nrows
    for c in range(k - 1):
        for i in range(k):
            if K[(i + shift) % k, c + 1] != K[i, c]:
                return False
    return True
