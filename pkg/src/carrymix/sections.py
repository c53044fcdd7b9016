"""Sections of rational generating functions h(x)/(1-x)^(n+1).

Taking every r-th coefficient maps the numerator h to a new numerator by a
fixed integer matrix; trimming and transposing that matrix recovers the
carries chain.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .carries import build_P
from .errors import ConsistencyError
from .exact import RationalMatrix, binomial, composition_count, poly_mul

SERIES_ORDER = 30


def build_C(n: int, r: int) -> RationalMatrix:
    """(n+2)x(n+2) matrix with entry (i, j) = #{a_1+...+a_{n+1} = i r - j, 0 <= a_l < r}."""
    if n < 0 or r < 1:
        raise ValueError("need n >= 0 and r >= 1")
    return RationalMatrix(
        [[composition_count(r, n + 1, i * r - j) for j in range(n + 2)] for i in range(n + 2)]
    )


def _check_h(h: Sequence, n: int) -> list:
    if len(h) != n + 2:
        raise ValueError(f"h must have exactly n+2 = {n + 2} coefficients, got {len(h)}")
    return list(h)


def series_from_h(h: Sequence, n: int, length: int) -> list:
    """First ``length`` coefficients of h(x)/(1-x)^(n+1)."""
    inv = [binomial(k + n, n) for k in range(length)]
    return poly_mul(list(h), inv, trunc=length)


def h_from_series(a: Sequence, n: int, length: int) -> list:
    """(1-x)^(n+1) times the series a, truncated to ``length`` terms."""
    num = [(-1) ** k * binomial(n + 1, k) for k in range(n + 2)]
    return poly_mul(list(a), num, trunc=length)


def section_poly(h: Sequence, r: int, order: int = SERIES_ORDER) -> list:
    """Numerator of sum_k a_{rk} x^k, given the numerator h of sum_k a_k x^k.

    ``h`` has n+2 coefficients (lowest first).  The matrix result is
    compared against sectioning the expanded series directly, up to
    ``order`` terms.
    """
    n = len(h) - 2
    if n < 0:
        raise ValueError("h needs at least 2 coefficients")
    h = _check_h(h, n)
    C = build_C(n, r)
    out = [sum(C[i, j] * h[j] for j in range(n + 2)) for i in range(n + 2)]
    out = [int(x) if isinstance(x, Fraction) and x.denominator == 1 else x for x in out]

    a = series_from_h(h, n, r * order)
    oracle = h_from_series([a[r * k] for k in range(order)], n, order)
    expect = out + [0] * (order - len(out))
    if oracle != expect[:order]:
        raise ConsistencyError(f"sectioned series gives {oracle[: n + 3]}, matrix gives {out}")
    return out


def trim_to_P(n: int, b: int) -> RationalMatrix:
    """Drop the outer rows/columns of build_C(n, b), transpose, divide by b^n."""
    if n < 1 or b < 2:
        raise ValueError("need n >= 1 and b >= 2")
    C = build_C(n, b)
    inner = C.submatrix(range(1, n + 1), range(1, n + 1))
    P = inner.transpose().scale(Fraction(1, b**n))
    if P != build_P(n, b):
        raise ConsistencyError(f"trimmed section matrix differs from the carries matrix at n={n}, b={b}")
    return P
