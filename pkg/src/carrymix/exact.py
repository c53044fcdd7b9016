"""Exact integer/rational building blocks.

Everything here works over :class:`fractions.Fraction` and Python ints, so
no value is ever rounded.  Matrices are small, dense and immutable.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

Rational = Fraction
RationalVector = tuple  # tuple[Fraction, ...]

CHAR_POLY_MAX_SIDE = 24
TP_MAX_SIDE = 12
TP_MAX_ORDER = 4


# ---------------------------------------------------------------------------
# scalars

def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return parse_rational(x)
    return Fraction(x)


def fmt_rational(q) -> str:
    """Serialize as ``"p/q"``, or ``"p"`` when the denominator is 1."""
    q = as_fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(s: str) -> Fraction:
    return Fraction(s.strip())


def binomial(n: int, k: int) -> int:
    """C(n, k), zero outside ``0 <= k <= n``."""
    if n < 0:
        raise ValueError(f"binomial needs n >= 0, got {n}")
    if k < 0 or k > n:
        return 0
    return comb(n, k)


def eulerian(n: int, j: int) -> int:
    """Eulerian number A(n, j): permutations of n letters with j descents.

    Uses Euler's alternating sum; zero for ``j`` outside ``[0, n-1]``.
    """
    if n < 1:
        raise ValueError(f"eulerian needs n >= 1, got {n}")
    if j < 0 or j > n - 1:
        return 0
    return sum((-1) ** l * comb(n + 1, l) * (j + 1 - l) ** n for l in range(j + 1))


# ---------------------------------------------------------------------------
# polynomials as coefficient lists, lowest degree first

def poly_mul(a: Sequence, b: Sequence, trunc: int | None = None) -> list:
    if not a or not b:
        return []
    size = len(a) + len(b) - 1
    if trunc is not None:
        size = min(size, trunc)
    out = [0] * size
    for i, x in enumerate(a):
        if i >= size:
            break
        if not x:
            continue
        for j, y in enumerate(b[: size - i]):
            out[i + j] += x * y
    return out


def poly_pow(a: Sequence, e: int, trunc: int | None = None) -> list:
    out = [1]
    for _ in range(e):
        out = poly_mul(out, a, trunc)
    return out


@lru_cache(maxsize=256)
def composition_counts(b: int, parts: int) -> tuple[int, ...]:
    """Coefficients of (1 + x + ... + x^(b-1))^parts.

    Entry ``s`` counts solutions of a_1 + ... + a_parts = s with
    0 <= a_l <= b-1.  Built by convolving one part at a time.
    """
    if b < 1 or parts < 0:
        raise ValueError("need b >= 1 and parts >= 0")
    counts = [1]
    for _ in range(parts):
        nxt = [0] * (len(counts) + b - 1)
        for s, c in enumerate(counts):
            if c:
                for a in range(b):
                    nxt[s + a] += c
        counts = nxt
    return tuple(counts)


def composition_count(b: int, parts: int, total: int) -> int:
    if parts < 1:
        raise ValueError(f"parts must be >= 1, got {parts}")
    counts = composition_counts(b, parts)
    if total < 0 or total >= len(counts):
        return 0
    return counts[total]


def poly_from_roots(roots: Iterable) -> list[Fraction]:
    """Monic polynomial with the given roots, highest degree first."""
    coeffs = [Fraction(1)]
    for r in roots:
        r = as_fraction(r)
        coeffs = [c - r * p for c, p in zip(coeffs + [Fraction(0)], [Fraction(0)] + coeffs)]
    return coeffs


def poly_eval(coeffs: Sequence, x) -> Fraction:
    """Horner evaluation, coefficients highest degree first."""
    acc = Fraction(0)
    for c in coeffs:
        acc = acc * x + c
    return acc


# ---------------------------------------------------------------------------
# matrices

class RationalMatrix:
    """Immutable dense matrix of Fractions."""

    __slots__ = ("_rows", "_shape")

    def __init__(self, rows: Iterable[Iterable]):
        data = tuple(tuple(as_fraction(x) for x in row) for row in rows)
        ncols = len(data[0]) if data else 0
        if any(len(r) != ncols for r in data):
            raise ValueError("ragged rows")
        self._rows = data
        self._shape = (len(data), ncols)

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RationalMatrix":
        return cls([[0] * cols for _ in range(rows)])

    @property
    def shape(self) -> tuple[int, int]:
        return self._shape

    @property
    def nrows(self) -> int:
        return self._shape[0]

    @property
    def ncols(self) -> int:
        return self._shape[1]

    @property
    def rows(self) -> tuple[tuple[Fraction, ...], ...]:
        return self._rows

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self._rows[i]

    def col(self, j: int) -> tuple[Fraction, ...]:
        return tuple(r[j] for r in self._rows)

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self._rows[i][j]

    def __eq__(self, other) -> bool:
        if isinstance(other, RationalMatrix):
            return self._rows == other._rows
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._rows)

    def __repr__(self) -> str:
        body = ", ".join("[" + ", ".join(fmt_rational(x) for x in r) + "]" for r in self._rows)
        return f"RationalMatrix([{body}])"

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(zip(*self._rows)) if self._rows else self

    def scale(self, c) -> "RationalMatrix":
        c = as_fraction(c)
        return RationalMatrix([[c * x for x in r] for r in self._rows])

    def __add__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        return RationalMatrix([[x + y for x, y in zip(r, s)] for r, s in zip(self._rows, other._rows)])

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        return mat_mul(self, other)

    def __pow__(self, r: int) -> "RationalMatrix":
        return mat_pow(self, r)

    def vecmul(self, v: Sequence) -> tuple[Fraction, ...]:
        """Row vector times matrix, ``v @ self``."""
        if len(v) != self.nrows:
            raise ValueError("vector length does not match row count")
        out = [Fraction(0)] * self.ncols
        for x, row in zip(v, self._rows):
            if x:
                for j, y in enumerate(row):
                    out[j] += x * y
        return tuple(out)

    def row_sums(self) -> tuple[Fraction, ...]:
        return tuple(sum(r, Fraction(0)) for r in self._rows)

    def col_sums(self) -> tuple[Fraction, ...]:
        return tuple(sum(c, Fraction(0)) for c in zip(*self._rows))

    def is_stochastic(self) -> bool:
        return all(x >= 0 for r in self._rows for x in r) and all(s == 1 for s in self.row_sums())

    def is_doubly_stochastic(self) -> bool:
        return self.is_stochastic() and all(s == 1 for s in self.col_sums())

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "RationalMatrix":
        return RationalMatrix([[self._rows[i][j] for j in cols] for i in rows])

    def to_lists(self) -> list[list[str]]:
        return [[fmt_rational(x) for x in r] for r in self._rows]

    def to_csv(self) -> str:
        return "".join(",".join(r) + "\n" for r in self.to_lists())

    def to_json(self) -> str:
        return json.dumps(self.to_lists())

    @classmethod
    def from_csv(cls, text: str) -> "RationalMatrix":
        return cls([[parse_rational(x) for x in line.split(",")] for line in text.splitlines() if line.strip()])

    @classmethod
    def from_json(cls, text: str) -> "RationalMatrix":
        return cls([[parse_rational(x) for x in r] for r in json.loads(text)])


def mat_mul(a: RationalMatrix, b: RationalMatrix) -> RationalMatrix:
    if a.ncols != b.nrows:
        raise ValueError(f"incompatible shapes {a.shape} and {b.shape}")
    bcols = list(zip(*b.rows)) if b.nrows else [()] * b.ncols
    return RationalMatrix(
        [[sum((x * y for x, y in zip(r, c)), Fraction(0)) for c in bcols] for r in a.rows]
    )


def mat_pow(a: RationalMatrix, r: int) -> RationalMatrix:
    """Repeated squaring; ``r = 0`` gives the identity."""
    if a.nrows != a.ncols:
        raise ValueError(f"matrix power needs a square matrix, got {a.shape}")
    if r < 0:
        raise ValueError("negative powers are not supported")
    result = RationalMatrix.identity(a.nrows)
    base = a
    while r:
        if r & 1:
            result = result @ base
        r >>= 1
        if r:
            base = base @ base
    return result


def char_poly(a: RationalMatrix) -> list[Fraction]:
    """Characteristic polynomial det(xI - A), monic, highest degree first.

    Faddeev-LeVerrier recursion; exact because every division is by an
    integer.
    """
    n, m = a.shape
    if n != m:
        raise ValueError(f"char_poly needs a square matrix, got {a.shape}")
    if n > CHAR_POLY_MAX_SIDE:
        raise ValueError(f"char_poly side capped at {CHAR_POLY_MAX_SIDE}")
    coeffs = [Fraction(1)]
    ident = RationalMatrix.identity(n)
    mk = RationalMatrix.zeros(n, n)
    for k in range(1, n + 1):
        mk = a @ mk + ident.scale(coeffs[-1])
        amk = a @ mk
        coeffs.append(-sum((amk[i, i] for i in range(n)), Fraction(0)) / k)
    return coeffs


def determinant(a: RationalMatrix) -> Fraction:
    n, m = a.shape
    if n != m:
        raise ValueError("determinant needs a square matrix")
    rows = [list(r) for r in a.rows]
    det = Fraction(1)
    for c in range(n):
        pivot = next((r for r in range(c, n) if rows[r][c] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            rows[c], rows[pivot] = rows[pivot], rows[c]
            det = -det
        p = rows[c][c]
        det *= p
        for r in range(c + 1, n):
            f = rows[r][c] / p
            if f:
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[c])]
    return det


@dataclass(frozen=True)
class TPResult:
    ok: bool
    rows: tuple[int, ...] | None = None
    cols: tuple[int, ...] | None = None
    minor: Fraction | None = None

    def __bool__(self) -> bool:
        return self.ok


def is_totally_positive(a: RationalMatrix, order: int = 2) -> TPResult:
    """Check that every minor of size <= ``order`` is nonnegative.

    Brute force over index subsets; returns the first negative minor found.
    """
    if order < 2:
        raise ValueError("order must be >= 2")
    if order > TP_MAX_ORDER or max(a.shape) > TP_MAX_SIDE:
        raise ValueError(f"total positivity check capped at side {TP_MAX_SIDE}, order {TP_MAX_ORDER}")
    for i, row in enumerate(a.rows):
        for j, x in enumerate(row):
            if x < 0:
                return TPResult(False, (i,), (j,), x)
    for k in range(2, min(order, *a.shape) + 1):
        for rs in combinations(range(a.nrows), k):
            for cs in combinations(range(a.ncols), k):
                d = determinant(a.submatrix(rs, cs))
                if d < 0:
                    return TPResult(False, rs, cs, d)
    return TPResult(True)
