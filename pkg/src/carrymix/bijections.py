"""Column arrays and the bijections that turn carries into descents.

A :class:`ColumnArray` holds n numbers of m base-b digits, written the usual
way: each row reads most significant digit first, so column C_1 is the
right-most one.  The same type doubles as a list of j-tuples.

Positions in carry/descent sets are 1-based: position i compares row i with
row i+1.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import ConsistencyError
from .permutations import Permutation


@dataclass(frozen=True)
class ColumnArray:
    rows: tuple[tuple[int, ...], ...]
    b: int

    def __post_init__(self):
        rows = tuple(tuple(int(d) for d in r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        if self.b < 1:
            raise ValueError("base must be >= 1")
        if not rows:
            raise ValueError("need at least one row")
        width = len(rows[0])
        for r in rows:
            if len(r) != width:
                raise ValueError("rows must all have the same number of digits")
            for d in r:
                if not 0 <= d < self.b:
                    raise ValueError(f"digit {d} out of range for base {self.b}")

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], b: int) -> "ColumnArray":
        """Build from ``[C_1, C_2, ..., C_m]`` (right-most column first)."""
        n = len(columns[0])
        return cls(tuple(tuple(columns[k][i] for k in reversed(range(len(columns)))) for i in range(n)), b)

    @property
    def n(self) -> int:
        return len(self.rows)

    @property
    def m(self) -> int:
        return len(self.rows[0])

    def column(self, j: int) -> tuple[int, ...]:
        """Column C_j, 1-based from the right."""
        if not 1 <= j <= self.m:
            raise IndexError(j)
        return tuple(r[-j] for r in self.rows)

    def columns(self) -> list[tuple[int, ...]]:
        return [self.column(j) for j in range(1, self.m + 1)]

    def rightmost(self, j: int) -> "ColumnArray":
        """The sub-array C_j ... C_1."""
        if not 1 <= j <= self.m:
            raise IndexError(j)
        return ColumnArray(tuple(r[self.m - j:] for r in self.rows), self.b)

    def values(self) -> list[int]:
        """Each row read as a base-b integer."""
        return [tuple_value(r, self.b) for r in self.rows]

    def to_text(self) -> str:
        sep = "" if self.b <= 10 else " "
        lines = [f"{self.n} {self.m} {self.b}"]
        lines += [sep.join(str(d) for d in r) for r in self.rows]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "ColumnArray":
        """Parse the plain-text format: header ``n m b`` then n digit rows.

        Rows are either whitespace-separated decimal digits or, with no
        whitespace, one character per digit (0-9 then a-z for bases above 10).
        """
        lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
        if not lines:
            raise ValueError("empty column array file")
        try:
            n, m, b = (int(t) for t in lines[0].split())
        except ValueError:
            raise ValueError(f"bad header line {lines[0]!r}, expected 'n m b'") from None
        body = lines[1:]
        if len(body) != n:
            raise ValueError(f"header says {n} rows, found {len(body)}")
        rows = []
        for ln in body:
            if any(c.isspace() for c in ln):
                digits = [int(t) for t in ln.split()]
            else:
                digits = [int(c, 36) for c in ln]
            if len(digits) != m:
                raise ValueError(f"row {ln!r} has {len(digits)} digits, expected {m}")
            rows.append(tuple(digits))
        return cls(tuple(rows), b)


TupleList = ColumnArray


def tuple_value(digits: Iterable[int], b: int) -> int:
    v = 0
    for d in digits:
        v = v * b + d
    return v


def _to_digits(value: int, b: int, width: int) -> tuple[int, ...]:
    out = []
    for _ in range(width):
        value, d = divmod(value, b)
        out.append(d)
    return tuple(reversed(out))


def column_carry_trace(c: ColumnArray) -> tuple[int, ...]:
    """Carries kappa_1..kappa_m from schoolbook column addition.

    Cross-checked against the carry out of the j-digit prefix sums, which
    must agree however the numbers are added.
    """
    carry, trace = 0, []
    for col in c.columns():
        carry = (carry + sum(col)) // c.b
        trace.append(carry)
    for j in range(1, c.m + 1):
        whole = sum(c.rightmost(j).values()) // c.b**j
        if whole != trace[j - 1]:
            raise ConsistencyError(f"column carry {trace[j - 1]} != prefix-sum carry {whole} at j={j}")
    return tuple(trace)


def carry_positions(t: TupleList) -> frozenset[int]:
    """Positions i where adding tuple i+1 raises the carry out of the window."""
    mod = t.b**t.m
    total, out = 0, set()
    for i, v in enumerate(t.values()):
        new = total + v
        if i and new // mod > total // mod:
            out.add(i)
        total = new
    return frozenset(out)


def descent_positions(t: TupleList) -> frozenset[int]:
    """Positions i where tuple i+1 is smaller than tuple i."""
    v = t.values()
    return frozenset(i for i in range(1, t.n) if v[i] < v[i - 1])


def bar_map(c: ColumnArray) -> TupleList:
    """Row i becomes the last m digits of the sum of rows 1..i."""
    mod = c.b**c.m
    total, rows = 0, []
    for v in c.values():
        total = (total + v) % mod
        rows.append(_to_digits(total, c.b, c.m))
    return ColumnArray(tuple(rows), c.b)


def bar_inverse(t: TupleList) -> ColumnArray:
    mod = t.b**t.m
    prev, rows = 0, []
    for v in t.values():
        rows.append(_to_digits((v - prev) % mod, t.b, t.m))
        prev = v
    return ColumnArray(tuple(rows), t.b)


def _ranks(keys: Sequence) -> list[int]:
    # 0-based rank of each row; ties go to the higher row
    order = sorted(range(len(keys)), key=lambda r: (keys[r], r))
    ranks = [0] * len(keys)
    for rank, r in enumerate(order):
        ranks[r] = rank
    return ranks


def pi_label(t: TupleList) -> Permutation:
    """Label rows 1..n from smallest tuple to largest, ties broken top-down."""
    return Permutation(r + 1 for r in _ranks(t.values()))


def star_map(a: ColumnArray) -> ColumnArray:
    """Reorder each column A_{k+1} by the labelling of the k columns already placed.

    Row r of the new column receives the entry of A_{k+1} whose index is the
    rank of row r among the placed columns.
    """
    cols = [a.column(1)]
    keys = list(cols[0])
    for k in range(2, a.m + 1):
        src = a.column(k)
        ranks = _ranks(keys)
        new = tuple(src[ranks[r]] for r in range(a.n))
        cols.append(new)
        keys = [d * a.b**(k - 1) + key for d, key in zip(new, keys)]
    return ColumnArray.from_columns(cols, a.b)


def star_inverse(s: ColumnArray) -> ColumnArray:
    cols = [s.column(1)]
    keys = list(cols[0])
    for k in range(2, s.m + 1):
        placed = s.column(k)
        ranks = _ranks(keys)
        src = [0] * s.n
        for r in range(s.n):
            src[ranks[r]] = placed[r]
        cols.append(tuple(src))
        keys = [d * s.b**(k - 1) + key for d, key in zip(placed, keys)]
    return ColumnArray.from_columns(cols, s.b)


def tau_trace(c: ColumnArray) -> tuple[Permutation, ...]:
    """tau_j = pi_label(bar_map(C_j ... C_1)) for j = 1..m.

    Raises :class:`ConsistencyError` unless d(tau_j) equals the j-th carry.
    """
    kappa = column_carry_trace(c)
    taus = []
    for j in range(1, c.m + 1):
        tau = pi_label(bar_map(c.rightmost(j)))
        if tau.descents() != kappa[j - 1]:
            raise ConsistencyError(f"d(tau_{j}) = {tau.descents()} but kappa_{j} = {kappa[j - 1]}")
        taus.append(tau)
    return tuple(taus)


def starkey_product_check(a: ColumnArray) -> bool:
    """pi(A_j)...pi(A_1) == pi[(A_j...A_1)*] for every prefix j."""
    star = star_map(a)
    prod = Permutation.identity(a.n)
    for j in range(1, a.m + 1):
        prod = pi_label(ColumnArray.from_columns([a.column(j)], a.b)) * prod
        if prod != pi_label(star.rightmost(j)):
            return False
    return True
