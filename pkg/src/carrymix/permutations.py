"""Permutations in one-line notation.

Products follow the usual convention ``(s * t)(i) = s(t(i))``.
"""
from __future__ import annotations

from itertools import permutations as _itperms
from typing import Iterable, Iterator


class Permutation(tuple):
    """A bijection of {1..n}; entry at index i-1 is the image of i."""

    def __new__(cls, images: Iterable[int]):
        self = super().__new__(cls, (int(x) for x in images))
        if sorted(self) != list(range(1, len(self) + 1)):
            raise ValueError(f"not a permutation of 1..{len(self)}: {tuple(self)}")
        return self

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(1, n + 1))

    @classmethod
    def parse(cls, text: str) -> "Permutation":
        return cls(int(t) for t in text.replace(",", " ").split())

    @property
    def n(self) -> int:
        return len(self)

    def __call__(self, i: int) -> int:
        return self[i - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        if len(other) != len(self):
            raise ValueError("cannot compose permutations of different sizes")
        return Permutation(self[t - 1] for t in other)

    def inverse(self) -> "Permutation":
        inv = [0] * len(self)
        for i, s in enumerate(self, 1):
            inv[s - 1] = i
        return Permutation(inv)

    def descent_set(self) -> frozenset[int]:
        return frozenset(i for i in range(1, len(self)) if self[i] < self[i - 1])

    def descents(self) -> int:
        return len(self.descent_set())

    def __str__(self) -> str:
        return " ".join(map(str, self))

    def __repr__(self) -> str:
        return f"Permutation({tuple(self)})"


def descents(p) -> int:
    """Number of positions i with p(i+1) < p(i)."""
    return sum(1 for x, y in zip(p, p[1:]) if y < x)


def all_permutations(n: int) -> Iterator[Permutation]:
    for p in _itperms(range(1, n + 1)):
        yield Permutation(p)
