"""Multiset types k = (k_1, ..., k_n) and their series/weight decomposition."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import accumulate
from math import prod
from typing import Iterable, Iterator


@dataclass(frozen=True)
class WeightDecomposition:
    """k read as a_i-series with ends t_i, then a run of ``trailing`` ones.

    (k_1, ..., k_n) = (1^(a_1 - 1), t_1, ..., 1^(a_l - 1), t_l, 1^trailing)
    """

    a: tuple[int, ...]
    t: tuple[int, ...]
    trailing: int

    def __post_init__(self):
        if len(self.a) != len(self.t):
            raise ValueError("a and t must have equal length")
        if any(x < 1 for x in self.a) or any(x < 2 for x in self.t) or self.trailing < 0:
            raise ValueError(f"invalid weight {self}")

    @property
    def length(self) -> int:
        return len(self.a)

    def anchors(self) -> tuple[int, ...]:
        """Partial sums s_0 = 0, s_i = s_{i-1} + a_i + t_i - 1."""
        return (0, *accumulate(ai + ti - 1 for ai, ti in zip(self.a, self.t)))

    def __str__(self):
        a = ",".join(map(str, self.a))
        t = ",".join(map(str, self.t))
        return f"({a}; {t}; {self.trailing})"


def _decompose(ks: tuple[int, ...]) -> WeightDecomposition:
    a, t = [], []
    run = 0
    for k in ks:
        run += 1
        if k > 1:
            a.append(run)
            t.append(k)
            run = 0
    return WeightDecomposition(tuple(a), tuple(t), run)


@dataclass(frozen=True)
class Shape:
    """The multiplicity tuple of a multiset {1^k_1, ..., n^k_n}.

    The empty shape is allowed and plays the role of the base case in every
    recurrence.
    """

    ks: tuple[int, ...]
    K: int = field(init=False, repr=False, compare=False)
    length: int = field(init=False, repr=False, compare=False)
    weight: WeightDecomposition = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        ks = tuple(int(k) for k in self.ks)
        if any(k < 1 for k in ks):
            raise ValueError(f"multiplicities must be positive, got {ks}")
        object.__setattr__(self, "ks", ks)
        object.__setattr__(self, "K", sum(ks))
        object.__setattr__(self, "length", sum(1 for k in ks if k > 1))
        object.__setattr__(self, "weight", _decompose(ks))

    @classmethod
    def of(cls, *ks: int) -> "Shape":
        return cls(tuple(ks))

    @property
    def n(self) -> int:
        return len(self.ks)

    @property
    def last(self) -> int:
        return self.ks[-1]

    def __len__(self):
        return len(self.ks)

    def __iter__(self) -> Iterator[int]:
        return iter(self.ks)

    def __str__(self):
        return ",".join(map(str, self.ks))

    def drop_last(self) -> "Shape":
        """k \\ k_n = (k_1, ..., k_{n-1})."""
        return Shape(self.ks[:-1])

    def decrement_last(self) -> "Shape":
        """k' = (k_1, ..., k_n - 1); a trailing 1 becomes a 0 and is dropped."""
        if not self.ks:
            raise ValueError("empty shape has no last component")
        if self.ks[-1] == 1:
            return Shape(self.ks[:-1])
        return Shape(self.ks[:-1] + (self.ks[-1] - 1,))

    def strip_trailing(self) -> "Shape":
        """Drop the trailing run of ones."""
        return Shape(self.ks[: self.n - self.weight.trailing])


def decompose(shape: Shape) -> WeightDecomposition:
    return shape.weight


def recompose(w: WeightDecomposition) -> Shape:
    ks: list[int] = []
    for a, t in zip(w.a, w.t):
        ks.extend([1] * (a - 1))
        ks.append(t)
    ks.extend([1] * w.trailing)
    return Shape(tuple(ks))


def sp_count(shape: Shape) -> int:
    """Number of Stirling permutations: prod_{i<n} (k_1 + ... + k_i + 1)."""
    return prod(s + 1 for s in accumulate(shape.ks[:-1]))


def parse_shape(text: str) -> Shape:
    """Parse "1,3,1,4" (blank or "()" gives the empty shape)."""
    text = text.strip().strip("()[]")
    if not text:
        return Shape(())
    try:
        ks = tuple(int(part) for part in text.split(","))
    except ValueError:
        raise ValueError(f"shape must be comma-separated positive integers: {text!r}") from None
    return Shape(ks)


def compositions(total: int, max_part: int | None = None) -> Iterator[tuple[int, ...]]:
    """All compositions of ``total`` with parts <= max_part, in lex order."""
    if total == 0:
        yield ()
        return
    top = total if max_part is None else min(total, max_part)
    for first in range(1, top + 1):
        for rest in compositions(total - first, max_part):
            yield (first, *rest)


def shapes_up_to(max_K: int, max_part: int | None = None, min_K: int = 0) -> Iterator[Shape]:
    """Every shape with min_K <= K <= max_K and components <= max_part."""
    for K in range(min_K, max_K + 1):
        for c in compositions(K, max_part):
            yield Shape(c)


def shape_list(shapes: Iterable[Shape]) -> list[Shape]:
    return sorted(set(shapes), key=lambda s: (s.K, s.ks))
