"""Stirling permutations of a multiset and their descent (Eulerian) statistics."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import BudgetExceeded
from .shapes import Shape, sp_count

DEFAULT_CAP = 10**6

Word = tuple[int, ...]


def is_stirling(word: Sequence[int], shape: Shape | None = None) -> bool:
    """Check the Stirling condition (and multiplicities when ``shape`` is given).

    Whenever word[i] == word[j] with i < s < j we need word[s] >= word[i].
    Equivalently, nothing smaller than v appears between the first and last v.
    """
    if shape is not None:
        if len(word) != shape.K:
            return False
        for v, k in enumerate(shape.ks, start=1):
            if word.count(v) != k:
                return False
        if any(not 1 <= v <= shape.n for v in word):
            return False
    first: dict[int, int] = {}
    last: dict[int, int] = {}
    for pos, v in enumerate(word):
        first.setdefault(v, pos)
        last[v] = pos
    return all(min(word[first[v] : last[v] + 1]) >= v for v in first)


def enumerate_stirling(shape: Shape, cap: int = DEFAULT_CAP) -> Iterator[Word]:
    """Yield every Stirling permutation of ``shape`` exactly once.

    Words are built by inserting the block j^(k_j) into every gap of a word of
    the smaller multiset, so the order is lexicographic in the tuple of
    insertion positions.
    """
    if cap < 0:
        raise ValueError("cap must be nonnegative")
    total = sp_count(shape)
    if total > cap:
        raise BudgetExceeded(f"enumeration budget exceeded: {total} words > cap {cap}")
    return _insert_blocks((), shape.ks, 1)


def _insert_blocks(word: Word, ks: tuple[int, ...], value: int) -> Iterator[Word]:
    if not ks:
        yield word
        return
    block = (value,) * ks[0]
    for gap in range(len(word) + 1):
        yield from _insert_blocks(word[:gap] + block + word[gap:], ks[1:], value + 1)


def descents(word: Sequence[int]) -> frozenset[int]:
    """1-based descent indices; the final position K always counts."""
    K = len(word)
    if K == 0:
        return frozenset()
    des = {i for i in range(1, K) if word[i - 1] > word[i]}
    des.add(K)
    return frozenset(des)


@dataclass(frozen=True)
class EulerianTable:
    """``counts[i - 1]`` is A_{k,i}, the number of words with i descents."""

    shape: Shape
    counts: tuple[int, ...]

    def __getitem__(self, i: int) -> int:
        """A_{k,i} with zeros outside 1..n (and A_{empty,0} = 1)."""
        if self.shape.n == 0:
            return 1 if i == 0 else 0
        if 1 <= i <= len(self.counts):
            return self.counts[i - 1]
        return 0

    def numerator(self) -> dict[int, int]:
        """Exponent -> coefficient of the Eulerian polynomial sum A_{k,i} x^i."""
        if self.shape.n == 0:
            return {0: 1}
        return {i: c for i, c in enumerate(self.counts, start=1) if c}

    def total(self) -> int:
        return sum(self.counts) if self.shape.n else 1


def eulerian_brute(shape: Shape, cap: int = DEFAULT_CAP) -> EulerianTable:
    counts = [0] * shape.n
    if shape.n == 0:  # the empty word; A_{empty,0} = 1 is implicit
        return EulerianTable(shape, ())
    for word in enumerate_stirling(shape, cap):
        counts[len(descents(word)) - 1] += 1
    return EulerianTable(shape, tuple(counts))


def eulerian_rec(shape: Shape) -> EulerianTable:
    """A_{k,i} = i A_{k\\k_n,i} + (k_1+...+k_{n-1} + 1 - (i-1)) A_{k\\k_n,i-1}."""
    row = [1]  # index 0: the empty word
    size = 0
    for k in shape.ks:
        prev = row + [0]
        row = [0] * len(prev)
        for i in range(1, len(prev)):
            row[i] = i * prev[i] + (size + 1 - (i - 1)) * prev[i - 1]
        size += k
    return EulerianTable(shape, tuple(row[1:]))
