"""Odd-type Stirling numbers and generalized central factorial numbers."""

from __future__ import annotations

from collections import defaultdict
from functools import lru_cache
from itertools import combinations, combinations_with_replacement, permutations, product
from math import factorial, prod
from typing import Iterator, Literal, Sequence

from .arith import Polynomial, falling_basis
from .errors import BudgetExceeded
from .polynomials import B_rec, b_rec
from .shapes import Shape
from .systems import family_min, set_partitions, stirling2_count

DEFAULT_CAP = 10**6

Kind = Literal["partition", "permutation"]


# odd type


@lru_cache(maxsize=None)
def _odd_row(n: int, first_kind: bool) -> tuple[int, ...]:
    """Row n (entries k = 0..n) of S_odd or s_odd."""
    if n == 0:
        return (0,)
    prev = _odd_row(n - 1, first_kind) + (0,)
    row = []
    for k in range(n + 1):
        left = prev[k - 1] if k >= 1 else 0
        factor = (n - 1) if first_kind else k
        row.append(left + factor * prev[k] + (1 if k == n else 0))
    return tuple(row)


def S_odd(n: int, k: int) -> int:
    """S_odd(n, k) = S_odd(n-1, k-1) + k S_odd(n-1, k) + [n == k], S_odd(0, 0) = 0."""
    if n < 0 or k < 0 or k > n:
        return 0
    for i in range(n):  # fill the cache bottom-up, keeps recursion shallow
        _odd_row(i, False)
    return _odd_row(n, False)[k]


def s_odd(n: int, k: int) -> int:
    """s_odd(n, k) = s_odd(n-1, k-1) + (n-1) s_odd(n-1, k) + [n == k], s_odd(0, 0) = 0."""
    if n < 0 or k < 0 or k > n:
        return 0
    for i in range(n):
        _odd_row(i, True)
    return _odd_row(n, True)[k]


def cycles(word: Sequence[int]) -> tuple[tuple[int, ...], ...]:
    """Cycle decomposition of a one-line permutation of [n], cycles sorted by minima."""
    seen = set()
    out = []
    for start in range(1, len(word) + 1):
        if start in seen:
            continue
        cyc = []
        v = start
        while v not in seen:
            seen.add(v)
            cyc.append(v)
            v = word[v - 1]
        out.append(tuple(cyc))
    return tuple(sorted(out, key=min))


def partition_leaders(blocks: Sequence[Sequence[int]]) -> list[int]:
    """Leaders l with min(B_l) = l, blocks ordered by increasing minima."""
    mins = sorted(min(b) for b in blocks)
    return [i for i, v in enumerate(mins, start=1) if v == i]


def permutation_leaders(word: Sequence[int]) -> list[int]:
    return partition_leaders(cycles(word))


def _permutations_with_cycles(n: int, k: int, cap: int) -> Iterator[tuple[int, ...]]:
    if factorial(n) > cap:
        raise BudgetExceeded(f"enumeration budget exceeded: {n}! permutations > cap {cap}")
    for w in permutations(range(1, n + 1)):
        if len(cycles(w)) == k:
            yield w


def _partitions(n: int, k: int, cap: int):
    if stirling2_count(n, k) > cap:
        raise BudgetExceeded(f"enumeration budget exceeded: S({n},{k}) partitions > cap {cap}")
    return set_partitions(n, k)


def count_leader_partitions(n: int, k: int, cap: int = DEFAULT_CAP) -> int:
    return sum(len(partition_leaders(p)) for p in _partitions(n, k, cap))


def count_leader_permutations(n: int, k: int, cap: int = DEFAULT_CAP) -> int:
    return sum(len(permutation_leaders(w)) for w in _permutations_with_cycles(n, k, cap))


def odd_shape(n: int) -> Shape:
    """(1, 2, ..., 2) with n twos."""
    return Shape((1,) + (2,) * n)


def oddmul_S(n: int, m: int) -> int:
    """sum over 1 <= i_1 <= ... <= i_n <= m of i_1^2 i_2 ... i_n (n >= 1)."""
    if n < 1:
        raise ValueError("needs n >= 1")
    return sum(idx[0] * prod(idx) for idx in combinations_with_replacement(range(1, m + 1), n))


def oddmul_s(n: int, m: int) -> int:
    """sum over 1 <= i_1 < ... < i_n < m of i_1^2 i_2 ... i_n (n >= 1)."""
    if n < 1:
        raise ValueError("needs n >= 1")
    return sum(idx[0] * prod(idx) for idx in combinations(range(1, m), n))


def odd_vs_polynomial(n: int, m: int) -> bool:
    shape = odd_shape(n)
    ok = B_rec(shape, m) == S_odd(n + m, m) and b_rec(shape, m) == s_odd(m, m - n)
    if n >= 1:
        ok = ok and oddmul_S(n, m) == S_odd(n + m, m) and oddmul_s(n, m) == s_odd(m, m - n)
    return ok


def r_stirling(n: int, k: int, r: int, kind: Kind, cap: int = DEFAULT_CAP) -> int:
    """Partitions (cycles) of [n] into k parts with 1..r in distinct parts, by filtering."""
    objs = _partitions(n, k, cap) if kind == "partition" else map(cycles, _permutations_with_cycles(n, k, cap))
    count = 0
    for blocks in objs:
        owner = {v: i for i, b in enumerate(blocks) for v in b}
        if len({owner[v] for v in range(1, r + 1)}) == r:
            count += 1
    return count


def r_stirling_sum_check(n: int, k: int, cap: int = DEFAULT_CAP) -> bool:
    """S_odd(n,k) and s_odd(n,k) equal the r-Stirling sums over r = 1..k."""
    second = sum(r_stirling(n, k, r, "partition", cap) for r in range(1, k + 1))
    first = sum(r_stirling(n, k, r, "permutation", cap) for r in range(1, k + 1))
    return second == S_odd(n, k) and first == s_odd(n, k)


# generalized central factorial numbers


@lru_cache(maxsize=None)
def _t_row(t: int, n: int, first_kind: bool) -> tuple[int, ...]:
    if n == 0:
        return (1,)
    prev = _t_row(t, n - 1, first_kind) + (0,)
    row = []
    for k in range(n + 1):
        left = prev[k - 1] if k >= 1 else 0
        factor = (n - 1) ** t if first_kind else k**t
        row.append(left + factor * prev[k])
    return tuple(row)


def S_t(t: int, n: int, k: int) -> int:
    """S_t(n, k) = S_t(n-1, k-1) + k^t S_t(n-1, k), S_t(0, 0) = 1."""
    if t < 1:
        raise ValueError("t must be >= 1")
    if n < 0 or k < 0 or k > n:
        return 0
    for i in range(n):
        _t_row(t, i, False)
    return _t_row(t, n, False)[k]


def s_t(t: int, n: int, k: int) -> int:
    """s_t(n, k) = s_t(n-1, k-1) + (n-1)^t s_t(n-1, k), s_t(0, 0) = 1."""
    if t < 1:
        raise ValueError("t must be >= 1")
    if n < 0 or k < 0 or k > n:
        return 0
    for i in range(n):
        _t_row(t, i, True)
    return _t_row(t, n, True)[k]


def basis_identity_second(t: int, n: int) -> bool:
    """x^n == sum_k S_t(n, k) prod_{i<k} (x - i^t), coefficientwise."""
    rhs = Polynomial()
    for k in range(n + 1):
        rhs = rhs + falling_basis([i**t for i in range(k)]).scale(S_t(t, n, k))
    return rhs == Polynomial.x() ** n


def basis_identity_first(t: int, n: int) -> bool:
    """prod_{i<n} (x + i^t) == sum_k s_t(n, k) x^k, coefficientwise."""
    lhs = falling_basis([-(i**t) for i in range(n)])
    return lhs == Polynomial([s_t(t, n, k) for k in range(n + 1)])


def verify_basis_identity(t: int, n: int) -> bool:
    return basis_identity_second(t, n) and basis_identity_first(t, n)


def tn_shape(t: int, n: int) -> Shape:
    """n repetitions of the t-tuple (1, ..., 1, 2)."""
    return Shape(((1,) * (t - 1) + (2,)) * n)


def tmul_S(t: int, n: int, m: int) -> int:
    """sum over 1 <= i_1 <= ... <= i_n <= m of (i_1 ... i_n)^t."""
    return sum(prod(idx) ** t for idx in combinations_with_replacement(range(1, m + 1), n))


def tmul_s(t: int, n: int, m: int) -> int:
    """sum over 1 <= i_1 < ... < i_n < m of (i_1 ... i_n)^t."""
    return sum(prod(idx) ** t for idx in combinations(range(1, m), n))


def count_tuple_systems(t: int, n: int, k: int, kind: Kind, cap: int = DEFAULT_CAP) -> int:
    """Ordered t-tuples of partitions (permutations) of [n] into k blocks (cycles)
    sharing one set of block (cycle) minima."""
    groups: dict[frozenset[int], list] = defaultdict(list)
    if kind == "partition":
        for p in _partitions(n, k, cap):
            groups[family_min(p)].append(p)
    else:
        for w in _permutations_with_cycles(n, k, cap):
            groups[family_min(cycles(w))].append(w)
    total = 0
    for members in groups.values():
        for _ in product(members, repeat=t):
            total += 1
            if total > cap:
                raise BudgetExceeded(f"enumeration budget exceeded: more than {cap} tuples")
    return total


def tn_identity(t: int, n: int, m: int) -> bool:
    """B_tn(m) = S_t(n+m, m) and b_tn(m) = s_t(m, m-n), plus the nested sums."""
    shape = tn_shape(t, n)
    ok = B_rec(shape, m) == S_t(t, n + m, m) and b_rec(shape, m) == s_t(t, m, m - n)
    if n >= 1:
        ok = ok and tmul_S(t, n, m) == S_t(t, n + m, m) and tmul_s(t, n, m) == s_t(t, m, m - n)
    return ok
