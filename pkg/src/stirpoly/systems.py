"""Segmented families, k-partition systems and k-permutation systems.

A k-partition system of [n] into m blocks is a tuple (pi_0, pi_1, ..., pi_M)
where pi_1..pi_M are set partitions of [n] sharing the same m block minima,
the non-minimal elements x_1 < ... < x_l are pinned to the block of 1 in
pi_j for j > a_i, and pi_0 is a segmented family of multisets over [n+1]
drawn from min(pi_1) + {x_1, x_2^(t_1-2), ..., x_l^(t_(l-1)-2),
(n+1)^(t_l-2)}.  Permutation systems replace partitions by permutations with
a common set of left-to-right minima, pinning by "everything after x_i is
larger", and require pi_0 to use the prescribed multiset exactly.

Counting is done by generating objects, not by multiplying stage sizes.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations, product
from typing import Iterable, Iterator, Literal, Sequence

from .arith import binomial
from .errors import BudgetExceeded, InconsistentParameters
from .polynomials import B_value, b_value
from .shapes import Shape

DEFAULT_CAP = 10**6

Block = tuple[int, ...]
Family = tuple[Block, ...]
Kind = Literal["partition", "permutation"]


def family_min(family: Iterable[Sequence[int]]) -> frozenset[int]:
    return frozenset(min(b) for b in family)


def related(family: Iterable[Sequence[int]], a: int, b: int) -> bool:
    """a ~ b: both lie in a common block."""
    return any(a in blk and b in blk for blk in family)


def is_segmented(family: Iterable[Sequence[int]], universe: Iterable[int]) -> bool:
    """For all a < b < c in the universe, a ~ c forces b to be a block minimum."""
    family = [tuple(b) for b in family]
    if any(not b for b in family):
        raise ValueError("blocks must be nonempty")
    mins = family_min(family)
    universe = sorted(set(universe))
    for blk in family:
        lo, hi = min(blk), max(blk)
        if any(lo < b < hi and b not in mins for b in universe):
            return False
    return True


# set partitions and permutations


def set_partitions(n: int, blocks: int) -> Iterator[Family]:
    """Partitions of [n] into exactly ``blocks`` blocks via restricted growth strings.

    Blocks come out ordered by their minima.
    """
    if blocks > n or (blocks == 0) != (n == 0):
        return
    rgs = [0] * n

    def walk(i: int, used: int) -> Iterator[Family]:
        if i == n:
            if used == blocks:
                out: list[list[int]] = [[] for _ in range(blocks)]
                for elem, b in enumerate(rgs, start=1):
                    out[b].append(elem)
                yield tuple(tuple(b) for b in out)
            return
        if blocks - used > n - i:
            return
        for b in range(min(used + 1, blocks)):
            rgs[i] = b
            yield from walk(i + 1, max(used, b + 1))

    yield from walk(0, 0)


def lmin(word: Sequence[int]) -> frozenset[int]:
    """Values that are smaller than everything before them."""
    out = set()
    best = None
    for v in word:
        if best is None or v < best:
            out.add(v)
            best = v
    return frozenset(out)


def stirling2_count(n: int, k: int) -> int:
    return sum((-1) ** (k - j) * binomial(k, j) * j**n for j in range(k + 1)) // _fact(k)


def _fact(k: int) -> int:
    out = 1
    for i in range(2, k + 1):
        out *= i
    return out


# systems


@dataclass(frozen=True)
class SystemParams:
    """Definition context for (shape, n, m)."""

    shape: Shape
    n: int
    m: int

    @property
    def a(self) -> tuple[int, ...]:
        return self.shape.weight.a

    @property
    def t(self) -> tuple[int, ...]:
        return self.shape.weight.t

    @property
    def M(self) -> int:
        return max(self.a, default=0)

    @property
    def universe(self) -> range:
        return range(1, self.n + 2)

    def prescribed(self, xs: Sequence[int]) -> Counter:
        """Extra elements allowed in pi_0 on top of the minima."""
        extra: Counter = Counter()
        if not xs:
            return extra
        extra[xs[0]] += 1
        for j in range(1, len(xs)):
            extra[xs[j]] += self.t[j - 1] - 2
        extra[self.n + 1] += self.t[-1] - 2
        return +extra


def _check_params(shape: Shape, n: int, m: int) -> SystemParams:
    if shape.weight.trailing != 0:
        raise InconsistentParameters("shape/parameters inconsistent: systems need a shape without trailing ones")
    if shape.length != n - m or m < 0:
        raise InconsistentParameters(
            f"shape/parameters inconsistent: length {shape.length} != n - m = {n - m}"
        )
    return SystemParams(shape, n, m)


@dataclass(frozen=True)
class PartitionSystem:
    pi0: Family
    pi: tuple[Family, ...]


@dataclass(frozen=True)
class PermutationSystem:
    sigma0: Family
    sigma: tuple[tuple[int, ...], ...]


def _pinned_partition(part: Family, x: int) -> bool:
    return related(part, x, 1)


def _pinned_permutation(word: Sequence[int], x: int) -> bool:
    p = word.index(x)
    return all(v > x for v in word[p + 1 :])


def _pi0_ok(params: SystemParams, fam: Family, mins: frozenset[int], xs: Sequence[int], exact: bool) -> bool:
    if family_min(fam) != mins or not is_segmented(fam, params.universe):
        return False
    if xs and not related(fam, xs[0], 1):
        return False
    have = Counter(v for blk in fam for v in blk)
    want = Counter(mins) + params.prescribed(xs)
    if exact:
        return have == want
    return all(have[v] <= want[v] for v in have)


def is_partition_system(sys: PartitionSystem, shape: Shape, n: int, m: int) -> bool:
    """Check every clause of the k-partition-system definition."""
    params = _check_params(shape, n, m)
    if len(sys.pi) != params.M:
        return False
    full = set(range(1, n + 1))
    for part in sys.pi:
        elems = [v for blk in part for v in blk]
        if sorted(elems) != sorted(full) or any(not blk for blk in part):
            return False
    mins = family_min(sys.pi[0]) if sys.pi else frozenset(full)
    if any(family_min(p) != mins for p in sys.pi) or len(mins) != m:
        return False
    xs = sorted(full - mins)
    for i, x in enumerate(xs):
        for j in range(params.a[i] + 1, params.M + 1):
            if not _pinned_partition(sys.pi[j - 1], x):
                return False
    if any(not blk for blk in sys.pi0):
        return False
    return _pi0_ok(params, tuple(tuple(sorted(b)) for b in sys.pi0), mins, xs, exact=False)


def is_permutation_system(sys: PermutationSystem, shape: Shape, n: int, m: int) -> bool:
    """Check every clause of the k-permutation-system definition."""
    params = _check_params(shape, n, m)
    if len(sys.sigma) != params.M:
        return False
    full = list(range(1, n + 1))
    if any(sorted(w) != full for w in sys.sigma):
        return False
    mins = lmin(sys.sigma[0]) if sys.sigma else frozenset(full)
    if any(lmin(w) != mins for w in sys.sigma) or len(mins) != m:
        return False
    xs = sorted(set(full) - mins)
    for i, x in enumerate(xs):
        for j in range(params.a[i] + 1, params.M + 1):
            if not _pinned_permutation(sys.sigma[j - 1], x):
                return False
    if any(not blk or len(set(blk)) != len(blk) for blk in sys.sigma0):
        return False
    return _pi0_ok(params, tuple(tuple(sorted(b)) for b in sys.sigma0), mins, xs, exact=True)


def _placements(params: SystemParams, mins: Sequence[int], elem: int, copies: int, exact: bool, sets: bool):
    """Ways to drop copies of ``elem`` into the blocks headed by ``mins``.

    Only blocks whose head p satisfies the segmented condition for the pair
    (p, elem) are offered; yields tuples of per-block multiplicities.
    """
    minset = set(mins)
    ok = [
        i
        for i, p in enumerate(mins)
        if p < elem and all(b in minset for b in range(p + 1, elem) if b in params.universe)
    ]
    per_block = 1 if sets else copies
    totals = [copies] if exact else range(copies + 1)
    for total in totals:
        for dist in _distribute(total, len(ok), per_block):
            counts = [0] * len(mins)
            for i, c in zip(ok, dist):
                counts[i] = c
            yield tuple(counts)


def _distribute(total: int, slots: int, cap: int) -> Iterator[tuple[int, ...]]:
    if slots == 0:
        if total == 0:
            yield ()
        return
    for c in range(min(total, cap), -1, -1):
        for rest in _distribute(total - c, slots - 1, cap):
            yield (c, *rest)


def pi0_families(params: SystemParams, mins: Sequence[int], xs: Sequence[int], kind: Kind) -> list[Family]:
    """All valid pi_0 (or sigma_0) for a fixed minima set."""
    exact = kind == "permutation"
    mins = sorted(mins)
    extras = sorted(params.prescribed(xs).items())
    choices = [list(_placements(params, mins, e, c, exact, sets=exact)) for e, c in extras]
    minset = frozenset(mins)
    out = []
    for combo in product(*choices):
        blocks = [[p] for p in mins]
        for (e, _), counts in zip(extras, combo):
            for i, c in enumerate(counts):
                blocks[i].extend([e] * c)
        fam = tuple(tuple(b) for b in blocks)
        if _pi0_ok(params, fam, minset, xs, exact):
            out.append(fam)
    return out


@lru_cache(maxsize=64)
def _partitions_by_minima(n: int, m: int) -> dict[frozenset[int], tuple[Family, ...]]:
    groups: dict[frozenset[int], list[Family]] = defaultdict(list)
    for part in set_partitions(n, m):
        groups[family_min(part)].append(part)
    return {k: tuple(v) for k, v in sorted(groups.items(), key=lambda kv: sorted(kv[0]))}


@lru_cache(maxsize=64)
def _permutations_by_lmin(n: int, m: int) -> dict[frozenset[int], tuple[tuple[int, ...], ...]]:
    groups: dict[frozenset[int], list[tuple[int, ...]]] = defaultdict(list)
    for w in permutations(range(1, n + 1)):
        mins = lmin(w)
        if len(mins) == m:
            groups[mins].append(w)
    return {k: tuple(v) for k, v in sorted(groups.items(), key=lambda kv: sorted(kv[0]))}


def iter_partition_systems(shape: Shape, n: int, m: int, cap: int = DEFAULT_CAP) -> Iterator[PartitionSystem]:
    params = _check_params(shape, n, m)
    if stirling2_count(n, m) > cap:
        raise BudgetExceeded(f"enumeration budget exceeded: S({n},{m}) partitions > cap {cap}")
    for mins, parts in _partitions_by_minima(n, m).items():
        xs = sorted(set(range(1, n + 1)) - mins)
        stages = [
            [p for p in parts if all(_pinned_partition(p, x) for i, x in enumerate(xs) if j > params.a[i])]
            for j in range(1, params.M + 1)
        ]
        pi0s = pi0_families(params, sorted(mins), xs, "partition")
        for pis in product(*stages):
            for pi0 in pi0s:
                yield PartitionSystem(pi0, pis)


def iter_permutation_systems(shape: Shape, n: int, m: int, cap: int = DEFAULT_CAP) -> Iterator[PermutationSystem]:
    params = _check_params(shape, n, m)
    if _fact(n) > cap:
        raise BudgetExceeded(f"enumeration budget exceeded: {n}! permutations > cap {cap}")
    for mins, words in _permutations_by_lmin(n, m).items():
        xs = sorted(set(range(1, n + 1)) - mins)
        stages = [
            [w for w in words if all(_pinned_permutation(w, x) for i, x in enumerate(xs) if j > params.a[i])]
            for j in range(1, params.M + 1)
        ]
        sig0s = pi0_families(params, sorted(mins), xs, "permutation")
        for sigmas in product(*stages):
            for sig0 in sig0s:
                yield PermutationSystem(sig0, sigmas)


def _count(it: Iterator, cap: int) -> int:
    total = 0
    for _ in it:
        total += 1
        if total > cap:
            raise BudgetExceeded(f"enumeration budget exceeded: more than {cap} systems")
    return total


def count_partition_systems(shape: Shape, n: int, m: int, cap: int = DEFAULT_CAP) -> int:
    return _count(iter_partition_systems(shape, n, m, cap), cap)


def count_permutation_systems(shape: Shape, n: int, m: int, cap: int = DEFAULT_CAP) -> int:
    return _count(iter_permutation_systems(shape, n, m, cap), cap)


# k-Stirling numbers through the polynomials


def kstirling_S(shape: Shape, n: int, m: int) -> int:
    """S_k(n, m) with n - m equal to the length; any integers via B_k(m)."""
    if shape.length != n - m:
        raise InconsistentParameters(f"shape/parameters inconsistent: length {shape.length} != n - m")
    return B_value(shape, m)


def kstirling_s(shape: Shape, n: int, m: int) -> int:
    """s_k(n, m) with n - m equal to the length; any integers via b_k(n)."""
    if shape.length != n - m:
        raise InconsistentParameters(f"shape/parameters inconsistent: length {shape.length} != n - m")
    return b_value(shape, n)


def _replace_end(shape: Shape, end: int) -> Shape:
    return Shape(shape.ks[:-1] + (end,))


def _drop_series(shape: Shape) -> Shape:
    """Remove the last a_l-series with its end."""
    return Shape(shape.ks[: shape.n - shape.weight.a[-1]])


@lru_cache(maxsize=None)
def S_step_rec(shape: Shape, n: int, m: int) -> int:
    """Sum over lowered ends at (n-1, m-1) plus m^a times the shorter shape."""
    _check_params(shape, n, m)
    if shape.length == 0:
        return 1
    if m == 0:
        return 0
    a, t = shape.weight.a[-1], shape.weight.t[-1]
    total = sum(S_step_rec(_replace_end(shape, t - i), n - 1, m - 1) for i in range(t - 1))
    return total + m**a * S_step_rec(_drop_series(shape), n - 1, m)


@lru_cache(maxsize=None)
def s_step_rec(shape: Shape, n: int, m: int) -> int:
    """First-kind analogue; each lowered end also shifts (n, m) back by one."""
    _check_params(shape, n, m)
    if shape.length == 0:
        return 1
    if m == 0:
        return 0
    a, t = shape.weight.a[-1], shape.weight.t[-1]
    total = sum(
        s_step_rec(_replace_end(shape, t - i), n - 1 - i, m - 1 - i)
        for i in range(t - 1)
        if m - 1 - i >= 0
    )
    x = n - t + 1
    if m - t + 2 >= 0:
        total += x**a * s_step_rec(_drop_series(shape), x, m - t + 2)
    return total


@lru_cache(maxsize=None)
def S_sum_rec(shape: Shape, n: int, m: int) -> int:
    """Single-sum form: sum_i i^a C(t-2+m-i, t-2) S_prefix(n-m-1+i, i)."""
    _check_params(shape, n, m)
    if shape.length == 0:
        return 1
    a, t = shape.weight.a[-1], shape.weight.t[-1]
    prefix = _drop_series(shape)
    return sum(
        i**a * binomial(t - 2 + m - i, t - 2) * S_sum_rec(prefix, n - m - 1 + i, i)
        for i in range(m + 1)
    )


@lru_cache(maxsize=None)
def s_sum_rec(shape: Shape, n: int, m: int) -> int:
    """Single-sum form in the polynomial variable: b_k(n) = sum_i i^a C(n-i-1, t-2) b_prefix(i)."""
    _check_params(shape, n, m)
    if shape.length == 0:
        return 1
    a, t = shape.weight.a[-1], shape.weight.t[-1]
    prefix = _drop_series(shape)
    ell = prefix.length
    return sum(
        i**a * binomial(n - i - 1, t - 2) * s_sum_rec(prefix, i, i - ell)
        for i in range(ell + 1, n)
    )


# rendering


def _fmt_block(blk: Sequence[int]) -> str:
    return "{" + ", ".join(map(str, blk)) + "}"


def format_partition_system(sys: PartitionSystem) -> str:
    rows = [f"pi_{j} = " + " ".join(_fmt_block(b) for b in part) for j, part in enumerate(sys.pi, start=1)]
    rows.append("pi_0 = " + " ".join(_fmt_block(b) for b in sys.pi0))
    return "\n".join(rows)


def format_permutation_system(sys: PermutationSystem) -> str:
    rows = [f"sigma_{j} = (" + ", ".join(map(str, w)) + ")" for j, w in enumerate(sys.sigma, start=1)]
    rows.append("sigma_0 = " + " ".join(_fmt_block(b) for b in sys.sigma0))
    return "\n".join(rows)
