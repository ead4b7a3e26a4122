"""The verification battery: every identity family checked over a grid."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Callable, Iterable, Iterator, Sequence

from . import polynomials as sp
from .permutations import eulerian_brute, eulerian_rec
from .poset import build_poset, omega, omega_brute, order_polynomial
from .shapes import Shape, shape_list, shapes_up_to, sp_count
from .special import (
    S_odd,
    S_t,
    basis_identity_first,
    basis_identity_second,
    count_leader_partitions,
    count_leader_permutations,
    count_tuple_systems,
    odd_vs_polynomial,
    partition_leaders,
    permutation_leaders,
    r_stirling_sum_check,
    s_odd,
    s_t,
    tn_identity,
)
from .systems import (
    S_step_rec,
    S_sum_rec,
    count_partition_systems,
    count_permutation_systems,
    kstirling_S,
    kstirling_s,
    s_step_rec,
    s_sum_rec,
)

FAMILIES = (
    "examples-table",
    "routes",
    "structure",
    "reciprocity",
    "poset",
    "eulerian",
    "systems",
    "odd",
    "central",
)


@dataclass(frozen=True)
class Limits:
    max_K: int = 10
    max_part: int = 4
    max_m: int = 8
    poset_K: int = 8
    poset_m: int = 5
    systems_K: int = 8
    systems_m: int = 4
    systems_perm_n: int = 7
    eulerian_cap: int = 10**5
    seed_shapes: tuple[Shape, ...] | None = None

    def shapes(self, max_K: int | None = None, any_part: bool = False) -> list[Shape]:
        top = self.max_K if max_K is None else max_K
        if self.seed_shapes is not None:
            return [s for s in shape_list(self.seed_shapes) if s.K <= top]
        return list(shapes_up_to(top, None if any_part else self.max_part))


@dataclass
class FamilyResult:
    name: str
    checked: int = 0
    shapes: set = field(default_factory=set)
    counterexample: dict | None = None
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return self.counterexample is None

    def as_dict(self, timing: bool = False) -> dict:
        out = {
            "passed": self.passed,
            "checks": self.checked,
            "shapes": len(self.shapes),
            "counterexample": self.counterexample,
        }
        if timing:
            out["seconds"] = round(self.seconds, 3)
        return out


Check = tuple[dict, bool]


def _run(name: str, checks: Iterable[Check]) -> FamilyResult:
    res = FamilyResult(name)
    start = time.perf_counter()
    for label, ok in checks:
        res.checked += 1
        if "shape" in label:
            res.shapes.add(label["shape"])
        if not ok and res.counterexample is None:
            res.counterexample = {k: str(v) for k, v in label.items()}
    res.seconds = time.perf_counter() - start
    return res


# independent classical oracles


@lru_cache(maxsize=None)
def classical_S2(n: int, k: int) -> int:
    """Stirling numbers of the second kind, S(n,k) = k S(n-1,k) + S(n-1,k-1)."""
    if n == k:
        return 1
    if n <= 0 or k <= 0 or k > n:
        return 0
    return k * classical_S2(n - 1, k) + classical_S2(n - 1, k - 1)


@lru_cache(maxsize=None)
def classical_c1(n: int, k: int) -> int:
    """Unsigned Stirling numbers of the first kind, c(n,k) = (n-1) c(n-1,k) + c(n-1,k-1)."""
    if n == k:
        return 1
    if n <= 0 or k <= 0 or k > n:
        return 0
    return (n - 1) * classical_c1(n - 1, k) + classical_c1(n - 1, k - 1)


def _multiset_perms(counts: dict[int, int], length: int) -> Iterator[tuple[int, ...]]:
    if length == 0:
        yield ()
        return
    for v in sorted(counts):
        if counts[v]:
            counts[v] -= 1
            for rest in _multiset_perms(counts, length - 1):
                yield (v, *rest)
            counts[v] += 1


def second_order_eulerian_direct(n: int) -> list[int]:
    """Counts by number of plain descents over Stirling words of {1,1,...,n,n},
    found by filtering all multiset permutations."""
    row = [0] * max(n, 1)
    for w in _multiset_perms({v: 2 for v in range(1, n + 1)}, 2 * n):
        pos: dict[int, list[int]] = {}
        for i, v in enumerate(w):
            pos.setdefault(v, []).append(i)
        if all(min(w[p[0] : p[1] + 1]) >= v for v, p in pos.items()):
            row[sum(1 for i in range(len(w) - 1) if w[i] > w[i + 1])] += 1
    return row


# families


def _examples_table(lim: Limits) -> Iterator[Check]:
    for n in range(0, 6):
        ones = Shape((1,) * n)
        for m in range(lim.max_m + 1):
            yield {"row": "ones", "shape": ones, "m": m}, sp.B_rec(ones, m) == m**n == sp.b_rec(ones, m)
    for k in range(1, 7):
        s = Shape((k,))
        for m in range(lim.max_m + 1):
            yield {"row": "single", "shape": s, "m": m}, (
                sp.B_rec(s, m) == comb(k + m - 1, k) and sp.b_rec(s, m) == comb(m, k)
            )
    for n in range(1, 6):
        s = Shape((1,) * (n - 1) + (2,))
        for m in range(lim.max_m + 1):
            yield {"row": "ones-then-two", "shape": s, "m": m}, (
                sp.B_rec(s, m) == sum(i**n for i in range(1, m + 1))
                and sp.b_rec(s, m) == sum(i**n for i in range(1, m))
            )
    for n in range(0, 6):
        s = Shape((2,) * n)
        for m in range(lim.max_m + 1):
            c = classical_c1(m, m - n) if m - n >= 0 else 0
            yield {"row": "twos", "shape": s, "m": m}, (
                sp.B_rec(s, m) == classical_S2(n + m, m) and sp.b_rec(s, m) == c
            )
    for n in range(0, 6):
        s = Shape((1, 2) * n)
        for m in range(lim.max_m + 1):
            yield {"row": "one-two", "shape": s, "m": m}, (
                sp.B_rec(s, m) == S_t(2, n + m, m) and sp.b_rec(s, m) == s_t(2, m, m - n)
            )


def _routes(lim: Limits) -> Iterator[Check]:
    for s in lim.shapes():
        for m in range(lim.max_m + 1):
            Bs = [sp.B_series(s, m), sp.B_rec(s, m), sp.closed_form_S(s, m)]
            bs = [sp.b_series(s, m), sp.b_rec(s, m), sp.closed_form_s(s, m)]
            if s.n and s.last > 1:
                Bs.append(sp.B_conv(s, m))
                bs.append(sp.b_conv(s, m))
            yield {"shape": s, "m": m}, len(set(Bs)) == 1 and len(set(bs)) == 1


def _structure(lim: Limits) -> Iterator[Check]:
    for s in lim.shapes():
        pair = _interpolated(s)
        B, b = pair
        K, n = s.K, s.n
        lead = Fraction(sp_count(s), factorial(K))
        yield {"shape": s, "claim": "degree"}, B.degree == K and b.degree == K
        yield {"shape": s, "claim": "leading"}, B.leading == lead and b.leading == lead
        if n:
            yield {"shape": s, "claim": "zeros"}, all(B(-j) == 0 and b(j) == 0 for j in range(K - n + 1))
        a = s.weight.trailing
        if a:
            core = s.strip_trailing()
            yield {"shape": s, "claim": "trailing-run"}, all(
                sp.B_rec(s, m) == m**a * sp.B_rec(core, m) and sp.b_rec(s, m) == m**a * sp.b_rec(core, m)
                for m in range(lim.max_m + 1)
            )
        # values past the interpolation nodes still match the counting routes
        yield {"shape": s, "claim": "extrapolation"}, all(
            B(m) == sp.B_rec(s, m) and b(m) == sp.b_rec(s, m) for m in range(K + 1, K + 4)
        )


def _interpolated(s: Shape):
    from .arith import interpolate

    B = interpolate([(m, sp.B_rec(s, m)) for m in range(s.K + 1)])
    b = interpolate([(m, sp.b_rec(s, m)) for m in range(s.K + 1)])
    return B, b


def _reciprocity(lim: Limits) -> Iterator[Check]:
    for s in lim.shapes():
        B, b = _interpolated(s)
        sign = -1 if s.K % 2 else 1
        yield {"shape": s}, (B - b.reflect().scale(sign)).is_zero()


def _poset(lim: Limits) -> Iterator[Check]:
    for s in lim.shapes(min(lim.max_K, lim.poset_K), any_part=True):
        P = build_poset(s).base
        for m in range(lim.poset_m + 1):
            B, b = sp.B_rec(s, m), sp.b_rec(s, m)
            yield {"shape": s, "m": m, "claim": "weak"}, omega_brute(P, m) == B == omega(P, m)
            yield {"shape": s, "m": m, "claim": "strict"}, omega_brute(P, m, strict=True) == b == omega(P, m, strict=True)
        weak = order_polynomial(P)
        strict = order_polynomial(P, strict=True)
        sign = -1 if P.size % 2 else 1
        yield {"shape": s, "claim": "order-reciprocity"}, weak == strict.reflect().scale(sign)


def _eulerian_shapes(lim: Limits) -> list[Shape]:
    """The grid, plus longer shapes with at most three components (sp_count
    stays tiny there, but K runs past the grid)."""
    grid = lim.shapes()
    if lim.seed_shapes is not None:
        return grid
    tail = [s for s in shapes_up_to(lim.max_K + 6, min_K=lim.max_K + 1) if s.n <= 3]
    return grid + tail


def _eulerian(lim: Limits) -> Iterator[Check]:
    for s in _eulerian_shapes(lim):
        if sp_count(s) > lim.eulerian_cap:
            continue
        rec = eulerian_rec(s)
        yield {"shape": s, "claim": "rec=brute"}, rec == eulerian_brute(s, lim.eulerian_cap)
        yield {"shape": s, "claim": "row-sum"}, rec.total() == sp_count(s)
    for n in range(1, 5):
        s = Shape((2,) * n)
        yield {"shape": s, "claim": "second-order"}, list(eulerian_rec(s).counts) == second_order_eulerian_direct(n)


def _systems(lim: Limits) -> Iterator[Check]:
    ex = Shape((1, 3, 1, 4))
    yield {"shape": ex, "claim": "S(4,2)=27"}, count_partition_systems(ex, 4, 2) == 27 == kstirling_S(ex, 4, 2)
    yield {"shape": ex, "claim": "s(6,4)=9"}, count_permutation_systems(ex, 6, 4) == 9 == kstirling_s(ex, 6, 4)
    for s in lim.shapes(min(lim.max_K, lim.systems_K), any_part=True):
        if s.weight.trailing or not s.n:
            continue
        ell = s.length
        for m in range(min(lim.systems_m, lim.max_m) + 1):
            yield {"shape": s, "m": m, "claim": "partition-systems"}, (
                count_partition_systems(s, ell + m, m) == sp.B_rec(s, m)
            )
        for N in range(ell, lim.systems_perm_n + 1):
            yield {"shape": s, "n": N, "claim": "permutation-systems"}, (
                count_permutation_systems(s, N, N - ell) == sp.b_rec(s, N)
            )
        for m in range(lim.max_m + 1):
            S = kstirling_S(s, ell + m, m)
            sv = kstirling_s(s, ell + m, m)
            yield {"shape": s, "m": m, "claim": "corollary-recurrences"}, (
                S_step_rec(s, ell + m, m) == S == S_sum_rec(s, ell + m, m)
                and s_step_rec(s, ell + m, m) == sv == s_sum_rec(s, ell + m, m)
            )
            sign = -1 if s.K % 2 else 1
            yield {"shape": s, "m": m, "claim": "extended-reciprocity"}, (
                S == sign * kstirling_s(s, -m, -(ell + m))
            )


def _odd(lim: Limits) -> Iterator[Check]:
    yield {"claim": "leaders {{1,3},{2},{4}}"}, partition_leaders([[1, 3], [2], [4]]) == [1, 2]
    yield {"claim": "leaders 14852763"}, permutation_leaders([1, 4, 8, 5, 2, 7, 6, 3]) == [1, 2, 3]
    for n in range(0, 9):
        for k in range(0, n + 1):
            yield {"claim": "leader-partitions", "n": n, "k": k}, count_leader_partitions(n, k) == S_odd(n, k)
    for n in range(0, 8):
        for k in range(0, n + 1):
            yield {"claim": "leader-permutations", "n": n, "k": k}, count_leader_permutations(n, k) == s_odd(n, k)
    for n in range(0, 6):
        for m in range(0, 7):
            yield {"claim": "odd-shape", "n": n, "m": m}, odd_vs_polynomial(n, m)
    for n in range(1, 7):
        for k in range(1, n + 1):
            yield {"claim": "r-stirling", "n": n, "k": k}, r_stirling_sum_check(n, k)


def _central(lim: Limits) -> Iterator[Check]:
    for t in range(1, 5):
        for n in range(0, 9):
            yield {"claim": "basis-second", "t": t, "n": n}, basis_identity_second(t, n)
            yield {"claim": "basis-first", "t": t, "n": n}, basis_identity_first(t, n)
    for t in (1, 2):
        for n in range(0, 7):
            for k in range(0, n + 1):
                yield {"claim": "tuples-partition", "t": t, "n": n, "k": k}, (
                    count_tuple_systems(t, n, k, "partition") == S_t(t, n, k)
                )
                yield {"claim": "tuples-permutation", "t": t, "n": n, "k": k}, (
                    count_tuple_systems(t, n, k, "permutation") == s_t(t, n, k)
                )
    for t in (1, 2, 3):
        for n in range(0, 5):
            for m in range(0, 7):
                yield {"claim": "tn-shape", "t": t, "n": n, "m": m}, tn_identity(t, n, m)


_RUNNERS: dict[str, Callable[[Limits], Iterator[Check]]] = {
    "examples-table": _examples_table,
    "routes": _routes,
    "structure": _structure,
    "reciprocity": _reciprocity,
    "poset": _poset,
    "eulerian": _eulerian,
    "systems": _systems,
    "odd": _odd,
    "central": _central,
}


def run_family(name: str, limits: Limits | None = None) -> FamilyResult:
    return _run(name, _RUNNERS[name](limits or Limits()))


def verify_battery(limits: Limits | None = None, only: Sequence[str] | None = None) -> list[FamilyResult]:
    """Run the selected identity families (all by default) in canonical order."""
    limits = limits or Limits()
    names = [f for f in FAMILIES if only is None or f in only]
    unknown = set(only or ()) - set(FAMILIES)
    if unknown:
        raise ValueError(f"unknown identity families: {sorted(unknown)}")
    return [run_family(name, limits) for name in names]
