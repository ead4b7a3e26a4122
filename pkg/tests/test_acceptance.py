"""The ten acceptance criteria, each at its stated tolerance (exact) and time bound.

Every test appends one PASS/FAIL line, echoed in the terminal summary.
"""

from __future__ import annotations

import io
import json
import time
from fractions import Fraction
from math import comb, factorial

import pytest

import stirpoly
from conftest import ACCEPTANCE_LINES
from oracles import central_T, second_order_eulerian, stirling1u, stirling2
from stirpoly import Shape
from stirpoly import permutations as perm_mod
from stirpoly import polynomials as poly_mod
from stirpoly import poset as poset_mod
from stirpoly import special as special_mod
from stirpoly import systems as systems_mod
from stirpoly.cli import run
from stirpoly.polynomials import (
    B_conv,
    B_rec,
    B_series,
    b_conv,
    b_rec,
    b_series,
    closed_form_S,
    closed_form_s,
)
from stirpoly.shapes import shapes_up_to, sp_count

EX = Shape((1, 3, 1, 4))


@pytest.fixture(autouse=True)
def cold_caches():
    """Start each criterion without memoized results from earlier tests."""
    for mod in (poly_mod, perm_mod, poset_mod, special_mod, systems_mod):
        for obj in vars(mod).values():
            if hasattr(obj, "cache_clear"):
                obj.cache_clear()
    yield


def record(n: int, failures: list, seconds: float, bound: float, detail: str) -> None:
    ok = not failures and seconds < bound
    status = "PASS" if ok else "FAIL"
    line = f"criterion {n}: {status} {detail} [{seconds:.2f}s < {bound:g}s]"
    if failures:
        line += f" first failure: {failures[0]}"
    elif seconds >= bound:
        line += " (time bound exceeded)"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert not failures, failures[:5]
    assert seconds < bound, f"took {seconds:.2f}s"


def cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue()


def test_criterion_1_partition_example():
    start = time.perf_counter()
    fails = []
    code, out = cli("systems", "--shape", "1,3,1,4", "--n", "4", "--m", "2", "--kind", "partition")
    if code != 0 or json.loads(out)["count"] != "27":
        fails.append(("systems", code, out))
    code, out = cli("poly", "--shape", "1,3,1,4", "--eval", "2")
    if code != 0 or json.loads(out)["B"] != "27":
        fails.append(("poly", code, out))
    if systems_mod.count_partition_systems(EX, 4, 2) != 27:
        fails.append("library enumeration")
    record(1, fails, time.perf_counter() - start, 1, "S_(1,3,1,4)(4,2) = 27 by enumeration and by B(2)")


def test_criterion_2_permutation_example():
    start = time.perf_counter()
    fails = []
    code, out = cli("systems", "--shape", "1,3,1,4", "--n", "6", "--m", "4", "--kind", "permutation")
    if code != 0 or json.loads(out)["count"] != "9":
        fails.append(("systems", code, out))
    code, out = cli("poly", "--shape", "1,3,1,4", "--eval", "6")
    if code != 0 or json.loads(out)["b"] != "9":
        fails.append(("poly", code, out))
    if systems_mod.count_permutation_systems(EX, 6, 4) != 9:
        fails.append("library enumeration")
    record(2, fails, time.perf_counter() - start, 1, "s_(1,3,1,4)(6,4) = 9 by enumeration and by b(6)")


def test_criterion_3_examples_table():
    start = time.perf_counter()
    fails = []

    def check(label, got, want):
        if got != want:
            fails.append((label, got, want))

    checks = 0
    for n in range(0, 6):
        for m in range(0, 9):
            ones = Shape((1,) * n)
            check(("ones", n, m, "B"), B_rec(ones, m), m**n)
            check(("ones", n, m, "b"), b_rec(ones, m), m**n)
            if n >= 1:
                s = Shape((1,) * (n - 1) + (2,))
                check(("ones-two", n, m, "B"), B_rec(s, m), sum(i**n for i in range(1, m + 1)))
                check(("ones-two", n, m, "b"), b_rec(s, m), sum(i**n for i in range(1, m)))
            twos = Shape((2,) * n)
            check(("twos", n, m, "B"), B_rec(twos, m), stirling2(n + m, m))
            check(("twos", n, m, "b"), b_rec(twos, m), stirling1u(m, m - n) if m >= n else 0)
            check(("one-two", n, m, "B"), B_rec(Shape((1, 2) * n), m), central_T(2, n + m, m))
            checks += 9
    for k in range(1, 7):
        for m in range(0, 9):
            check(("single", k, m, "B"), B_rec(Shape((k,)), m), comb(k + m - 1, k))
            check(("single", k, m, "b"), b_rec(Shape((k,)), m), comb(m, k))
            checks += 2
    record(3, fails, time.perf_counter() - start, 5, f"examples-table rows, n <= 5, m <= 8 ({checks} equalities)")


def test_criterion_4_route_equivalence():
    start = time.perf_counter()
    fails = []
    shapes = list(shapes_up_to(10, 4))
    for s in shapes:
        conv = s.n > 0 and s.last > 1
        for m in range(0, 9):
            Bs = [B_series(s, m), B_rec(s, m), closed_form_S(s, m)] + ([B_conv(s, m)] if conv else [])
            bs = [b_series(s, m), b_rec(s, m), closed_form_s(s, m)] + ([b_conv(s, m)] if conv else [])
            if len(set(Bs)) != 1 or len(set(bs)) != 1:
                fails.append((str(s), m, Bs, bs))
    record(4, fails, time.perf_counter() - start, 60, f"four routes agree on {len(shapes)} shapes, m <= 8")


def test_criterion_5_structure():
    start = time.perf_counter()
    fails = []
    shapes = list(shapes_up_to(10, 4))
    for s in shapes:
        K, n = s.K, s.n
        B = stirpoly.interpolate([(m, B_rec(s, m)) for m in range(K + 1)])
        b = stirpoly.interpolate([(m, b_rec(s, m)) for m in range(K + 1)])
        lead = Fraction(sp_count(s), factorial(K))
        if B.degree != K or b.degree != K:
            fails.append((str(s), "degree"))
        if B.leading != lead or b.leading != lead:
            fails.append((str(s), "leading"))
        if n and not all(B(-j) == 0 and b(j) == 0 for j in range(K - n + 1)):
            fails.append((str(s), "zeros"))
        if n and (B(-(K - n + 1)) == 0 or b(K - n + 1) == 0):
            fails.append((str(s), "zero pattern too long"))
        if B.coeffs != b.reflect().scale((-1) ** K).coeffs:
            fails.append((str(s), "reciprocity"))
    record(5, fails, time.perf_counter() - start, 30, f"degree, leading, zeros, reciprocity on {len(shapes)} shapes")


def test_criterion_6_poset():
    start = time.perf_counter()
    fails = []
    shapes = list(shapes_up_to(8))
    for s in shapes:
        P = poset_mod.build_poset(s).base
        for m in range(0, 6):
            weak, strict = poset_mod.omega_brute(P, m), poset_mod.omega_brute(P, m, strict=True)
            if weak != B_rec(s, m) or strict != b_rec(s, m):
                fails.append((str(s), m, weak, strict))
    record(6, fails, time.perf_counter() - start, 60, f"Omega = B, strict Omega = b on {len(shapes)} posets, m <= 5")


def test_criterion_7_eulerian():
    start = time.perf_counter()
    fails = []
    # every shape with K <= 10, parts <= 4 and sp_count <= 10^5, plus long shapes
    # with at most three components (K <= 16)
    grid = [s for s in shapes_up_to(10, 4) if sp_count(s) <= 10**5]
    grid += [s for s in shapes_up_to(16, min_K=11) if s.n <= 3]
    for s in grid:
        rec = perm_mod.eulerian_rec(s)
        if rec != perm_mod.eulerian_brute(s, 10**5):
            fails.append((str(s), "rec != brute"))
        if rec.total() != sp_count(s):
            fails.append((str(s), "row sum"))
    for n in range(1, 8):
        row = list(perm_mod.eulerian_rec(Shape((2,) * n)).counts)
        if row != [second_order_eulerian(n, k) for k in range(n)]:
            fails.append(((2,) * n, "second-order row"))
    from stirpoly.verify import second_order_eulerian_direct

    for n in range(1, 6):
        if list(perm_mod.eulerian_rec(Shape((2,) * n)).counts) != second_order_eulerian_direct(n):
            fails.append(((2,) * n, "direct count"))
    record(7, fails, time.perf_counter() - start, 30, f"rec = brute and row sums on {len(grid)} shapes; (2,...,2) rows")


def test_criterion_8_odd():
    start = time.perf_counter()
    fails = []
    sp = special_mod
    if sp.partition_leaders([[1, 3], [2], [4]]) != [1, 2]:
        fails.append("partition leaders example")
    if sp.permutation_leaders((1, 4, 8, 5, 2, 7, 6, 3)) != [1, 2, 3]:
        fails.append("permutation leaders example")
    for n in range(0, 9):
        for k in range(0, n + 1):
            if sp.count_leader_partitions(n, k) != sp.S_odd(n, k):
                fails.append(("S_odd", n, k))
    for n in range(0, 8):
        for k in range(0, n + 1):
            if sp.count_leader_permutations(n, k) != sp.s_odd(n, k):
                fails.append(("s_odd", n, k))
    for n in range(0, 6):
        for m in range(0, 9):
            if not sp.odd_vs_polynomial(n, m):
                fails.append(("odd shape", n, m))
    for n in range(1, 7):
        for k in range(1, n + 1):
            if not sp.r_stirling_sum_check(n, k):
                fails.append(("r-Stirling", n, k))
    record(8, fails, time.perf_counter() - start, 30, "leader counts, worked leaders, odd shape, r-Stirling sums")


def test_criterion_9_central():
    start = time.perf_counter()
    fails = []
    sp = special_mod
    for t in range(1, 5):
        for n in range(0, 9):
            if not (sp.basis_identity_second(t, n) and sp.basis_identity_first(t, n)):
                fails.append(("basis", t, n))
    for t in (1, 2):
        for n in range(0, 7):
            for k in range(0, n + 1):
                if sp.count_tuple_systems(t, n, k, "partition") != sp.S_t(t, n, k):
                    fails.append(("tuples S", t, n, k))
                if sp.count_tuple_systems(t, n, k, "permutation") != sp.s_t(t, n, k):
                    fails.append(("tuples s", t, n, k))
    for t in (1, 2, 3):
        for n in range(0, 5):
            for m in range(0, 7):
                if not sp.tn_identity(t, n, m):
                    fails.append(("tmul", t, n, m))
    record(9, fails, time.perf_counter() - start, 30, "basis identities, t-tuple counts, nested sums")


def test_criterion_10_battery():
    start = time.perf_counter()
    code, out = cli("verify")
    code2, out2 = cli("verify")
    fails = []
    if code != 0:
        fails.append(f"exit code {code}")
    doc = json.loads(out)
    bad = [name for name, fam in doc["families"].items() if not fam["passed"]]
    if bad:
        fails.append(f"failing families {bad}")
    if out != out2 or code2 != code:
        fails.append("report not byte-deterministic")
    elapsed = time.perf_counter() - start
    record(10, fails, elapsed, 300, f"verify battery, {len(doc['families'])} families, two identical runs")


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q"]))
