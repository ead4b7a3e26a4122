import pytest

from stirpoly import InconsistentParameters, Shape
from stirpoly.polynomials import B_rec, b_rec
from stirpoly.shapes import shapes_up_to
from stirpoly.systems import (
    PartitionSystem,
    PermutationSystem,
    S_step_rec,
    S_sum_rec,
    count_partition_systems,
    count_permutation_systems,
    format_partition_system,
    format_permutation_system,
    is_partition_system,
    is_permutation_system,
    is_segmented,
    iter_partition_systems,
    iter_permutation_systems,
    kstirling_S,
    kstirling_s,
    lmin,
    related,
    s_step_rec,
    s_sum_rec,
    set_partitions,
)

from oracles import set_partitions_naive, stirling2

EX = Shape((1, 3, 1, 4))
BIG_P = Shape((1, 1, 3, 2, 1, 1, 1, 2, 5, 6))
BIG_S = Shape((1, 1, 3, 2, 1, 1, 1, 2, 3, 3))


def fam(*blocks):
    return tuple(tuple(b) for b in blocks)


PAPER_PARTITION_SYSTEMS = [
    PartitionSystem(
        fam([1, 3], [2], [4, 5], [6], [8]),
        (
            fam([1, 7], [2, 3], [4, 5, 10], [6], [8, 9]),
            fam([1, 3, 5, 9, 10], [2, 7], [4], [6], [8]),
            fam([1, 5, 9, 10], [2, 3], [4, 7], [6], [8]),
            fam([1, 3, 5, 9, 10], [2], [4], [6, 7], [8]),
        ),
    ),
    PartitionSystem(
        fam([1, 3], [2], [4, 5], [6], [10, 11, 11, 11]),
        (
            fam([1, 7], [2, 3], [4, 5, 9], [6, 8], [10]),
            fam([1, 3, 5, 8, 9], [2, 7], [4], [6], [10]),
            fam([1, 5, 8, 9], [2, 3], [4, 7], [6], [10]),
            fam([1, 3, 5, 8, 9], [2], [4], [6, 7], [10]),
        ),
    ),
]

PAPER_PERMUTATION_SYSTEMS = [
    PermutationSystem(
        fam([10, 11], [8], [7, 9], [3, 4], [1, 2]),
        (
            (10, 8, 9, 7, 3, 5, 6, 4, 1, 2),
            (10, 8, 7, 3, 1, 5, 2, 4, 6, 9),
            (10, 8, 7, 3, 1, 2, 5, 4, 6, 9),
            (10, 8, 7, 3, 1, 2, 4, 5, 6, 9),
        ),
    ),
    PermutationSystem(
        fam([10, 11], [8, 9], [7], [3, 4], [1, 2]),
        (
            (10, 8, 7, 9, 3, 1, 6, 5, 4, 2),
            (10, 8, 7, 3, 1, 2, 4, 5, 6, 9),
            (10, 8, 7, 3, 5, 1, 2, 4, 6, 9),
            (10, 8, 7, 3, 1, 2, 5, 4, 6, 9),
        ),
    ),
]


def test_related_and_segmented():
    F = [(1, 3, 6), (2, 3, 3, 5), (2, 4, 6)]
    assert related(F, 2, 3) and related(F, 2, 4) and not related(F, 2, 1)
    U = range(1, 9)
    assert is_segmented([(1, 2), (3, 3, 6), (4,), (5,), (7, 7, 8)], U)
    assert not is_segmented([(1, 2), (3, 3, 6), (4, 5), (7, 7, 8)], U)
    with pytest.raises(ValueError):
        is_segmented([()], U)


def test_worked_ten_element_systems():
    for sys_ in PAPER_PARTITION_SYSTEMS:
        assert is_partition_system(sys_, BIG_P, 10, 5)
    for sys_ in PAPER_PERMUTATION_SYSTEMS:
        assert is_permutation_system(sys_, BIG_S, 10, 5)


def test_broken_systems_are_rejected():
    good = PAPER_PARTITION_SYSTEMS[0]
    # x_1 = 3 must share a block with 1 in pi_0
    assert not is_partition_system(PartitionSystem(fam([1], [2, 3], [4, 5], [6], [8]), good.pi), BIG_P, 10, 5)
    # 7 (= x_3, a_3 = 4) is never pinned, but 3 (a_1 = 3) must sit with 1 in pi_4
    pi = good.pi[:3] + (fam([1, 5, 9, 10], [2, 3], [4], [6, 7], [8]),)
    assert not is_partition_system(PartitionSystem(good.pi0, pi), BIG_P, 10, 5)
    # wrong number of stages
    assert not is_partition_system(PartitionSystem(good.pi0, good.pi[:3]), BIG_P, 10, 5)
    perm = PAPER_PERMUTATION_SYSTEMS[0]
    # sigma_0 must use the prescribed multiset exactly: drop the 11
    bad0 = fam([10], [8], [7, 9], [3, 4], [1, 2])
    assert not is_permutation_system(PermutationSystem(bad0, perm.sigma), BIG_S, 10, 5)
    # pi_0 may not merge 1,2,3 (2 would need to be a minimum)
    one = next(iter_partition_systems(EX, 4, 2))
    assert not is_partition_system(PartitionSystem(fam([1, 2, 3], [4]), one.pi), EX, 4, 2)


def test_paper_counts():
    assert count_partition_systems(EX, 4, 2) == 27 == kstirling_S(EX, 4, 2)
    assert count_permutation_systems(EX, 6, 4) == 9 == kstirling_s(EX, 6, 4)
    perms = list(iter_permutation_systems(EX, 6, 4))
    assert {lmin(s.sigma[0]) for s in perms} == {frozenset({6, 5, 3, 1})}


def test_generated_systems_are_valid_and_distinct():
    for s in shapes_up_to(6):
        if s.weight.trailing or not s.n:
            continue
        ell = s.length
        for m in range(4):
            got = list(iter_partition_systems(s, ell + m, m))
            assert len(got) == len(set(got)) == B_rec(s, m)
            assert all(is_partition_system(x, s, ell + m, m) for x in got)
        for N in range(ell, 6):
            got = list(iter_permutation_systems(s, N, N - ell))
            assert len(got) == len(set(got)) == b_rec(s, N)
            assert all(is_permutation_system(x, s, N, N - ell) for x in got)


def test_set_partitions_against_naive():
    for n in range(7):
        naive = list(set_partitions_naive(n))
        for k in range(n + 1):
            ours = sorted(tuple(sorted(tuple(sorted(b)) for b in p)) for p in set_partitions(n, k))
            assert ours == sorted(p for p in naive if len(p) == k)
            assert len(ours) == stirling2(n, k)


def test_corollary_recurrences():
    for s in shapes_up_to(8):
        if s.weight.trailing or not s.n:
            continue
        ell = s.length
        for m in range(6):
            S, sv = kstirling_S(s, ell + m, m), kstirling_s(s, ell + m, m)
            assert S_step_rec(s, ell + m, m) == S == S_sum_rec(s, ell + m, m)
            assert s_step_rec(s, ell + m, m) == sv == s_sum_rec(s, ell + m, m)


def test_parameter_checks():
    with pytest.raises(InconsistentParameters):
        count_partition_systems(EX, 5, 2)
    with pytest.raises(InconsistentParameters):
        count_partition_systems(Shape((2, 1)), 3, 2)
    with pytest.raises(InconsistentParameters):
        kstirling_S(EX, 3, 2)
    assert count_partition_systems(EX, 2, 0) == 0


def test_formatting():
    sys_ = next(iter_partition_systems(EX, 4, 2))
    text = format_partition_system(sys_)
    assert text.splitlines()[0].startswith("pi_1 = {1")
    assert text.splitlines()[-1].startswith("pi_0 = ")
    ptext = format_permutation_system(next(iter_permutation_systems(EX, 6, 4)))
    assert ptext.splitlines()[-1] == "sigma_0 = {1, 2} {3, 4} {5, 7} {6, 7}"
