import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.errors import InvalidPair, InvalidPartition, SizeCapExceeded
from src.partition_core import (KostkaPair, Partition, conjugate, dominates, in_kostka_cone,
                                kostka_count, kostka_positive, partitions, prefix_dominates)
from tests.conftest import cone_pair_st, partition_st


def test_partition_trims_zeros_and_reads_zero_past_end():
    p = Partition((3, 1, 0, 0))
    assert len(p) == 2
    assert p == (3, 1)
    assert p[5] == 0
    assert str(Partition()) == "∅"


@pytest.mark.parametrize("parts", [(1, 2), (2, -1), (1.5,)])
def test_partition_rejects_bad_parts(parts):
    with pytest.raises(InvalidPartition):
        Partition(parts)


def test_partition_arithmetic():
    assert Partition((2, 1)) + Partition((3, 3, 1)) == (5, 4, 1)
    assert Partition((5, 4, 1)) - Partition((2, 1)) == (3, 3, 1)
    with pytest.raises(InvalidPartition):
        Partition((2, 2)) - Partition((2,))


def test_conjugate_known_values():
    assert conjugate((8, 7, 7, 7, 3, 2)) == (6, 6, 5, 4, 4, 4, 4, 1)
    assert conjugate((7, 7, 4, 4, 4, 4, 4)) == (7, 7, 7, 7, 2, 2, 2)
    assert conjugate(()) == ()


@given(partition_st(max_size=14))
def test_conjugate_is_an_involution(p):
    assert conjugate(conjugate(p)) == p
    assert conjugate(p).size == p.size


@given(partition_st(max_size=10), partition_st(max_size=10))
def test_dominance_reverses_under_conjugation(a, b):
    if a.size == b.size:
        assert dominates(a, b) == dominates(conjugate(b), conjugate(a))


def test_partitions_count_and_order():
    listed = list(partitions(5))
    assert len(listed) == 7
    assert listed[0] == (5,) and listed[-1] == (1, 1, 1, 1, 1)
    assert list(partitions(6, max_part=3, max_length=2)) == [Partition((3, 3))]


def test_dominance_and_cone_membership():
    assert dominates((3, 1), (2, 2))
    assert not dominates((2, 2), (3, 1))
    assert not dominates((3,), (1, 1))
    assert prefix_dominates((3,), (1, 1))
    assert in_kostka_cone((2, 1), (1, 1, 1), 3)
    assert not in_kostka_cone((2, 1), (1, 1, 1), 2)
    assert kostka_positive((2, 1, 0), (1, 1, 1))


@pytest.mark.parametrize("lam, mu, expected", [
    ((4, 2, 1), (3, 2, 1, 1), 4),
    ((2, 1), (1, 1, 1), 2),
    ((3,), (1, 1, 1), 1),
    ((2, 2), (3, 1), 0),
    ((), (), 1),
])
def test_kostka_count(lam, mu, expected):
    assert kostka_count(lam, mu) == expected


@settings(max_examples=60, deadline=None)
@given(partition_st(max_size=7), partition_st(max_size=7))
def test_kostka_count_positive_iff_dominance(lam, mu):
    if lam.size == mu.size:
        assert (kostka_count(lam, mu) > 0) == dominates(lam, mu)


def test_kostka_count_respects_cap():
    with pytest.raises(SizeCapExceeded):
        kostka_count((10, 10), (10, 10), cap=12)


def test_kostka_pair_validation():
    with pytest.raises(InvalidPair):
        KostkaPair((2, 2), (3, 1), 2)
    with pytest.raises(InvalidPair):
        KostkaPair((2, 1), (1, 1, 1), 2)
    with pytest.raises(InvalidPair):
        KostkaPair((2,), (1,), 1)


@given(cone_pair_st(max_size=8, rank=4), cone_pair_st(max_size=8, rank=4))
def test_cone_is_closed_under_addition(p, q):
    total = p + q
    assert in_kostka_cone(total.lam, total.mu, 4)
    assert total.size == p.size + q.size


def test_kostka_pair_dict_and_sort_key():
    pair = KostkaPair((2, 1), (1, 1, 1), 3)
    assert pair.to_dict() == {"lambda": [2, 1], "mu": [1, 1, 1], "rank": 3}
    assert pair.sort_key() == (3, (2, 1), (1, 1, 1))
    assert str(pair) == "((2,1), (1,1,1))"


@given(st.integers(min_value=0, max_value=8))
def test_zero_pair_is_in_every_cone(r):
    assert in_kostka_cone((), (), r) == (r >= 1)


def test_kostka_count_positive_iff_dominance_exhaustive():
    for n in range(10):
        shapes = list(partitions(n))
        for lam in shapes:
            for mu in shapes:
                assert (kostka_count(lam, mu) > 0) == dominates(lam, mu)
