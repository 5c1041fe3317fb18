import pytest
from hypothesis import given, settings

from src.errors import InvalidPair, ShapeError, SizeCapExceeded
from src.littlewood_richardson import (LrTriple, counterexample_family, is_horizontal_strip, lr_coefficient,
                                       pieri_coefficient, verify_counterexample)
from src.partition_core import Partition, partitions
from tests.conftest import partition_st


def test_classic_coefficient():
    assert lr_coefficient(LrTriple((2, 1), (2, 1), (3, 2, 1), rank=3)) == 2


@pytest.mark.parametrize("lam, row, nu", [((2,), 2, (3, 1)), ((4, 2), 3, (5, 3, 1))])
def test_pieri_cases(lam, row, nu):
    assert pieri_coefficient(lam, row, nu) == 1
    assert lr_coefficient(LrTriple(lam, (row,), nu, rank=3)) == 1
    assert lr_coefficient(LrTriple((row,), lam, nu, rank=3)) == 1


def test_horizontal_strip():
    assert is_horizontal_strip((2,), (3, 1))
    assert not is_horizontal_strip((1,), (2, 2))
    assert not is_horizontal_strip((3,), (2, 1))


@settings(max_examples=40, deadline=None)
@given(partition_st(max_size=5, max_length=3), partition_st(max_size=3, max_length=3))
def test_lr_agrees_with_pieri_for_single_rows(lam, extra):
    row = extra.size
    if row == 0:
        return
    for nu in partitions(lam.size + row, max_length=4):
        if nu.contains(lam):
            triple = LrTriple(lam, Partition((row,)), nu, rank=4)
            assert lr_coefficient(triple) == pieri_coefficient(lam, row, nu)


def test_lr_coefficient_is_symmetric():
    for n in range(1, 11):
        for nu in partitions(n):
            for k in range(n // 2 + 1):
                smaller = [p for p in partitions(k) if nu.contains(p)]
                larger = [p for p in partitions(n - k) if nu.contains(p)]
                for lam in smaller:
                    for mu in larger:
                        forward = lr_coefficient(LrTriple(lam, mu, nu, rank=len(nu)))
                        assert forward == lr_coefficient(LrTriple(mu, lam, nu, rank=len(nu))), (lam, mu, nu)


def test_empty_lambda_counts_only_equal_shapes():
    for n in range(1, 7):
        shapes = list(partitions(n))
        for mu in shapes:
            for nu in shapes:
                assert lr_coefficient(LrTriple((), mu, nu, rank=n)) == int(mu == nu)


@pytest.mark.parametrize("k", [2, 3])
def test_staircase_coefficient(k):
    mu = tuple(range(2 * k - 2, 0, -2))
    nu = tuple(range(2 * k - 1, 0, -2))
    assert lr_coefficient(LrTriple((k,), mu, nu, rank=k)) == 1
    assert pieri_coefficient(mu, k, nu) == 1


def test_lr_rejects_non_containing_shapes():
    with pytest.raises(ShapeError):
        lr_coefficient(LrTriple((3,), (1,), (2, 2), rank=2))
    with pytest.raises(SizeCapExceeded):
        lr_coefficient(LrTriple((10,), (10,), (20,), rank=1), cap=15)
    assert lr_coefficient(LrTriple((2,), (1,), (2, 2), rank=2)) == 0


@pytest.mark.parametrize("k, lam, mu, nu", [
    (2, (2, 1, 1), (1, 1, 1), (2, 2, 1, 1, 1)),
    (3, (3, 3, 2, 2, 2), (4, 4, 4, 2, 2, 2), (6, 6, 4, 4, 4, 2, 2, 2)),
])
def test_family_members(k, lam, mu, nu):
    triple = counterexample_family(k)
    assert (triple.lam, triple.mu, triple.nu) == (lam, mu, nu)
    assert triple.rank == 3 * k - 1
    assert lr_coefficient(triple) >= 1


def test_family_starts_at_two():
    with pytest.raises(InvalidPair):
        counterexample_family(1)


def test_family_growth_exceeds_rank_from_k4():
    report = verify_counterexample(3, upto=8)
    assert report.coefficient >= 1
    assert [row.exceeds_rank for row in report.growth] == [False, False, True, True, True, True, True]
    assert report.growth[-1].nu1 == 56
    assert report.growth[-1].rank == 23
    assert all(row.coefficient is None for row in report.growth if row.k > 3)
