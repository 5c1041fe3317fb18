from pathlib import Path

import numpy as np
import pytest
from hypothesis import strategies as st

from src.helper import parse_partition
from src.partition_core import KostkaPair, Partition, dominates, partitions

FIXTURES = Path(__file__).parent / "fixtures"
CATALOGS = Path(__file__).parents[1] / "data" / "catalogs"

RUNNING_LAMBDA = (8, 7, 7, 7, 3, 2)
RUNNING_MU = (7, 7, 4, 4, 4, 4, 4)


@pytest.fixture
def running_pair():
    return KostkaPair(Partition(RUNNING_LAMBDA), Partition(RUNNING_MU), 7)


@pytest.fixture
def small_pair():
    """Reducible, but its KGR graph has no conservative subtree."""
    return KostkaPair(Partition((3, 2, 1)), Partition((2, 2, 1, 1)), 4)


@pytest.fixture
def running_chain():
    lines = (FIXTURES / "running_example_chain.txt").read_text(encoding="utf-8").splitlines()
    return [parse_partition(line) for line in lines if line and not line.startswith("#")]


@pytest.fixture
def running_history():
    text = (FIXTURES / "running_example_history.txt").read_text(encoding="utf-8")
    blocks = text.split("\n\n")
    return [np.array([[int(c) for c in row] for row in block.splitlines() if not row.startswith("#")])
            for block in blocks if block.strip()]


@st.composite
def partition_st(draw, max_size=10, max_length=None):
    n = draw(st.integers(min_value=0, max_value=max_size))
    options = list(partitions(n, max_length=max_length))
    if not options:
        return Partition()
    return draw(st.sampled_from(options))


@st.composite
def cone_pair_st(draw, max_size=10, rank=None):
    """A lattice point of the Kostka cone, rank at least the longer length."""
    lam = draw(partition_st(max_size=max_size, max_length=rank))
    below = [mu for mu in partitions(lam.size, max_length=rank) if dominates(lam, mu)] or [Partition()]
    mu = draw(st.sampled_from(below))
    r = rank or draw(st.integers(min_value=max(len(lam), len(mu), 1), max_value=max(len(lam), len(mu), 1) + 2))
    return KostkaPair(lam, mu, r)
