import numpy as np
import pytest
from hypothesis import given, settings

from src.errors import MalformedStarMatrix
from src.gale_ryser import StarMatrix, matrix_reducible, ryser_canonical, star_matrix
from src.kgr import (WitnessKind, build_graph, fast_reducibility, find_conservative_subtree,
                     is_connected, segments_cross, star_predicate_holds, verify_subtree)
from src.partition_core import KostkaPair, dominates, partitions
from src.semigroup import irreducibility_witness
from tests.conftest import cone_pair_st


def cell(code):
    """12 -> (1, 2)"""
    return divmod(code, 10)


def arcs(*pairs):
    return {(cell(a), cell(b)) for a, b in pairs}


RUNNING_HORIZONTAL = arcs((18, 14), (34, 33), (36, 35), (53, 52), (57, 56), (62, 61), (65, 64))
RUNNING_VERTICAL = arcs((52, 62), (72, 62), (33, 53), (73, 53), (14, 34), (64, 34), (35, 65), (75, 65),
                        (26, 36), (56, 36), (27, 57), (77, 57), (28, 18))
RED_VERTICES = {cell(c) for c in (62, 52, 72, 53, 33, 73, 34, 14, 18, 28, 64)}
RED_ARCS = arcs((18, 14), (14, 34), (34, 33), (33, 53), (53, 52), (52, 62), (28, 18), (64, 34),
                (72, 62), (73, 53))


@pytest.fixture
def running_graph(running_pair):
    return build_graph(star_matrix(ryser_canonical(running_pair)))


def test_running_graph_arcs(running_graph):
    assert len(running_graph.vertices) == 21
    assert len(running_graph.arcs) == 20
    assert set(running_graph.horizontal_arcs) == RUNNING_HORIZONTAL
    assert set(running_graph.vertical_arcs) == RUNNING_VERTICAL
    assert running_graph.sources() == sorted(cell(c) for c in (26, 27, 28, 72, 73, 75, 77))


def test_running_graph_is_connected(running_graph):
    assert is_connected(running_graph)


def test_running_conservative_subtree(running_graph):
    witness = find_conservative_subtree(running_graph)
    assert witness.kind == WitnessKind.C2
    assert witness.sink == (6, 2)
    assert witness.row_source == (6, 4)
    assert set(witness.vertices) == RED_VERTICES
    assert set(witness.arcs) == RED_ARCS
    assert witness.columns == (2, 3, 4, 8)
    assert verify_subtree(running_graph, witness)
    assert star_predicate_holds(running_graph.star, witness.columns)


def test_fast_reducibility_on_running_example(running_pair):
    parts = fast_reducibility(running_pair)
    assert parts.columns == (2, 3, 4, 8)
    assert parts.bullet.lam == (4, 3, 3, 3, 2, 1)
    assert parts.circ.mu == (4, 4, 2, 2, 2, 2, 2)


def test_small_example_graph_has_no_subtree(small_pair):
    G = build_graph(star_matrix(ryser_canonical(small_pair)))
    assert len(G.vertices) == 6
    assert set(G.horizontal_arcs) == arcs((13, 12), (32, 31))
    assert set(G.vertical_arcs) == arcs((12, 32), (42, 32), (23, 13))
    assert is_connected(G)
    assert find_conservative_subtree(G) is None
    # the fast path is incomplete: the pair still splits
    assert fast_reducibility(small_pair) is None
    assert irreducibility_witness(small_pair) is not None


def test_disconnected_graph_yields_first_column_component():
    # A((2,2),(2,2)) has two identical columns; no horizontal arcs at all
    pair = KostkaPair((2, 2), (2, 2), 2)
    G = build_graph(star_matrix(ryser_canonical(pair)))
    assert not is_connected(G)
    witness = find_conservative_subtree(G)
    assert witness.kind == WitnessKind.C1
    assert witness.columns == (1,)
    assert fast_reducibility(pair).columns == (1,)


def test_malformed_star_matrices_are_rejected():
    no_plus = StarMatrix(entries=np.array([[-1, 1], [1, 0]], dtype=np.int8), mu_star=(0, 1))
    with pytest.raises(MalformedStarMatrix):
        build_graph(no_plus, check=False)
    two_minus = StarMatrix(entries=np.array([[1, -1], [1, -1], [0, 1]], dtype=np.int8), mu_star=(0, 0, 1))
    with pytest.raises(MalformedStarMatrix):
        build_graph(two_minus, check=False)


def test_segments_cross():
    assert segments_cross(((0, 0), (2, 2)), ((0, 2), (2, 0)))
    assert not segments_cross(((0, 0), (1, 0)), ((1, 0), (1, 1)))
    assert segments_cross(((0, 0), (2, 0)), ((2, 0), (1, 0)))
    assert not segments_cross(((0, 0), (1, 0)), ((2, 0), (3, 0)))


@settings(max_examples=60, deadline=None)
@given(cone_pair_st(max_size=11))
def test_graph_invariants_and_soundness(pair):
    G = build_graph(star_matrix(ryser_canonical(pair)))
    is_connected(G)
    witness = find_conservative_subtree(G)
    if witness is not None:
        assert verify_subtree(G, witness)
        assert star_predicate_holds(G.star, witness.columns)
        parts = fast_reducibility(pair)
        assert parts.total() == pair


def cone_pairs(max_boxes, max_width):
    for n in range(1, max_boxes + 1):
        for lam in partitions(n, max_part=max_width):
            for mu in partitions(n, max_part=lam[0]):
                if dominates(lam, mu):
                    yield KostkaPair(lam, mu, max(len(lam), len(mu)))


def assert_detector_matches_subset_search(pairs):
    for pair in pairs:
        A = ryser_canonical(pair)
        G = build_graph(star_matrix(A))
        assert (find_conservative_subtree(G) is not None) == (matrix_reducible(A) is not None), pair


def test_detector_matches_subset_search_small():
    assert_detector_matches_subset_search(cone_pairs(max_boxes=8, max_width=8))


def test_detector_matches_subset_search_sweep():
    assert_detector_matches_subset_search(cone_pairs(max_boxes=13, max_width=7))


@pytest.mark.parametrize("r", range(1, 7))
def test_single_row_pairs_have_no_fast_split(r):
    for t in range(1, r + 1):
        assert fast_reducibility(KostkaPair((t,), (1,) * t, r)) is None


def test_row_and_column_indexes(running_graph):
    assert running_graph.in_row(6) == [(6, 1), (6, 2), (6, 4), (6, 5)]
    assert running_graph.in_column(5) == [(3, 5), (6, 5), (7, 5)]
    assert running_graph.in_row(9) == []
    indexed = sorted(v for row in running_graph.by_row.values() for v in row)
    assert indexed == running_graph.vertices
