"""The Kostka–Gale–Ryser graph of a star matrix, its structure checks, and
the conservative-subtree reducibility criterion.

Vertices are (row, col) cells of A* holding ±1, both 1-based. Horizontal arcs
run from each −1 to the nearest +1 on its left; vertical arcs run from each +1
to the −1 of its column.
"""
import logging
from collections import defaultdict
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations
from typing import Optional

import networkx as nx
import numpy as np

from src.errors import KgrInvariantError, MalformedStarMatrix
from src.gale_ryser import (Decomposition, StarMatrix, ryser_canonical, split_pair,
                            star_matrix)
from src.partition_core import KostkaPair

logger = logging.getLogger(__name__)

Vertex = tuple[int, int]
Arc = tuple[Vertex, Vertex]

# Pairwise segment crossing check is skipped on larger grids
PLANARITY_CHECK_CELLS = 144


@dataclass(frozen=True, eq=False)
class KgrGraph:
    star: StarMatrix
    digraph: nx.DiGraph
    horizontal_arcs: tuple[Arc, ...]
    vertical_arcs: tuple[Arc, ...]
    # vertices per row sorted by column, per column sorted by row
    by_row: dict[int, tuple[Vertex, ...]] = field(default_factory=dict)
    by_column: dict[int, tuple[Vertex, ...]] = field(default_factory=dict)

    @property
    def vertices(self) -> list[Vertex]:
        return sorted(self.digraph.nodes)

    @property
    def arcs(self) -> list[Arc]:
        return sorted(self.digraph.edges)

    def sign(self, v: Vertex) -> int:
        return self.digraph.nodes[v]["sign"]

    def in_row(self, row: int) -> list[Vertex]:
        return list(self.by_row.get(row, ()))

    def in_column(self, col: int) -> list[Vertex]:
        return list(self.by_column.get(col, ()))

    def sources(self) -> list[Vertex]:
        return sorted(v for v in self.digraph.nodes if self.digraph.in_degree(v) == 0)

    @property
    def width(self) -> int:
        return self.star.shape[1]


class WitnessKind(str, Enum):
    C1 = "C1"
    C2 = "C2"


@dataclass(frozen=True)
class SubtreeWitness:
    vertices: frozenset[Vertex]
    arcs: frozenset[Arc]
    kind: WitnessKind
    sink: Optional[Vertex] = None
    row_source: Optional[Vertex] = None

    @property
    def columns(self) -> tuple[int, ...]:
        return tuple(sorted({v[1] for v in self.vertices}))

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "columns": list(self.columns),
            "vertices": [list(v) for v in sorted(self.vertices)],
            "arcs": [[list(a), list(b)] for a, b in sorted(self.arcs)],
            "sink": list(self.sink) if self.sink else None,
        }


def _orient(p, q, r) -> int:
    value = (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])
    return (value > 0) - (value < 0)


def _on_segment(p, q, r) -> bool:
    return min(p[0], q[0]) <= r[0] <= max(p[0], q[0]) and min(p[1], q[1]) <= r[1] <= max(p[1], q[1])


def segments_cross(a: Arc, b: Arc) -> bool:
    """Segments between cell centres meet somewhere other than a shared endpoint."""
    shared = set(a) & set(b)
    if shared:
        s = shared.pop()
        a_far = a[0] if a[1] == s else a[1]
        b_far = b[0] if b[1] == s else b[1]
        if _orient(s, a_far, b_far) != 0:
            return False
        # collinear: overlapping iff both leave s in the same direction
        return (a_far[0] - s[0]) * (b_far[0] - s[0]) + (a_far[1] - s[1]) * (b_far[1] - s[1]) > 0
    p1, p2 = a
    q1, q2 = b
    o1, o2 = _orient(p1, p2, q1), _orient(p1, p2, q2)
    o3, o4 = _orient(q1, q2, p1), _orient(q1, q2, p2)
    if o1 * o2 < 0 and o3 * o4 < 0:
        return True
    return ((o1 == 0 and _on_segment(p1, p2, q1)) or (o2 == 0 and _on_segment(p1, p2, q2))
            or (o3 == 0 and _on_segment(q1, q2, p1)) or (o4 == 0 and _on_segment(q1, q2, p2)))


def build_graph(S: StarMatrix, check: bool = True) -> KgrGraph:
    entries = np.asarray(S.entries)
    rows, cols = entries.shape
    graph = nx.DiGraph()
    for i, j in zip(*np.nonzero(entries)):
        graph.add_node((int(i) + 1, int(j) + 1), sign=int(entries[i, j]))

    horizontal = []
    for i in range(rows):
        last_sign = 0
        last_col = None
        for j in range(cols):
            x = int(entries[i, j])
            if x == -1:
                if last_sign != 1:
                    raise MalformedStarMatrix(f"-1 at ({i + 1},{j + 1}) has no +1 immediately to its left")
                horizontal.append(((i + 1, j + 1), (i + 1, last_col)))
            if x:
                last_sign, last_col = x, j + 1

    vertical = []
    for j in range(cols):
        column = entries[:, j]
        minus = np.flatnonzero(column == -1)
        if len(minus) > 1:
            raise MalformedStarMatrix(f"column {j + 1} holds {len(minus)} entries -1")
        if len(minus) == 1:
            sink = (int(minus[0]) + 1, j + 1)
            for i in np.flatnonzero(column == 1):
                vertical.append(((int(i) + 1, j + 1), sink))

    graph.add_edges_from(horizontal, kind="horizontal")
    graph.add_edges_from(vertical, kind="vertical")
    by_row, by_column = defaultdict(list), defaultdict(list)
    for v in sorted(graph.nodes):
        by_row[v[0]].append(v)
        by_column[v[1]].append(v)
    G = KgrGraph(star=S, digraph=graph, horizontal_arcs=tuple(horizontal), vertical_arcs=tuple(vertical),
                 by_row={i: tuple(vs) for i, vs in by_row.items()},
                 by_column={j: tuple(vs) for j, vs in by_column.items()})
    if check:
        check_graph(G)
    return G


def check_graph(G: KgrGraph) -> None:
    """Forest, out-degree ≤ 1, planar embedding, and exactly μ*_i +1 sources in row i."""
    graph = G.digraph
    if graph.number_of_nodes() and not nx.is_forest(graph.to_undirected()):
        raise KgrInvariantError("KGR graph is not a forest", G.vertices)
    for v, degree in graph.out_degree():
        if degree > 1:
            raise KgrInvariantError(f"vertex {v} has out-degree {degree}", v)

    rows, cols = G.star.shape
    if rows * cols <= PLANARITY_CHECK_CELLS:
        # (col, row) as plane coordinates
        segments = [((a[1], a[0]), (b[1], b[0])) for a, b in graph.edges]
        for s, t in combinations(segments, 2):
            if segments_cross(s, t):
                raise KgrInvariantError(f"arcs {s} and {t} cross", (s, t))
    else:
        logger.debug("skipping crossing check on %dx%d grid", rows, cols)

    census = [0] * rows
    for v in G.sources():
        if G.sign(v) != 1:
            raise KgrInvariantError(f"source {v} is a -1", v)
        census[v[0] - 1] += 1
    if tuple(census) != tuple(G.star.mu_star):
        raise KgrInvariantError(f"sources per row {census} differ from μ*={G.star.mu_star}", census)


def is_connected(G: KgrGraph) -> bool:
    """Undirected connectivity, checked against: connected iff every column
    right of the first emits a horizontal arc."""
    graph = G.digraph
    connected = graph.number_of_nodes() == 0 or nx.is_weakly_connected(graph)
    emitting = {tail[1] for tail, _ in G.horizontal_arcs}
    every_column = all(c in emitting for c in range(2, G.width + 1))
    if connected != every_column:
        raise KgrInvariantError(f"connectivity {connected} disagrees with horizontal-arc test {every_column}")
    return connected


def _induced(G: KgrGraph, vertices) -> frozenset[Arc]:
    return frozenset(G.digraph.subgraph(vertices).edges)


def find_conservative_subtree(G: KgrGraph) -> Optional[SubtreeWitness]:
    """A conservative subtree of G, or None when none exists.

    Disconnected graphs yield the component holding the column-1 vertex.
    Connected graphs need a −1 v and a +1 u' in one row with u' right of v;
    the witness is u' together with every vertex reaching v without passing
    through u'.
    """
    graph = G.digraph
    if graph.number_of_nodes() == 0:
        return None
    if not is_connected(G):
        first = min(graph.nodes, key=lambda v: (v[1], v[0]))
        component = frozenset(nx.node_connected_component(graph.to_undirected(), first))
        return SubtreeWitness(vertices=component, arcs=_induced(G, component), kind=WitnessKind.C1)

    candidates = []
    for v in graph.nodes:
        if G.sign(v) != -1:
            continue
        for u in G.in_row(v[0]):
            if G.sign(u) == 1 and u[1] > v[1]:
                candidates.append((v[1], v[0], u[1], v, u))
    for *_, v, u in sorted(candidates):
        rest = graph.subgraph(n for n in graph.nodes if n != u)
        vertices = frozenset(nx.ancestors(rest, v) | {v, u})
        witness = SubtreeWitness(vertices=vertices, arcs=_induced(G, vertices), kind=WitnessKind.C2,
                                 sink=v, row_source=u)
        if verify_subtree(G, witness):
            logger.debug("conservative subtree at sink %s, source %s", v, u)
            return witness
        logger.debug("candidate (%s, %s) did not verify", v, u)
    if candidates:
        raise KgrInvariantError("a -1 has a +1 to its right but no candidate verified", candidates)
    return None


def verify_subtree(G: KgrGraph, W: SubtreeWitness) -> bool:
    """Independent re-check of the conservative-subtree conditions."""
    graph = G.digraph
    vertices = set(W.vertices)
    if not vertices or not vertices <= set(graph.nodes):
        return False
    if len(W.columns) >= G.width:
        return False
    if not all(graph.has_edge(a, b) and a in vertices and b in vertices for a, b in W.arcs):
        return False
    sub = nx.DiGraph()
    sub.add_nodes_from(vertices)
    sub.add_edges_from(W.arcs)
    if not nx.is_tree(sub.to_undirected()):
        return False

    vertical = {a: graph.edges[a]["kind"] == "vertical" for a in graph.edges}
    for a, b in W.arcs:
        if vertical[(a, b)]:
            column = b[1]
            if not all((u, b) in W.arcs for u in G.in_column(column) if G.sign(u) == 1):
                return False

    if W.kind == WitnessKind.C1:
        component = nx.node_connected_component(graph.to_undirected(), next(iter(vertices)))
        return component == vertices

    sinks = [v for v in vertices if sub.out_degree(v) == 0]
    if len(sinks) != 1 or G.sign(sinks[0]) != -1:
        return False
    sink = sinks[0]
    sources = [v for v in vertices if sub.in_degree(v) == 0]
    row_sources = [v for v in sources if v[0] == sink[0] and G.sign(v) == 1]
    for special in row_sources:
        if all(graph.in_degree(v) == 0 for v in sources if v != special):
            return True
    return False


def star_predicate_holds(S: StarMatrix, columns) -> bool:
    """0 ≤ v* ≤ μ* for the A* column sum over `columns`."""
    v = np.asarray(S.entries, dtype=np.int64)[:, [c - 1 for c in columns]].sum(axis=1)
    return bool(np.all(v >= 0) and np.all(v <= np.asarray(S.mu_star)))


def fast_reducibility(pair: KostkaPair) -> Optional[Decomposition]:
    """Certified decomposition from a conservative subtree, without subset search.

    Sound but incomplete: None does not mean the pair is irreducible.
    """
    A = ryser_canonical(pair)
    S = star_matrix(A)
    G = build_graph(S)
    W = find_conservative_subtree(G)
    if W is None:
        return None
    if not star_predicate_holds(S, W.columns):
        raise KgrInvariantError(f"witness columns {W.columns} violate 0 ≤ v* ≤ μ*", W)
    return split_pair(pair, W.columns, A)
