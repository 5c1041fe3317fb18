"""Human-readable and graph-renderer output: Young diagram pairs laid out
like a basis table, and DOT/JSON views of KGR graphs."""
from itertools import groupby, zip_longest

from src.kgr import KgrGraph, SubtreeWitness
from src.partition_core import KostkaPair, Partition

BOX = "□"


def young_diagram(p: Partition) -> list[str]:
    return [BOX * part for part in p] or ["∅"]


def render_pair(pair: KostkaPair) -> str:
    """λ and μ side by side, top aligned."""
    left = young_diagram(pair.lam)
    right = young_diagram(pair.mu)
    pad = max(len(line) for line in left) + 3
    return "\n".join(f"{a:<{pad}}{b}".rstrip() for a, b in zip_longest(left, right, fillvalue=""))


def render_catalog(elements) -> str:
    """Elements grouped under a header per box count."""
    out = []
    for size, group in groupby(elements, key=lambda e: e.size):
        out.append(f"|λ| = {size}")
        for pair in group:
            out.append(f"  {pair}")
            out.extend("    " + line for line in render_pair(pair).splitlines())
    return "\n".join(out)


def _node_id(v) -> str:
    return f"v{v[0]}_{v[1]}"


def to_dot(G: KgrGraph, witness: SubtreeWitness = None) -> str:
    """DOT digraph; pos hints put column on x and row on y, witness in red."""
    marked = witness.vertices if witness else frozenset()
    marked_arcs = witness.arcs if witness else frozenset()
    lines = ["digraph kgr {", "  node [shape=circle, fontsize=10];"]
    for v in G.vertices:
        sign = "+1" if G.sign(v) == 1 else "-1"
        color = ', color="red", fontcolor="red"' if v in marked else ""
        lines.append(f'  {_node_id(v)} [label="{sign}", pos="{v[1]},{-v[0]}!", row={v[0]}, col={v[1]}{color}];')
    for a, b in G.arcs:
        kind = G.digraph.edges[a, b]["kind"]
        color = ' color="red",' if (a, b) in marked_arcs else ""
        lines.append(f'  {_node_id(a)} -> {_node_id(b)} [{color} kind="{kind}"];')
    lines.append("}")
    return "\n".join(lines)


def graph_to_dict(G: KgrGraph) -> dict:
    return {
        "vertices": [{"row": v[0], "col": v[1], "sign": G.sign(v)} for v in G.vertices],
        "arcs": [{"tail": list(a), "head": list(b), "kind": G.digraph.edges[a, b]["kind"]} for a, b in G.arcs],
    }


def matrix_to_list(matrix) -> list[list[int]]:
    return [[int(x) for x in row] for row in matrix]
