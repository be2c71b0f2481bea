"""Red/blue edge switching and acyclic t-joins.

A switch at a vertex flips the color of every non-loop edge at that vertex.
Whether a 2-colored multigraph can be switched all-blue is decided on the
blue-contraction: keep the loops that arise, because a red edge collapsed
inside a blue blob is exactly an odd obstruction.
"""

from __future__ import annotations

from typing import Iterable

from .errors import HypothesisError
from .multigraph import (
    EdgeId,
    Multigraph,
    Vertex,
    components,
    contract_edges,
    is_bipartite,
    sorted_vertices,
    _rooted_forest,
)
from .rowgraph import RowGraph, Rearrangement, row_contract

RED = "red"
BLUE = "blue"

# A TwoColoring is a plain dict edge-id -> RED | BLUE, total on the edge set.
# A SwitchSequence is a list of vertex ids; only parities matter.


def apply_switch(g: Multigraph, coloring: dict, v: Vertex) -> dict:
    """Flip non-loop edges at v; loops keep their color."""
    if not g.has_vertex(v):
        raise HypothesisError(f"unknown vertex {v!r}")
    out = dict(coloring)
    for eid in g.incident_edges(v):
        if g.is_loop(eid):
            continue
        out[eid] = BLUE if out[eid] == RED else RED
    return out


def apply_switch_sequence(g: Multigraph, coloring: dict, seq: Iterable[Vertex]) -> dict:
    for v in seq:
        coloring = apply_switch(g, coloring, v)
    return coloring


def switchable_to_blue(g: Multigraph, coloring: dict) -> list[Vertex] | None:
    """A switch set turning every edge blue, or None.

    Contract the blue edges keeping arising loops; the red remainder must be
    bipartite, and the switch set is one side of the bipartition pulled back
    through the contraction.
    """
    blue_edges = [e for e in g.edge_ids if coloring[e] == BLUE]
    contracted, vmap = contract_edges(g, blue_edges, delete_loops=False)
    sides = is_bipartite(contracted)
    if sides is None:
        return None
    switches = [v for v in sorted_vertices(g) if sides[vmap[v]] == 1]
    return switches


def is_all_blue(coloring: dict) -> bool:
    return all(c == BLUE for c in coloring.values())


def resolve_two_row(r2: RowGraph) -> set[int]:
    """Columns to row-swap so that a 2-row graph loses all cross-row edges.

    Works on the column contraction with cross edges red and within-row
    edges blue; requires the contraction to be a forest, in which case a
    solution always exists.
    """
    if r2.rows != 2:
        raise HypothesisError("resolve_two_row expects a 2-row graph")
    rc = row_contract(r2)
    if rc.num_edges() != rc.num_vertices() - len(components(rc)):
        raise HypothesisError("column contraction contains a cycle")
    coloring = {
        e.eid: (RED if e.a[0] != e.b[0] else BLUE) for e in r2.edges
    }
    seq = switchable_to_blue(rc, coloring)
    assert seq is not None, "a forest contraction is always switchable"
    swaps = set(seq)
    flip = {1: 2, 2: 1}
    for e in r2.edges:
        ra = flip[e.a[0]] if e.a[1] in swaps else e.a[0]
        rb = flip[e.b[0]] if e.b[1] in swaps else e.b[0]
        assert ra == rb, "row swap failed to straighten a cross edge"
    return swaps


def swap_rows(r: RowGraph, columns: set[int], row_a: int, row_b: int) -> RowGraph:
    """Rearrangement swapping two rows inside the given columns."""
    row_perms = {}
    for j in range(1, r.s + 1):
        perm = {i: i for i in range(1, r.rows + 1)}
        if j in columns:
            perm[row_a], perm[row_b] = row_b, row_a
        row_perms[j] = perm
    re = Rearrangement(
        column_perm={j: j for j in range(1, r.s + 1)}, row_perms=row_perms
    )
    return re.apply(r)


def acyclic_t_join(g: Multigraph, t: Iterable[Vertex]) -> set[EdgeId]:
    """Forest whose odd-degree vertices are exactly t.

    Built on the spanning forest by leaf-to-root parity toggling; requires
    an even number of t-vertices in every component.  Deterministic given
    the vertex order (forest rooted at each component's smallest vertex).
    """
    t = set(t)
    for v in t:
        if not g.has_vertex(v):
            raise HypothesisError(f"t contains unknown vertex {v!r}")
    for comp in components(g):
        if len(t & set(comp)) % 2 != 0:
            raise HypothesisError(
                f"component containing {comp[0]!r} holds an odd number of t-vertices"
            )
    parent, parent_edge, _ = _rooted_forest(g)
    depth: dict[Vertex, int] = {}

    def depth_of(v: Vertex) -> int:
        if v in depth:
            return depth[v]
        chain = []
        cur = v
        while cur not in depth and parent[cur] is not None:
            chain.append(cur)
            cur = parent[cur]
        base = depth.get(cur, 0)
        depth.setdefault(cur, 0)
        for node in reversed(chain):
            base += 1
            depth[node] = base
        return depth[v]

    order = sorted(
        g.vertices, key=lambda v: (-depth_of(v), str(type(v)), repr(v))
    )
    need = {v: v in t for v in g.vertices}
    chosen: set[EdgeId] = set()
    for v in order:
        if parent[v] is None:
            assert not need[v], "odd parity left at a root"
            continue
        if need[v]:
            chosen.add(parent_edge[v])
            need[parent[v]] = not need[parent[v]]
    return chosen


def t_join_degrees_ok(g: Multigraph, t: Iterable[Vertex], edges: set[EdgeId]) -> bool:
    t = set(t)
    sub = g.subgraph_of_edges(edges, keep_vertices=g.vertices)
    return all((sub.degree(v) % 2 == 1) == (v in t) for v in g.vertices)
