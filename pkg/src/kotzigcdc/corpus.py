"""Exhaustive corpora of small connected cubic multigraphs.

Generation walks upward two vertices at a time: subdivide two edges (the
same edge twice is allowed) and join the two new vertices.  Reversing that
move fails only on graphs in which every edge either lies in a
digon-with-apex gadget or is a bridge between such gadgets; on at most 10
vertices exactly two such graphs exist and they are injected explicitly.
Isomorphism reduction uses hash buckets plus exact multiplicity-aware
matching.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

import networkx as nx
from networkx.algorithms.isomorphism import numerical_edge_match

from .catalog import theta_graph
from .multigraph import Multigraph, is_connected


def to_networkx(g: Multigraph) -> nx.Graph:
    """Simple graph with parallel edges folded into an integer attribute."""
    out = nx.Graph()
    out.add_nodes_from(g.vertices)
    for eid, a, b in g.edges():
        if out.has_edge(a, b):
            out[a][b]["m"] += 1
        else:
            out.add_edge(a, b, m=1)
    return out


def multigraph_hash(g: Multigraph) -> str:
    return nx.weisfeiler_lehman_graph_hash(to_networkx(g), edge_attr="m", iterations=4)


def are_isomorphic(g1: Multigraph, g2: Multigraph) -> bool:
    return nx.is_isomorphic(
        to_networkx(g1), to_networkx(g2), edge_match=numerical_edge_match("m", 1)
    )


def _renumber(edges: list[tuple]) -> Multigraph:
    verts = sorted({v for _, a, b in edges for v in (a, b)})
    names = {v: i for i, v in enumerate(verts)}
    return Multigraph(
        range(len(verts)), [(i, names[a], names[b]) for i, (_, a, b) in enumerate(edges)]
    )


def insert_edge_pair(g: Multigraph, e1, e2) -> Multigraph:
    """Subdivide e1 and e2 and join the two new vertices (e1 == e2 allowed)."""
    n = g.num_vertices()
    a, b = n, n + 1
    edges = []
    nid = itertools.count()
    for eid, x, y in g.edges():
        if eid == e1 and eid == e2:
            # two new vertices on the same edge, adjacent along it
            edges.append((next(nid), x, a))
            edges.append((next(nid), a, b))
            edges.append((next(nid), b, y))
        elif eid == e1:
            edges.append((next(nid), x, a))
            edges.append((next(nid), a, y))
        elif eid == e2:
            edges.append((next(nid), x, b))
            edges.append((next(nid), b, y))
        else:
            edges.append((next(nid), x, y))
    edges.append((next(nid), a, b))
    return _renumber(edges)


def balloon_flower() -> Multigraph:
    """Two digon-with-apex gadgets joined by a bridge (6 vertices)."""
    edges = [
        (0, 0, 1), (1, 0, 1), (2, 0, 2), (3, 1, 2),
        (4, 2, 3),
        (5, 3, 4), (6, 3, 5), (7, 4, 5), (8, 4, 5),
    ]
    return Multigraph(range(6), edges)


def balloon_star() -> Multigraph:
    """Three digon-with-apex gadgets on a common center (10 vertices)."""
    edges = [(0, 0, 1), (1, 0, 2), (2, 0, 3)]
    nid = 3
    for apex, (u, v) in ((1, (4, 5)), (2, (6, 7)), (3, (8, 9))):
        edges.append((nid, apex, u)); nid += 1
        edges.append((nid, apex, v)); nid += 1
        edges.append((nid, u, v)); nid += 1
        edges.append((nid, u, v)); nid += 1
    return Multigraph(range(10), edges)


def _dedupe(graphs: list[Multigraph]) -> list[Multigraph]:
    buckets: dict[str, list[Multigraph]] = {}
    out = []
    for g in graphs:
        key = multigraph_hash(g)
        bucket = buckets.setdefault(key, [])
        if any(are_isomorphic(g, seen) for seen in bucket):
            continue
        bucket.append(g)
        out.append(g)
    return out


@lru_cache(maxsize=None)
def connected_cubic_multigraphs(n: int) -> tuple[Multigraph, ...]:
    """All connected cubic loopless multigraphs on n vertices, up to
    isomorphism."""
    if n <= 0 or n % 2 != 0:
        return ()
    if n == 2:
        return (theta_graph(),)
    parents = connected_cubic_multigraphs(n - 2)
    candidates: list[Multigraph] = []
    for parent in parents:
        eids = list(parent.edge_ids)
        for i, e1 in enumerate(eids):
            for e2 in eids[i:]:
                candidates.append(insert_edge_pair(parent, e1, e2))
    if n == 6:
        candidates.append(balloon_flower())
    if n == 10:
        candidates.append(balloon_star())
    for g in candidates:
        assert g.is_cubic() and not g.has_loops() and is_connected(g)
    return tuple(_dedupe(candidates))


def is_simple(g: Multigraph) -> bool:
    seen = set()
    for _, a, b in g.edges():
        key = frozenset((a, b))
        if a == b or key in seen:
            return False
        seen.add(key)
    return True


def connected_cubic_simple_graphs(n: int) -> tuple[Multigraph, ...]:
    return tuple(g for g in connected_cubic_multigraphs(n) if is_simple(g))


def cubic_corpus(max_vertices: int, simple_only: bool = False) -> list[Multigraph]:
    out: list[Multigraph] = []
    for n in range(2, max_vertices + 1, 2):
        graphs = (
            connected_cubic_simple_graphs(n) if simple_only else connected_cubic_multigraphs(n)
        )
        out.extend(graphs)
    return out


def brute_force_cubic_multigraphs(n: int) -> list[Multigraph]:
    """Independent slow enumeration for cross-checking small levels.

    Fills the upper-triangular multiplicity matrix vertex by vertex under
    the degree-3 constraint, then deduplicates.
    """
    pairs = list(itertools.combinations(range(n), 2))
    out: list[Multigraph] = []

    def emit(mult: dict) -> None:
        edges = []
        nid = 0
        for (a, b), m in sorted(mult.items()):
            for _ in range(m):
                edges.append((nid, a, b))
                nid += 1
        g = Multigraph(range(n), edges)
        if is_connected(g):
            out.append(g)

    def rec(idx: int, deg: list[int], mult: dict) -> None:
        if idx == len(pairs):
            if all(d == 3 for d in deg):
                emit(mult)
            return
        a, b = pairs[idx]
        # once the first coordinate advances, the previous vertex is closed
        if idx > 0 and pairs[idx - 1][0] < a and deg[pairs[idx - 1][0]] != 3:
            return
        for m in range(0, 4):
            if deg[a] + m > 3 or deg[b] + m > 3:
                break
            deg[a] += m
            deg[b] += m
            if m:
                mult[(a, b)] = m
            rec(idx + 1, deg, mult)
            deg[a] -= m
            deg[b] -= m
            mult.pop((a, b), None)

    rec(0, [0] * n, {})
    return _dedupe(out)
