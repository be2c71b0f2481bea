import pytest

from kotzigcdc.corpus import (
    are_isomorphic,
    balloon_flower,
    balloon_star,
    brute_force_cubic_multigraphs,
    connected_cubic_multigraphs,
    connected_cubic_simple_graphs,
    cubic_corpus,
    insert_edge_pair,
    is_simple,
)
from kotzigcdc.catalog import theta_graph
from kotzigcdc.multigraph import is_connected


def test_known_simple_counts():
    # connected cubic simple graphs: classical counts
    assert len(connected_cubic_simple_graphs(4)) == 1
    assert len(connected_cubic_simple_graphs(6)) == 2
    assert len(connected_cubic_simple_graphs(8)) == 5
    assert len(connected_cubic_simple_graphs(10)) == 19


@pytest.mark.parametrize("n", [2, 4, 6])
def test_expansion_matches_bruteforce(n):
    brute = brute_force_cubic_multigraphs(n)
    fast = connected_cubic_multigraphs(n)
    assert len(brute) == len(fast)
    for g in brute:
        assert any(are_isomorphic(g, h) for h in fast)


def test_multigraph_counts():
    assert [len(connected_cubic_multigraphs(n)) for n in (2, 4, 6, 8, 10)] == [
        1, 2, 6, 20, 91,
    ]


def test_all_generated_are_cubic_connected_loopless():
    for g in cubic_corpus(8):
        assert g.is_cubic()
        assert not g.has_loops()
        assert is_connected(g)


def test_insert_edge_pair_same_edge_gives_digon():
    g = insert_edge_pair(theta_graph(), 0, 0)
    assert g.num_vertices() == 4 and g.is_cubic()
    assert not is_simple(g)


def test_balloon_graphs_present_in_corpus():
    sixes = connected_cubic_multigraphs(6)
    assert any(are_isomorphic(balloon_flower(), g) for g in sixes)
    tens = connected_cubic_multigraphs(10)
    assert any(are_isomorphic(balloon_star(), g) for g in tens)


def _reduce_edge(g, eid):
    """Delete eid and smooth both endpoints; None when a loop appears or
    the graph falls apart (the exact inverse of the expansion move)."""
    from kotzigcdc.multigraph import Multigraph, components

    a, b = g.endpoints(eid)
    edges = {e: tuple(g.endpoints(e)) for e in g.edge_ids if e != eid}
    for v in (a, b):
        incident = [e for e, (x, y) in edges.items() if v in (x, y)]
        if len(incident) != 2:
            return None
        ends = []
        for e in incident:
            x, y = edges.pop(e)
            ends.append(y if x == v else x)
        u, w = ends
        if u == w:
            return None  # smoothing created a loop
        edges[f"merged_{v}"] = (u, w)
    verts = [v for v in g.vertices if v not in (a, b)]
    out = Multigraph(verts, [(e, x, y) for e, (x, y) in edges.items()])
    if len(components(out)) > 1:
        return None
    return out


def test_balloon_graphs_are_expansion_irreducible():
    """No edge of these graphs reduces to a smaller loopless connected
    cubic multigraph, so the generator must inject them by hand."""
    for g in (balloon_flower(), balloon_star()):
        for eid in g.edge_ids:
            assert _reduce_edge(g, eid) is None, f"edge {eid} would be reducible"


def test_reduction_inverts_expansion_elsewhere():
    # every graph on 8 vertices has at least one reducible edge
    for g in connected_cubic_multigraphs(8):
        assert any(_reduce_edge(g, e) is not None for e in g.edge_ids)
