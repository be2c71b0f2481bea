import random

import pytest

from kotzigcdc.catalog import theta_graph
from kotzigcdc.errors import OracleLimitError
from kotzigcdc.frame import validate_frame
from kotzigcdc.multigraph import is_eulerian
from kotzigcdc.rowgraph import (
    AmiableColoring,
    RowGraph,
    amiable_from_json,
    amiable_to_json,
    brute_force_amiable,
    build_row_graph,
    canonical_form,
    enumerate_row_graphs,
    extend_to_amiable,
    is_amiable,
    random_rearrangement,
    rearrange,
    row_contract,
    row_graph_from_json,
    row_graph_to_json,
)
from kotzigcdc.amiable import permute_component_colors
from tests.test_frame import cube_two_squares_frame, monochromatic_coloring, prism_hamiltonian_frame


def test_column_independence_enforced():
    with pytest.raises(ValueError, match="independent"):
        RowGraph(2, [(0, (1, 1), (2, 1))])


def test_prism_row_graph_is_edgeless():
    g, f = prism_hamiltonian_frame()
    coloring = monochromatic_coloring(f, {1: 1})
    r = build_row_graph(g, f, coloring)
    assert r.s == 1
    assert r.edges == ()
    # the single column holds the colored blob and two isolated vertices
    assert all(r.degree(v) == 0 for v in r.vertices())


def test_theta_frame_row_graph():
    g = theta_graph()
    f = validate_frame(g, [1, 2])  # digon frame, edge 0 is a chord
    coloring = monochromatic_coloring(f, {1: 2})
    r = build_row_graph(g, f, coloring)
    assert r.s == 1 and r.edges == ()


def test_cube_two_squares_row_graph():
    g, f = cube_two_squares_frame()
    coloring = monochromatic_coloring(f, {1: 1, 2: 2})
    r = build_row_graph(g, f, coloring)
    assert r.s == 2
    assert len(r.edges) == 4
    assert all({e.a, e.b} == {(1, 1), (2, 2)} for e in r.edges)
    # origin ids point back at host edges
    assert all(g.has_edge(e.origin) for e in r.edges)


def test_row_contract_matches_contracted_frame():
    g, f = cube_two_squares_frame()
    coloring = monochromatic_coloring(f, {1: 1, 2: 2})
    r = build_row_graph(g, f, coloring)
    rc = row_contract(r)
    from kotzigcdc.frame import contract_frame

    cf = contract_frame(f).graph
    assert is_eulerian(rc)
    assert sorted(rc.degree(v) for v in rc.vertices) == sorted(
        cf.degree(v) for v in cf.vertices
    )
    assert sorted(map(frozenset, (rc.endpoints(e) for e in rc.edge_ids))) == sorted(
        map(frozenset, (cf.endpoints(e) for e in cf.edge_ids))
    )


def test_row_contract_edgeless():
    r = RowGraph(3, [])
    assert row_contract(r).num_edges() == 0


# -- rearrangement ----------------------------------------------------------------


def sample_row_graph():
    return RowGraph(
        3,
        [
            (0, (1, 1), (2, 2)),
            (1, (2, 1), (3, 2)),
            (2, (1, 2), (3, 3)),
            (3, (1, 1), (1, 2)),
        ],
    )


def test_rearrange_identity():
    r = sample_row_graph()
    out = rearrange(r, [1, 2, 3])
    assert out.edge_signature() == r.edge_signature()


def test_rearrange_involution():
    r = sample_row_graph()
    swap = {1: 2, 2: 1, 3: 3}
    once = rearrange(r, swap)
    twice = rearrange(once, swap)
    assert twice.edge_signature() == r.edge_signature()
    assert once.edge_signature() != r.edge_signature()


def test_rearrange_malformed():
    r = sample_row_graph()
    with pytest.raises(ValueError):
        rearrange(r, [1, 1, 2])
    with pytest.raises(ValueError):
        rearrange(r, [1, 2, 3], {1: {1: 1, 2: 2, 3: 2}})


def test_rearrangement_inverse_round_trip():
    rng = random.Random(5)
    r = sample_row_graph()
    for _ in range(20):
        rearr = random_rearrangement(r, rng)
        back = rearr.inverse().apply(rearr.apply(r))
        assert back.edge_signature() == r.edge_signature()


def test_oracle_invariant_under_rearrangement():
    rng = random.Random(11)
    instances = list(enumerate_row_graphs(2, 4)) + [sample_row_graph()]
    for _ in range(60):
        r = rng.choice(instances)
        rearr = random_rearrangement(r, rng)
        r2 = rearr.apply(r)
        assert (brute_force_amiable(r) is None) == (brute_force_amiable(r2) is None)


def test_rearranged_coloring_transports():
    rng = random.Random(13)
    r = RowGraph(
        3,
        [
            (0, (1, 1), (1, 2)),
            (1, (2, 1), (2, 2)),
            (2, (1, 2), (2, 3)),
            (3, (3, 2), (3, 3)),
        ],
    )
    a = brute_force_amiable(r)
    assert a is not None
    for _ in range(10):
        rearr = random_rearrangement(r, rng)
        r2 = rearr.apply(r)
        a2 = rearr.transport_amiable(a)
        assert is_amiable(r2, a2)


def test_identical_row_graph_from_recolored_frame():
    """Any rearrangement of a frame-built row graph equals the row graph of
    a relabeled frame with per-component permuted colors."""
    g, f = cube_two_squares_frame()
    coloring = monochromatic_coloring(f, {1: 1, 2: 2})
    r = build_row_graph(g, f, coloring)
    rng = random.Random(3)
    for _ in range(10):
        rearr = random_rearrangement(r, rng)
        target = rearr.apply(r)
        order = sorted(range(1, f.s + 1), key=lambda j: rearr.column_perm[j])
        labeling = [f.components[j - 1].vertices for j in order]
        relabeled = validate_frame(g, f.frame_edges, labeling=labeling)
        recolored = coloring
        for old_label in range(1, f.s + 1):
            perm = rearr.row_perms[old_label]
            recolored = permute_component_colors(f, recolored, [old_label], perm)
        rebuilt = build_row_graph(g, relabeled, recolored)
        assert rebuilt.edge_signature() == target.edge_signature()


# -- amiable colorings ---------------------------------------------------------------


def test_is_amiable_trivial_single_column():
    r = RowGraph(1, [])
    a = AmiableColoring(f={(1, 1): 1, (2, 1): 2, (3, 1): 3}, g={})
    assert is_amiable(r, a)


def test_is_amiable_rejects_repeated_column_color():
    r = RowGraph(1, [])
    a = AmiableColoring(f={(1, 1): 1, (2, 1): 1, (3, 1): 3}, g={})
    assert not is_amiable(r, a)


def test_is_amiable_rejects_vertex_edge_clash_and_odd_parity():
    r = RowGraph(2, [(0, (1, 1), (2, 2))])
    f = {(1, 1): 1, (2, 1): 2, (3, 1): 3, (1, 2): 1, (2, 2): 2, (3, 2): 3}
    # color 3 avoids both endpoints but appears once per column: parity fails
    assert not is_amiable(r, AmiableColoring(f=f, g={0: 3}))
    # color 1 clashes with the row-1 endpoint
    assert not is_amiable(r, AmiableColoring(f=f, g={0: 1}))


def test_single_cross_edge_has_no_amiable_coloring():
    r = RowGraph(2, [(0, (1, 1), (2, 2))])
    assert brute_force_amiable(r) is None


def test_two_parallel_row_edges_found():
    r = RowGraph(2, [(0, (1, 1), (1, 2)), (1, (2, 1), (2, 2))])
    a = brute_force_amiable(r)
    assert a is not None and is_amiable(r, a)


def test_oracle_guard():
    r = RowGraph(2, [(i, (1, 1), (2, 2)) for i in range(26)])
    with pytest.raises(OracleLimitError):
        brute_force_amiable(r)
    assert brute_force_amiable(r, force=True) is not None


def test_extend_to_amiable_respects_fixed_f():
    r = RowGraph(2, [(0, (1, 1), (1, 2)), (1, (2, 1), (2, 2))])
    f = {(i, j): i for i in (1, 2, 3) for j in (1, 2)}
    g = extend_to_amiable(r, f)
    assert g is not None
    assert is_amiable(r, AmiableColoring(f=f, g=g))


# -- enumeration and serialization -----------------------------------------------------


def test_enumerate_counts_small():
    # s=2, one edge: 9 labeled slots, none eulerian
    assert sum(1 for _ in enumerate_row_graphs(2, 1)) == 1  # only the edgeless one
    all_two = list(enumerate_row_graphs(2, 2))
    # eulerian with two edges: both edges in the same column pair: C(9+1,2)=45 plus edgeless
    assert len(all_two) == 46


def test_enumerate_rearrangement_reduction():
    full = list(enumerate_row_graphs(2, 2))
    reduced = list(enumerate_row_graphs(2, 2, up_to_rearrangement=True))
    assert len(reduced) < len(full)
    canon = {canonical_form(r) for r in full}
    assert len(canon) == len(reduced)


def test_row_graph_json_round_trip():
    r = sample_row_graph()
    obj = row_graph_to_json(r)
    back = row_graph_from_json(obj)
    assert back.s == r.s
    assert back.edge_signature() == {
        (idx, frozenset((e.a, e.b))) for idx, e in enumerate(r.edges)
    } or len(back.edges) == len(r.edges)


def test_amiable_json_round_trip():
    r = RowGraph(2, [(0, (1, 1), (1, 2)), (1, (2, 1), (2, 2))])
    a = brute_force_amiable(r)
    back = amiable_from_json(amiable_to_json(a))
    assert back.f == a.f and back.g == a.g
