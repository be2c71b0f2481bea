import itertools

import pytest

from kotzigcdc.catalog import cube_graph, cycle_graph, k4, petersen, prism, theta_graph
from kotzigcdc.errors import FrameError, NotCubicError, OracleLimitError
from kotzigcdc.frame import (
    C_KIND,
    K_KIND,
    ContractedFrame,
    build_colored_contraction,
    check_frame_sufficiency,
    contract_frame,
    enumerate_frame_colorings,
    find_well_connected_frame_coloring,
    frame_from_json,
    frame_to_json,
    is_perfect_coloring,
    search_frames,
    validate_frame,
    well_connected_witness,
)
from kotzigcdc.multigraph import Multigraph, VertexMap, is_eulerian


def prism_hamiltonian_frame():
    g = prism()
    # 6-cycle 0-1-4-3-5-2-0 uses edges 0,7,3,5,8,2
    return g, validate_frame(g, [0, 7, 3, 5, 8, 2])


def cube_two_squares_frame():
    g = cube_graph()
    squares = [e for e, a, b in g.edges() if (a ^ b) in (1, 2)]
    return g, validate_frame(g, squares)


def test_validate_full_k4():
    g = k4()
    f = validate_frame(g, g.edge_ids)
    assert [c.kind for c in f.components] == [K_KIND]
    assert f.chords == frozenset()


def test_validate_prism_cycle_frame():
    g, f = prism_hamiltonian_frame()
    assert [c.kind for c in f.components] == [C_KIND]
    # the other three edges all have both ends on the cycle
    assert len(f.chords) == 3
    assert f.free_edges() == []


def test_validate_matching_rejected():
    g = k4()
    with pytest.raises(FrameError):
        validate_frame(g, [0, 5])  # a perfect matching of K4


def test_validate_odd_component_rejected():
    g = prism()
    with pytest.raises(FrameError, match="odd"):
        validate_frame(g, [0, 1, 2, 3, 4, 5])  # two triangles


def test_validate_non_spanning_rejected():
    g = prism()
    with pytest.raises(FrameError):
        validate_frame(g, [0, 1, 2])


def test_validate_needs_cubic():
    with pytest.raises(NotCubicError):
        validate_frame(cycle_graph(4), [0, 1, 2, 3])


def test_bridge_warning():
    # cubic graph with a bridge: two theta-ish blobs joined by an edge
    g = Multigraph(
        range(6),
        [
            (0, 0, 1), (1, 0, 1), (2, 0, 2), (3, 1, 2),
            (4, 2, 3),
            (5, 3, 4), (6, 3, 5), (7, 4, 5), (8, 4, 5),
        ],
    )
    # no frame exists at all (the bridge sides have odd order), but the
    # warning surfaces on any validation attempt of a spanning subgraph
    with pytest.raises(FrameError):
        validate_frame(g, g.edge_ids)


# -- contraction -----------------------------------------------------------------


def test_contract_prism_frame_single_vertex():
    _, f = prism_hamiltonian_frame()
    cf = contract_frame(f)
    assert cf.graph.num_vertices() == 1
    assert cf.graph.num_edges() == 0
    assert cf.vertex_kind == {1: C_KIND}


def test_contract_cube_two_squares():
    g, f = cube_two_squares_frame()
    cf = contract_frame(f)
    assert cf.graph.num_vertices() == 2
    assert cf.graph.num_edges() == 4  # the matching between the squares
    assert is_eulerian(cf.graph)
    assert set(cf.vertex_kind.values()) == {C_KIND}


def test_contract_k4_frame():
    g = k4()
    f = validate_frame(g, g.edge_ids)
    cf = contract_frame(f)
    assert cf.graph.num_vertices() == 1
    assert cf.graph.num_edges() == 0
    assert cf.vertex_kind == {1: K_KIND}


def test_contraction_always_eulerian_over_search():
    for g in (k4(), prism(), cube_graph(), theta_graph()):
        for f in search_frames(g, "two_factor"):
            assert is_eulerian(contract_frame(f).graph)


def test_edge_conservation():
    g, f = cube_two_squares_frame()
    cf = contract_frame(f)
    non_frame = g.num_edges() - len(f.frame_edges)
    assert non_frame == len(f.chords) + cf.graph.num_edges()


# -- perfect colorings and witnesses ------------------------------------------------


def monochromatic_coloring(f, colors_by_label):
    from kotzigcdc.frame import PerfectColoring

    vc, ec = {}, {}
    for comp in f.components:
        c = colors_by_label[comp.label]
        for v in comp.vertices:
            vc[v] = c
        for e in comp.edge_ids:
            ec[e] = c
    return PerfectColoring(vertex_color=vc, edge_color=ec)


def test_colored_contraction_same_color():
    g, f = cube_two_squares_frame()
    coloring = monochromatic_coloring(f, {1: 1, 2: 1})
    cc = build_colored_contraction(f, coloring)
    assert sorted(cc.edge_color.values()) == [1, 1, 1, 1]


def test_colored_contraction_different_colors():
    g, f = cube_two_squares_frame()
    coloring = monochromatic_coloring(f, {1: 1, 2: 2})
    cc = build_colored_contraction(f, coloring)
    assert cc.edge_color == {}


def test_is_perfect_coloring_rejects_bichromatic_cycle():
    g, f = prism_hamiltonian_frame()
    coloring = monochromatic_coloring(f, {1: 1})
    assert is_perfect_coloring(f, coloring)
    bad_ec = dict(coloring.edge_color)
    bad_ec[f.components[0].edge_ids[0]] = 2
    from kotzigcdc.frame import PerfectColoring

    assert not is_perfect_coloring(
        f, PerfectColoring(vertex_color=coloring.vertex_color, edge_color=bad_ec)
    )


def test_witness_single_component_trivial():
    _, f = prism_hamiltonian_frame()
    coloring = monochromatic_coloring(f, {1: 3})
    w = well_connected_witness(f, coloring)
    assert w is not None and len(w.h_labels) == 1


def test_witness_two_squares():
    g, f = cube_two_squares_frame()
    w = well_connected_witness(f, monochromatic_coloring(f, {1: 1, 2: 1}))
    assert w is not None
    # no K-vertices: trivially well connected with a one-vertex piece
    assert len(w.h_labels) == 1


def test_find_well_connected_always_for_single_k():
    g = k4()
    f = validate_frame(g, g.edge_ids)
    found = find_well_connected_frame_coloring(f)
    assert found is not None
    coloring, witness = found
    assert is_perfect_coloring(f, coloring)
    assert witness.h_labels == frozenset([1])


def test_enumerate_frame_colorings_counts():
    g, f = cube_two_squares_frame()
    # first component pinned to one color, second free: 1 * 3
    assert len(list(enumerate_frame_colorings(f))) == 3


def _theta_sub_edges(base, eid0):
    # vertices base..base+3, subdivision paths of lengths 1, 2, 2;
    # the 2-valent vertices are base+2 and base+3
    v = lambda k: base + k
    return [
        (eid0, v(0), v(1)),
        (eid0 + 1, v(0), v(2)), (eid0 + 2, v(2), v(1)),
        (eid0 + 3, v(0), v(3)), (eid0 + 4, v(3), v(1)),
    ]


def double_theta_graph():
    """Two theta subdivisions wired together: a frame with two K-components."""
    edges = _theta_sub_edges(0, 0) + _theta_sub_edges(4, 5)
    edges += [(10, 2, 6), (11, 3, 7)]
    return Multigraph(range(8), edges)


def triple_theta_triangle():
    """Three theta subdivisions in a triangle.  Every middle component's two
    attachment vertices sit on different subdivision paths, so no single
    color class can connect all three K-vertices under any coloring."""
    edges = (
        _theta_sub_edges(0, 0) + _theta_sub_edges(4, 5) + _theta_sub_edges(8, 10)
    )
    edges += [(15, 2, 6), (16, 7, 10), (17, 11, 3)]
    return Multigraph(range(12), edges)


def test_two_k_components_always_witnessed():
    g = double_theta_graph()
    f = validate_frame(g, range(10))
    assert [c.kind for c in f.components] == [K_KIND, K_KIND]
    found = find_well_connected_frame_coloring(f)
    assert found is not None
    coloring, witness = found
    assert witness.h_labels == frozenset({1, 2})


def test_three_k_triangle_has_no_witness():
    g = triple_theta_triangle()
    f = validate_frame(g, range(15))
    assert [c.kind for c in f.components] == [K_KIND] * 3
    # exhaustive over all perfect colorings: absence is a definite answer
    assert find_well_connected_frame_coloring(f) is None


# -- sufficiency conditions -----------------------------------------------------


def make_contracted(kinds, edges):
    g = Multigraph(range(1, len(kinds) + 1), edges)
    return ContractedFrame(
        graph=g,
        vertex_kind={i + 1: k for i, k in enumerate(kinds)},
        vertex_map=VertexMap({}),
    )


def test_sufficiency_no_k_connected():
    cf = make_contracted([C_KIND, C_KIND], [(0, 1, 2), (1, 1, 2)])
    out = check_frame_sufficiency(cf)
    assert out.k_independent_rest_connected


def test_sufficiency_two_adjacent_k():
    cf = make_contracted([K_KIND, K_KIND], [(0, 1, 2), (1, 1, 2)])
    out = check_frame_sufficiency(cf)
    assert not out.k_independent_rest_connected
    assert not out.k_near_c_rest_connected
    assert not out.c_backbone_dominates_k


def test_sufficiency_k_next_to_c():
    cf = make_contracted([K_KIND, C_KIND], [(0, 1, 2), (1, 1, 2)])
    out = check_frame_sufficiency(cf)
    assert out.k_near_c_rest_connected
    assert out.c_backbone_dominates_k


# -- search -----------------------------------------------------------------------


def test_search_two_factor_prism():
    g = prism()
    frames = list(search_frames(g, "two_factor"))
    assert frames, "prism has even 2-factors"
    for f in frames:
        assert all(c.kind == C_KIND for c in f.components)
        assert len(f.frame_edges) == 6


def test_search_two_factor_petersen_empty():
    g = petersen()
    # independent oracle: enumerate perfect matchings by brute force
    eids = list(g.edge_ids)
    matchings = []
    for subset in itertools.combinations(eids, 5):
        verts = [v for e in subset for v in g.endpoints(e)]
        if len(set(verts)) == 10:
            matchings.append(subset)
    assert len(matchings) == 6  # the classic count
    for m in matchings:
        factor = [e for e in eids if e not in m]
        sub = g.subgraph_of_edges(factor)
        from kotzigcdc.multigraph import components

        assert all(len(c) % 2 == 1 for c in components(sub))  # two 5-cycles
    assert list(search_frames(g, "two_factor")) == []


def test_search_exhaustive_petersen_finds_spanning_subdivision():
    g = petersen()
    it = search_frames(g, "exhaustive")
    f = next(it)
    assert len(f.components) == 1
    assert f.components[0].kind == K_KIND
    # re-validation agrees
    again = validate_frame(g, f.frame_edges)
    assert again.components[0].kind == K_KIND


def test_search_exhaustive_guard():
    g = Multigraph(range(20), [(i, i, (i + 1) % 20) for i in range(20)]
                   + [(20 + i, i, (i + 10) % 20) for i in range(10)])
    with pytest.raises(OracleLimitError):
        next(search_frames(g, "exhaustive", max_edges=24))


def test_search_user_supplied():
    g = k4()
    frames = list(search_frames(g, "user_supplied", frame_edges=g.edge_ids))
    assert len(frames) == 1


def test_every_searched_frame_validates():
    for g in (prism(), cube_graph(), theta_graph()):
        for f in search_frames(g, "two_factor"):
            revalidated = validate_frame(g, f.frame_edges)
            assert revalidated.chords == f.chords


def test_frame_json_round_trip():
    g, f = cube_two_squares_frame()
    obj = frame_to_json(f)
    back = frame_from_json(g, obj)
    assert back.frame_edges == f.frame_edges
    assert [c.kind for c in back.components] == [c.kind for c in f.components]
