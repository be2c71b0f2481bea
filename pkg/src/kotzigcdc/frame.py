"""Kotzig frames: validation, contraction, perfect colorings and search.

A frame of a cubic graph is a spanning subgraph whose components are even
cycles ("C") or even subdivisions of Kotzig graphs ("K").  Chords are the
non-frame edges that stay inside one component.  Contracting every
component and dropping loops yields an eulerian multigraph whose edges keep
their host ids.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import FrameError, NotCubicError, OracleLimitError
from .kotzig import (
    CYCLE,
    KOTZIG_SUBDIVISION,
    Classification,
    classify_component,
    enumerate_perfect_colorings,
    is_perfect_component_coloring,
)
from .multigraph import (
    EdgeId,
    Multigraph,
    Vertex,
    VertexMap,
    components,
    is_connected,
    is_eulerian,
    sorted_edge_ids,
    sorted_vertices,
)

C_KIND = "C"
K_KIND = "K"


@dataclass(frozen=True)
class FrameComponent:
    label: int  # 1..s
    kind: str  # C_KIND or K_KIND
    vertices: tuple[Vertex, ...]
    edge_ids: tuple[EdgeId, ...]
    classification: Classification


@dataclass(frozen=True)
class Frame:
    host: Multigraph
    frame_edges: frozenset
    components: tuple[FrameComponent, ...]
    chords: frozenset
    warnings: tuple[str, ...] = ()

    @property
    def s(self) -> int:
        return len(self.components)

    def component_of(self, v: Vertex) -> FrameComponent:
        for comp in self.components:
            if v in comp.vertices:
                return comp
        raise KeyError(v)

    def free_edges(self) -> list[EdgeId]:
        """Host edges outside the frame and outside the chord set."""
        return [
            eid
            for eid in sorted_edge_ids(self.host.edge_ids)
            if eid not in self.frame_edges and eid not in self.chords
        ]

    def k_labels(self) -> list[int]:
        return [c.label for c in self.components if c.kind == K_KIND]


@dataclass(frozen=True)
class PerfectColoring:
    """Total coloring of a frame: every frame edge and every 2-valent frame
    vertex carries a color in {1,2,3}; 3-valent vertices are uncolored."""

    vertex_color: dict
    edge_color: dict


@dataclass(frozen=True)
class ContractedFrame:
    """One vertex per frame component (named by its label); edges are the
    host edges joining different components, keeping their ids."""

    graph: Multigraph
    vertex_kind: dict  # label -> C_KIND | K_KIND
    vertex_map: VertexMap  # host vertex -> label


@dataclass(frozen=True)
class ColoredContraction:
    contracted: ContractedFrame
    edge_color: dict  # partial: host edge id -> color


@dataclass(frozen=True)
class Witness:
    """A color and a monochromatic connected piece of the colored
    contraction containing every K-vertex."""

    color: int
    h_labels: frozenset
    h_edges: frozenset


def has_bridge(g: Multigraph) -> bool:
    for eid in g.edge_ids:
        if g.is_loop(eid):
            continue
        rest = [e for e in g.edge_ids if e != eid]
        if len(components(g.subgraph_of_edges(rest, keep_vertices=g.vertices))) > len(
            components(g)
        ):
            return True
    return False


def validate_frame(
    g: Multigraph,
    frame_edges: Iterable[EdgeId],
    labeling: Sequence[Iterable[Vertex]] | None = None,
) -> Frame:
    """Check an edge set against the frame definition and classify it.

    The host must be cubic; 2-connectivity is only advisory (a warning in
    the result) so that small multigraph experiments still run.
    """
    if not g.is_cubic():
        raise NotCubicError("frame host must be 3-regular")
    frame_edges = frozenset(frame_edges)
    for eid in frame_edges:
        g.endpoints(eid)
    warnings = []
    if not is_connected(g):
        warnings.append("host graph is not connected")
    elif has_bridge(g):
        warnings.append("host graph has a bridge (not 2-connected)")

    sub = g.subgraph_of_edges(frame_edges, keep_vertices=g.vertices)
    comps = components(sub)
    covered = {v for comp in comps for v in comp}
    if covered != set(g.vertices):
        raise FrameError("frame must span every vertex")

    if labeling is not None:
        wanted = [frozenset(part) for part in labeling]
        actual = {frozenset(c) for c in comps}
        if set(wanted) != actual or len(wanted) != len(comps):
            raise FrameError("labeling does not match the frame components")
        comps = [sorted(part, key=lambda v: (str(type(v)), repr(v))) for part in wanted]

    out: list[FrameComponent] = []
    for idx, comp_vertices in enumerate(comps, start=1):
        if len(comp_vertices) % 2 != 0:
            raise FrameError(
                f"component {sorted(map(repr, comp_vertices))} has odd order {len(comp_vertices)}"
            )
        vset = set(comp_vertices)
        comp_eids = [
            eid for eid in sorted_edge_ids(frame_edges) if g.endpoints(eid)[0] in vset
        ]
        piece = g.subgraph_of_edges(comp_eids, keep_vertices=comp_vertices)
        cls = classify_component(piece)
        if cls.kind not in (CYCLE, KOTZIG_SUBDIVISION):
            raise FrameError(
                f"component {sorted(map(repr, comp_vertices))} is neither a cycle "
                "nor a Kotzig subdivision"
            )
        out.append(
            FrameComponent(
                label=idx,
                kind=C_KIND if cls.kind == CYCLE else K_KIND,
                vertices=tuple(comp_vertices),
                edge_ids=tuple(comp_eids),
                classification=cls,
            )
        )

    vertex_comp = {}
    for comp in out:
        for v in comp.vertices:
            vertex_comp[v] = comp.label
    chords = frozenset(
        eid
        for eid, a, b in g.edges()
        if eid not in frame_edges and vertex_comp[a] == vertex_comp[b]
    )
    frame = Frame(
        host=g,
        frame_edges=frame_edges,
        components=tuple(out),
        chords=chords,
        warnings=tuple(warnings),
    )
    # host is cubic, so every 2-valent frame vertex has exactly one free edge
    for v in g.vertices:
        frame_deg = sum(
            2 if g.is_loop(e) else 1 for e in g.incident_edges(v) if e in frame_edges
        )
        if frame_deg not in (2, 3):
            raise FrameError(f"vertex {v!r} has frame degree {frame_deg}")
    return frame


def contract_frame(f: Frame) -> ContractedFrame:
    """One vertex per component; loops (chords) are dropped.  The result is
    always eulerian because components have even order."""
    vertex_comp = {}
    for comp in f.components:
        for v in comp.vertices:
            vertex_comp[v] = comp.label
    edges = []
    for eid, a, b in f.host.edges():
        if eid in f.frame_edges or eid in f.chords:
            continue
        edges.append((eid, vertex_comp[a], vertex_comp[b]))
    graph = Multigraph([c.label for c in f.components], edges)
    assert is_eulerian(graph), "frame contraction must be eulerian"
    kinds = {c.label: c.kind for c in f.components}
    return ContractedFrame(graph=graph, vertex_kind=kinds, vertex_map=VertexMap(vertex_comp))


def is_perfect_coloring(f: Frame, coloring: PerfectColoring) -> bool:
    """Frame-level perfect coloring test: each K-component lifts a Kotzig
    coloring of its base, each C-component is monochromatic."""
    for comp in f.components:
        piece = f.host.subgraph_of_edges(comp.edge_ids, keep_vertices=comp.vertices)
        if not is_perfect_component_coloring(
            piece, comp.classification, coloring.vertex_color, coloring.edge_color
        ):
            return False
    return True


def build_colored_contraction(f: Frame, coloring: PerfectColoring) -> ColoredContraction:
    """Color each contraction edge whose two host endpoints agree."""
    if not is_perfect_coloring(f, coloring):
        raise FrameError("coloring is not perfect for this frame")
    cf = contract_frame(f)
    edge_color = {}
    for eid, _, _ in cf.graph.edges():
        a, b = f.host.endpoints(eid)
        ca = coloring.vertex_color.get(a)
        cb = coloring.vertex_color.get(b)
        if ca is not None and ca == cb:
            edge_color[eid] = ca
    return ColoredContraction(contracted=cf, edge_color=edge_color)


def well_connected_witness(f: Frame, coloring: PerfectColoring) -> Witness | None:
    """A color whose edge class joins all K-vertices into one connected
    piece, together with that whole piece (maximal).

    With zero or one K-vertex the test is trivially satisfied by a
    one-vertex subgraph.
    """
    k_labels = f.k_labels()
    if len(k_labels) == 0:
        anchor = min(c.label for c in f.components)
        return Witness(color=1, h_labels=frozenset([anchor]), h_edges=frozenset())
    cc = build_colored_contraction(f, coloring)
    # with a single K-vertex this always succeeds (a one-vertex piece is fine)
    return _witness_for_color(cc, k_labels, preferred=None)


def _witness_for_color(
    cc: ColoredContraction, k_labels: list[int], preferred: int | None
) -> Witness | None:
    colors = (preferred,) if preferred else (1, 2, 3)
    for color in colors:
        eids = [e for e, c in cc.edge_color.items() if c == color]
        sub = cc.contracted.graph.subgraph_of_edges(
            eids, keep_vertices=cc.contracted.graph.vertices
        )
        for comp in components(sub):
            if all(k in comp for k in k_labels):
                comp_set = set(comp)
                h_edges = frozenset(
                    e for e in eids if cc.contracted.graph.endpoints(e)[0] in comp_set
                )
                return Witness(color=color, h_labels=frozenset(comp), h_edges=h_edges)
    return None


def _component_order_for_search(f: Frame) -> list[FrameComponent]:
    return sorted(
        f.components,
        key=lambda c: (0 if c.kind == K_KIND else 1, -len(c.vertices), c.label),
    )


def assemble_coloring(fragments: dict[int, tuple[dict, dict]]) -> PerfectColoring:
    vertex_color: dict = {}
    edge_color: dict = {}
    for vc, ec in fragments.values():
        vertex_color.update(vc)
        edge_color.update(ec)
    return PerfectColoring(vertex_color=vertex_color, edge_color=edge_color)


def enumerate_frame_colorings(f: Frame) -> Iterator[PerfectColoring]:
    """Product of per-component perfect colorings, with the first searched
    component pinned up to global color permutation."""
    order = _component_order_for_search(f)
    choice_lists = []
    for pos, comp in enumerate(order):
        piece = f.host.subgraph_of_edges(comp.edge_ids, keep_vertices=comp.vertices)
        frags = list(
            enumerate_perfect_colorings(
                piece, comp.classification, representatives=(pos == 0)
            )
        )
        choice_lists.append((comp.label, frags))
    labels = [label for label, _ in choice_lists]
    for combo in itertools.product(*(frags for _, frags in choice_lists)):
        yield assemble_coloring(dict(zip(labels, combo)))


def find_well_connected_frame_coloring(f: Frame) -> tuple[PerfectColoring, Witness] | None:
    """First perfect coloring whose contraction is well connected.

    Frames with at most one K-component always succeed, so the first
    enumerated coloring is returned for them.
    """
    for coloring in enumerate_frame_colorings(f):
        witness = well_connected_witness(f, coloring)
        if witness is not None:
            return coloring, witness
    return None


# -- sufficient conditions on the contraction --------------------------------


@dataclass(frozen=True)
class FrameSufficiency:
    """Three independently checkable conditions on the contracted frame,
    each of which guarantees a well-connected coloring exists."""

    k_independent_rest_connected: bool
    k_near_c_rest_connected: bool
    c_backbone_dominates_k: bool


def check_frame_sufficiency(cf: ContractedFrame) -> FrameSufficiency:
    g = cf.graph
    k_set = {v for v in g.vertices if cf.vertex_kind[v] == K_KIND}
    c_set = {v for v in g.vertices if cf.vertex_kind[v] == C_KIND}

    k_independent = not any(
        not g.is_loop(e) and all(x in k_set for x in g.endpoints(e)) for e in g.edge_ids
    )
    rest_edges = [
        e
        for e in g.edge_ids
        if all(x not in k_set for x in g.endpoints(e))
    ]
    rest = g.subgraph_of_edges(rest_edges, keep_vertices=[v for v in g.vertices if v not in k_set])
    rest_connected = len(components(rest)) <= 1

    every_k_near_c = all(
        any(cf.vertex_kind[g.other_end(e, k)] == C_KIND for e in g.incident_edges(k) if not g.is_loop(e))
        for k in k_set
    )

    c_sub = g.subgraph_of_edges(
        [e for e in g.edge_ids if all(x in c_set for x in g.endpoints(e))],
        keep_vertices=sorted(c_set, key=repr),
    )
    backbone = False
    if not k_set:
        backbone = True
    else:
        for comp in components(c_sub):
            comp_set = set(comp)
            neighborhood = set()
            for v in comp_set:
                for e in g.incident_edges(v):
                    neighborhood.add(g.other_end(e, v))
            if k_set <= neighborhood:
                backbone = True
                break

    return FrameSufficiency(
        k_independent_rest_connected=k_independent and rest_connected,
        k_near_c_rest_connected=every_k_near_c and rest_connected,
        c_backbone_dominates_k=backbone,
    )


# -- frame search -------------------------------------------------------------


def _perfect_matchings(g: Multigraph) -> Iterator[frozenset]:
    verts = sorted_vertices(g)

    def extend(covered: set, chosen: list) -> Iterator[frozenset]:
        free = [v for v in verts if v not in covered]
        if not free:
            yield frozenset(chosen)
            return
        v = free[0]
        for eid in sorted_edge_ids(g.incident_edges(v)):
            w = g.other_end(eid, v)
            if w == v or w in covered:
                continue
            covered.add(v)
            covered.add(w)
            chosen.append(eid)
            yield from extend(covered, chosen)
            chosen.pop()
            covered.remove(v)
            covered.remove(w)

    yield from extend(set(), [])


def even_two_factors(g: Multigraph) -> Iterator[frozenset]:
    """2-factors (as complements of perfect matchings) whose cycles are all
    even."""
    seen = set()
    for matching in _perfect_matchings(g):
        factor = frozenset(e for e in g.edge_ids if e not in matching)
        if factor in seen:
            continue
        seen.add(factor)
        sub = g.subgraph_of_edges(factor, keep_vertices=g.vertices)
        if all(len(comp) % 2 == 0 for comp in components(sub)):
            yield factor


def _degree_constrained_subsets(g: Multigraph) -> Iterator[frozenset]:
    """Edge subsets in which every vertex keeps degree 2 or 3."""
    eids = sorted_edge_ids(g.edge_ids)
    n = len(eids)
    chosen_deg = {v: 0 for v in g.vertices}
    remaining_deg = {v: g.degree(v) for v in g.vertices}
    picked: list = []

    def incident_count(eid, v):
        a, b = g.endpoints(eid)
        if a == b:
            return 2 if v == a else 0
        return 1 if v in (a, b) else 0

    def feasible() -> bool:
        return all(
            chosen_deg[v] <= 3 and chosen_deg[v] + remaining_deg[v] >= 2
            for v in g.vertices
        )

    def rec(idx: int) -> Iterator[frozenset]:
        if idx == n:
            if all(chosen_deg[v] in (2, 3) for v in g.vertices):
                yield frozenset(picked)
            return
        eid = eids[idx]
        a, b = g.endpoints(eid)
        touched = (a,) if a == b else (a, b)
        # include first: larger frames surface earlier
        for take in (True, False):
            for v in touched:
                remaining_deg[v] -= incident_count(eid, v)
                if take:
                    chosen_deg[v] += incident_count(eid, v)
            if take:
                picked.append(eid)
            if feasible():
                yield from rec(idx + 1)
            if take:
                picked.pop()
            for v in touched:
                remaining_deg[v] += incident_count(eid, v)
                if take:
                    chosen_deg[v] -= incident_count(eid, v)

    yield from rec(0)


def search_frames(
    g: Multigraph,
    strategy: str = "two_factor",
    frame_edges: Iterable[EdgeId] | None = None,
    max_edges: int = 24,
) -> Iterator[Frame]:
    """Enumerate valid frames of a cubic graph.

    two_factor: complements of perfect matchings with all cycles even.
    exhaustive: all spanning edge subsets with degrees in {2,3} that
    classify, guarded by max_edges.  user_supplied: validate frame_edges.
    """
    if strategy == "user_supplied":
        if frame_edges is None:
            raise ValueError("user_supplied strategy needs frame_edges")
        yield validate_frame(g, frame_edges)
        return
    if strategy == "two_factor":
        for factor in even_two_factors(g):
            try:
                yield validate_frame(g, factor)
            except FrameError:
                continue
        return
    if strategy == "exhaustive":
        if g.num_edges() > max_edges:
            raise OracleLimitError(
                f"exhaustive frame search refused: {g.num_edges()} edges > {max_edges}"
            )
        for subset in _degree_constrained_subsets(g):
            try:
                yield validate_frame(g, subset)
            except FrameError:
                continue
        return
    raise ValueError(f"unknown strategy {strategy!r}")


# -- serialization -------------------------------------------------------------


def frame_to_json(f: Frame) -> dict:
    return {
        "frame_edges": sorted_edge_ids(f.frame_edges),
        "components": [
            {"kind": c.kind, "vertices": list(c.vertices), "label": c.label}
            for c in f.components
        ],
        "chords": sorted_edge_ids(f.chords),
    }


def frame_from_json(g: Multigraph, obj: dict) -> Frame:
    labeling = [comp["vertices"] for comp in sorted(obj["components"], key=lambda c: c["label"])]
    frame = validate_frame(g, obj["frame_edges"], labeling=labeling)
    if sorted_edge_ids(frame.chords) != sorted_edge_ids(obj.get("chords", frame.chords)):
        raise FrameError("chord set in file does not match the recomputed chords")
    return frame


def save_frame_json(f: Frame, path) -> None:
    from pathlib import Path

    Path(path).write_text(json.dumps(frame_to_json(f), indent=2) + "\n")
