"""Assembly and verification of 6-class cycle double covers.

The cover is assembled color by color: for color i, the frame edges whose
color differs from i form disjoint cycles, and the remaining edges of color
class i (free edges colored i plus the chords assigned to i) form a
matching attached to those cycles.  Every such piece has a 2-cycle cover
with the cycles covered once and the matching twice, provided every cycle
carries an even number of attachment points; the three pieces give six
classes and exactly double coverage.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable

from .amiable import ConstructionTrace, permute_component_colors
from .errors import ConstructionInvariantError, HypothesisError
from .frame import Frame, PerfectColoring
from .multigraph import (
    EdgeId,
    Multigraph,
    components as graph_components,
    sorted_edge_ids,
    sorted_vertices,
)
from .rowgraph import AmiableColoring, build_row_graph, is_amiable

CLASS_LABELS = ("1a", "1b", "2a", "2b", "3a", "3b")


@dataclass(frozen=True)
class CdcCertificate:
    """Labeled cycle classes; cycles are closed edge-id sequences."""

    classes: dict

    def all_cycles(self) -> list[tuple[str, tuple]]:
        out = []
        for label in sorted(self.classes):
            for cyc in self.classes[label]:
                out.append((label, tuple(cyc)))
        return out

    def to_json(self) -> dict:
        return {
            "classes": {
                label: [list(cyc) for cyc in cycles]
                for label, cycles in self.classes.items()
            }
        }

    @staticmethod
    def from_json(obj: dict) -> "CdcCertificate":
        return CdcCertificate(
            classes={
                label: tuple(tuple(cyc) for cyc in cycles)
                for label, cycles in obj["classes"].items()
            }
        )

    def dump(self, path) -> None:
        from pathlib import Path

        Path(path).write_text(json.dumps(self.to_json(), indent=2) + "\n")


@dataclass(frozen=True)
class JDecomposition:
    """Per color: frame cycles, free edges of that color, chord class."""

    frame_parts: dict  # color -> frozenset of frame edge ids
    free_parts: dict  # color -> frozenset of free edge ids
    chord_parts: dict  # color -> frozenset of chord ids

    def combined(self, color: int) -> frozenset:
        return self.frame_parts[color] | self.free_parts[color] | self.chord_parts[color]


def partition_chords(f: Frame, coloring: PerfectColoring) -> tuple[frozenset, frozenset, frozenset]:
    """Assign every chord the smallest color missing at both endpoints.

    Chord endpoints are 2-valent frame vertices, so at most two colors are
    excluded and a class always exists.
    """
    parts: dict[int, set] = {1: set(), 2: set(), 3: set()}
    for eid in sorted_edge_ids(f.chords):
        v, w = f.host.endpoints(eid)
        excluded = {coloring.vertex_color[v], coloring.vertex_color[w]}
        for color in (1, 2, 3):
            if color not in excluded:
                parts[color].add(eid)
                break
    return frozenset(parts[1]), frozenset(parts[2]), frozenset(parts[3])


def _traverse_cycle(g: Multigraph, eids: set, start=None, first_edge=None) -> tuple[list, list]:
    """Walk a 2-regular connected edge set; returns (vertices, edges) in
    closed order (vertices[0] repeated implicitly)."""
    at: dict = {}
    for eid in eids:
        a, b = g.endpoints(eid)
        at.setdefault(a, []).append(eid)
        at.setdefault(b, []).append(eid)
    if start is None:
        start = sorted_vertices(g.subgraph_of_edges(eids))[0]
    if first_edge is None:
        first_edge = sorted_edge_ids(at[start])[0]
    vertices = [start]
    edges = [first_edge]
    cur = g.other_end(first_edge, start)
    prev_edge = first_edge
    while cur != start:
        vertices.append(cur)
        nxt = [e for e in at[cur] if e != prev_edge]
        assert len(nxt) == 1, "walk requires a 2-regular edge set"
        prev_edge = nxt[0]
        edges.append(prev_edge)
        cur = g.other_end(prev_edge, cur)
    return vertices, edges


def _cycle_components(g: Multigraph, eids: Iterable[EdgeId]) -> list[set]:
    """Split a 2-regular edge set into its cycles (as edge-id sets)."""
    eids = set(eids)
    sub = g.subgraph_of_edges(eids)
    for v in sub.vertices:
        if sub.degree(v) != 2:
            raise HypothesisError(f"vertex {v!r} has degree {sub.degree(v)} in the 2-factor")
    out = []
    remaining = set(eids)
    while remaining:
        seed = sorted_edge_ids(remaining)[0]
        _, cycle_edges = _traverse_cycle(g, remaining, start=min(
            g.endpoints(seed), key=lambda v: (str(type(v)), repr(v))
        ))
        comp = set(cycle_edges)
        out.append(comp)
        remaining -= comp
    return out


def two_cycle_cover_even(
    g: Multigraph, cycle_edges: Iterable[EdgeId], matching_edges: Iterable[EdgeId]
) -> tuple[list[tuple], list[tuple]]:
    """2-cycle cover of (disjoint cycles + attachment matching).

    Cycle edges end up covered once, matching edges twice, and each of the
    two returned classes consists of pairwise edge-disjoint cycles.  Every
    cycle must carry an even number of matching endpoints.  The two classes
    come from 2-coloring the arcs between consecutive attachment points
    alternately around each cycle, deterministically: the walk starts at
    the smallest attachment vertex toward its smaller neighbor.
    """
    cycle_edges = set(cycle_edges)
    matching_edges = set(matching_edges)
    if cycle_edges & matching_edges:
        raise HypothesisError("cycle and matching edge sets overlap")
    cycles = _cycle_components(g, cycle_edges)
    on_cycles = set()
    for comp in cycles:
        for eid in comp:
            on_cycles.update(g.endpoints(eid))
    attach_at: dict = {}
    for eid in matching_edges:
        for v in g.endpoints(eid):
            if v not in on_cycles:
                raise HypothesisError(f"matching edge {eid!r} endpoint {v!r} misses the cycles")
            if v in attach_at:
                raise HypothesisError(f"vertex {v!r} carries two attachment edges")
            attach_at[v] = eid
        if g.is_loop(eid):
            raise HypothesisError(f"matching edge {eid!r} is a loop")

    class_a: set = set(matching_edges)
    class_b: set = set(matching_edges)
    lonely_cycles: list[set] = []
    for comp in cycles:
        verts = set()
        for eid in comp:
            verts.update(g.endpoints(eid))
        attachments = sorted(
            (v for v in verts if v in attach_at), key=lambda v: (str(type(v)), repr(v))
        )
        if not attachments:
            lonely_cycles.append(comp)
            continue
        if len(attachments) % 2 != 0:
            raise HypothesisError(
                f"cycle through {attachments[0]!r} has {len(attachments)} attachment points"
            )
        start = attachments[0]
        candidates = sorted(
            ((g.other_end(e, start), e) for e in comp if start in g.endpoints(e)),
            key=lambda t: (str(type(t[0])), repr(t[0]), str(type(t[1])), repr(t[1])),
        )
        first_edge = candidates[0][1]
        order_vertices, order_edges = _traverse_cycle(g, comp, start=start, first_edge=first_edge)
        # order_edges[k] joins order_vertices[k] to order_vertices[k+1]
        segments: list[list] = [[]]
        for pos, eid in enumerate(order_edges):
            segments[-1].append(eid)
            nxt_vertex = order_vertices[(pos + 1) % len(order_vertices)]
            if nxt_vertex in attach_at and pos != len(order_edges) - 1:
                segments.append([])
        assert len(segments) == len(attachments), "one arc per attachment point"
        for idx, seg in enumerate(segments):
            (class_a if idx % 2 == 0 else class_b).update(seg)

    cycles_a = [
        tuple(_traverse_cycle(g, comp)[1]) for comp in _cycle_components(g, class_a)
    ] if class_a else []
    cycles_b = [
        tuple(_traverse_cycle(g, comp)[1]) for comp in _cycle_components(g, class_b)
    ] if class_b else []
    cycles_a.extend(tuple(_traverse_cycle(g, comp)[1]) for comp in lonely_cycles)
    return cycles_a, cycles_b


def fold_vertex_coloring(
    g: Multigraph, f: Frame, coloring: PerfectColoring, amiable: AmiableColoring
) -> PerfectColoring:
    """Push the amiable vertex coloring into the frame coloring so that the
    rebuilt row graph carries the identity vertex coloring.

    Permuting the colors inside one component exactly renames the rows of
    its column, so the column-wise permutations read off f do the job.
    """
    folded = coloring
    for comp in f.components:
        perm = {i: amiable.f[(i, comp.label)] for i in (1, 2, 3)}
        if perm == {1: 1, 2: 2, 3: 3}:
            continue
        folded = permute_component_colors(f, folded, [comp.label], perm)
    return folded


def construct_6cdc(
    g: Multigraph,
    f: Frame,
    coloring: PerfectColoring,
    amiable: AmiableColoring,
    trace: ConstructionTrace | None = None,
) -> CdcCertificate:
    """Build a verified 6-class cycle double cover from an amiable coloring
    of the row graph of (g, f, coloring)."""
    trace = trace or ConstructionTrace()
    r = build_row_graph(g, f, coloring)
    if not is_amiable(r, amiable):
        raise HypothesisError("coloring is not amiable for this row graph")

    folded = fold_vertex_coloring(g, f, coloring, amiable)
    r2 = build_row_graph(g, f, folded)
    identity = {(i, j): i for j in range(1, f.s + 1) for i in (1, 2, 3)}
    normalized = AmiableColoring(f=identity, g=dict(amiable.g))
    if not is_amiable(r2, normalized):
        raise ConstructionInvariantError("folding the vertex coloring broke amiability")

    chords = partition_chords(f, folded)
    frame_parts = {}
    for color in (1, 2, 3):
        frame_parts[color] = frozenset(
            eid for eid in f.frame_edges if folded.edge_color[eid] != color
        )
    free_parts = {
        color: frozenset(eid for eid in f.free_edges() if normalized.g[eid] == color)
        for color in (1, 2, 3)
    }
    decomposition = JDecomposition(
        frame_parts=frame_parts,
        free_parts=free_parts,
        chord_parts={1: chords[0], 2: chords[1], 3: chords[2]},
    )
    trace.record(
        "j_decomposition",
        chords={c: sorted_edge_ids(decomposition.chord_parts[c]) for c in (1, 2, 3)},
    )

    classes = {}
    for color in (1, 2, 3):
        matching = decomposition.free_parts[color] | decomposition.chord_parts[color]
        try:
            cycles_a, cycles_b = two_cycle_cover_even(
                g, frame_parts[color], matching
            )
        except HypothesisError as exc:
            raise ConstructionInvariantError(
                f"2-cycle cover precondition failed for color {color}: {exc}"
            ) from exc
        classes[f"{color}a"] = tuple(cycles_a)
        classes[f"{color}b"] = tuple(cycles_b)
    certificate = CdcCertificate(classes=classes)
    report = verify_cdc(g, certificate)
    if not report.valid:
        raise ConstructionInvariantError(
            f"constructed certificate failed verification: {report.violations}"
        )
    return certificate


@dataclass
class CdcReport:
    valid: bool
    violations: list = field(default_factory=list)
    coverage: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "valid": self.valid,
            "violations": list(self.violations),
            "coverage": {repr(k): v for k, v in sorted(self.coverage.items(), key=lambda kv: repr(kv[0]))},
        }


def verify_cdc(g: Multigraph, cert: CdcCertificate) -> CdcReport:
    """Independent re-check of a certificate against its host graph.

    Valid means: at most six classes, every listed cycle is a 2-regular
    connected subgraph, classes are internally edge-disjoint, and every
    host edge lies in exactly two cycles overall.
    """
    violations = []
    coverage = {eid: 0 for eid in g.edge_ids}
    if len(cert.classes) > 6:
        violations.append(f"{len(cert.classes)} classes exceed the limit of 6")
    for label, cycles in sorted(cert.classes.items()):
        used_in_class: set = set()
        for idx, cyc in enumerate(cycles):
            name = f"{label}[{idx}]"
            eids = list(cyc)
            if len(set(eids)) != len(eids):
                violations.append(f"{name} repeats an edge")
                continue
            missing = [e for e in eids if not g.has_edge(e)]
            if missing:
                violations.append(f"{name} uses unknown edges {missing}")
                continue
            sub = g.subgraph_of_edges(eids)
            bad_degree = [v for v in sub.vertices if sub.degree(v) != 2]
            if bad_degree:
                violations.append(f"{name} is not 2-regular at {bad_degree}")
            elif len(graph_components(sub)) != 1:
                violations.append(f"{name} is disconnected")
            overlap = used_in_class & set(eids)
            if overlap:
                violations.append(
                    f"class {label} reuses edges {sorted_edge_ids(overlap)} across cycles"
                )
            used_in_class.update(eids)
            for e in eids:
                if e in coverage:
                    coverage[e] += 1
    for eid, count in coverage.items():
        if count != 2:
            violations.append(f"edge {eid!r} is covered {count} times, expected 2")
    return CdcReport(valid=not violations, violations=violations, coverage=coverage)
