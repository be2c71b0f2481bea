"""Constructive amiable colorings and the parity-coloring equivalences.

The central routine turns a row graph whose first row is "concentrated"
(all non-isolated first-row vertices in one component, the remaining
first-row vertices fully isolated) into an amiable coloring:

  1. identify rows 2 and 3 column-wise and take an acyclic t-join of the
     odd-degree columns;
  2. swap rows 2/3 in some columns so the t-join uses no cross-row edges
     (always possible because the join is acyclic);
  3. color f = (2, 3, 1) down each column, give color 2 to the lower-rows
     edges outside the join;
  4. compare row-1/row-2 degrees in the mixed subgraph (cross edges +
     row-1 edges + row-2 join edges) column by column; the mismatching
     columns get fixed by an acyclic t-join inside row 1, whose edges and
     the remaining mixed edges receive colors 3 and 1;
  5. everything left is color 3.

Feasibility of the row-1 join is exactly what the concentration
precondition buys; a failure there is reported loudly, never masked.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import ConstructionInvariantError, HypothesisError, OracleLimitError
from .frame import Frame, PerfectColoring, Witness, build_colored_contraction
from .multigraph import Multigraph, components, is_eulerian, sorted_edge_ids
from .rowgraph import (
    AmiableColoring,
    Rearrangement,
    RowEdge,
    RowGraph,
    amiable_violations,
    build_row_graph,
    is_amiable,
    row_contract,
)
from .switching import acyclic_t_join, resolve_two_row, swap_rows


@dataclass
class ConstructionTrace:
    """Ordered audit log of every choice a construction makes."""

    steps: list = field(default_factory=list)

    def record(self, name: str, **payload) -> None:
        self.steps.append({"step": name, **payload})

    def find(self, name: str) -> dict | None:
        for step in self.steps:
            if step["step"] == name:
                return step
        return None

    def to_json(self) -> dict:
        return {"steps": self.steps}

    def dump(self, path) -> None:
        from pathlib import Path

        Path(path).write_text(json.dumps(self.to_json(), indent=2, default=repr) + "\n")


def identity_f(r: RowGraph) -> dict:
    return {(i, j): i for j in range(1, r.s + 1) for i in range(1, r.rows + 1)}


def _next_row(i: int) -> int:
    return i % 3 + 1


def _swap23_rearrangement(s: int, columns: set[int]) -> Rearrangement:
    row_perms = {}
    for j in range(1, s + 1):
        perm = {1: 1, 2: 2, 3: 3}
        if j in columns:
            perm[2], perm[3] = 3, 2
        row_perms[j] = perm
    return Rearrangement(column_perm={j: j for j in range(1, s + 1)}, row_perms=row_perms)


# -- the core construction -----------------------------------------------------


def _run_engine(r: RowGraph, trace: ConstructionTrace) -> tuple[AmiableColoring, RowGraph, set[int]]:
    """Produce an amiable coloring with f = (2, 3, 1) down every column.

    Returns (coloring, possibly row-swapped graph, swapped columns).  The
    caller is responsible for the concentration precondition; if the row-1
    join turns out infeasible regardless, ConstructionInvariantError is
    raised.
    """
    s = r.s
    if not is_eulerian(row_contract(r)):
        raise HypothesisError("column contraction must be eulerian")

    lower = r.edges_within_rows({2, 3})
    identified = Multigraph(range(1, s + 1), [(e.eid, e.a[1], e.b[1]) for e in lower])
    odd_columns = [v for v in identified.vertices if identified.degree(v) % 2 == 1]
    join_lower = acyclic_t_join(identified, odd_columns)
    trace.record(
        "lower_join",
        odd_columns=sorted(odd_columns),
        edges=sorted_edge_ids(join_lower),
    )

    emap = r.edge_map()
    crossing = [
        eid for eid in join_lower if {emap[eid].a[0], emap[eid].b[0]} == {2, 3}
    ]
    swapped_columns: set[int] = set()
    if crossing:
        join_two_row = RowGraph(
            s,
            [
                RowEdge(eid, (emap[eid].a[0] - 1, emap[eid].a[1]), (emap[eid].b[0] - 1, emap[eid].b[1]))
                for eid in sorted_edge_ids(join_lower)
            ],
            rows=2,
        )
        swapped_columns = resolve_two_row(join_two_row)
        trace.record("row23_swap", columns=sorted(swapped_columns))
        r = swap_rows(r, swapped_columns, 2, 3)
        emap = r.edge_map()
        lower = r.edges_within_rows({2, 3})

    join_row2 = {eid for eid in join_lower if emap[eid].a[0] == emap[eid].b[0] == 2}
    join_row3 = {eid for eid in join_lower if emap[eid].a[0] == emap[eid].b[0] == 3}
    if join_row2 | join_row3 != set(join_lower):
        raise ConstructionInvariantError("lower join still crosses rows 2/3 after swapping")

    f = {}
    for j in range(1, s + 1):
        f[(1, j)], f[(2, j)], f[(3, j)] = 2, 3, 1
    g: dict = {}
    for e in lower:
        if e.eid not in join_lower:
            g[e.eid] = 2

    mixed_ids = set(join_row2)
    for e in r.edges:
        rows = {e.a[0], e.b[0]}
        if rows == {1, 2} or rows == {1}:
            mixed_ids.add(e.eid)

    def mixed_degree(v) -> int:
        return sum(1 for e in r.edges_at(v) if e.eid in mixed_ids)

    mismatch = [
        m
        for m in range(1, s + 1)
        if (mixed_degree((1, m)) - mixed_degree((2, m))) % 2 != 0
    ]
    trace.record("row1_join_targets", columns=sorted(mismatch))
    row1 = r.row_subgraph(1)
    try:
        join_row1 = acyclic_t_join(row1, {(1, m) for m in mismatch})
    except HypothesisError as exc:
        raise ConstructionInvariantError(
            "row-1 parity repair is infeasible; the concentration precondition "
            f"does not hold ({exc})"
        ) from exc
    trace.record("row1_join", edges=sorted_edge_ids(join_row1))

    for eid in mixed_ids:
        if eid not in join_row1:
            g[eid] = 1
    for e in r.edges:
        g.setdefault(e.eid, 3)

    coloring = AmiableColoring(f=f, g=g)
    problems = amiable_violations(r, coloring)
    if problems:
        raise ConstructionInvariantError(f"constructed coloring is not amiable: {problems}")
    trace.record("amiable", f_rows=[2, 3, 1])
    return coloring, r, swapped_columns


def _row1_multi_components(r: RowGraph) -> list[list]:
    row1 = r.row_subgraph(1)
    return [c for c in components(row1) if len(c) >= 2]


def _column_is_dormant(r: RowGraph, j: int) -> bool:
    """Row-1 vertex fully isolated and at most one busy vertex below it."""
    if r.degree((1, j)) != 0:
        return False
    busy = sum(1 for i in (2, 3) if r.degree((i, j)) > 0)
    return busy <= 1


def construct_amiable_main(
    r: RowGraph,
    h_columns: Iterable[int] | None = None,
    k: int | None = None,
    trace: ConstructionTrace | None = None,
) -> tuple[AmiableColoring, ConstructionTrace, RowGraph]:
    """Amiable coloring of a row graph in witness-normalized form.

    Expects the shape produced by normalize_frame_coloring: at most one
    non-trivial component in row 1, and every column whose row-1 vertex is
    isolated within row 1 either dormant or listed in h_columns.  Returns
    the coloring together with the trace and the (possibly row-swapped)
    graph the coloring lives on.
    """
    trace = trace or ConstructionTrace()
    h_columns = set(h_columns or ())
    if k is not None:
        trace.record("layout", k_columns=k, h_columns=sorted(h_columns))
    multi = _row1_multi_components(r)
    if len(multi) > 1:
        raise HypothesisError("row 1 splits into more than one non-trivial component")
    big = set(multi[0]) if multi else set()
    for j in range(1, r.s + 1):
        if (1, j) in big:
            continue
        if _column_is_dormant(r, j) or j in h_columns:
            continue
        raise HypothesisError(
            f"column {j} is neither dormant nor part of the connected witness"
        )
    coloring, r_final, swapped = _run_engine(r, trace)
    # the parity-repair targets must stay inside the witness piece
    targets = set(trace.find("row1_join_targets")["columns"])
    allowed = {v[1] for v in big} | h_columns
    if not targets <= allowed:
        raise ConstructionInvariantError(
            f"repair columns {sorted(targets - allowed)} escape the witness piece"
        )
    return coloring, trace, r_final


def _solve_with_rearrangement(r: RowGraph, rearr: Rearrangement, trace: ConstructionTrace) -> AmiableColoring:
    """Run the engine on a rearranged copy and carry the coloring back."""
    arranged = rearr.apply(r)
    coloring, final_graph, swapped = _run_engine(arranged, trace)
    back_inner = _swap23_rearrangement(r.s, swapped).inverse()
    on_arranged = back_inner.transport_amiable(coloring)
    result = rearr.inverse().transport_amiable(on_arranged)
    problems = amiable_violations(r, result)
    if problems:
        raise ConstructionInvariantError(
            f"transported coloring lost amiability: {problems}"
        )
    return result


# -- constructive corollaries ---------------------------------------------------


def _arrangement_to_row1(r: RowGraph, chosen: dict[int, int]) -> Rearrangement:
    """Per column, move the chosen row to row 1 (smallest swap)."""
    row_perms = {}
    for j in range(1, r.s + 1):
        src = chosen.get(j, 1)
        perm = {1: 1, 2: 2, 3: 3}
        if src != 1:
            perm[src], perm[1] = 1, src
        row_perms[j] = perm
    return Rearrangement(column_perm={j: j for j in range(1, r.s + 1)}, row_perms=row_perms)


def construct_amiable_concentrated_row(
    r: RowGraph, row: int, trace: ConstructionTrace | None = None
) -> AmiableColoring:
    """Amiable coloring when one row carries at most one non-trivial
    component and the columns meeting that row's isolated vertices have at
    most one busy vertex each.

    The coloring returned is valid on r itself (any internal rearranging is
    undone).  Raises HypothesisError when the shape does not hold.
    """
    trace = trace or ConstructionTrace()
    if row not in range(1, r.rows + 1):
        raise HypothesisError(f"row {row} out of range")
    if not is_eulerian(row_contract(r)):
        raise HypothesisError("column contraction must be eulerian")

    row_sub = r.row_subgraph(row)
    comps = components(row_sub)
    multi = [c for c in comps if len(c) >= 2]
    if len(multi) > 1:
        raise HypothesisError(
            f"row {row} has {len(multi)} components with more than one vertex"
        )
    big_cols = {v[1] for comp in multi for v in comp}
    chosen: dict[int, int] = {}
    for j in range(1, r.s + 1):
        if j in big_cols:
            chosen[j] = row
            continue
        # (row, j) is isolated within its row: the column may have at most
        # one busy vertex, and row 1 must end up fully isolated.
        busy = [i for i in range(1, r.rows + 1) if r.degree((i, j)) > 0]
        if len(busy) > 1:
            raise HypothesisError(
                f"column {j} has {len(busy)} busy vertices next to an isolated "
                f"row-{row} vertex"
            )
        idle = [i for i in range(1, r.rows + 1) if r.degree((i, j)) == 0]
        chosen[j] = idle[0]
    rearr = _arrangement_to_row1(r, chosen)
    trace.record("row_to_front", row=row, chosen_rows=chosen)
    return _solve_with_rearrangement(r, rearr, trace)


def _extract_columns(r: RowGraph, cols: Sequence[int]) -> tuple[RowGraph, dict[int, int]]:
    mapping = {old: idx + 1 for idx, old in enumerate(sorted(cols))}
    edges = []
    for e in r.edges:
        ca, cb = e.a[1], e.b[1]
        if ca in mapping and cb in mapping:
            edges.append(
                RowEdge(e.eid, (e.a[0], mapping[ca]), (e.b[0], mapping[cb]), e.origin)
            )
        elif ca in mapping or cb in mapping:
            raise ValueError("column split cuts an edge")
    return RowGraph(len(cols), edges, rows=r.rows), mapping


def _merge_part_coloring(
    merged_f: dict, merged_g: dict, part: AmiableColoring, mapping: dict[int, int]
) -> None:
    back = {new: old for old, new in mapping.items()}
    for (i, j), c in part.f.items():
        merged_f[(i, back[j])] = c
    merged_g.update(part.g)


def _busy_vertices(r: RowGraph, j: int) -> list:
    return [(i, j) for i in range(1, r.rows + 1) if r.degree((i, j)) > 0]


def _solve_loose_part(r: RowGraph, special: int | None, trace: ConstructionTrace) -> AmiableColoring:
    """Engine entry for a part in which every non-special column has at
    most one busy vertex."""
    for j in range(1, r.s + 1):
        if j == special:
            continue
        if len(_busy_vertices(r, j)) > 1:
            raise HypothesisError(f"column {j} has more than one busy vertex")
    chosen: dict[int, int] = {}
    anchor_edge = None
    if special is not None and len(_busy_vertices(r, special)) >= 2:
        # tie the special column into row 1 through one of its edges
        v = _busy_vertices(r, special)[0]
        anchor_edge = min(r.edges_at(v), key=lambda e: repr(e.eid))
        u = anchor_edge.other(v)
        chosen[special] = v[0]
        chosen[u[1]] = u[0]
    for j in range(1, r.s + 1):
        if j in chosen:
            continue
        idle = [i for i in range(1, r.rows + 1) if r.degree((i, j)) == 0]
        if idle:
            chosen[j] = idle[0]
        else:
            chosen[j] = 1  # special column with <=1 busy vertex but no idle row
    trace.record(
        "loose_part",
        special=special,
        anchor_edge=None if anchor_edge is None else anchor_edge.eid,
        chosen_rows=chosen,
    )
    return _solve_with_rearrangement(r, _arrangement_to_row1(r, chosen), trace)


def _shortest_cross_column_path(r: RowGraph, p: int, q: int) -> list | None:
    """Shortest path between any vertex of column p and any vertex of
    column q; None if the columns lie in different pieces of the graph."""
    sources = [(i, p) for i in range(1, r.rows + 1)]
    parent: dict = {v: None for v in sources}
    queue = list(sources)
    while queue:
        v = queue.pop(0)
        if v[1] == q:
            path = [v]
            while parent[path[-1]] is not None:
                path.append(parent[path[-1]])
            return list(reversed(path))
        for e in sorted(r.edges_at(v), key=lambda e: repr(e.eid)):
            w = e.other(v)
            if w not in parent:
                parent[w] = v
                queue.append(w)
    return None


def construct_amiable_two_busy_columns(
    r: RowGraph, p: int, q: int, trace: ConstructionTrace | None = None
) -> AmiableColoring:
    """Amiable coloring when every column except p and q has two isolated
    vertices (hence at most one busy vertex).

    If some path joins columns p and q it is rotated into row 1 and the
    concentrated-row construction applies; otherwise the graph splits into
    independent parts that are solved separately and merged.
    """
    trace = trace or ConstructionTrace()
    if p == q or p not in range(1, r.s + 1) or q not in range(1, r.s + 1):
        raise HypothesisError("need two distinct valid column indices")
    if not is_eulerian(row_contract(r)):
        raise HypothesisError("column contraction must be eulerian")
    for j in range(1, r.s + 1):
        if j in (p, q):
            continue
        if len(_busy_vertices(r, j)) > 1:
            raise HypothesisError(
                f"column {j} must contain two isolated vertices"
            )

    path = _shortest_cross_column_path(r, p, q)
    if path is not None:
        cols_seen = [v[1] for v in path]
        assert len(set(cols_seen)) == len(cols_seen), "shortest path revisits a column"
        chosen = {v[1]: v[0] for v in path}
        for j in range(1, r.s + 1):
            if j in chosen:
                continue
            idle = [i for i in range(1, r.rows + 1) if r.degree((i, j)) == 0]
            if not idle:
                raise HypothesisError(f"column {j} must contain two isolated vertices")
            chosen[j] = idle[0]
        trace.record("path_to_front", path=[list(v) for v in path])
        return _solve_with_rearrangement(r, _arrangement_to_row1(r, chosen), trace)

    # no path: split along connected pieces of the column contraction
    rc = row_contract(r)
    groups = components(rc)
    part_cols: list[list[int]] = []
    specials: list[int | None] = []
    loose: list[int] = []
    for comp in groups:
        cols = sorted(comp)
        if p in cols:
            part_cols.append(cols)
            specials.append(p)
        elif q in cols:
            part_cols.append(cols)
            specials.append(q)
        elif len(cols) == 1:
            # a singleton contraction component is a fully isolated column
            loose.append(cols[0])
        else:
            part_cols.append(cols)
            specials.append(None)
    if loose:
        part_cols.append(loose)
        specials.append(None)

    merged_f: dict = {}
    merged_g: dict = {}
    for cols, special in zip(part_cols, specials):
        part, mapping = _extract_columns(r, cols)
        part_special = mapping[special] if special is not None else None
        part_coloring = _solve_loose_part(part, part_special, trace)
        _merge_part_coloring(merged_f, merged_g, part_coloring, mapping)
    result = AmiableColoring(f=merged_f, g=merged_g)
    problems = amiable_violations(r, result)
    if problems:
        raise ConstructionInvariantError(f"merged coloring is not amiable: {problems}")
    return result


# -- parity colorings ------------------------------------------------------------

STANDARD = "standard"
SYMMETRIC = "symmetric"
BLACK = "black"
WHITE = "white"


@dataclass(frozen=True)
class ParityColoring:
    """Black/white vertex coloring of a 3-row graph."""

    black: frozenset
    mode: str

    def color(self, v) -> str:
        return BLACK if v in self.black else WHITE

    def to_json(self) -> dict:
        return {"mode": self.mode, "black": sorted([list(v) for v in self.black])}

    @staticmethod
    def from_json(obj: dict) -> "ParityColoring":
        return ParityColoring(
            black=frozenset((i, j) for i, j in obj["black"]), mode=obj["mode"]
        )


def _degree_within(r: RowGraph, v, rows: set[int]) -> int:
    return sum(1 for e in r.edges_at(v) if e.a[0] in rows and e.b[0] in rows)


def _neighbors_in_row(r: RowGraph, v, row: int, multiplicity: bool) -> int:
    if multiplicity:
        return sum(1 for e in r.edges_at(v) if e.other(v)[0] == row)
    return len({e.other(v) for e in r.edges_at(v) if e.other(v)[0] == row})


def _row_component_lists(r: RowGraph) -> dict[int, list[list]]:
    return {i: components(r.row_subgraph(i)) for i in (1, 2, 3)}


def _pair_relations(r: RowGraph, mode: str, multiplicity: bool) -> tuple[list[bool], list[bool]]:
    """Per column: must phi agree on rows (1,2) and on rows (2,3)?"""
    rel12 = []
    rel23 = []
    for j in range(1, r.s + 1):
        a = _degree_within(r, (1, j), {1, 2}) + _neighbors_in_row(r, (2, j), 1, multiplicity)
        rel12.append(a % 2 == 0)
        if mode == STANDARD:
            b = _degree_within(r, (2, j), {2, 3}) + _degree_within(r, (3, j), {2, 3})
        else:
            b = _degree_within(r, (2, j), {2, 3}) + _neighbors_in_row(r, (3, j), 2, multiplicity)
        rel23.append(b % 2 == 0)
    return rel12, rel23


def is_parity_coloring(
    r: RowGraph,
    phi: ParityColoring,
    mode: str | None = None,
    neighbor_multiplicity: bool = True,
) -> bool:
    """Literal evaluation of the parity-coloring conditions.

    Neighbor counts are edge-multiplicity-aware by default; pass
    neighbor_multiplicity=False to count distinct neighbors instead (an
    experimental alternative reading).
    """
    mode = mode or phi.mode
    if mode not in (STANDARD, SYMMETRIC):
        raise ValueError(f"unknown mode {mode!r}")
    rel12, rel23 = _pair_relations(r, mode, neighbor_multiplicity)
    for j in range(1, r.s + 1):
        same12 = ((1, j) in phi.black) == ((2, j) in phi.black)
        if same12 != rel12[j - 1]:
            return False
        same23 = ((2, j) in phi.black) == ((3, j) in phi.black)
        if same23 != rel23[j - 1]:
            return False
    for i, comps in _row_component_lists(r).items():
        for comp in comps:
            if sum(1 for v in comp if v in phi.black) % 2 != 0:
                return False
    return True


def has_parity_coloring_bruteforce(
    r: RowGraph,
    mode: str,
    neighbor_multiplicity: bool = True,
    max_s: int = 6,
) -> ParityColoring | None:
    """Exhaustive search over all 2^(3s) black/white assignments."""
    import itertools

    if r.s > max_s:
        raise OracleLimitError(f"s={r.s} exceeds the brute-force guard {max_s}")
    verts = r.vertices()
    for bits in itertools.product((False, True), repeat=len(verts)):
        black = frozenset(v for v, b in zip(verts, bits) if b)
        phi = ParityColoring(black=black, mode=mode)
        if is_parity_coloring(r, phi, mode, neighbor_multiplicity):
            return phi
    return None


def find_parity_coloring(
    r: RowGraph, mode: str, neighbor_multiplicity: bool = True
) -> ParityColoring | None:
    """Exact search using the per-column structure of the conditions.

    Conditions (i)/(ii) pin each column's pattern up to the choice of the
    row-1 color, so only 2^s assignments need the per-row evenness check.
    Agrees with has_parity_coloring_bruteforce everywhere.
    """
    import itertools

    rel12, rel23 = _pair_relations(r, mode, neighbor_multiplicity)
    comp_lists = _row_component_lists(r)
    for bits in itertools.product((False, True), repeat=r.s):
        black = set()
        for j in range(1, r.s + 1):
            b1 = bits[j - 1]
            b2 = b1 if rel12[j - 1] else not b1
            b3 = b2 if rel23[j - 1] else not b2
            if b1:
                black.add((1, j))
            if b2:
                black.add((2, j))
            if b3:
                black.add((3, j))
        ok = True
        for i, comps in comp_lists.items():
            for comp in comps:
                if sum(1 for v in comp if v in black) % 2 != 0:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return ParityColoring(black=frozenset(black), mode=mode)
    return None


# -- conversions between amiable and parity colorings ----------------------------


def _require_identity_f(r: RowGraph, a: AmiableColoring) -> None:
    if any(a.f.get((i, j)) != i for j in range(1, r.s + 1) for i in range(1, r.rows + 1)):
        raise HypothesisError("conversion requires the vertex coloring f(row i) = i")


def _color_degree_in_row(r: RowGraph, a: AmiableColoring, v, color: int) -> int:
    row = v[0]
    return sum(
        1
        for e in r.edges_at(v)
        if e.a[0] == row and e.b[0] == row and a.g[e.eid] == color
    )


def amiable_to_parity(r: RowGraph, a: AmiableColoring) -> ParityColoring:
    """Standard-mode parity coloring read off an amiable coloring."""
    _require_identity_f(r, a)
    if not is_amiable(r, a):
        raise HypothesisError("coloring is not amiable")
    rules = {1: 2, 2: 3, 3: 2}  # row -> which g-color to count inside the row
    black = set()
    for j in range(1, r.s + 1):
        for i in (1, 2, 3):
            if _color_degree_in_row(r, a, (i, j), rules[i]) % 2 == 1:
                black.add((i, j))
    phi = ParityColoring(black=frozenset(black), mode=STANDARD)
    if not is_parity_coloring(r, phi):
        raise ConstructionInvariantError("extracted coloring violates the parity conditions")
    return phi


def amiable_to_symmetric(r: RowGraph, a: AmiableColoring) -> ParityColoring:
    """Symmetric-mode parity coloring read off an amiable coloring."""
    _require_identity_f(r, a)
    if not is_amiable(r, a):
        raise HypothesisError("coloring is not amiable")
    black = set()
    for j in range(1, r.s + 1):
        for i in (1, 2, 3):
            if _color_degree_in_row(r, a, (i, j), _next_row(i)) % 2 == 1:
                black.add((i, j))
    phi = ParityColoring(black=frozenset(black), mode=SYMMETRIC)
    if not is_parity_coloring(r, phi):
        raise ConstructionInvariantError("extracted coloring violates the parity conditions")
    return phi


def _row_joins(r: RowGraph, phi: ParityColoring) -> dict[int, set]:
    joins = {}
    for i in (1, 2, 3):
        blacks = {(i, j) for j in range(1, r.s + 1) if (i, j) in phi.black}
        joins[i] = acyclic_t_join(r.row_subgraph(i), blacks)
    return joins


def parity_to_amiable(r: RowGraph, phi: ParityColoring) -> AmiableColoring:
    """Rebuild an amiable coloring from a standard parity coloring."""
    if phi.mode != STANDARD:
        raise HypothesisError("expected a standard-mode coloring")
    if not is_eulerian(row_contract(r)):
        raise HypothesisError("column contraction must be eulerian")
    if not is_parity_coloring(r, phi):
        raise HypothesisError("coloring violates the parity conditions")
    joins = _row_joins(r, phi)
    g = {}
    for e in r.edges:
        rows = (e.a[0], e.b[0])
        key = frozenset(rows)
        if key == frozenset({2}):
            g[e.eid] = 3 if e.eid in joins[2] else 1
        elif key == frozenset({3}):
            g[e.eid] = 2 if e.eid in joins[3] else 1
        elif key == frozenset({1}):
            g[e.eid] = 2 if e.eid in joins[1] else 3
        elif key == frozenset({2, 3}):
            g[e.eid] = 1
        elif key == frozenset({1, 2}):
            g[e.eid] = 3
        else:
            g[e.eid] = 2
    a = AmiableColoring(f=identity_f(r), g=g)
    problems = amiable_violations(r, a)
    if problems:
        raise ConstructionInvariantError(f"rebuilt coloring is not amiable: {problems}")
    return a


def symmetric_to_amiable(r: RowGraph, phi: ParityColoring) -> AmiableColoring:
    """Rebuild an amiable coloring from a symmetric parity coloring."""
    if phi.mode != SYMMETRIC:
        raise HypothesisError("expected a symmetric-mode coloring")
    if not is_eulerian(row_contract(r)):
        raise HypothesisError("column contraction must be eulerian")
    if not is_parity_coloring(r, phi):
        raise HypothesisError("coloring violates the parity conditions")
    joins = _row_joins(r, phi)
    g = {}
    for e in r.edges:
        ra, rb = e.a[0], e.b[0]
        if ra == rb:
            g[e.eid] = _next_row(ra) if e.eid in joins[ra] else _next_row(_next_row(ra))
        else:
            g[e.eid] = ({1, 2, 3} - {ra, rb}).pop()
    a = AmiableColoring(f=identity_f(r), g=g)
    problems = amiable_violations(r, a)
    if problems:
        raise ConstructionInvariantError(f"rebuilt coloring is not amiable: {problems}")
    return a


# -- frame-level normalization and the full constructive path --------------------


def _recolor_component(coloring: PerfectColoring, comp, color: int) -> PerfectColoring:
    vc = dict(coloring.vertex_color)
    ec = dict(coloring.edge_color)
    for v in comp.vertices:
        if v in vc:
            vc[v] = color
    for e in comp.edge_ids:
        ec[e] = color
    return PerfectColoring(vertex_color=vc, edge_color=ec)


def permute_colors(coloring: PerfectColoring, perm: dict[int, int]) -> PerfectColoring:
    return PerfectColoring(
        vertex_color={v: perm[c] for v, c in coloring.vertex_color.items()},
        edge_color={e: perm[c] for e, c in coloring.edge_color.items()},
    )


def permute_component_colors(
    frame: Frame, coloring: PerfectColoring, labels: Iterable[int], perm: dict[int, int]
) -> PerfectColoring:
    labels = set(labels)
    vc = dict(coloring.vertex_color)
    ec = dict(coloring.edge_color)
    for comp in frame.components:
        if comp.label not in labels:
            continue
        for v in comp.vertices:
            if v in vc:
                vc[v] = perm[vc[v]]
        for e in comp.edge_ids:
            ec[e] = perm[ec[e]]
    return PerfectColoring(vertex_color=vc, edge_color=ec)


def _color1_component(frame: Frame, coloring: PerfectColoring, anchors: set[int]) -> tuple[set[int], set]:
    """Labels and edges of the color-1 connected piece containing anchors."""
    cc = build_colored_contraction(frame, coloring)
    eids = [e for e, c in cc.edge_color.items() if c == 1]
    sub = cc.contracted.graph.subgraph_of_edges(eids, keep_vertices=cc.contracted.graph.vertices)
    for comp in components(sub):
        if anchors <= set(comp):
            comp_set = set(comp)
            edges = {e for e in eids if cc.contracted.graph.endpoints(e)[0] in comp_set}
            return comp_set, edges
    raise ConstructionInvariantError("witness components are not joined by color 1")


def normalize_frame_coloring(
    frame: Frame, coloring: PerfectColoring, witness: Witness, trace: ConstructionTrace | None = None
) -> tuple[Frame, PerfectColoring, frozenset, int]:
    """Rewrite (frame, coloring) into the shape the main construction expects.

    Steps: swap the witness color to 1; greedily absorb cycle components
    into the color-1 piece whenever an uncolored contraction edge would turn
    color 1 by recoloring them; recolor the remaining color-1 cycle
    components away from color 1; relabel components so the K-components
    come first, then the cycle components inside the witness piece.
    Returns (relabeled frame, adjusted coloring, h column set, k).
    """
    from .frame import validate_frame

    trace = trace or ConstructionTrace()
    if witness.color != 1:
        perm = {witness.color: 1, 1: witness.color}
        perm = {c: perm.get(c, c) for c in (1, 2, 3)}
        coloring = permute_colors(coloring, perm)
        trace.record("witness_color_swap", swap=[witness.color, 1])

    k_labels = set(frame.k_labels())
    anchors = set(k_labels) if k_labels else set(witness.h_labels)
    label_of = {}
    for comp in frame.components:
        for v in comp.vertices:
            label_of[v] = comp.label
    comp_by_label = {c.label: c for c in frame.components}

    h_labels, _ = _color1_component(frame, coloring, anchors)
    grown = True
    absorbed = []
    while grown:
        grown = False
        for eid in frame.free_edges():
            v, w = frame.host.endpoints(eid)
            for a, b in ((v, w), (w, v)):
                la, lb = label_of[a], label_of[b]
                if (
                    la in h_labels
                    and lb not in h_labels
                    and coloring.vertex_color.get(a) == 1
                    and comp_by_label[lb].kind == "C"
                ):
                    coloring = _recolor_component(coloring, comp_by_label[lb], 1)
                    absorbed.append(lb)
                    h_labels, _ = _color1_component(frame, coloring, anchors)
                    grown = True
                    break
            if grown:
                break
    if absorbed:
        trace.record("absorbed_components", labels=absorbed)

    recolored = []
    for comp in frame.components:
        if comp.kind != "C" or comp.label in h_labels:
            continue
        comp_color = coloring.edge_color[comp.edge_ids[0]]
        if comp_color == 1:
            coloring = _recolor_component(coloring, comp, 2)
            recolored.append(comp.label)
    if recolored:
        trace.record("recolored_outside_witness", labels=recolored)
        h_after, _ = _color1_component(frame, coloring, anchors)
        if h_after != h_labels:
            raise ConstructionInvariantError("recoloring outside the witness changed it")

    k_sorted = sorted(k_labels)
    h_c = sorted(l for l in h_labels if l not in k_labels)
    rest = sorted(l for l in comp_by_label if l not in h_labels and l not in k_labels)
    order = k_sorted + h_c + rest
    labeling = [comp_by_label[l].vertices for l in order]
    new_frame = validate_frame(frame.host, frame.frame_edges, labeling=labeling)
    k = len(k_sorted)
    h_columns = frozenset(range(1, k + len(h_c) + 1))
    trace.record(
        "relabel",
        order=order,
        k_columns=k,
        h_columns=sorted(h_columns),
    )
    return new_frame, coloring, h_columns, k


def amiable_coloring_for_frame(
    g: Multigraph, frame: Frame, coloring: PerfectColoring, witness: Witness
) -> tuple[Frame, PerfectColoring, AmiableColoring, ConstructionTrace, RowGraph]:
    """Full constructive path from a well-connected coloring to an amiable
    coloring, keeping frame and coloring synchronized with the row graph.

    Returns (relabeled frame, final coloring, amiable coloring, trace, row
    graph); the amiable coloring is valid on the returned row graph, which
    equals the row graph of (frame, final coloring).
    """
    trace = ConstructionTrace()
    frame2, coloring2, h_columns, k = normalize_frame_coloring(frame, coloring, witness, trace)
    r = build_row_graph(g, frame2, coloring2)
    amiable, trace, r_final = construct_amiable_main(r, h_columns, k, trace)
    swap_step = trace.find("row23_swap")
    if swap_step:
        coloring2 = permute_component_colors(
            frame2, coloring2, swap_step["columns"], {1: 1, 2: 3, 3: 2}
        )
        rebuilt = build_row_graph(g, frame2, coloring2)
        if rebuilt.edge_signature() != r_final.edge_signature():
            raise ConstructionInvariantError(
                "row swap did not match the corresponding color swap"
            )
    return frame2, coloring2, amiable, trace, r_final
