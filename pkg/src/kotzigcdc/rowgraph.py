"""Row graphs: the 3 x s (or 2 x s) grids the coloring machinery runs on.

A row graph has vertices (row, column) with every column an independent
set.  Edges built from a frame keep the host edge id as their origin;
synthetic instances are first-class because the scanning harness works on
bare row graphs.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import HypothesisError, OracleLimitError
from .multigraph import Multigraph

GridVertex = tuple[int, int]  # (row, column), both 1-based


@dataclass(frozen=True)
class RowEdge:
    eid: object
    a: GridVertex
    b: GridVertex
    origin: object | None = None

    def touches(self, v: GridVertex) -> bool:
        return self.a == v or self.b == v

    def other(self, v: GridVertex) -> GridVertex:
        if v == self.a:
            return self.b
        if v == self.b:
            return self.a
        raise KeyError(v)


class RowGraph:
    """Grid graph with independent columns; rows is 2 or 3."""

    __slots__ = ("s", "rows", "edges", "column_kinds", "_at")

    def __init__(
        self,
        s: int,
        edges: Iterable[RowEdge | tuple],
        rows: int = 3,
        column_kinds: tuple | None = None,
    ):
        self.s = s
        self.rows = rows
        norm: list[RowEdge] = []
        for e in edges:
            if not isinstance(e, RowEdge):
                eid, a, b, *rest = e
                e = RowEdge(eid, tuple(a), tuple(b), rest[0] if rest else None)
            norm.append(e)
        self.edges = tuple(norm)
        self.column_kinds = column_kinds
        self._at: dict[GridVertex, list[RowEdge]] = {v: [] for v in self.vertices()}
        seen = set()
        for e in self.edges:
            if e.eid in seen:
                raise ValueError(f"duplicate row edge id {e.eid!r}")
            seen.add(e.eid)
            for v in (e.a, e.b):
                if v not in self._at:
                    raise ValueError(f"edge {e.eid!r} uses vertex {v} outside the grid")
            if e.a[1] == e.b[1]:
                raise ValueError(f"edge {e.eid!r} lies inside column {e.a[1]} (columns are independent)")
            self._at[e.a].append(e)
            self._at[e.b].append(e)

    def vertices(self) -> list[GridVertex]:
        return [(i, j) for j in range(1, self.s + 1) for i in range(1, self.rows + 1)]

    def column(self, j: int) -> list[GridVertex]:
        return [(i, j) for i in range(1, self.rows + 1)]

    def row(self, i: int) -> list[GridVertex]:
        return [(i, j) for j in range(1, self.s + 1)]

    def edges_at(self, v: GridVertex) -> list[RowEdge]:
        return self._at[v]

    def degree(self, v: GridVertex) -> int:
        return len(self._at[v])

    def edges_within_rows(self, rows: set[int]) -> list[RowEdge]:
        return [e for e in self.edges if e.a[0] in rows and e.b[0] in rows]

    def edges_within_row(self, i: int) -> list[RowEdge]:
        return self.edges_within_rows({i})

    def cross_edges(self, i1: int, i2: int) -> list[RowEdge]:
        return [e for e in self.edges if {e.a[0], e.b[0]} == {i1, i2}]

    def edge_map(self) -> dict:
        return {e.eid: e for e in self.edges}

    def to_multigraph(self, edges: Iterable[RowEdge] | None = None) -> Multigraph:
        chosen = self.edges if edges is None else tuple(edges)
        return Multigraph(self.vertices(), [(e.eid, e.a, e.b) for e in chosen])

    def row_subgraph(self, i: int) -> Multigraph:
        """Induced subgraph on one row, keeping all s row vertices."""
        return Multigraph(
            [(i, j) for j in range(1, self.s + 1)],
            [(e.eid, e.a, e.b) for e in self.edges_within_row(i)],
        )

    def edge_signature(self) -> frozenset:
        return frozenset((e.eid, frozenset((e.a, e.b))) for e in self.edges)

    def __repr__(self) -> str:  # pragma: no cover
        return f"RowGraph(rows={self.rows}, s={self.s}, edges={len(self.edges)})"


def row_contract(r: RowGraph) -> Multigraph:
    """Squash every column to a single vertex (1..s); multiplicities are
    kept and no loops can arise because columns are independent."""
    return Multigraph(
        range(1, r.s + 1), [(e.eid, e.a[1], e.b[1]) for e in r.edges]
    )


def build_row_graph(g: Multigraph, frame, coloring) -> RowGraph:
    """Row graph of a host graph, frame and perfect coloring.

    Every non-frame non-chord edge of the host becomes one grid edge: each
    endpoint is a 2-valent frame vertex and lands in (its color, its
    component label).  Edges keep the host edge id as id and origin.
    """
    label_of = {}
    for comp in frame.components:
        for v in comp.vertices:
            label_of[v] = comp.label
    edges = []
    for eid in frame.free_edges():
        v, w = g.endpoints(eid)
        cv = coloring.vertex_color.get(v)
        cw = coloring.vertex_color.get(w)
        if cv is None or cw is None:
            raise HypothesisError(f"free edge {eid!r} touches an uncolored (3-valent) vertex")
        a = (cv, label_of[v])
        b = (cw, label_of[w])
        edges.append(RowEdge(eid, a, b, origin=eid))
    kinds = tuple(comp.kind for comp in frame.components)
    return RowGraph(frame.s, edges, rows=3, column_kinds=kinds)


# -- rearrangements -----------------------------------------------------------


@dataclass(frozen=True)
class Rearrangement:
    """Column permutation plus a row permutation inside each column.

    column_perm maps old column -> new column; row_perms maps old column ->
    {old row -> new row}.
    """

    column_perm: dict
    row_perms: dict

    @staticmethod
    def identity(s: int, rows: int = 3) -> "Rearrangement":
        return Rearrangement(
            column_perm={j: j for j in range(1, s + 1)},
            row_perms={j: {i: i for i in range(1, rows + 1)} for j in range(1, s + 1)},
        )

    def map_vertex(self, v: GridVertex) -> GridVertex:
        i, j = v
        return (self.row_perms[j][i], self.column_perm[j])

    def inverse(self) -> "Rearrangement":
        col_inv = {new: old for old, new in self.column_perm.items()}
        row_inv = {}
        for old_col, perm in self.row_perms.items():
            new_col = self.column_perm[old_col]
            row_inv[new_col] = {new: old for old, new in perm.items()}
        return Rearrangement(column_perm=col_inv, row_perms=row_inv)

    def apply(self, r: RowGraph) -> RowGraph:
        edges = [
            RowEdge(e.eid, self.map_vertex(e.a), self.map_vertex(e.b), e.origin)
            for e in r.edges
        ]
        kinds = None
        if r.column_kinds is not None:
            kinds = [None] * r.s
            for old, new in self.column_perm.items():
                kinds[new - 1] = r.column_kinds[old - 1]
            kinds = tuple(kinds)
        return RowGraph(r.s, edges, rows=r.rows, column_kinds=kinds)

    def transport_amiable(self, a: "AmiableColoring") -> "AmiableColoring":
        """Carry a coloring along the rearrangement (edge ids are stable)."""
        return AmiableColoring(
            f={self.map_vertex(v): c for v, c in a.f.items()},
            g=dict(a.g),
        )


def rearrange(
    r: RowGraph, column_perm: dict | Sequence[int], per_column_row_perms: dict | None = None
) -> RowGraph:
    """Apply a rearrangement given as plain mappings (1-based)."""
    if not isinstance(column_perm, dict):
        column_perm = {j: column_perm[j - 1] for j in range(1, r.s + 1)}
    if set(column_perm) != set(range(1, r.s + 1)) or set(column_perm.values()) != set(
        range(1, r.s + 1)
    ):
        raise ValueError("malformed column permutation")
    row_perms = {}
    for j in range(1, r.s + 1):
        perm = (per_column_row_perms or {}).get(j, {i: i for i in range(1, r.rows + 1)})
        if not isinstance(perm, dict):
            perm = {i: perm[i - 1] for i in range(1, r.rows + 1)}
        if set(perm) != set(range(1, r.rows + 1)) or set(perm.values()) != set(
            range(1, r.rows + 1)
        ):
            raise ValueError(f"malformed row permutation for column {j}")
        row_perms[j] = perm
    return Rearrangement(column_perm=column_perm, row_perms=row_perms).apply(r)


def random_rearrangement(r: RowGraph, rng: random.Random) -> Rearrangement:
    cols = list(range(1, r.s + 1))
    rng.shuffle(cols)
    column_perm = {j: cols[j - 1] for j in range(1, r.s + 1)}
    row_perms = {}
    for j in range(1, r.s + 1):
        rows = list(range(1, r.rows + 1))
        rng.shuffle(rows)
        row_perms[j] = {i: rows[i - 1] for i in range(1, r.rows + 1)}
    return Rearrangement(column_perm=column_perm, row_perms=row_perms)


# -- amiable colorings ---------------------------------------------------------


@dataclass(frozen=True)
class AmiableColoring:
    """Vertex coloring f and edge coloring g, both into {1,2,3}."""

    f: dict
    g: dict


def amiable_violations(r: RowGraph, a: AmiableColoring) -> list[str]:
    """Empty iff (f, g) is amiable: distinct colors in every column, no
    vertex sharing a color with an incident edge, and for every column and
    every color an even number of incidences of that color."""
    out = []
    for v in r.vertices():
        if v not in a.f:
            out.append(f"vertex {v} uncolored")
    for e in r.edges:
        if e.eid not in a.g:
            out.append(f"edge {e.eid!r} uncolored")
    if out:
        return out
    for j in range(1, r.s + 1):
        colors = [a.f[v] for v in r.column(j)]
        if len(set(colors)) != len(colors):
            out.append(f"column {j} repeats a vertex color")
    for e in r.edges:
        for v in (e.a, e.b):
            if a.f[v] == a.g[e.eid]:
                out.append(f"edge {e.eid!r} shares color {a.g[e.eid]} with vertex {v}")
    for j in range(1, r.s + 1):
        for color in (1, 2, 3):
            total = sum(
                1
                for v in r.column(j)
                for e in r.edges_at(v)
                if a.g[e.eid] == color
            )
            if total % 2 != 0:
                out.append(f"column {j} has odd count {total} of color {color}")
    return out


def is_amiable(r: RowGraph, a: AmiableColoring) -> bool:
    return not amiable_violations(r, a)


def extend_to_amiable(r: RowGraph, f: dict) -> dict | None:
    """An edge coloring g making (f, g) amiable, or None.

    Every edge avoids its two endpoint colors, which leaves one or two
    choices; the per-column parity condition is checked as soon as a
    column's last incident edge is assigned.
    """
    for j in range(1, r.s + 1):
        colors = [f[v] for v in r.column(j)]
        if len(set(colors)) != len(colors):
            return None

    edges = list(r.edges)
    remaining = {j: 0 for j in range(1, r.s + 1)}
    for e in edges:
        for col in {e.a[1], e.b[1]}:
            remaining[col] += 1
    counts = {(j, c): 0 for j in range(1, r.s + 1) for c in (1, 2, 3)}
    g: dict = {}

    def column_ok(j: int) -> bool:
        return all(counts[(j, c)] % 2 == 0 for c in (1, 2, 3))

    def assign(idx: int) -> bool:
        if idx == len(edges):
            return True
        e = edges[idx]
        cols = {e.a[1], e.b[1]}
        allowed = [c for c in (1, 2, 3) if c != f[e.a] and c != f[e.b]]
        for color in allowed:
            g[e.eid] = color
            for j in cols:
                counts[(j, color)] += 1
                remaining[j] -= 1
            ok = all(remaining[j] > 0 or column_ok(j) for j in cols)
            if ok and assign(idx + 1):
                return True
            for j in cols:
                counts[(j, color)] -= 1
                remaining[j] += 1
            del g[e.eid]
        return False

    if assign(0):
        return dict(g)
    return None


def _column_color_assignments(rows: int) -> list[tuple[int, ...]]:
    return sorted(itertools.permutations(range(1, rows + 1)))


def brute_force_amiable(
    r: RowGraph, force: bool = False, max_edges: int = 24, max_s: int = 6
) -> AmiableColoring | None:
    """Exhaustive amiable-coloring search.

    The vertex coloring of the first column is pinned to the identity (a
    global color permutation maps any amiable coloring to one of this
    form); all other columns range over their 6 assignments.  Refuses
    oversized instances unless force=True.
    """
    if not force and (len(r.edges) > max_edges or r.s > max_s):
        raise OracleLimitError(
            f"instance too large for the oracle ({len(r.edges)} edges, s={r.s}); "
            "pass force=True to override"
        )
    perms = _column_color_assignments(r.rows)
    identity = tuple(range(1, r.rows + 1))
    per_column = [[identity]] + [perms] * (r.s - 1) if r.s >= 1 else []
    for combo in itertools.product(*per_column):
        f = {}
        for j, perm in enumerate(combo, start=1):
            for i in range(1, r.rows + 1):
                f[(i, j)] = perm[i - 1]
        g = extend_to_amiable(r, f)
        if g is not None:
            return AmiableColoring(f=f, g=g)
    return None


# -- enumeration of synthetic instances ---------------------------------------


def _slot_pairs(rows: int) -> list[tuple[int, int]]:
    return [(i1, i2) for i1 in range(1, rows + 1) for i2 in range(1, rows + 1)]


def enumerate_row_graphs(
    s: int,
    max_edges: int,
    rows: int = 3,
    eulerian_only: bool = True,
    up_to_rearrangement: bool = False,
) -> Iterator[RowGraph]:
    """All row graphs with s columns and at most max_edges edges.

    With eulerian_only, only instances whose column contraction has even
    degrees everywhere are produced (enumerated pair-multiplicity-first so
    the parity filter prunes before row assignment).  Parallel edges are
    included.  up_to_rearrangement keeps one representative per orbit of
    column/row permutations; use only at small sizes.
    """
    pairs = list(itertools.combinations(range(1, s + 1), 2))
    row_pairs = _slot_pairs(rows)
    seen_canon: set = set()

    def column_parities(mults: tuple[int, ...]) -> bool:
        for col in range(1, s + 1):
            deg = sum(m for (p, q), m in zip(pairs, mults) if col in (p, q))
            if deg % 2 != 0:
                return False
        return True

    def mult_vectors() -> Iterator[tuple[int, ...]]:
        def rec(idx: int, left: int, acc: list[int]) -> Iterator[tuple[int, ...]]:
            if idx == len(pairs):
                yield tuple(acc)
                return
            for m in range(left + 1):
                acc.append(m)
                yield from rec(idx + 1, left - m, acc)
                acc.pop()

        yield from rec(0, max_edges, [])

    for mults in mult_vectors():
        if eulerian_only and not column_parities(mults):
            continue
        per_pair_choices = []
        for (p, q), m in zip(pairs, mults):
            per_pair_choices.append(
                list(itertools.combinations_with_replacement(row_pairs, m))
            )
        for combo in itertools.product(*per_pair_choices):
            edges = []
            eid = 0
            for (p, q), assignment in zip(pairs, combo):
                for (i1, i2) in assignment:
                    edges.append(RowEdge(eid, (i1, p), (i2, q)))
                    eid += 1
            r = RowGraph(s, edges, rows=rows)
            if up_to_rearrangement:
                canon = canonical_form(r)
                if canon in seen_canon:
                    continue
                seen_canon.add(canon)
            yield r


def canonical_form(r: RowGraph) -> tuple:
    """Lexicographically smallest edge multiset over all rearrangements."""
    cols = list(range(1, r.s + 1))
    rows = list(range(1, r.rows + 1))
    best = None
    for col_perm in itertools.permutations(cols):
        cmap = {old: new for old, new in zip(cols, col_perm)}
        for row_choices in itertools.product(itertools.permutations(rows), repeat=r.s):
            rmaps = {
                j: {old: new for old, new in zip(rows, row_choices[j - 1])}
                for j in cols
            }
            sig = []
            for e in r.edges:
                a = (rmaps[e.a[1]][e.a[0]], cmap[e.a[1]])
                b = (rmaps[e.b[1]][e.b[0]], cmap[e.b[1]])
                sig.append(tuple(sorted((a, b))))
            cand = tuple(sorted(sig))
            if best is None or cand < best:
                best = cand
    return best


# -- serialization --------------------------------------------------------------


def row_graph_to_json(r: RowGraph) -> dict:
    edges = []
    for e in r.edges:
        rec = [e.a[0], e.a[1], e.b[0], e.b[1]]
        if e.origin is not None:
            rec.append(e.origin)
        edges.append(rec)
    out = {"s": r.s, "edges": edges}
    if r.rows != 3:
        out["rows"] = r.rows
    return out


def row_graph_from_json(obj: dict) -> RowGraph:
    rows = obj.get("rows", 3)
    edges = []
    for idx, rec in enumerate(obj["edges"]):
        i1, j1, i2, j2, *rest = rec
        origin = rest[0] if rest else None
        eid = origin if origin is not None else idx
        edges.append(RowEdge(eid, (i1, j1), (i2, j2), origin))
    return RowGraph(obj["s"], edges, rows=rows)


def amiable_to_json(a: AmiableColoring) -> dict:
    return {
        "f": [[v[0], v[1], c] for v, c in sorted(a.f.items())],
        "g": [[eid, c] for eid, c in sorted(a.g.items(), key=lambda kv: repr(kv[0]))],
    }


def amiable_from_json(obj: dict) -> AmiableColoring:
    return AmiableColoring(
        f={(i, j): c for i, j, c in obj["f"]},
        g={eid: c for eid, c in obj["g"]},
    )
