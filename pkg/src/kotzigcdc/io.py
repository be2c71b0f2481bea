"""Graph file formats: graph6/sparse6 readers and the JSON multigraph format.

graph6 covers simple graphs only; sparse6 and the JSON format carry
multigraphs (the JSON format is the package's native representation and the
only writer).
"""

from __future__ import annotations

import json
from pathlib import Path

from .errors import GraphFormatError
from .multigraph import Multigraph

_G6_HEADER = ">>graph6<<"
_S6_HEADER = ">>sparse6<<"


def _decode_number(data: bytes, pos: int) -> tuple[int, int]:
    """Decode the N(n) size field, returning (n, next position)."""
    if pos >= len(data):
        raise GraphFormatError("truncated size field")
    c = data[pos] - 63
    if c < 0 or c > 63:
        raise GraphFormatError("invalid byte in size field")
    if c < 63:
        return c, pos + 1
    if pos + 3 < len(data) and data[pos + 1] - 63 == 63:
        chunk = data[pos + 2 : pos + 8]
        if len(chunk) < 6:
            raise GraphFormatError("truncated long size field")
        n = 0
        for byte in chunk:
            n = (n << 6) | (byte - 63)
        return n, pos + 8
    chunk = data[pos + 1 : pos + 4]
    if len(chunk) < 3:
        raise GraphFormatError("truncated size field")
    n = 0
    for byte in chunk:
        n = (n << 6) | (byte - 63)
    return n, pos + 4


def _bit_stream(data: bytes, pos: int):
    for byte in data[pos:]:
        val = byte - 63
        if val < 0 or val > 63:
            raise GraphFormatError("invalid data byte")
        for shift in range(5, -1, -1):
            yield (val >> shift) & 1


def parse_graph6(line: str | bytes) -> Multigraph:
    """Parse one graph6 line into a simple graph with integer vertices."""
    data = line.encode("ascii") if isinstance(line, str) else line
    data = data.strip()
    if data.startswith(_G6_HEADER.encode()):
        data = data[len(_G6_HEADER):]
    if data.startswith(b":"):
        raise GraphFormatError("input is sparse6, not graph6")
    n, pos = _decode_number(data, 0)
    bits = _bit_stream(data, pos)
    edges = []
    eid = 0
    try:
        for j in range(1, n):
            for i in range(j):
                if next(bits):
                    edges.append((eid, i, j))
                    eid += 1
    except StopIteration:
        raise GraphFormatError("graph6 data too short") from None
    return Multigraph(range(n), edges)


def parse_sparse6(line: str | bytes) -> Multigraph:
    """Parse one sparse6 line; loops and parallel edges are preserved."""
    data = line.encode("ascii") if isinstance(line, str) else line
    data = data.strip()
    if data.startswith(_S6_HEADER.encode()):
        data = data[len(_S6_HEADER):]
    if not data.startswith(b":"):
        raise GraphFormatError("sparse6 line must start with ':'")
    n, pos = _decode_number(data, 1)
    k = max(1, (n - 1).bit_length())
    bits = list(_bit_stream(data, pos))
    edges = []
    eid = 0
    v = 0
    i = 0
    while i + k < len(bits):
        b = bits[i]
        x = 0
        for bit in bits[i + 1 : i + 1 + k]:
            x = (x << 1) | bit
        i += 1 + k
        if b:
            v += 1
        if v >= n:
            break
        if x > v:
            v = x
        else:
            edges.append((eid, x, v))
            eid += 1
    return Multigraph(range(n), edges)


def graph_to_json(g: Multigraph) -> dict:
    return {
        "vertices": list(g.vertices),
        "edges": [[eid, a, b] for eid, a, b in g.edges()],
    }


def graph_from_json(obj: dict) -> Multigraph:
    try:
        vertices = obj["vertices"]
        edges = [(e[0], e[1], e[2]) for e in obj["edges"]]
    except (KeyError, TypeError, IndexError) as exc:
        raise GraphFormatError(f"malformed graph JSON: {exc}") from exc
    return Multigraph(vertices, edges)


def load_graphs(path: str | Path, fmt: str | None = None) -> list[Multigraph]:
    """Load one or more graphs from a file.

    fmt is "json", "graph6" or None to sniff from the content.  graph6 and
    sparse6 files may hold one graph per line.
    """
    path = Path(path)
    text = path.read_text()
    stripped = text.lstrip()
    if fmt == "json" or (fmt is None and stripped.startswith(("{", "["))):
        obj = json.loads(text)
        if isinstance(obj, list):
            return [graph_from_json(item) for item in obj]
        return [graph_from_json(obj)]
    graphs = []
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        if line.startswith(_S6_HEADER):
            line = line[len(_S6_HEADER):]
        if line.startswith(_G6_HEADER):
            line = line[len(_G6_HEADER):]
        if not line:
            continue
        if line.startswith(":"):
            graphs.append(parse_sparse6(line))
        else:
            graphs.append(parse_graph6(line))
    if not graphs:
        raise GraphFormatError(f"no graphs found in {path}")
    return graphs


def save_graph_json(g: Multigraph, path: str | Path) -> None:
    Path(path).write_text(json.dumps(graph_to_json(g), indent=2) + "\n")
