"""Reading and writing graphs as edge lists or graph6.

Edge lists hold one ``u v`` pair per line; a line with a single label adds
an isolated vertex and ``#`` starts a comment. Labels become vertex ids in
order of first appearance and the n-th edge line gets edge id n, so parallel
edges and loops are kept. Readers return the graph plus the id-to-label map.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Iterable, TextIO

import networkx as nx

from .errors import GraphError
from .graph import MultiGraph, Walk, walk_from_edges

Names = dict[int, str]


def parse_edgelist(text: str) -> tuple[MultiGraph, Names]:
    ids: dict[str, int] = {}
    pairs = []

    def vid(label: str) -> int:
        if label not in ids:
            ids[label] = len(ids)
        return ids[label]

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].split()
        if not line:
            continue
        if len(line) == 1:
            vid(line[0])
        elif len(line) == 2:
            pairs.append((vid(line[0]), vid(line[1])))
        else:
            raise GraphError(f"line {lineno}: expected one or two labels, got {len(line)}")
    g = MultiGraph(ids.values(), dict(enumerate(pairs)))
    return g, {i: label for label, i in ids.items()}


def format_edgelist(g: MultiGraph, names: Names | None = None) -> str:
    def name(v: int) -> str:
        return names.get(v, str(v)) if names else str(v)

    lines = [f"{name(a)} {name(b)}" for _, (a, b) in sorted(g.edges.items())]
    touched = {v for ab in g.edges.values() for v in ab}
    lines += [name(v) for v in g.sorted_vertices() if v not in touched]
    return "\n".join(lines) + "\n"


def parse_graph6(text: str) -> tuple[MultiGraph, Names]:
    line = text.strip().splitlines()[0] if text.strip() else ""
    if line.startswith(">>graph6<<"):
        line = line[len(">>graph6<<") :]
    try:
        h = nx.from_graph6_bytes(line.encode("ascii"))
    except (ValueError, nx.NetworkXError, UnicodeEncodeError) as exc:
        raise GraphError(f"bad graph6 data: {exc}") from None
    pairs = sorted(tuple(sorted(e)) for e in h.edges())
    g = MultiGraph(h.nodes(), dict(enumerate(pairs)))
    return g, {v: str(v) for v in h.nodes()}


def format_graph6(g: MultiGraph) -> str:
    if not g.is_simple():
        raise GraphError("graph6 holds simple graphs only")
    order = g.sorted_vertices()
    index = {v: i for i, v in enumerate(order)}
    h = nx.Graph()
    h.add_nodes_from(range(len(order)))
    h.add_edges_from((index[a], index[b]) for a, b in g.edges.values())
    return nx.to_graph6_bytes(h, header=False).decode("ascii")


def detect_format(path: str | Path) -> str:
    return "graph6" if str(path).endswith((".g6", ".graph6")) else "edgelist"


def read_graph(source: str | Path | TextIO, fmt: str | None = None) -> tuple[MultiGraph, Names]:
    """Read from a path, ``'-'``-style stream, or open file."""
    if hasattr(source, "read"):
        text = source.read()
        fmt = fmt or "edgelist"
    else:
        text = Path(source).read_text()
        fmt = fmt or detect_format(source)
    if fmt == "graph6":
        return parse_graph6(text)
    if fmt == "edgelist":
        return parse_edgelist(text)
    raise GraphError(f"unknown format {fmt!r}")


def write_graph(g: MultiGraph, path: str | Path, fmt: str | None = None, names: Names | None = None) -> None:
    fmt = fmt or detect_format(path)
    Path(path).write_text(format_graph6(g) if fmt == "graph6" else format_edgelist(g, names))


def parse_free_edges(text: str, names: Names) -> list[tuple[int, str]]:
    """``vertex outerLabel`` lines; returns (vertex id, outer label) pairs."""
    by_label = {label: v for v, label in names.items()}
    out = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].split()
        if not line:
            continue
        if len(line) != 2:
            raise GraphError(f"line {lineno}: expected 'vertex outerLabel'")
        if line[0] not in by_label:
            raise GraphError(f"line {lineno}: unknown vertex {line[0]!r}")
        out.append((by_label[line[0]], line[1]))
    return out


def parse_cycles(text: str, g: MultiGraph) -> list[Walk]:
    """Cycles as JSON (a list of edge-id lists, or a cover document) or as
    whitespace-separated edge ids, one cycle per line."""
    stripped = text.strip()
    if stripped.startswith(("[", "{")):
        try:
            data = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise GraphError(f"bad cycle JSON: {exc}") from None
        if isinstance(data, dict):
            data = [el.get("edges") for el in data.get("elements", [])]
        rows: Iterable = data
    else:
        rows = [line.split("#", 1)[0].split() for line in text.splitlines()]
    out = []
    endpoints = dict(g.edges)
    for row in rows:
        if not row:
            continue
        try:
            edges = [int(e) for e in row]
        except (TypeError, ValueError):
            raise GraphError(f"cycle {row!r} is not a list of edge ids") from None
        out.append(walk_from_edges(endpoints, edges, closed=True))
    return out
