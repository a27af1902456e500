"""Bridges, bridgeless components and the component tree."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Mapping

from .graph import FreeEdgeSet, MultiGraph, delete_edges, induced_by_vertices

Label = Literal["terminal", "isolated", "internal"]


def connectivity_components(g: MultiGraph) -> list[frozenset[int]]:
    """Vertex sets of the connected components, ordered by smallest vertex."""
    seen: set[int] = set()
    out = []
    for root in g.sorted_vertices():
        if root in seen:
            continue
        comp = {root}
        stack = [root]
        while stack:
            v = stack.pop()
            for e in g.incident(v):
                w = g.other_end(e, v)
                if w not in comp:
                    comp.add(w)
                    stack.append(w)
        seen |= comp
        out.append(frozenset(comp))
    return out


def bridges(g: MultiGraph) -> frozenset[int]:
    """Cut edges, by one iterative low-link DFS.

    The tree edge into a vertex is skipped by id, so a parallel copy of it
    counts as a back edge and neither copy is reported.
    """
    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    found = set()
    clock = 0
    for root in g.sorted_vertices():
        if root in disc:
            continue
        disc[root] = low[root] = clock
        clock += 1
        stack = [(root, -1, iter(g.incident(root)))]
        while stack:
            v, via, it = stack[-1]
            for e in it:
                if e == via:
                    continue
                w = g.other_end(e, v)
                if w == v:
                    continue
                if w not in disc:
                    disc[w] = low[w] = clock
                    clock += 1
                    stack.append((w, e, iter(g.incident(w))))
                    break
                low[v] = min(low[v], disc[w])
            else:
                stack.pop()
                if stack:
                    u = stack[-1][0]
                    low[u] = min(low[u], low[v])
                    if low[v] > disc[u]:
                        found.add(via)
    return frozenset(found)


@dataclass(frozen=True)
class BridgelessDecomposition:
    components: tuple[frozenset[int], ...]
    bridges: frozenset[int]
    component_of: Mapping[int, int]


def bridgeless_decomposition(g: MultiGraph) -> BridgelessDecomposition:
    cut = bridges(g)
    comps = tuple(connectivity_components(delete_edges(g, cut)))
    where = {v: i for i, comp in enumerate(comps) for v in comp}
    return BridgelessDecomposition(comps, cut, where)


@dataclass(frozen=True)
class ComponentTree:
    """Forest on component indices whose edges are the bridges."""

    nodes: tuple[int, ...]
    tree_edges: Mapping[int, tuple[int, int]]

    def degree(self, node: int) -> int:
        return sum(node in ends for ends in self.tree_edges.values())


def component_tree(g: MultiGraph, d: BridgelessDecomposition) -> ComponentTree:
    tree_edges = {}
    for e in sorted(d.bridges):
        a, b = g.endpoints(e)
        ca, cb = d.component_of[a], d.component_of[b]
        tree_edges[e] = (min(ca, cb), max(ca, cb))
    return ComponentTree(tuple(range(len(d.components))), tree_edges)


def classify(d: BridgelessDecomposition, t: ComponentTree) -> dict[int, Label]:
    labels: dict[int, Label] = {}
    for node in t.nodes:
        deg = t.degree(node)
        labels[node] = "isolated" if deg == 0 else "terminal" if deg == 1 else "internal"
    return labels


@dataclass(frozen=True)
class Surrounding:
    """Outcome of :func:`is_surrounding`; falsy when a component violates it."""

    ok: bool
    component: frozenset[int] | None = None
    label: Label | None = None
    touches: int = 0

    def __bool__(self) -> bool:
        return self.ok


def is_surrounding(
    g: MultiGraph, free: FreeEdgeSet, *, count: Literal["edges", "vertices"] = "edges"
) -> Surrounding:
    """Every terminal component is touched and no isolated one is touched once.

    ``count="edges"`` counts the free edges landing in an isolated component;
    ``count="vertices"`` counts their distinct inner vertices instead (the
    stricter literal reading, which rejects a lone vertex carrying several
    free edges).
    """
    d = bridgeless_decomposition(g)
    labels = classify(d, component_tree(g, d))
    per_comp_edges = [0] * len(d.components)
    per_comp_vertices: list[set[int]] = [set() for _ in d.components]
    for f in free:
        c = d.component_of[f.inner]
        per_comp_edges[c] += 1
        per_comp_vertices[c].add(f.inner)
    for idx, comp in enumerate(d.components):
        touches = per_comp_edges[idx] if count == "edges" else len(per_comp_vertices[idx])
        label = labels[idx]
        if (label == "terminal" and touches == 0) or (label == "isolated" and touches == 1):
            return Surrounding(False, comp, label, touches)
    return Surrounding(True)


def restrict_to_touched(g: MultiGraph, free: FreeEdgeSet) -> MultiGraph:
    """Union of the connected components that carry a free edge."""
    inner = free.inner_vertices
    keep: set[int] = set()
    for comp in connectivity_components(g):
        if comp & inner:
            keep |= comp
    return induced_by_vertices(g, keep)
