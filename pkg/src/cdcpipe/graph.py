"""Multigraphs with stable integer ids and the structural operators on them.

Vertices and edges are plain ``int`` ids. Edges map to an endpoint pair
``(u, v)``; ``u == v`` is a loop and any number of parallel edges is allowed.
A graph never reuses an id: every derived graph inherits monotone counters for
fresh vertex and edge ids, so runs are reproducible.

All graphs are immutable; operators return new graphs plus whatever map is
needed to relate the result back to its source.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping

from .errors import GraphError, PreconditionError

Pair = tuple[int, int]


class MultiGraph:
    """Undirected multigraph keyed by edge id."""

    __slots__ = ("_vertices", "_edges", "_next_vertex", "_next_edge", "_incidence")

    def __init__(
        self,
        vertices: Iterable[int] = (),
        edges: Mapping[int, Pair] | None = None,
        *,
        next_vertex: int = 0,
        next_edge: int = 0,
    ):
        vs = frozenset(vertices)
        es = {int(e): (uv[0], uv[1]) for e, uv in sorted((edges or {}).items())}
        for e, (u, v) in es.items():
            if u not in vs or v not in vs:
                raise GraphError(f"edge {e} has an endpoint outside the vertex set")
        self._vertices = vs
        self._edges = es
        self._next_vertex = max(next_vertex, max(vs, default=-1) + 1)
        self._next_edge = max(next_edge, max(es, default=-1) + 1)
        self._incidence: dict[int, tuple[int, ...]] | None = None

    # -- basic access -------------------------------------------------------

    @property
    def vertices(self) -> frozenset[int]:
        return self._vertices

    @property
    def edges(self) -> Mapping[int, Pair]:
        return MappingProxyType(self._edges)

    @property
    def next_vertex(self) -> int:
        return self._next_vertex

    @property
    def next_edge(self) -> int:
        return self._next_edge

    def num_vertices(self) -> int:
        return len(self._vertices)

    def num_edges(self) -> int:
        return len(self._edges)

    def sorted_vertices(self) -> list[int]:
        return sorted(self._vertices)

    def endpoints(self, e: int) -> Pair:
        try:
            return self._edges[e]
        except KeyError:
            raise GraphError(f"unknown edge id {e}") from None

    def other_end(self, e: int, v: int) -> int:
        a, b = self.endpoints(e)
        if v == a:
            return b
        if v == b:
            return a
        raise GraphError(f"vertex {v} is not an endpoint of edge {e}")

    def is_loop(self, e: int) -> bool:
        a, b = self.endpoints(e)
        return a == b

    def incident(self, v: int) -> tuple[int, ...]:
        """Edge ids at ``v`` in ascending order (a loop is listed once)."""
        if self._incidence is None:
            inc: dict[int, list[int]] = {u: [] for u in self._vertices}
            for e, (a, b) in self._edges.items():
                inc[a].append(e)
                if b != a:
                    inc[b].append(e)
            self._incidence = {u: tuple(sorted(es)) for u, es in inc.items()}
        try:
            return self._incidence[v]
        except KeyError:
            raise GraphError(f"unknown vertex id {v}") from None

    def degree(self, v: int) -> int:
        return sum(2 if self.is_loop(e) else 1 for e in self.incident(v))

    def neighbors(self, v: int) -> list[int]:
        return sorted({self.other_end(e, v) for e in self.incident(v)})

    def is_simple(self) -> bool:
        seen = set()
        for a, b in self._edges.values():
            if a == b:
                return False
            key = (a, b) if a < b else (b, a)
            if key in seen:
                return False
            seen.add(key)
        return True

    # -- derivation ---------------------------------------------------------

    def derive(
        self,
        vertices: Iterable[int],
        edges: Mapping[int, Pair],
        *,
        next_vertex: int | None = None,
        next_edge: int | None = None,
    ) -> "MultiGraph":
        """A new graph that keeps (or raises) this graph's id counters."""
        return MultiGraph(
            vertices,
            edges,
            next_vertex=max(self._next_vertex, next_vertex or 0),
            next_edge=max(self._next_edge, next_edge or 0),
        )

    def same_structure(self, other: "MultiGraph") -> bool:
        return self._vertices == other._vertices and self._edges == other._edges

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MultiGraph):
            return NotImplemented
        return self.same_structure(other)

    def __hash__(self) -> int:
        return hash((self._vertices, tuple(self._edges.items())))

    def __repr__(self) -> str:
        return f"MultiGraph(|V|={len(self._vertices)}, |E|={len(self._edges)})"


def from_pairs(pairs: Iterable[Pair], vertices: Iterable[int] = ()) -> MultiGraph:
    """Build a graph whose edge ids are the positions of ``pairs``."""
    pairs = [(int(u), int(v)) for u, v in pairs]
    vs = set(vertices)
    for u, v in pairs:
        vs.update((u, v))
    return MultiGraph(vs, dict(enumerate(pairs)))


def union(*graphs: MultiGraph) -> MultiGraph:
    """Union of graphs; shared edge ids must agree on their endpoints."""
    vs: set[int] = set()
    es: dict[int, Pair] = {}
    nv = ne = 0
    for g in graphs:
        vs |= g.vertices
        for e, uv in g.edges.items():
            if e in es and set(es[e]) != set(uv):
                raise GraphError(f"edge id {e} has conflicting endpoints")
            es[e] = uv
        nv, ne = max(nv, g.next_vertex), max(ne, g.next_edge)
    return MultiGraph(vs, es, next_vertex=nv, next_edge=ne)


def induced_by_edges(g: MultiGraph, edge_ids: Iterable[int]) -> MultiGraph:
    """The subgraph formed by ``edge_ids`` and their endpoints."""
    es = {}
    for e in edge_ids:
        es[e] = g.endpoints(e)
    vs = {x for uv in es.values() for x in uv}
    return g.derive(vs, es)


def induced_by_vertices(g: MultiGraph, vertex_ids: Iterable[int]) -> MultiGraph:
    keep = set(vertex_ids)
    unknown = keep - g.vertices
    if unknown:
        raise GraphError(f"unknown vertex ids {sorted(unknown)}")
    es = {e: (a, b) for e, (a, b) in g.edges.items() if a in keep and b in keep}
    return g.derive(keep, es)


def remove_vertices(g: MultiGraph, vertex_ids: Iterable[int]) -> MultiGraph:
    return induced_by_vertices(g, g.vertices - set(vertex_ids))


def delete_edges(g: MultiGraph, edge_ids: Iterable[int]) -> MultiGraph:
    drop = set(edge_ids)
    for e in drop:
        g.endpoints(e)
    return g.derive(g.vertices, {e: uv for e, uv in g.edges.items() if e not in drop})


def edge_cut(g: MultiGraph, vertex_set: Iterable[int]) -> frozenset[int]:
    """Non-loop edges with exactly one endpoint in ``vertex_set``."""
    xs = set(vertex_set)
    if not xs or not xs < g.vertices:
        raise PreconditionError("edge cut needs a nonempty proper vertex subset")
    return frozenset(e for e, (a, b) in g.edges.items() if (a in xs) != (b in xs))


def edges_between(g: MultiGraph, xs: Iterable[int], ys: Iterable[int]) -> frozenset[int]:
    xs, ys = set(xs), set(ys)
    return frozenset(
        e
        for e, (a, b) in g.edges.items()
        if (a in xs and b in ys) or (a in ys and b in xs)
    )


# -- subdivision and cut off ----------------------------------------------


@dataclass(frozen=True)
class Subdivision:
    """Record of ``edge`` replaced by ``halves`` through ``vertex``.

    ``halves[0]`` joins the first stored endpoint of ``edge`` to ``vertex``,
    ``halves[1]`` joins ``vertex`` to the second one.
    """

    edge: int
    ends: Pair
    vertex: int
    halves: Pair


def subdivide_edge(g: MultiGraph, e: int) -> tuple[MultiGraph, int, Subdivision]:
    u, v = g.endpoints(e)
    w = g.next_vertex
    h1, h2 = g.next_edge, g.next_edge + 1
    es = dict(g.edges)
    del es[e]
    es[h1] = (u, w)
    es[h2] = (w, v)
    out = g.derive(g.vertices | {w}, es)
    return out, w, Subdivision(e, (u, v), w, (h1, h2))


@dataclass(frozen=True, order=True)
class FreeEdge:
    """A pendant edge: ``inner`` lies in the host graph, ``outer`` does not."""

    eid: int
    inner: int
    outer: int


def cut_off(g: MultiGraph, e: int) -> tuple[MultiGraph, FreeEdge, FreeEdge]:
    """Subdivide ``e`` and split it on the new vertex.

    Returns ``g \\ e`` together with the two resulting pendant edges. Their
    outer vertices and ids are fresh and the returned host's counters are
    advanced past them.
    """
    u, v = g.endpoints(e)
    if u == v:
        raise PreconditionError(f"cannot cut off loop {e}")
    sub, w, rec = subdivide_edge(g, e)
    w2 = sub.next_vertex
    f = FreeEdge(rec.halves[0], u, w)
    f2 = FreeEdge(rec.halves[1], v, w2)
    es = dict(g.edges)
    del es[e]
    host = g.derive(g.vertices, es, next_vertex=w2 + 1, next_edge=sub.next_edge)
    return host, f, f2


@dataclass(frozen=True)
class FreeEdgeSet:
    """Free edges of ``host``: one inner endpoint each, distinct outer endpoints."""

    host: MultiGraph = field(repr=False, compare=False)
    edges: tuple[FreeEdge, ...] = ()

    def __post_init__(self):
        edges = tuple(sorted(self.edges))
        object.__setattr__(self, "edges", edges)
        ids, outers = set(), set()
        for f in edges:
            if f.eid in ids or f.eid in self.host.edges:
                raise GraphError(f"free edge id {f.eid} is not fresh")
            if f.inner not in self.host.vertices:
                raise GraphError(f"free edge {f.eid} has inner vertex outside the host")
            if f.outer in self.host.vertices or f.outer in outers:
                raise GraphError(f"free edge {f.eid} has a shared or internal outer vertex")
            ids.add(f.eid)
            outers.add(f.outer)

    @classmethod
    def empty(cls, host: MultiGraph) -> "FreeEdgeSet":
        return cls(host, ())

    def __len__(self) -> int:
        return len(self.edges)

    def __iter__(self) -> Iterator[FreeEdge]:
        return iter(self.edges)

    @property
    def ids(self) -> frozenset[int]:
        return frozenset(f.eid for f in self.edges)

    @property
    def inner_vertices(self) -> frozenset[int]:
        return frozenset(f.inner for f in self.edges)

    def by_id(self) -> dict[int, FreeEdge]:
        return {f.eid: f for f in self.edges}

    def endpoints(self) -> dict[int, Pair]:
        return {f.eid: (f.inner, f.outer) for f in self.edges}

    def with_host(self, host: MultiGraph) -> "FreeEdgeSet":
        return FreeEdgeSet(host, self.edges)

    def subset(self, ids: Iterable[int]) -> "FreeEdgeSet":
        keep = set(ids)
        return FreeEdgeSet(self.host, tuple(f for f in self.edges if f.eid in keep))

    def graph(self) -> MultiGraph:
        """``host`` together with the free edges and their outer vertices."""
        g = self.host
        es = dict(g.edges)
        es.update(self.endpoints())
        return g.derive(g.vertices | {f.outer for f in self.edges}, es)


# -- identification and cone ----------------------------------------------


@dataclass(frozen=True)
class QuotientMap:
    """Vertex map onto the quotient plus the (bijective) edge correspondence."""

    forward: Mapping[int, int]
    edge_map: Mapping[int, int]

    def compose(self, then: "QuotientMap") -> "QuotientMap":
        return QuotientMap(
            {v: then.forward[w] for v, w in self.forward.items()},
            {e: then.edge_map[f] for e, f in self.edge_map.items()},
        )

    def classes(self) -> dict[int, frozenset[int]]:
        out: dict[int, set[int]] = defaultdict(set)
        for v, w in self.forward.items():
            out[w].add(v)
        return {w: frozenset(vs) for w, vs in out.items()}


def identify(g: MultiGraph, *groups: Iterable[int]) -> tuple[MultiGraph, QuotientMap]:
    """Identify every vertex group, merging overlapping groups transitively.

    Merged classes with two or more vertices become one fresh vertex; every
    other vertex keeps its id. Edge ids are preserved, so loops and parallel
    edges can appear.
    """
    parent = {v: v for v in g.vertices}

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for grp in groups:
        grp = list(grp)
        for v in grp:
            if v not in parent:
                raise GraphError(f"unknown vertex id {v}")
        for v in grp[1:]:
            a, b = find(grp[0]), find(v)
            if a != b:
                parent[max(a, b)] = min(a, b)

    classes: dict[int, list[int]] = defaultdict(list)
    for v in sorted(g.vertices):
        classes[find(v)].append(v)
    forward: dict[int, int] = {}
    nxt = g.next_vertex
    for root in sorted(classes):
        members = classes[root]
        if len(members) == 1:
            forward[members[0]] = members[0]
        else:
            for v in members:
                forward[v] = nxt
            nxt += 1
    es = {e: (forward[a], forward[b]) for e, (a, b) in g.edges.items()}
    out = g.derive(set(forward.values()), es, next_vertex=nxt)
    return out, QuotientMap(forward, {e: e for e in es})


def cone(g: MultiGraph, free: FreeEdgeSet) -> tuple[MultiGraph, QuotientMap]:
    """Attach the free edges and identify all their outer vertices."""
    if not free.host.same_structure(g):
        raise GraphError("free edge set belongs to a different host")
    if not len(free):
        return g, QuotientMap({v: v for v in g.vertices}, {e: e for e in g.edges})
    return identify(free.graph(), [f.outer for f in free])


def cone_apex(qmap: QuotientMap, free: FreeEdgeSet) -> int | None:
    if not len(free):
        return None
    return qmap.forward[free.edges[0].outer]


# -- simple reduction -----------------------------------------------------


@dataclass(frozen=True)
class SimpleProvenance:
    """What ``underlying_simple`` removed.

    ``classes`` maps each kept representative (the smallest id of its
    parallel class) to the whole class when the class has two or more edges.
    """

    loops: tuple[int, ...] = ()
    classes: Mapping[int, tuple[int, ...]] = field(default_factory=dict)

    def is_empty(self) -> bool:
        return not self.loops and not self.classes


def underlying_simple(g: MultiGraph) -> tuple[MultiGraph, SimpleProvenance]:
    loops = []
    groups: dict[Pair, list[int]] = defaultdict(list)
    for e, (a, b) in g.edges.items():
        if a == b:
            loops.append(e)
        else:
            groups[(min(a, b), max(a, b))].append(e)
    es = {}
    classes = {}
    for key in sorted(groups, key=lambda k: min(groups[k])):
        members = sorted(groups[key])
        es[members[0]] = g.endpoints(members[0])
        if len(members) > 1:
            classes[members[0]] = tuple(members)
    return g.derive(g.vertices, es), SimpleProvenance(tuple(sorted(loops)), classes)


# -- walks ----------------------------------------------------------------


@dataclass(frozen=True)
class Walk:
    """Vertex itinerary ``vertices`` with ``edges[i]`` joining
    ``vertices[i]`` and ``vertices[i + 1]``."""

    vertices: tuple[int, ...]
    edges: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(self.edges))
        if len(self.vertices) != len(self.edges) + 1:
            raise GraphError("a walk needs exactly one more vertex than edges")

    @property
    def start(self) -> int:
        return self.vertices[0]

    @property
    def end(self) -> int:
        return self.vertices[-1]

    @property
    def closed(self) -> bool:
        return self.vertices[0] == self.vertices[-1]

    def __len__(self) -> int:
        return len(self.edges)

    def steps(self) -> list[tuple[int, int]]:
        return list(zip(self.edges, self.vertices[1:]))

    def reversed(self) -> "Walk":
        return Walk(self.vertices[::-1], self.edges[::-1])

    def check(self, endpoints: Mapping[int, Pair]) -> None:
        for i, e in enumerate(self.edges):
            if e not in endpoints:
                raise GraphError(f"walk uses unknown edge {e}")
            a, b = endpoints[e]
            if {a, b} != {self.vertices[i], self.vertices[i + 1]}:
                raise GraphError(f"walk step {i} is not incident with edge {e}")


def walk_from_edges(
    endpoints: Mapping[int, Pair], edges: Iterable[int], *, closed: bool | None = None
) -> Walk:
    """Recover an itinerary from an edge sequence.

    Both endpoints of the first edge are tried as start; with ``closed`` set,
    only itineraries of that shape are accepted.
    """
    edges = tuple(edges)
    if not edges:
        raise GraphError("empty edge sequence")
    for e in edges:
        if e not in endpoints:
            raise GraphError(f"unknown edge id {e}")
    a, b = endpoints[edges[0]]
    for start in dict.fromkeys((a, b)):
        vs = [start]
        ok = True
        for e in edges:
            x, y = endpoints[e]
            if vs[-1] == x:
                vs.append(y)
            elif vs[-1] == y:
                vs.append(x)
            else:
                ok = False
                break
        if ok and (closed is None or (vs[0] == vs[-1]) == closed):
            return Walk(tuple(vs), edges)
    raise GraphError(f"edge sequence {list(edges)} is not a walk of the requested shape")
