"""Certifying planarity on multigraphs.

:func:`test_planarity` returns either a rotation system whose face traversal
satisfies Euler's formula, or a Kuratowski subdivision with explicit branch
paths. The search runs on the underlying simple graph (networkx's
Left-Right test); parallel edges are put next to their class representative
in every rotation and loops become one-edge faces.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Literal, Mapping

import networkx as nx

from .cover import Cover, CoverElement, peel
from .decompose import bridges, connectivity_components
from .errors import BridgeError, GraphError, PreconditionError
from .graph import MultiGraph, Walk, induced_by_edges, underlying_simple

Dart = tuple[int, int]  # (edge id, 0 if leaving endpoints[0] else 1)


@dataclass(frozen=True)
class PlanarEmbedding:
    rotation: Mapping[int, tuple[Dart, ...]]


@dataclass(frozen=True)
class KuratowskiWitness:
    """A subdivision of K5 or K3,3 inside some graph.

    ``branch_vertices`` is sorted for K5; for K3,3 it lists the side holding
    the smallest branch vertex (sorted) followed by the other side (sorted).
    ``branch_paths[(a, b)]`` runs from ``a`` to ``b``, with ``a`` listed
    before ``b`` in ``branch_vertices``.
    """

    kind: Literal["K5", "K33"]
    branch_vertices: tuple[int, ...]
    branch_paths: Mapping[tuple[int, int], Walk]

    @property
    def edges(self) -> frozenset[int]:
        return frozenset(e for w in self.branch_paths.values() for e in w.edges)

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(v for w in self.branch_paths.values() for v in w.vertices)

    def subgraph(self, g: MultiGraph) -> MultiGraph:
        return induced_by_edges(g, self.edges)

    def path(self, a: int, b: int) -> Walk:
        """Branch path from ``a`` to ``b`` in either stored orientation."""
        if (a, b) in self.branch_paths:
            return self.branch_paths[(a, b)]
        return self.branch_paths[(b, a)].reversed()


# -- witness extraction ---------------------------------------------------


def witness_from_edges(g: MultiGraph, edge_ids: Iterable[int]) -> KuratowskiWitness:
    """Read the branch structure of a subgraph that subdivides K5 or K3,3.

    Raises :class:`GraphError` when the edges do not form such a subdivision.
    """
    h = induced_by_edges(g, edge_ids)
    if not h.is_simple():
        raise GraphError("a Kuratowski subdivision is simple")
    deg = {v: h.degree(v) for v in h.vertices}
    branch = sorted(v for v, d in deg.items() if d != 2)
    if len(branch) == 5 and all(deg[v] == 4 for v in branch):
        kind: Literal["K5", "K33"] = "K5"
    elif len(branch) == 6 and all(deg[v] == 3 for v in branch):
        kind = "K33"
    else:
        raise GraphError("degree pattern is neither a K5 nor a K3,3 subdivision")
    bset = set(branch)
    paths: dict[tuple[int, int], Walk] = {}
    used_edges: set[int] = set()
    for a in branch:
        for e in h.incident(a):
            if e in used_edges:
                continue
            vs, es = [a], [e]
            cur = h.other_end(e, a)
            while cur not in bset:
                vs.append(cur)
                nxt = [x for x in h.incident(cur) if x != es[-1]]
                es.append(nxt[0])
                cur = h.other_end(nxt[0], cur)
            vs.append(cur)
            if cur == a:
                raise GraphError("branch path returns to its start")
            used_edges.update(es)
            key = (a, cur)
            if key in paths or (cur, a) in paths:
                raise GraphError(f"two branch paths join {a} and {cur}")
            paths[key] = Walk(tuple(vs), tuple(es))
    if used_edges != set(h.edges):
        raise GraphError("subgraph has a component without branch vertices")
    adj = {v: set() for v in branch}
    for a, b in paths:
        adj[a].add(b)
        adj[b].add(a)
    if kind == "K5":
        order = tuple(branch)
        if len(paths) != 10:
            raise GraphError("K5 subdivision needs 10 branch paths")
    else:
        side_a = {branch[0]} | {x for y in adj[branch[0]] for x in adj[y]}
        side_b = set(branch) - side_a
        if len(side_a) != 3 or any(adj[v] != side_b for v in side_a):
            raise GraphError("branch graph is not K3,3")
        order = tuple(sorted(side_a)) + tuple(sorted(side_b))
    rank = {v: i for i, v in enumerate(order)}
    normalized = {}
    for (a, b), w in paths.items():
        if rank[a] > rank[b]:
            a, b, w = b, a, w.reversed()
        normalized[(a, b)] = w
    return KuratowskiWitness(kind, order, dict(sorted(normalized.items(), key=lambda kv: (rank[kv[0][0]], rank[kv[0][1]]))))


def _vertex_order(g: MultiGraph, seed: int) -> list[int]:
    order = g.sorted_vertices()
    if seed:
        random.Random(seed).shuffle(order)
    return order


def _nx_graph(g: MultiGraph, keep: Iterable[int]) -> nx.Graph:
    keep = list(keep)
    ks = set(keep)
    h = nx.Graph()
    h.add_nodes_from(keep)
    for e in sorted(g.edges):
        a, b = g.endpoints(e)
        if a in ks and b in ks and a != b:
            h.add_edge(a, b, eid=e)
    return h


def _witness_of(g: MultiGraph, keep: list[int]) -> KuratowskiWitness:
    h = _nx_graph(g, keep)
    planar, cert = nx.check_planarity(h, counterexample=True)
    if planar:
        raise GraphError("vertex set is planar")
    return witness_from_edges(g, (h.edges[u, v]["eid"] for u, v in cert.edges()))


def _select_witness(simple: MultiGraph, order: list[int]) -> KuratowskiWitness:
    """Smallest of the witnesses we can produce, by (order, sorted vertex ids).

    Candidates: the counterexample for the whole graph, and the one for a
    vertex-minimal non-planar induced subgraph found by deleting vertices in
    reverse ``order`` while non-planarity survives.
    """
    candidates = [_witness_of(simple, order)]
    keep = list(order)
    for v in reversed(order):
        trial = [x for x in keep if x != v]
        if not nx.is_planar(_nx_graph(simple, trial)):
            keep = trial
    candidates.append(_witness_of(simple, keep))
    return min(candidates, key=lambda w: (len(w.vertices), tuple(sorted(w.vertices))))


# -- embedding ------------------------------------------------------------


def _lift_rotation(g: MultiGraph, emb: nx.PlanarEmbedding) -> PlanarEmbedding:
    simple, prov = underlying_simple(g)
    rep_of = {}
    for e, (a, b) in simple.edges.items():
        rep_of[(a, b)] = rep_of[(b, a)] = e
    loops_at: dict[int, list[int]] = {v: [] for v in g.vertices}
    for lp in prov.loops:
        loops_at[g.endpoints(lp)[0]].append(lp)
    rotation = {}
    for v in g.sorted_vertices():
        darts: list[Dart] = []
        nbrs = list(emb.neighbors_cw_order(v)) if v in emb else []
        for w in nbrs:
            rep = rep_of[(v, w)]
            cls = prov.classes.get(rep, (rep,))
            seq = cls if v < w else tuple(reversed(cls))
            for e in seq:
                darts.append((e, 0 if g.endpoints(e)[0] == v else 1))
        for lp in loops_at[v]:
            darts.extend([(lp, 0), (lp, 1)])
        rotation[v] = tuple(darts)
    return PlanarEmbedding(rotation)


def faces(g: MultiGraph, emb: PlanarEmbedding) -> list[Walk]:
    """Face boundaries as closed walks (next dart = twin, then rotate)."""
    succ: dict[Dart, Dart] = {}
    for v, darts in emb.rotation.items():
        for i, d in enumerate(darts):
            e, side = d
            if g.endpoints(e)[side] != v:
                raise GraphError(f"dart {d} is not at vertex {v}")
            succ[d] = darts[(i + 1) % len(darts)]
    expected = {(e, s) for e in g.edges for s in (0, 1)}
    if set(succ) != expected:
        raise GraphError("rotation system does not list every edge end exactly once")
    seen: set[Dart] = set()
    out = []
    for start in sorted(succ):
        if start in seen:
            continue
        vs = [g.endpoints(start[0])[start[1]]]
        es = []
        d = start
        while True:
            seen.add(d)
            e, side = d
            es.append(e)
            vs.append(g.endpoints(e)[1 - side])
            d = succ[(e, 1 - side)]
            if d == start:
                break
        out.append(Walk(tuple(vs), tuple(es)))
    return out


def euler_ok(g: MultiGraph, face_walks: list[Walk]) -> bool:
    """V - E + F = 2 on every component that has an edge."""
    comps = connectivity_components(g)
    where = {v: i for i, c in enumerate(comps) for v in c}
    nf = [0] * len(comps)
    ne = [0] * len(comps)
    for w in face_walks:
        nf[where[w.vertices[0]]] += 1
    for a, _ in g.edges.values():
        ne[where[a]] += 1
    return all(
        ne[i] == 0 or len(c) - ne[i] + nf[i] == 2 for i, c in enumerate(comps)
    )


def test_planarity(g: MultiGraph, seed: int = 0) -> PlanarEmbedding | KuratowskiWitness:
    """Embedding or Kuratowski witness for ``g``; deterministic per ``seed``."""
    simple, _ = underlying_simple(g)
    order = _vertex_order(simple, seed)
    planar, emb = nx.check_planarity(_nx_graph(simple, order))
    if not planar:
        return _select_witness(simple, order)
    out = _lift_rotation(g, emb)
    if not euler_ok(g, faces(g, out)):
        raise GraphError("embedding failed the Euler check")
    return out


test_planarity.__test__ = False  # not a pytest test despite the name


def is_planar(g: MultiGraph) -> bool:
    simple, _ = underlying_simple(g)
    return nx.is_planar(_nx_graph(simple, simple.sorted_vertices()))


def planar_cdc(g: MultiGraph) -> Cover:
    """Face boundaries of a bridgeless plane graph, split into cycles.

    A face of a component with a cut vertex may revisit that vertex, so each
    boundary is peeled at its repeated vertices.
    """
    cut = bridges(g)
    if cut:
        raise BridgeError(cut)
    emb = test_planarity(g)
    if isinstance(emb, KuratowskiWitness):
        raise PreconditionError(f"graph is not planar ({emb.kind} subdivision found)")
    elements = []
    for face in faces(g, emb):
        cycles, _ = peel(face)
        elements.extend(CoverElement("cycle", c) for c in cycles)
    return Cover(tuple(elements))


def kuratowski_pairs(w: KuratowskiWitness) -> list[tuple[int, int]]:
    """The branch-vertex pairs that must be joined, in witness order."""
    bv = w.branch_vertices
    if w.kind == "K5":
        return list(combinations(bv, 2))
    return [(a, b) for a in bv[:3] for b in bv[3:]]
