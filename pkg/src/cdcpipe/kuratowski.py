"""Especial walks on Kuratowski subdivisions and the covers built from them.

An especial walk is a closed walk that traverses every edge once or twice and
never uses an edge in both directions. On K5 and K3,3 fixed walks and
companion cycles double cover every edge; lifting them through a subdivision
and cutting the walk at the free edges' inner vertices yields a naive cycle
double cover of the subdivision.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from typing import Literal, Sequence

from .cover import Cover, CoverElement, peel, splice_cut_edges
from .errors import PreconditionError
from .graph import FreeEdge, FreeEdgeSet, MultiGraph, Walk, cut_off, from_pairs
from .planarity import KuratowskiWitness, witness_from_edges

Kind = Literal["K5", "K33"]

# Vertex strings of the fixed walks; K3,3 has sides {1, 3, 5} and {2, 4, 6}.
K5_WALK = (1, 2, 4, 5, 2, 3, 5, 1, 3, 4, 1)
K5_COMPANIONS = ((1, 2, 3, 4, 5, 1), (1, 3, 5, 2, 4, 1))
K33_WALK = (1, 2, 5, 4, 3, 6, 5, 4, 1, 2, 3, 6, 1)
K33_COMPANIONS = ((1, 4, 3, 2, 5, 6, 1),)


@dataclass(frozen=True)
class EspecialWalk:
    walk: Walk
    companions: tuple[Walk, ...] = ()


def abstract_kuratowski(kind: Kind) -> MultiGraph:
    """K5 on vertices 1..5 or K3,3 on 1..6; edge ids follow sorted pairs."""
    if kind == "K5":
        pairs = list(combinations(range(1, 6), 2))
    elif kind == "K33":
        pairs = [(a, b) for a in (1, 3, 5) for b in (2, 4, 6)]
        pairs.sort(key=lambda p: (min(p), max(p)))
    else:
        raise ValueError(f"unknown Kuratowski graph {kind!r}")
    return from_pairs(pairs)


def _walk_on(g: MultiGraph, vertex_string: Sequence[int]) -> Walk:
    lookup = {}
    for e, (a, b) in g.edges.items():
        lookup[(a, b)] = lookup[(b, a)] = e
    edges = tuple(lookup[(a, b)] for a, b in zip(vertex_string, vertex_string[1:]))
    return Walk(tuple(vertex_string), edges)


def especial_constants(kind: Kind) -> EspecialWalk:
    g = abstract_kuratowski(kind)
    walk, comps = (K5_WALK, K5_COMPANIONS) if kind == "K5" else (K33_WALK, K33_COMPANIONS)
    return EspecialWalk(_walk_on(g, walk), tuple(_walk_on(g, c) for c in comps))


def especial_problems(g: MultiGraph, ew: EspecialWalk) -> list[str]:
    """Empty when ``ew`` is an especial walk of ``g`` whose companions complete
    an exact double cover."""
    problems = []
    w = ew.walk
    try:
        w.check(g.edges)
        for c in ew.companions:
            c.check(g.edges)
    except Exception as exc:  # GraphError from check
        return [str(exc)]
    if not w.closed:
        problems.append("walk is not closed")
    directions: dict[int, set[tuple[int, int]]] = {}
    for i, e in enumerate(w.edges):
        directions.setdefault(e, set()).add((w.vertices[i], w.vertices[i + 1]))
    for e, dirs in sorted(directions.items()):
        if len(dirs) > 1 and not g.is_loop(e):
            problems.append(f"edge {e} is traversed in both directions")
    once = Counter(w.edges)
    for e in sorted(g.edges):
        if not 1 <= once[e] <= 2:
            problems.append(f"walk traverses edge {e} {once[e]} times")
    total = once + Counter(e for c in ew.companions for e in c.edges)
    for e in sorted(g.edges):
        if total[e] != 2:
            problems.append(f"edge {e} is covered {total[e]} times overall")
    for c in ew.companions:
        if not c.closed or len(set(c.vertices[:-1])) != len(c.vertices) - 1:
            problems.append("companion is not a cycle")
    return problems


def _branch_map(witness: KuratowskiWitness) -> dict[int, int]:
    bv = witness.branch_vertices
    if witness.kind == "K5":
        return {i + 1: v for i, v in enumerate(bv)}
    side_a, side_b = bv[:3], bv[3:]
    out = {}
    for k in range(3):
        out[2 * k + 1] = side_a[k]
        out[2 * k + 2] = side_b[k]
    return out


def lift_to_subdivision(ew: EspecialWalk, witness: KuratowskiWitness) -> EspecialWalk:
    """Replace each abstract edge traversal by its branch path, in direction."""
    vmap = _branch_map(witness)

    def lift(w: Walk) -> Walk:
        vs = [vmap[w.vertices[0]]]
        es: list[int] = []
        for a, b in zip(w.vertices, w.vertices[1:]):
            p = witness.path(vmap[a], vmap[b])
            vs.extend(p.vertices[1:])
            es.extend(p.edges)
        return Walk(tuple(vs), tuple(es))

    return EspecialWalk(lift(ew.walk), tuple(lift(c) for c in ew.companions))


def split_especial_walk(walk: Walk, anchors: Sequence[FreeEdge]) -> list[CoverElement]:
    """Cut a closed especial walk at the anchors' inner vertices.

    Anchors take the first unused occurrence of their inner vertex (the
    first occurrence once all are used) and are ordered along the walk. Each
    segment between consecutive anchors is peeled into cycles plus a simple
    residual, which is closed off by the two anchors' free edges. Without
    anchors the whole walk is peeled into cycles.
    """
    if len(anchors) == 1:
        raise PreconditionError("a single free edge cannot be split off")
    if not walk.closed:
        raise PreconditionError("especial walk must be closed")
    if not anchors:
        cycles, _ = peel(walk)
        return [CoverElement("cycle", c) for c in cycles]

    n = len(walk.edges)
    occurrences: dict[int, list[int]] = {}
    for p, v in enumerate(walk.vertices[:n]):
        occurrences.setdefault(v, []).append(p)
    taken: set[int] = set()
    placed = []
    for f in anchors:
        occ = occurrences.get(f.inner)
        if not occ:
            raise PreconditionError(f"anchor vertex {f.inner} is not on the walk")
        free_occ = [p for p in occ if p not in taken]
        p = free_occ[0] if free_occ else occ[0]
        taken.add(p)
        placed.append((p, f))
    placed.sort(key=lambda x: (x[0], x[1].eid))

    doubled_vs = walk.vertices[:n] + walk.vertices
    doubled_es = walk.edges + walk.edges
    out: list[CoverElement] = []
    k = len(placed)
    for t in range(k):
        p, f = placed[t]
        q, f_next = placed[(t + 1) % k]
        if t == k - 1:
            q += n
        segment = Walk(doubled_vs[p : q + 1], doubled_es[p:q])
        cycles, rest = peel(segment)
        out.extend(CoverElement("cycle", c) for c in cycles)
        out.append(
            CoverElement.path(
                (f.outer,) + rest.vertices + (f_next.outer,),
                (f.eid,) + rest.edges + (f_next.eid,),
            )
        )
    return out


def ncdc_kuratowski_major(
    major: MultiGraph, free: FreeEdgeSet, witness: KuratowskiWitness | None = None
) -> Cover:
    """Naive cycle double cover of a Kuratowski subdivision with free edges."""
    if len(free) == 1:
        raise PreconditionError("a single free edge admits no naive cycle double cover")
    if not major.is_simple():
        raise PreconditionError("especial walk splitting needs a simple host")
    if witness is None:
        witness = witness_from_edges(major, major.edges)
    if witness.edges != frozenset(major.edges) or witness.vertices != major.vertices:
        raise PreconditionError("graph is not exactly the given Kuratowski subdivision")
    ew = lift_to_subdivision(especial_constants(witness.kind), witness)
    elements = split_especial_walk(ew.walk, list(free))
    elements.extend(CoverElement("cycle", c) for c in ew.companions)
    return Cover(tuple(elements))


def attachment_sets(g: MultiGraph, h: MultiGraph) -> tuple[frozenset[int], frozenset[int]]:
    """``(E1, E2)``: edges outside ``h`` with one, resp. both, ends in ``V(h)``.

    A loop at a vertex of ``h`` counts as having both ends there.
    """
    vh = h.vertices
    e1, e2 = set(), set()
    for e, (a, b) in g.edges.items():
        inside = (a in vh) + (b in vh)
        if inside == 1:
            e1.add(e)
        elif inside == 2 and e not in h.edges:
            e2.add(e)
    return frozenset(e1), frozenset(e2)


def ncdc_major_with_chords(
    host: MultiGraph, witness: KuratowskiWitness, free: FreeEdgeSet
) -> Cover:
    """Cover ``host`` (a Kuratowski subdivision plus chords) with free edges.

    Every chord is cut off into two extra free edges, the subdivision is
    covered, and the chords are spliced back.
    """
    if len(free) == 1:
        raise PreconditionError("a single free edge admits no naive cycle double cover")
    if host.vertices != witness.vertices:
        raise PreconditionError("host must span exactly the subdivision's vertices")
    chords = sorted(set(host.edges) - witness.edges)
    work = host
    cuts = []
    for c in chords:
        work, f, f2 = cut_off(work, c)
        cuts.append((c, f, f2))
    major = work.derive(witness.vertices, {e: work.endpoints(e) for e in witness.edges})
    pendants = [f for _, f, f2 in cuts] + [f2 for _, f, f2 in cuts]
    kfree = FreeEdgeSet(major, tuple(free) + tuple(pendants))
    cover = ncdc_kuratowski_major(major, kfree, witness)
    return splice_cut_edges(cover, cuts)
