"""Covers by cycles and free-edge-terminated paths.

A :class:`Cover` is a multiset of :class:`CoverElement` values stored as edge
id sequences with their vertex itineraries. The verifier never raises: it
reports every violation it finds. The splicing operations paste paths across
free edges and peel any self-intersecting result back into genuine cycles.
"""

from __future__ import annotations

import random
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from itertools import pairwise
from typing import Callable, Iterable, Iterator, Literal, Mapping, Sequence

from .errors import GraphError, PreconditionError, SpliceError
from .graph import (
    FreeEdge,
    FreeEdgeSet,
    MultiGraph,
    Pair,
    SimpleProvenance,
    Subdivision,
    Walk,
    walk_from_edges,
)

Kind = Literal["cycle", "path"]
End = tuple[int, int]  # (element index, 0 for the first edge / 1 for the last)


@dataclass(frozen=True)
class CoverElement:
    kind: Kind
    walk: Walk

    @classmethod
    def cycle(cls, vertices: Sequence[int], edges: Sequence[int]) -> "CoverElement":
        return cls("cycle", Walk(tuple(vertices), tuple(edges)))

    @classmethod
    def path(cls, vertices: Sequence[int], edges: Sequence[int]) -> "CoverElement":
        return cls("path", Walk(tuple(vertices), tuple(edges)))

    @classmethod
    def from_walk(cls, walk: Walk) -> "CoverElement":
        return cls("cycle" if walk.closed and len(walk) else "path", walk)

    @property
    def edges(self) -> tuple[int, ...]:
        return self.walk.edges

    @property
    def vertices(self) -> tuple[int, ...]:
        return self.walk.vertices

    @property
    def terminal_edges(self) -> Pair | None:
        if self.kind != "path" or not self.edges:
            return None
        return self.edges[0], self.edges[-1]

    def canonical(self) -> "CoverElement":
        """Fixed rotation and direction, used for byte-stable output."""
        w = self.walk
        if not w.edges:
            return self
        if self.kind == "path":
            r = w.reversed()
            best = min((w, r), key=lambda x: (x.edges, x.vertices))
            return CoverElement("path", best)
        candidates = []
        for cand in (w, w.reversed()):
            k = cand.edges.index(min(cand.edges))
            candidates.append(_rotate(cand, k))
        return CoverElement("cycle", min(candidates, key=lambda x: (x.edges, x.vertices)))


def _rotate(w: Walk, k: int) -> Walk:
    n = len(w.edges)
    vs = w.vertices[:n]
    return Walk(vs[k:] + vs[:k] + (vs[k],), w.edges[k:] + w.edges[:k])


@dataclass(frozen=True)
class Cover:
    elements: tuple[CoverElement, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))

    def __iter__(self) -> Iterator[CoverElement]:
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __getitem__(self, i: int) -> CoverElement:
        return self.elements[i]

    def __add__(self, other: "Cover") -> "Cover":
        return Cover(self.elements + tuple(other))

    def multiplicity(self) -> Counter:
        return Counter(e for el in self.elements for e in el.edges)

    def canonical(self) -> "Cover":
        els = [el.canonical() for el in self.elements]
        els.sort(key=lambda el: (el.kind, el.edges, el.vertices))
        return Cover(tuple(els))

    def contains_cycle(self, edges: Iterable[int]) -> bool:
        target = Counter(list(edges))  # a mapping would be read as counts
        return any(el.kind == "cycle" and Counter(el.edges) == target for el in self.elements)


# -- verification ---------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    scope: Literal["edge", "element", "cover"]
    ident: int | None
    reason: str


@dataclass(frozen=True)
class VerificationReport:
    ok: bool
    multiplicity: Mapping[int, int]
    violations: tuple[Violation, ...] = field(default=())

    def __bool__(self) -> bool:
        return self.ok

    def to_dict(self) -> dict:
        return {
            "type": "report",
            "ok": self.ok,
            "multiplicity": {str(e): c for e, c in sorted(self.multiplicity.items())},
            "violations": [
                {"scope": v.scope, "id": v.ident, "reason": v.reason} for v in self.violations
            ],
        }


def _element_problems(
    el: CoverElement, endpoints: Mapping[int, Pair], free_ids: frozenset[int]
) -> list[str]:
    w = el.walk
    if not w.edges:
        return ["element has no edges"]
    try:
        w.check(endpoints)
    except GraphError as exc:
        return [str(exc)]
    problems = []
    if el.kind == "cycle":
        if not w.closed:
            problems.append("cycle is not closed")
        if len(set(w.edges)) != len(w.edges):
            problems.append("cycle repeats an edge")
        if len(set(w.vertices[:-1])) != len(w.vertices) - 1:
            problems.append("cycle repeats a vertex")
        if free_ids & set(w.edges):
            problems.append("cycle uses a free edge")
    elif el.kind == "path":
        if len(set(w.vertices)) != len(w.vertices):
            problems.append("path repeats a vertex")
        first, last = w.edges[0], w.edges[-1]
        if first not in free_ids or last not in free_ids:
            problems.append("path terminal edge is not a free edge")
        elif first == last:
            problems.append("path terminal edges coincide")
    else:
        problems.append(f"unknown element kind {el.kind!r}")
    return problems


def verify_ncdc(g: MultiGraph, free: FreeEdgeSet, cover: Cover) -> VerificationReport:
    """Check a naive cycle double cover of ``g`` with free edges ``free``."""
    endpoints = dict(g.edges)
    endpoints.update(free.endpoints())
    free_ids = free.ids
    violations = []
    if len(free) == 1:
        violations.append(Violation("cover", None, "a single free edge cannot end two paths"))
    counts: Counter = Counter()
    for idx, el in enumerate(cover):
        for reason in _element_problems(el, endpoints, free_ids):
            violations.append(Violation("element", idx, reason))
        for e in el.edges:
            if e in endpoints:
                counts[e] += 1
            else:
                violations.append(Violation("element", idx, f"unknown edge {e}"))
    for e in sorted(endpoints):
        if counts[e] != 2:
            violations.append(Violation("edge", e, f"covered {counts[e]} times"))
    mult = {e: counts[e] for e in sorted(endpoints)}
    return VerificationReport(not violations, mult, tuple(violations))


def verify_cdc(g: MultiGraph, cover: Cover) -> VerificationReport:
    return verify_ncdc(g, FreeEdgeSet.empty(g), cover)


# -- peeling and gluing ---------------------------------------------------


def peel(walk: Walk) -> tuple[list[Walk], Walk]:
    """Cut closed sub-walks off ``walk`` at its earliest self-intersections.

    Scans forward; whenever the arrival vertex already sits on the residual
    walk, the loop back to that occurrence becomes a cycle. Returns the cycles
    and the residual, which has no repeated vertex (a single vertex when
    ``walk`` is closed). Edge multiplicities are preserved exactly.
    """
    vs = [walk.vertices[0]]
    es: list[int] = []
    pos = {vs[0]: 0}
    cycles = []
    for e, v in walk.steps():
        j = pos.get(v)
        if j is None:
            pos[v] = len(vs)
            vs.append(v)
            es.append(e)
            continue
        cycles.append(Walk(tuple(vs[j:]) + (v,), tuple(es[j:]) + (e,)))
        for x in vs[j + 1 :]:
            del pos[x]
        del vs[j + 1 :]
        del es[j:]
    return cycles, Walk(tuple(vs), tuple(es))


def walks_to_elements(walks: Iterable[Walk]) -> list[CoverElement]:
    """Peel each walk; closed ones become cycles only, open ones keep a path."""
    out = []
    for w in walks:
        cycles, rest = peel(w)
        out.extend(CoverElement("cycle", c) for c in cycles)
        if rest.edges:
            out.append(CoverElement("path", rest))
    return out


Link = tuple[End, End, "int | None"]


def glue(pieces: Sequence[Walk], links: Iterable[Link]) -> list[Walk]:
    """Concatenate open walks along ``links``.

    A link ``((i, a), (j, b), c)`` joins end ``a`` of piece ``i`` to end ``b``
    of piece ``j`` through connector edge ``c`` (``None`` when the two ends
    already meet in a vertex). Each end takes part in at most one link.
    Returns the resulting maximal walks, closed ones included, ordered by
    their lowest piece index.
    """
    partner: dict[End, tuple[End, int | None]] = {}
    for a, b, c in links:
        if a in partner or b in partner:
            raise SpliceError(f"piece end {a if a in partner else b} linked twice")
        partner[a] = (b, c)
        partner[b] = (a, c)

    def oriented(i: int, enter: int) -> Walk:
        return pieces[i] if enter == 0 else pieces[i].reversed()

    used: set[int] = set()
    out = []
    for i in range(len(pieces)):
        if i in used:
            continue
        start = (i, 0)
        cur = start
        while cur in partner:
            (j, b), _ = partner[cur]
            cur = (j, 1 - b)
            if cur == start:
                break
        start = cur
        first = oriented(*start)
        vs, es = list(first.vertices), list(first.edges)
        used.add(start[0])
        exit_end = (start[0], 1 - start[1])
        while exit_end in partner:
            (j, b), c = partner[exit_end]
            if c is not None:
                es.append(c)
            nxt = oriented(j, b)
            if c is None and vs[-1] != nxt.vertices[0]:
                raise SpliceError(f"pieces {exit_end[0]} and {j} do not meet")
            if (j, b) == start:
                if c is not None:
                    vs.append(nxt.vertices[0])
                break
            vs.extend(nxt.vertices if c is not None else nxt.vertices[1:])
            es.extend(nxt.edges)
            used.add(j)
            exit_end = (j, 1 - b)
        out.append(Walk(tuple(vs), tuple(es)))
    return out


def path_ends(cover: Cover, free_id: int) -> list[End]:
    """Element ends whose terminal edge is ``free_id``, in ascending order."""
    ends = []
    for idx, el in enumerate(cover):
        if el.kind != "path" or not el.edges:
            continue
        if el.edges[0] == free_id:
            ends.append((idx, 0))
        if el.edges[-1] == free_id and len(el.edges) > 1:
            ends.append((idx, 1))
    return ends


def _trim(w: Walk, ends: set[int]) -> Walk:
    vs, es = w.vertices, w.edges
    lo = 1 if 0 in ends else 0
    hi = len(es) - (1 if 1 in ends else 0)
    return Walk(vs[lo : hi + 1], es[lo:hi])


def _paste(cover: Cover, pairs: list[tuple[End, End, int]]) -> Cover:
    """Trim the paired terminal free edges and join them by connector edges."""
    trimmed: dict[int, set[int]] = defaultdict(set)
    for a, b, _ in pairs:
        trimmed[a[0]].add(a[1])
        trimmed[b[0]].add(b[1])
    touched = sorted(trimmed)
    index = {old: new for new, old in enumerate(touched)}
    pieces = [_trim(cover[i].walk, trimmed[i]) for i in touched]
    links = [((index[a[0]], a[1]), (index[b[0]], b[1]), c) for a, b, c in pairs]
    result = walks_to_elements(glue(pieces, links))
    untouched = [el for i, el in enumerate(cover) if i not in trimmed]
    return Cover(tuple(untouched) + tuple(result))


def _degenerate(cover: Cover) -> bool:
    """A cycle that reuses an edge, or a path that starts and ends on one edge."""
    for el in cover:
        if el.kind == "cycle" and len(set(el.edges)) != len(el.edges):
            return True
        if el.kind == "path" and el.edges and el.edges[0] == el.edges[-1]:
            return True
    return False


def _badness(cover: Cover) -> int:
    return sum(_degenerate(Cover((el,))) for el in cover)


Join = tuple[list[End], list[End], int]

EXHAUSTIVE_LIMIT = 12
SEARCH_BUDGET = 400
SEARCH_ROUNDS = 60


def search_choices(
    count: int,
    build: Callable[[int], Cover],
    touching: Mapping[int, Sequence[int]],
) -> Cover:
    """Pick ``count`` binary choices (a bit mask) so ``build`` has no degenerate element.

    All-zero is tried first, then single flips are applied greedily while
    they reduce the number of degenerate elements. After that a bounded,
    seeded local search flips choices that ``touching`` links to a vertex of
    a degenerate element, and for few choices every mask is finally tried in
    order. The first clean result wins; otherwise the least bad one found is
    returned and left to the verifier.
    """
    cache: dict[int, tuple[Cover, int]] = {}

    def run(mask: int) -> tuple[Cover, int]:
        if mask not in cache:
            out = build(mask)
            cache[mask] = (out, _badness(out))
        return cache[mask]

    mask = 0
    out, bad = run(mask)
    improved = True
    while bad and improved:
        improved = False
        for i in range(count):
            trial, b = run(mask ^ (1 << i))
            if b < bad:
                mask, out, bad, improved = mask ^ (1 << i), trial, b, True
                if not bad:
                    break
    best_mask, best_bad = mask, bad
    rng = random.Random(count)
    rounds = 0
    while bad and rounds < SEARCH_ROUNDS and len(cache) < SEARCH_BUDGET:
        rounds += 1
        suspects = sorted(
            {i for el in out if _degenerate(Cover((el,))) for v in el.vertices for i in touching.get(v, ())}
        ) or list(range(count))
        score, i = min((run(mask ^ (1 << i))[1], i) for i in suspects)
        if score >= bad:
            i = rng.choice(suspects)
        mask ^= 1 << i
        out, bad = run(mask)
        if bad < best_bad:
            best_mask, best_bad = mask, bad
    if best_bad and count <= EXHAUSTIVE_LIMIT:
        for m in range(1 << count):
            if not run(m)[1]:
                return run(m)[0]
    return run(best_mask)[0]


def _splice_many(cover: Cover, joins: Sequence[Join]) -> Cover:
    """Paste every join at once; each join's two end pairs go straight or crossed."""

    def build(mask: int) -> Cover:
        pairs = []
        for i, (a, b, c) in enumerate(joins):
            if mask >> i & 1:
                pairs += [(a[0], b[1], c), (a[1], b[0], c)]
            else:
                pairs += [(a[0], b[0], c), (a[1], b[1], c)]
        return _paste(cover, pairs)

    touching: dict[int, list[int]] = defaultdict(list)
    for i, (a, b, _) in enumerate(joins):
        for idx in sorted({idx for idx, _ in a + b}):
            for v in set(cover[idx].vertices):
                touching[v].append(i)
    return search_choices(len(joins), build, touching)


def splice_cut_edges(cover: Cover, cuts: Iterable[tuple[int, FreeEdge, FreeEdge]]) -> Cover:
    """Undo several cut-offs at once.

    Each cut is ``(e, f, f2)`` where ``f`` and ``f2`` are the pendants made
    from ``e``; ``f.inner`` and ``f2.inner`` are the endpoints of ``e``. The
    two paths ending at ``f`` are pasted to the two ending at ``f2`` across
    ``e``.
    """
    joins = []
    for e, f, f2 in cuts:
        ends_f, ends_f2 = path_ends(cover, f.eid), path_ends(cover, f2.eid)
        if len(ends_f) != 2 or len(ends_f2) != 2:
            raise SpliceError(
                f"cut edge {e}: pendants covered by {len(ends_f)} and {len(ends_f2)} path ends"
            )
        joins.append((ends_f, ends_f2, e))
    return _splice_many(cover, joins) if joins else cover


def splice_cut_edge(cover: Cover, e: int, f: FreeEdge, f2: FreeEdge) -> Cover:
    return splice_cut_edges(cover, [(e, f, f2)])


def merge_disjoint(cover_g: Cover, cover_h: Cover, shared: Iterable[int]) -> Cover:
    """Join covers of two vertex-disjoint graphs along their common free edges.

    Every id in ``shared`` is a free edge of both sides (inner endpoint in
    ``G`` for one, in ``H`` for the other); the two ``G``-side paths ending at
    it are pasted to the two ``H``-side ones, with the free edge itself as
    the connector.
    """
    combined = cover_g + cover_h
    offset = len(cover_g)
    joins = []
    for f in sorted(set(shared)):
        ends = path_ends(combined, f)
        g_side = [x for x in ends if x[0] < offset]
        h_side = [x for x in ends if x[0] >= offset]
        if len(g_side) != 2 or len(h_side) != 2:
            raise SpliceError(
                f"free edge {f}: {len(g_side)} G-side and {len(h_side)} H-side path ends"
            )
        joins.append((g_side, h_side, f))
    return _splice_many(combined, joins) if joins else combined


def combine_partition(
    cover_x: Cover,
    cover_y: Cover,
    cuts: Iterable[tuple[int, FreeEdge, FreeEdge]],
    *,
    x_vertices: Iterable[int],
    y_vertices: Iterable[int],
) -> Cover:
    """Rebuild a cover of ``G`` from covers of the two sides of a vertex partition.

    ``cuts`` lists every crossing edge with its two pendants; the pendant whose
    inner vertex is in ``X`` may come in either position.
    """
    xs, ys = set(x_vertices), set(y_vertices)
    if not xs or not ys or xs & ys:
        raise PreconditionError("combine_partition needs two nonempty disjoint sides")
    norm = []
    for e, f, f2 in cuts:
        if f.inner in ys and f2.inner in xs:
            f, f2 = f2, f
        if f.inner not in xs or f2.inner not in ys:
            raise PreconditionError(f"cut edge {e} does not cross the partition")
        norm.append((e, f, f2))
    return splice_cut_edges(cover_x + cover_y, norm)


# -- multigraph lifting and subdivision suppression -----------------------


def lift_multigraph(cover: Cover, prov: SimpleProvenance, g: MultiGraph) -> Cover:
    """Re-expand parallel classes and loops removed by ``underlying_simple``.

    For a class ``e1 < ... < ek`` the second element through ``e1`` is
    rerouted over ``ek`` and the 2-cycles ``e_i e_{i+1}`` are added; each loop
    is added as a one-edge cycle used twice.
    """
    elements = list(cover)
    for rep, cls in sorted(prov.classes.items()):
        through = [i for i, el in enumerate(elements) if rep in el.edges]
        if len(through) != 2:
            raise GraphError(f"edge {rep} is covered by {len(through)} elements, expected 2")
        i = through[1]
        el = elements[i]
        elements[i] = CoverElement(
            el.kind, Walk(el.vertices, tuple(cls[-1] if e == rep else e for e in el.edges))
        )
        u, v = g.endpoints(rep)
        for a, b in pairwise(cls):
            elements.append(CoverElement.cycle((u, v, u), (a, b)))
    for lp in prov.loops:
        v, _ = g.endpoints(lp)
        elements.extend([CoverElement.cycle((v, v), (lp,))] * 2)
    return Cover(tuple(elements))


def suppress_subdivision(cover: Cover, subdivisions: Iterable[Subdivision]) -> Cover:
    """Merge the two halves of every subdivided edge back into the original."""
    by_vertex = {s.vertex: s for s in subdivisions}
    if not by_vertex:
        return cover
    out = []
    for idx, el in enumerate(cover):
        w = el.walk
        if el.kind == "cycle" and w.vertices[0] in by_vertex:
            w = _rotate(w, 1)
        vs, es = [w.vertices[0]], []
        if vs[0] in by_vertex:
            raise GraphError(f"element {idx} ends at a subdivision vertex")
        i = 0
        while i < len(w.edges):
            mid = w.vertices[i + 1]
            s = by_vertex.get(mid)
            if s is None:
                es.append(w.edges[i])
                vs.append(mid)
                i += 1
                continue
            if i + 1 >= len(w.edges) or {w.edges[i], w.edges[i + 1]} != set(s.halves):
                raise GraphError(
                    f"element {idx} does not pass straight through subdivision vertex {mid}"
                )
            es.append(s.edge)
            vs.append(w.vertices[i + 2])
            i += 2
        out.append(CoverElement(el.kind, Walk(tuple(vs), tuple(es))))
    return Cover(tuple(out))


# -- serialization --------------------------------------------------------


def cover_to_dict(cover: Cover, names: Mapping[int, str] | None = None) -> dict:
    def name(v: int):
        return names.get(v, str(v)) if names is not None else v

    return {
        "type": "cover",
        "elements": [
            {
                "kind": el.kind,
                "edges": list(el.edges),
                "vertices": [name(v) for v in el.vertices],
            }
            for el in cover.canonical()
        ],
    }


def cover_from_dict(data: Mapping, endpoints: Mapping[int, Pair]) -> Cover:
    """Parse a cover document; itineraries are rebuilt from the edge ids."""
    if not isinstance(data, Mapping) or not isinstance(data.get("elements"), list):
        raise GraphError("cover document needs an 'elements' list")
    elements = []
    for raw in data["elements"]:
        try:
            kind = raw["kind"]
            edges = [int(e) for e in raw["edges"]]
        except (KeyError, TypeError, ValueError):
            raise GraphError(f"malformed cover element {raw!r}") from None
        if kind not in ("cycle", "path"):
            raise GraphError(f"unknown element kind {kind!r}")
        if not edges:
            raise GraphError("cover element without edges")
        walk = walk_from_edges(endpoints, edges, closed=(kind == "cycle"))
        elements.append(CoverElement(kind, walk))
    return Cover(tuple(elements))
