"""Peel Kuratowski majors until the cone is planar, then rebuild covers.

Every intermediate cover is verified. When a step's precondition fails, or a
built cover does not verify, the run stops with a :class:`FailureCertificate`
that names the failing claim and carries enough data to re-check it.

Claim tags: ``P5.3`` (free edges of the next piece are not surrounding),
``P5.4`` (a cone has a bridge), ``P5.6`` (a single free edge at a major, or
the attachment edges are not the cut edges), ``P4.2-simple`` (a major is not
simple), ``T6.4`` (surrounding check in the cycle-extension construction),
``verify`` (a built cover failed verification; ``witness["stage"]`` says
which construction produced it).
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Any, Callable, Mapping, Sequence

from .cover import (
    Cover,
    CoverElement,
    Violation,
    combine_partition,
    cover_to_dict,
    glue,
    path_ends,
    search_choices,
    suppress_subdivision,
    verify_cdc,
    verify_ncdc,
    walks_to_elements,
    _element_problems,
)
from .decompose import bridges, connectivity_components, is_surrounding
from .errors import BridgeError, PreconditionError, SpliceError
from .graph import (
    FreeEdge,
    FreeEdgeSet,
    MultiGraph,
    QuotientMap,
    Walk,
    cone,
    cone_apex,
    cut_off,
    delete_edges,
    edge_cut,
    induced_by_edges,
    induced_by_vertices,
    remove_vertices,
    subdivide_edge,
)
from .kuratowski import attachment_sets, ncdc_major_with_chords
from .planarity import KuratowskiWitness, planar_cdc, test_planarity

Tamper = Callable[[int, Cover], Cover]


@dataclass(frozen=True)
class PipelineStep:
    """One round of the peeling loop.

    ``free_major`` are the pendants of the previous round's major (empty for
    the first round) and ``free`` those of ``graph``; ``cone_graph`` is
    ``cone(graph, free)``. ``cuts`` lists the previous round's cut edges as
    ``(edge, pendant at the major, pendant at graph)``. ``major`` and
    ``major_host`` (the major plus its chords) are absent in the last round.
    """

    index: int
    graph: MultiGraph
    free_major: tuple[FreeEdge, ...]
    free: FreeEdgeSet
    cone_graph: MultiGraph
    cone_map: QuotientMap
    apex: int | None
    cuts: tuple[tuple[int, FreeEdge, FreeEdge], ...] = ()
    major: KuratowskiWitness | None = None
    major_host: MultiGraph | None = None
    literal_surrounding: bool = True


@dataclass(frozen=True)
class PipelineTrace:
    steps: tuple[PipelineStep, ...]

    @property
    def mu(self) -> int:
        return self.steps[-1].index

    @property
    def mu_bound(self) -> int:
        return math.ceil(self.steps[0].cone_graph.num_vertices() / 5) + 1


@dataclass(frozen=True)
class FailureCertificate:
    """A claim that failed at ``step`` together with the data to re-check it.

    ``witness`` holds plain ids and is what gets serialized; ``graph``,
    ``free`` and ``cover`` are the objects the predicate is evaluated on.
    """

    step: int
    claimed_by: str
    witness: Mapping[str, Any]
    detail: str = ""
    graph: MultiGraph | None = field(default=None, compare=False, repr=False)
    free: FreeEdgeSet | None = field(default=None, compare=False, repr=False)
    cover: Cover | None = field(default=None, compare=False, repr=False)
    trace: PipelineTrace | None = field(default=None, compare=False, repr=False)

    @property
    def tag(self) -> str:
        stage = self.witness.get("stage")
        return f"{self.claimed_by}:{stage}" if stage else self.claimed_by

    def to_dict(self) -> dict:
        out: dict[str, Any] = {
            "type": "certificate",
            "step": self.step,
            "claimed_by": self.claimed_by,
            "witness": _plain(self.witness),
            "detail": self.detail,
        }
        if self.graph is not None:
            out["graph"] = graph_to_dict(self.graph)
        if self.free is not None:
            out["free_edges"] = [[f.eid, f.inner, f.outer] for f in self.free]
        if self.cover is not None:
            out["cover"] = cover_to_dict(self.cover)
        if self.trace is not None:
            out["trace"] = trace_to_dict(self.trace)
        return out


def _plain(x: Any) -> Any:
    if isinstance(x, Mapping):
        return {str(k): _plain(v) for k, v in sorted(x.items(), key=lambda kv: str(kv[0]))}
    if isinstance(x, (set, frozenset)):
        return sorted(_plain(v) for v in x)
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    return x


def graph_to_dict(g: MultiGraph) -> dict:
    return {
        "vertices": g.sorted_vertices(),
        "edges": [[e, a, b] for e, (a, b) in g.edges.items()],
    }


def trace_to_dict(trace: PipelineTrace) -> dict:
    steps = []
    for s in trace.steps:
        k = s.major
        steps.append(
            {
                "index": s.index,
                "graph": graph_to_dict(s.graph),
                "free_major": [f.eid for f in s.free_major],
                "free": [f.eid for f in s.free],
                "cone_vertices": s.cone_graph.num_vertices(),
                "cone_edges": s.cone_graph.num_edges(),
                "apex": s.apex,
                "cuts": [[e, f.eid, f2.eid] for e, f, f2 in s.cuts],
                "major": None
                if k is None
                else {
                    "kind": k.kind,
                    "branch_vertices": list(k.branch_vertices),
                    "vertices": sorted(k.vertices),
                    "edges": sorted(k.edges),
                },
                "literal_surrounding": s.literal_surrounding,
            }
        )
    return {"type": "trace", "mu": trace.mu, "mu_bound": trace.mu_bound, "steps": steps}


# -- certificates ---------------------------------------------------------


def _verify_cert(step, stage, g, free, cover, report, trace=None) -> FailureCertificate:
    first = report.violations[0] if report.violations else Violation("cover", None, "")
    return FailureCertificate(
        step,
        "verify",
        {
            "stage": stage,
            "violations": [[v.scope, v.ident, v.reason] for v in report.violations],
        },
        f"{stage} cover failed verification: {first.scope} {first.ident}: {first.reason}",
        graph=g,
        free=free,
        cover=cover,
        trace=trace,
    )


def _surrounding_cert(step, claim, g, free, sur, trace=None) -> FailureCertificate:
    return FailureCertificate(
        step,
        claim,
        {"component": sorted(sur.component), "label": sur.label, "touches": sur.touches},
        f"{sur.label} bridgeless component touched by {sur.touches} free edges",
        graph=g,
        free=free,
        trace=trace,
    )


def _bridge_cert(step, g, cut, trace=None) -> FailureCertificate:
    e = min(cut)
    return FailureCertificate(
        step,
        "P5.4",
        {"edge": e, "bridges": sorted(cut)},
        f"cone has bridge {e}",
        graph=g,
        trace=trace,
    )


# -- forward pass ---------------------------------------------------------


def peel(g: MultiGraph, free: FreeEdgeSet | None = None, seed: int = 0) -> PipelineTrace | FailureCertificate:
    """Run the peeling loop on ``g`` with surrounding free edges ``free``."""
    free = FreeEdgeSet.empty(g) if free is None else free
    sur = is_surrounding(g, free)
    if not sur:
        raise PreconditionError(
            f"free edges are not surrounding: {sur.label} component {sorted(sur.component)} "
            f"touched {sur.touches} times"
        )
    steps: list[PipelineStep] = []
    graph, free_major, cuts = g, (), ()
    literal = bool(is_surrounding(g, free, count="vertices"))
    index = 1
    while True:
        c, qmap = cone(graph, free)
        step = PipelineStep(
            index, graph, free_major, free, c, qmap, cone_apex(qmap, free), cuts,
            literal_surrounding=literal,
        )
        cut = bridges(c)
        if cut:
            steps.append(step)
            return _bridge_cert(index, c, cut, PipelineTrace(tuple(steps)))
        found = test_planarity(c, seed)
        if not isinstance(found, KuratowskiWitness):
            steps.append(step)
            return PipelineTrace(tuple(steps))

        vk = found.vertices
        crossing = sorted(edge_cut(c, vk)) if vk != c.vertices else []
        major_graph = induced_by_edges(c, found.edges)
        e1, _ = attachment_sets(c, major_graph)
        work = c
        new_cuts = []
        for e in crossing:
            work, f, f2 = cut_off(work, e)
            if f.inner in vk:
                new_cuts.append((e, f, f2))
            else:
                new_cuts.append((e, f2, f))
        host = induced_by_vertices(work, vk)
        if not major_graph.is_simple():
            steps.append(step)
            return FailureCertificate(
                index, "P4.2-simple", {"edges": sorted(found.edges)},
                "Kuratowski major is not simple", graph=host, trace=PipelineTrace(tuple(steps)),
            )
        step = PipelineStep(
            index, graph, free_major, free, c, qmap, step.apex, cuts, found, host, literal
        )
        steps.append(step)
        trace = PipelineTrace(tuple(steps))
        if set(e1) != set(crossing):
            return FailureCertificate(
                index, "P5.6",
                {"attachment_edges": sorted(e1), "cut_edges": crossing, "major_vertices": sorted(vk)},
                "edges leaving the major differ from the cut edges",
                graph=c, trace=trace,
            )
        free_major = tuple(fk for _, fk, _ in new_cuts)
        if len(free_major) == 1:
            return FailureCertificate(
                index + 1, "P5.6", {"free_major": [free_major[0].eid]},
                "major receives exactly one free edge",
                graph=host, free=FreeEdgeSet(host, free_major), trace=trace,
            )
        graph = remove_vertices(work, vk)
        free = FreeEdgeSet(graph, tuple(fg for _, _, fg in new_cuts))
        cuts = tuple(new_cuts)
        sur = is_surrounding(graph, free)
        literal = bool(is_surrounding(graph, free, count="vertices"))
        if not sur:
            return _surrounding_cert(index + 1, "P5.3", graph, free, sur, trace)
        index += 1


# -- backward pass --------------------------------------------------------


def invert_cone(cover: Cover, free: FreeEdgeSet, apex: int | None) -> Cover:
    """Turn every cycle through the apex into a path between two free edges."""
    if apex is None:
        return cover
    outer = {f.eid: f.outer for f in free}
    out = []
    for el in cover:
        if apex not in el.vertices:
            out.append(el)
            continue
        w = el.walk
        if el.kind != "cycle":
            raise PreconditionError("cone cover contains a path through the apex")
        n = len(w.edges)
        k = w.vertices[:n].index(apex)
        vs = w.vertices[k:n] + w.vertices[:k]
        es = w.edges[k:] + w.edges[:k]
        out.append(CoverElement.path((outer[es[0]],) + vs[1:] + (outer[es[-1]],), es))
    return Cover(tuple(out))


def reconstruct(trace: PipelineTrace, tamper: Tamper | None = None) -> Cover | FailureCertificate:
    """Cover of the first cone, built backwards from the planar last one.

    ``tamper(step_index, cover)`` may replace each cone cover before it is
    verified; it exists for fault-injection tests.
    """
    steps = trace.steps
    last = steps[-1]
    cover = planar_cdc(last.cone_graph)
    if tamper is not None:
        cover = tamper(last.index, cover)
    report = verify_cdc(last.cone_graph, cover)
    if not report:
        return _verify_cert(last.index, "planar", last.cone_graph, None, cover, report, trace)
    for pos in range(len(steps) - 2, -1, -1):
        s, nxt = steps[pos], steps[pos + 1]
        try:
            g_cover = invert_cone(cover, nxt.free, nxt.apex)
        except PreconditionError as exc:
            return FailureCertificate(
                nxt.index, "verify", {"stage": "cone-inversion"}, str(exc),
                graph=nxt.cone_graph, cover=cover, trace=trace,
            )
        report = verify_ncdc(nxt.graph, nxt.free, g_cover)
        if not report:
            return _verify_cert(nxt.index, "cone-inversion", nxt.graph, nxt.free, g_cover, report, trace)
        k_free = FreeEdgeSet(s.major_host, nxt.free_major)
        try:
            k_cover = ncdc_major_with_chords(s.major_host, s.major, k_free)
        except (PreconditionError, SpliceError) as exc:
            return FailureCertificate(
                s.index, "verify", {"stage": "major"}, str(exc),
                graph=s.major_host, free=k_free, trace=trace,
            )
        report = verify_ncdc(s.major_host, k_free, k_cover)
        if not report:
            return _verify_cert(s.index, "major", s.major_host, k_free, k_cover, report, trace)
        if nxt.graph.num_vertices():
            try:
                cover = combine_partition(
                    k_cover, g_cover, nxt.cuts,
                    x_vertices=s.major.vertices, y_vertices=nxt.graph.vertices,
                )
            except SpliceError as exc:
                return FailureCertificate(
                    s.index, "verify", {"stage": "combine"}, str(exc),
                    graph=s.cone_graph, cover=k_cover + g_cover, trace=trace,
                )
        else:
            cover = k_cover
        if tamper is not None:
            cover = tamper(s.index, cover)
        report = verify_cdc(s.cone_graph, cover)
        if not report:
            return _verify_cert(s.index, "combine", s.cone_graph, None, cover, report, trace)
    return cover


# -- public entry points --------------------------------------------------


def construct(
    g: MultiGraph, free: FreeEdgeSet | None = None, seed: int = 0, tamper: Tamper | None = None
) -> tuple[Cover | FailureCertificate, PipelineTrace | None]:
    """Naive cycle double cover of ``g`` plus the trace that produced it.

    Loops are set aside and added back as doubled one-edge cycles.
    """
    free = FreeEdgeSet.empty(g) if free is None else free
    loops = [e for e in g.edges if g.is_loop(e)]
    core = delete_edges(g, loops)
    core_free = free.with_host(core)
    outcome = peel(core, core_free, seed)
    if isinstance(outcome, FailureCertificate):
        return outcome, outcome.trace
    trace = outcome
    cover = reconstruct(trace, tamper)
    if isinstance(cover, FailureCertificate):
        return cover, trace
    cover = invert_cone(cover, core_free, trace.steps[0].apex)
    for lp in loops:
        v = g.endpoints(lp)[0]
        cover = cover + Cover((CoverElement.cycle((v, v), (lp,)),) * 2)
    report = verify_ncdc(g, free, cover)
    if not report:
        return _verify_cert(1, "final", g, free, cover, report, trace), trace
    return cover, trace


def ncdc_general(
    g: MultiGraph, free: FreeEdgeSet | None = None, seed: int = 0
) -> Cover | FailureCertificate:
    return construct(g, free, seed)[0]


def cdc_with_trace(g: MultiGraph, seed: int = 0) -> tuple[Cover | FailureCertificate, PipelineTrace | None]:
    cut = bridges(g)
    if cut:
        raise BridgeError(cut)
    return construct(g, None, seed)


def cdc(g: MultiGraph, seed: int = 0) -> Cover | FailureCertificate:
    """Cycle double cover of a bridgeless graph, or a certificate."""
    return cdc_with_trace(g, seed)[0]


# -- extending given cycles ----------------------------------------------


def euler_circuit(g: MultiGraph, start: int) -> Walk:
    """Closed trail through every edge of the connected even graph ``g``."""
    unused = set(g.edges)
    ptr = {v: 0 for v in g.vertices}
    stack: list[tuple[int, int | None]] = [(start, None)]
    circuit = []
    while stack:
        v, via = stack[-1]
        inc = g.incident(v)
        while ptr[v] < len(inc) and inc[ptr[v]] not in unused:
            ptr[v] += 1
        if ptr[v] < len(inc):
            e = inc[ptr[v]]
            unused.discard(e)
            stack.append((g.other_end(e, v), e))
        else:
            stack.pop()
            circuit.append((v, via))
    circuit.reverse()
    return Walk(tuple(v for v, _ in circuit), tuple(e for _, e in circuit[1:]))


def _as_walk(g: MultiGraph, c: Walk | CoverElement | Sequence[int]) -> Walk:
    from .graph import walk_from_edges

    if isinstance(c, CoverElement):
        return c.walk
    if isinstance(c, Walk):
        return c
    return walk_from_edges(dict(g.edges), list(c), closed=True)


def goddyn_cover(
    g: MultiGraph, cycles: Sequence[Walk | CoverElement | Sequence[int]], seed: int = 0
) -> Cover | FailureCertificate:
    """Cycle double cover of ``g`` that contains every cycle in ``cycles``.

    The cycles must be edge-disjoint. The graph outside them gets a naive
    cover whose paths are routed around the closed trails the cycles form.
    """
    cut = bridges(g)
    if cut:
        raise BridgeError(cut)
    walks = [_as_walk(g, c) for c in cycles]
    no_free: frozenset[int] = frozenset()
    seen: set[int] = set()
    for i, w in enumerate(walks):
        problems = _element_problems(CoverElement("cycle", w), g.edges, no_free)
        if problems:
            raise PreconditionError(f"cycle {i}: {problems[0]}")
        if seen & set(w.edges):
            raise PreconditionError(f"cycle {i} shares an edge with an earlier cycle")
        seen |= set(w.edges)
    cyc_edges = frozenset(seen)

    stray_loops = [e for e in g.edges if g.is_loop(e) and e not in cyc_edges]
    g0 = delete_edges(g, stray_loops)
    vc = frozenset(v for w in walks for v in w.vertices)
    chords = sorted(
        e for e, (a, b) in g0.edges.items() if e not in cyc_edges and a in vc and b in vc
    )
    gs = g0
    subs = []
    for e in chords:
        gs, _, rec = subdivide_edge(gs, e)
        subs.append(rec)
    h = remove_vertices(gs, vc)
    attach: dict[int, int] = {}
    free_edges = []
    fresh = gs.next_vertex
    for e in sorted(edge_cut(gs, vc)) if vc != gs.vertices else []:
        a, b = gs.endpoints(e)
        x, y = (a, b) if a in vc else (b, a)
        attach[e] = x
        free_edges.append(FreeEdge(e, y, fresh))
        fresh += 1
    free = FreeEdgeSet(h, tuple(free_edges))
    sur = is_surrounding(h, free)
    if not sur:
        return _surrounding_cert(1, "T6.4", h, free, sur)
    outcome, trace = construct(h, free, seed)
    if isinstance(outcome, FailureCertificate):
        return outcome

    # bring path ends back onto the cycles
    pieces: list[Walk] = []
    rest: list[CoverElement] = []
    for el in outcome:
        if el.kind == "path":
            vs = (attach[el.edges[0]],) + el.vertices[1:-1] + (attach[el.edges[-1]],)
            pieces.append(Walk(vs, el.edges))
        else:
            rest.append(el)
    path_cover = Cover(tuple(CoverElement("path", w) for w in pieces))
    ends_of = {e: path_ends(path_cover, e) for e in attach}
    for e, ends in ends_of.items():
        if len(ends) != 2:
            return FailureCertificate(
                1, "verify", {"stage": "extension", "free_edge": e, "ends": len(ends)},
                f"free edge {e} ends {len(ends)} paths", graph=h, free=free, cover=outcome,
                trace=trace,
            )

    extra: list[CoverElement] = []
    groups = []  # (segment before, free edges in order, segment after)
    trail_graph = induced_by_edges(gs, cyc_edges)
    for comp in connectivity_components(trail_graph):
        d = induced_by_vertices(trail_graph, comp)
        trail = euler_circuit(d, min(comp))
        p = len(trail.edges)
        occ: dict[int, list[int]] = {}
        for j, v in enumerate(trail.vertices[:p]):
            occ.setdefault(v, []).append(j)
        slots: dict[int, list[int]] = {}
        for e in sorted(attach):
            x = attach[e]
            if x not in comp:
                continue
            empty = [j for j in occ[x] if j not in slots]
            slots.setdefault(empty[0] if empty else occ[x][0], []).append(e)
        marks = sorted(slots)
        if not marks:
            extra.extend(CoverElement("cycle", w) for w in walks if w.vertices[0] in comp)
            continue
        doubled_vs = trail.vertices[:p] + trail.vertices
        doubled_es = trail.edges + trail.edges
        seg_index = {}
        for r, j in enumerate(marks):
            s = marks[(r + 1) % len(marks)]
            if s <= j:
                s += p
            seg_index[j] = len(pieces)
            pieces.append(Walk(doubled_vs[j : s + 1], doubled_es[j:s]))
        for r, j in enumerate(marks):
            groups.append((seg_index[marks[r - 1]], slots[j], seg_index[j]))

    # Which of the two paths at a free edge comes first is a free choice.
    order = sorted(attach)
    bit = {e: i for i, e in enumerate(order)}

    def build(mask: int) -> Cover:
        def first(e):
            return ends_of[e][(mask >> bit[e]) & 1]

        def second(e):
            return ends_of[e][1 - ((mask >> bit[e]) & 1)]

        links = []
        for before, group, after in groups:
            links.append(((before, 1), first(group[0]), None))
            for a, b in zip(group, group[1:]):
                links.append((second(a), first(b), None))
            links.append((second(group[-1]), (after, 0), None))
        return Cover(tuple(walks_to_elements(glue(pieces, links))))

    touching: dict[int, list[int]] = {}
    for e in order:
        for idx, _ in ends_of[e]:
            for v in set(pieces[idx].vertices):
                touching.setdefault(v, []).append(bit[e])
    try:
        rerouted = search_choices(len(order), build, touching)
    except SpliceError as exc:
        return FailureCertificate(
            1, "verify", {"stage": "extension"}, str(exc), graph=h, free=free, cover=outcome,
            trace=trace,
        )
    given = [CoverElement("cycle", w) for w in walks]
    star = Cover(tuple(rest) + tuple(rerouted) + tuple(given) + tuple(extra))
    report = verify_cdc(gs, star)
    if not report:
        return _verify_cert(1, "extension", gs, None, star, report, trace)
    final = suppress_subdivision(star, subs)
    for lp in stray_loops:
        v = g.endpoints(lp)[0]
        final = final + Cover((CoverElement.cycle((v, v), (lp,)),) * 2)
    report = verify_cdc(g, final)
    if not report:
        return _verify_cert(1, "extension-final", g, None, final, report, trace)
    for i, w in enumerate(walks):
        if not final.contains_cycle(w.edges):
            return FailureCertificate(
                1, "verify", {"stage": "containment", "cycle": list(w.edges)},
                f"given cycle {i} is missing from the cover", graph=g, cover=final, trace=trace,
            )
    return final


# -- independent re-checking ----------------------------------------------


def _components_count(vertices, edges: Mapping[int, tuple[int, int]]) -> int:
    parent = {v: v for v in vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    count = len(parent)
    for a, b in edges.values():
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
            count -= 1
    return count


def _slow_bridges(g: MultiGraph) -> set[int]:
    edges = dict(g.edges)
    base = _components_count(g.vertices, edges)
    out = set()
    for e in edges:
        rest = {k: v for k, v in edges.items() if k != e}
        if _components_count(g.vertices, rest) > base:
            out.add(e)
    return out


def _slow_cover_problems(g: MultiGraph, free: FreeEdgeSet | None, cover: Cover) -> list[str]:
    ends = dict(g.edges)
    free_ids = set()
    if free is not None:
        for f in free:
            ends[f.eid] = (f.inner, f.outer)
            free_ids.add(f.eid)
    problems = []
    if len(free_ids) == 1:
        problems.append("one free edge")
    count = Counter()
    for el in cover:
        vs, es = el.vertices, el.edges
        if len(vs) != len(es) + 1 or not es:
            problems.append("bad itinerary")
            continue
        for i, e in enumerate(es):
            if e not in ends or sorted(ends[e]) != sorted((vs[i], vs[i + 1])):
                problems.append(f"step {e} does not match the graph")
            count[e] += 1
        inner = vs[:-1] if el.kind == "cycle" else vs
        if len(set(inner)) != len(inner):
            problems.append("repeated vertex")
        if el.kind == "cycle":
            if vs[0] != vs[-1] or free_ids & set(es) or len(set(es)) != len(es):
                problems.append("bad cycle")
        elif es[0] == es[-1] or es[0] not in free_ids or es[-1] not in free_ids:
            problems.append("bad path ends")
    for e in ends:
        if count[e] != 2:
            problems.append(f"edge {e} covered {count[e]} times")
    for e in count:
        if e not in ends:
            problems.append(f"unknown edge {e}")
    return problems


def recheck_certificate(cert: FailureCertificate) -> bool:
    """Re-evaluate the certificate's claim with slow, independent predicates."""
    w = cert.witness
    g = cert.graph
    if cert.claimed_by == "P5.4":
        return g is not None and w["edge"] in _slow_bridges(g)
    if cert.claimed_by in ("P5.3", "T6.4"):
        if g is None or cert.free is None:
            return False
        comp = set(w["component"])
        cut = _slow_bridges(g)
        rest = {e: ab for e, ab in g.edges.items() if e not in cut}
        reach = {min(comp)}
        grew = True
        while grew:
            grew = False
            for a, b in rest.values():
                if (a in reach) != (b in reach):
                    reach |= {a, b}
                    grew = True
        if reach != comp:
            return False
        leaving = sum((a in comp) != (b in comp) for e, (a, b) in g.edges.items() if e in cut)
        touches = sum(f.inner in comp for f in cert.free)
        return (leaving == 1 and touches == 0) or (leaving == 0 and touches == 1)
    if cert.claimed_by == "P5.6":
        if "free_major" in w:
            return cert.free is not None and len(cert.free) == 1
        if g is None:
            return False
        vk = set(w["major_vertices"])
        one_end = {e for e, (a, b) in g.edges.items() if (a in vk) != (b in vk)}
        return one_end != set(w["cut_edges"])
    if cert.claimed_by == "P4.2-simple":
        if g is None:
            return False
        pairs = [tuple(sorted(ab)) for ab in g.edges.values()]
        return len(set(pairs)) != len(pairs) or any(a == b for a, b in pairs)
    if cert.claimed_by == "verify":
        if g is None or cert.cover is None:
            return False
        return bool(_slow_cover_problems(g, cert.free, cert.cover))
    return False
