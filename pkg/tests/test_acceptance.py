"""Acceptance criteria, one test each; every test prints a PASS/FAIL line."""

import random
import statistics
import time
from collections import Counter
from pathlib import Path

import networkx as nx

from cdcpipe.cli import main, run_corpus_item, corpus_paths
from cdcpipe.cover import (
    Cover,
    combine_partition,
    merge_disjoint,
    splice_cut_edge,
    splice_cut_edges,
    verify_cdc,
    verify_ncdc,
)
from cdcpipe.decompose import bridges, connectivity_components
from cdcpipe.generators import (
    blanusa_snarks,
    complete,
    cube,
    cycle,
    dodecahedron,
    flower_snark,
    petersen,
    random_bridgeless_planar,
    wheel,
)
from cdcpipe.graph import from_pairs
from cdcpipe.io import read_graph
from cdcpipe.kuratowski import abstract_kuratowski, especial_constants, especial_problems
from cdcpipe.pipeline import FailureCertificate, cdc_with_trace, goddyn_cover, recheck_certificate
from cdcpipe.planarity import faces, planar_cdc, test_planarity as planarity_check

from conftest import random_multigraph, record
from covergen import base_pairs, corrupt, crossing_edges, cut_edges_of_cover, merge_inputs
from oracles import all_cycles, bridges_by_deletion, cdc_containing_exists, cover_is_valid

CORPUS = Path(__file__).resolve().parent.parent / "corpus"


def _labels(walk, letter):
    return "".join(f"{letter}{v}" for v in walk.vertices)


def test_criterion_1_kuratowski_constants():
    expected = {
        "K5": ("v", "v1v2v4v5v2v3v5v1v3v4v1", ["v1v2v3v4v5v1", "v1v3v5v2v4v1"], 10),
        "K33": ("u", "u1u2u5u4u3u6u5u4u1u2u3u6u1", ["u1u4u3u2u5u6u1"], 9),
    }
    ok, notes = True, []
    for kind, (letter, walk, comps, n_edges) in expected.items():
        times = []
        for _ in range(20):
            t0 = time.perf_counter()
            ew = especial_constants(kind)
            g = abstract_kuratowski(kind)
            problems = especial_problems(g, ew)
            count = Counter(ew.walk.edges)
            for c in ew.companions:
                count.update(c.edges)
            times.append(time.perf_counter() - t0)
        exact = _labels(ew.walk, letter) == walk and [_labels(c, letter) for c in ew.companions] == comps
        double = len(g.edges) == n_edges and count == Counter({e: 2 for e in g.edges})
        ms = statistics.median(times) * 1e3
        ok &= exact and not problems and double and ms < 1.0
        notes.append(f"{kind} exact={exact} conditions={'ok' if not problems else problems} "
                     f"double={double} median={ms:.3f}ms max={max(times) * 1e3:.3f}ms")
    record(1, ok, "; ".join(notes))
    assert ok


def _euler_ok(g, emb) -> bool:
    walks = faces(g, emb)
    for comp in connectivity_components(g):
        ne = sum(1 for a, _ in g.edges.values() if a in comp)
        nf = sum(1 for w in walks if w.vertices[0] in comp)
        if ne and len(comp) - ne + nf != 2:
            return False
    return True


def test_criterion_2_planar_base_case():
    rng = random.Random(2024)
    graphs = [complete(4), cube(), wheel(5), dodecahedron()]
    graphs += [random_bridgeless_planar(rng.randint(3, 20), rng) for _ in range(200)]
    failures = 0
    t0 = time.perf_counter()
    for g in graphs:
        emb = planarity_check(g)
        cover = planar_cdc(g)
        if bridges(g) or not verify_cdc(g, cover) or not cover_is_valid(g, {}, cover) or not _euler_ok(g, emb):
            failures += 1
    elapsed = time.perf_counter() - t0
    ok = failures == 0 and elapsed < 5
    record(2, ok, f"{len(graphs)} graphs, {failures} failures, {elapsed:.2f}s (limit 5s)")
    assert ok


def test_criterion_3_verifier_oracle():
    rng = random.Random(3)
    pairs = base_pairs(rng, planar=40)
    disagreements, valid, kinds = 0, 0, Counter()
    for _ in range(1000):
        g, cover = rng.choice(pairs)
        kind, candidate = corrupt(g, cover, rng)
        kinds[kind] += 1
        mine, oracle = bool(verify_cdc(g, candidate)), cover_is_valid(g, {}, candidate)
        disagreements += mine != oracle
        valid += oracle
    ok = disagreements == 0
    record(3, ok, f"1000 pairs ({valid} valid, {1000 - valid} invalid, {len(kinds)} corruption kinds), "
                  f"{disagreements} disagreements")
    assert ok


def test_criterion_4_bridges_oracle():
    connected = [h for h in nx.graph_atlas_g()[1:] if nx.is_connected(h)]
    bad = 0
    for h in connected:
        g = from_pairs(h.edges(), h.nodes())
        bad += set(bridges(g)) != bridges_by_deletion(g)
    rng = random.Random(4)
    for _ in range(10_000):
        g = random_multigraph(rng, rng.randint(1, 7), rng.randint(0, 14), loops=True)
        bad += set(bridges(g)) != bridges_by_deletion(g)
    ok = bad == 0
    record(4, ok, f"{len(connected)} connected graphs on <= 7 vertices (exhaustive atlas) "
                  f"+ 10000 random multigraphs, {bad} disagreements")
    assert ok


def _untouched_ok(before: Cover, after: Cover, host_edges, cut_ids, pendant_ids) -> bool:
    mult_in, mult_out = before.multiplicity(), after.multiplicity()
    return (all(mult_out[e] == mult_in[e] for e in host_edges)
            and all(mult_out[e] == 2 for e in cut_ids)
            and not any(mult_out[e] for e in pendant_ids))


def test_criterion_5_splicing_conservation():
    rng = random.Random(5)
    pairs = base_pairs(rng, planar=60)
    counts, violations = Counter(), 0
    for i in range(500):
        g, cover = rng.choice(pairs)
        op = ("splice", "merge", "combine")[i % 3]
        vs = sorted(g.vertices)
        if op == "splice":
            cuttable = [e for e, (a, b) in sorted(g.edges.items()) if a != b]
            chosen = rng.sample(cuttable, min(len(cuttable), rng.randint(1, 4)))
            host, free, cut_cover, records = cut_edges_of_cover(g, cover, chosen)
            assert verify_ncdc(host, free, cut_cover)
            if len(records) == 1:
                out = splice_cut_edge(cut_cover, *records[0])
            else:
                out = splice_cut_edges(cut_cover, records)
            good = _untouched_ok(cut_cover, out, host.edges, chosen, [f.eid for f in free])
        elif op == "combine":
            side = set(rng.sample(vs, rng.randint(1, len(vs) - 1)))
            cross = crossing_edges(g, side)
            host, free, cut_cover, records = cut_edges_of_cover(g, cover, cross)
            assert verify_ncdc(host, free, cut_cover)
            cx = Cover(tuple(el for el in cut_cover if el.vertices[1 if el.kind == "path" else 0] in side))
            cy = Cover(tuple(el for el in cut_cover if el not in cx.elements))
            out = combine_partition(cx, cy, records, x_vertices=side, y_vertices=set(vs) - side)
            good = _untouched_ok(cut_cover, out, host.edges, cross, [f.eid for f in free])
        else:
            side = set(rng.sample(vs, rng.randint(1, len(vs) - 1)))
            (gx, fx, cov_x), (gy, fy, cov_y), shared = merge_inputs(g, cover, side)
            assert verify_ncdc(gx, fx, cov_x) and verify_ncdc(gy, fy, cov_y)
            out = merge_disjoint(cov_x, cov_y, shared)
            inner = list(gx.edges) + list(gy.edges)
            good = _untouched_ok(cov_x + cov_y, out, inner, shared, [])
        good = good and bool(verify_cdc(g, out)) and cover_is_valid(g, {}, out)
        counts[op] += 1
        violations += not good
    ok = violations == 0
    record(5, ok, f"500 applications ({dict(counts)}), {violations} violations")
    assert ok


def _peel_by_hand(vertices, edges):
    stack_v, stack_e, out = [vertices[0]], [], []
    for v, e in zip(vertices[1:], edges):
        if v in stack_v:
            j = stack_v.index(v)
            out.append(frozenset(stack_e[j:] + [e]))
            del stack_v[j + 1 :], stack_e[j:]
        else:
            stack_v.append(v)
            stack_e.append(e)
    return out


def test_criterion_6_k5_end_to_end():
    g = complete(5)
    cover, trace = cdc_with_trace(g)
    label = dict(enumerate(trace.steps[0].major.branch_vertices, start=1))
    edge_of = {frozenset(ab): e for e, ab in g.edges.items()}

    def ids(walk):
        vs = [label[v] for v in walk.vertices]
        return vs, [edge_of[frozenset(p)] for p in zip(vs, vs[1:])]

    consts = especial_constants("K5")
    expected = Counter(_peel_by_hand(*ids(consts.walk)) + [frozenset(ids(c)[1]) for c in consts.companions])
    got = Counter(frozenset(el.edges) for el in cover)
    verified = not isinstance(cover, FailureCertificate) and bool(verify_cdc(g, cover))
    ok = verified and got == expected and trace.mu == 2
    record(6, ok, f"verified={verified}, elements match split walk + companions={got == expected}, mu={trace.mu}")
    assert ok


def _corpus_graphs():
    return [Path(p) for d in ("planar", "snarks") for p in corpus_paths(str(CORPUS / d))]


def test_criterion_7_termination_bound():
    rows, bad = [], []
    for p in _corpus_graphs():
        g, _ = read_graph(p)
        _, trace = cdc_with_trace(g)
        rows.append(f"{p.stem}:{trace.mu}/{trace.mu_bound}")
        if trace.mu > trace.mu_bound:
            bad.append(p.name)
    ok = not bad
    record(7, ok, f"{len(rows)} corpus runs, mu/bound {' '.join(rows)}; violations {bad or 'none'}")
    assert ok


def test_criterion_8_snark_audit():
    snarks = [("petersen", petersen()), ("flower5", flower_snark(5))]
    snarks += [(f"blanusa{i}", g) for i, g in enumerate(blanusa_snarks(), 1)]
    notes, ok = [], True
    for name, g in snarks:
        t0 = time.perf_counter()
        out, trace = cdc_with_trace(g)
        dt = time.perf_counter() - t0
        if isinstance(out, FailureCertificate):
            good = recheck_certificate(out)
            outcome = f"certificate {out.tag} rechecked={good}"
        else:
            good = bool(verify_cdc(g, out)) and cover_is_valid(g, {}, out)
            outcome = f"verified cover ({len(out)} cycles, mu={trace.mu})"
        ok &= good and dt < 10
        notes.append(f"{name}: {outcome}, {dt:.2f}s")
    summary = {row["graph"]: row["outcome"] for row in
               (run_corpus_item(str(p), None, 0) for p in corpus_paths(str(CORPUS / "snarks")))}
    stated = all(v in ("cover", "certificate") for v in summary.values())
    ok &= stated
    record(8, ok, "; ".join(notes) + f"; corpus summary outcomes {summary}")
    assert ok


def test_criterion_9_goddyn_small():
    t0 = time.perf_counter()
    k4 = complete(4)
    edge_of = {frozenset(ab): e for e, ab in k4.edges.items()}
    triangles = [[edge_of[frozenset(p)] for p in ((a, b), (b, c), (c, a))]
                 for a, b, c in ((0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3))]
    results = []
    for tri in triangles:
        exists = cdc_containing_exists(k4.vertices, dict(k4.edges), frozenset(tri))
        out = goddyn_cover(k4, [tri])
        good = (not isinstance(out, FailureCertificate) and bool(verify_cdc(k4, out))
                and cover_is_valid(k4, {}, out) and out.contains_cycle(tri))
        results.append(exists and good)
    c5 = cycle(5)
    out = goddyn_cover(c5, [sorted(c5.edges)])
    c5_ok = not isinstance(out, FailureCertificate) and bool(verify_cdc(c5, out)) and out.contains_cycle(sorted(c5.edges))
    elapsed = time.perf_counter() - t0
    n_cycles = len(all_cycles(k4.vertices, k4.edges))
    ok = all(results) and c5_ok and elapsed < 1 and n_cycles == 7
    record(9, ok, f"K4 triangles {results} (oracle over {n_cycles} cycles), C5 {c5_ok}, {elapsed:.3f}s (limit 1s)")
    assert ok


def test_criterion_10_determinism(tmp_path):
    outs = []
    for run in range(2):
        blobs = []
        for d in ("planar", "snarks"):
            target = tmp_path / f"{d}-{run}.tsv"
            main(["corpus", str(CORPUS / d), "--seed", "7", "-o", str(target)])
            blobs.append(target.read_bytes())
        for p in _corpus_graphs():
            target = tmp_path / f"{p.stem}{p.suffix}-{run}.json"
            main(["cdc", str(p), "--seed", "7", "--trace", "-o", str(target)])
            blobs.append(target.read_bytes())
        outs.append(blobs)
    same = sum(a == b for a, b in zip(*outs))
    ok = same == len(outs[0]) and all(outs[0])
    record(10, ok, f"{same}/{len(outs[0])} machine outputs byte-identical across two runs (seed 7)")
    assert ok
