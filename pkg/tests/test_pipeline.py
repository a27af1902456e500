import json
import random
from collections import Counter

import pytest

from cdcpipe.cover import Cover, CoverElement, cover_to_dict, verify_cdc, verify_ncdc
from cdcpipe.decompose import bridges
from cdcpipe.errors import BridgeError, PreconditionError
from cdcpipe.generators import blanusa_snarks, complete, complete_bipartite, cube, petersen, wheel
from cdcpipe.graph import FreeEdge, FreeEdgeSet, from_pairs
from cdcpipe.kuratowski import especial_constants
from cdcpipe.pipeline import (
    FailureCertificate,
    cdc,
    cdc_with_trace,
    construct,
    ncdc_general,
    peel,
    recheck_certificate,
    trace_to_dict,
)

from conftest import random_multigraph
from oracles import bridges_by_deletion, cover_is_valid


def _peel_by_hand(vertices, edges):
    """Walk forward, closing a cycle at every repeated vertex."""
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


def test_k5_cover_comes_from_the_especial_walk():
    g = complete(5)
    cover, trace = cdc_with_trace(g)
    assert verify_cdc(g, cover) and cover_is_valid(g, {}, cover)
    assert trace.mu == 2
    major = trace.steps[0].major
    assert major.kind == "K5"
    label = dict(enumerate(major.branch_vertices, start=1))
    consts = especial_constants("K5")

    def edge_ids(walk):
        vs = [label[v] for v in walk.vertices]
        return vs, [next(e for e, ab in g.edges.items() if set(ab) == {a, b}) for a, b in zip(vs, vs[1:])]

    expected = _peel_by_hand(*edge_ids(consts.walk))
    expected += [frozenset(edge_ids(c)[1]) for c in consts.companions]
    assert Counter(frozenset(el.edges) for el in cover) == Counter(expected)


def test_planar_graphs_finish_in_one_round():
    for g in (complete(4), cube(), wheel(7)):
        cover, trace = cdc_with_trace(g)
        assert trace.mu == 1 and verify_cdc(g, cover)


def test_k33_needs_two_rounds():
    g = complete_bipartite(3, 3)
    cover, trace = cdc_with_trace(g)
    assert verify_cdc(g, cover) and trace.mu == 2 and trace.steps[0].major.kind == "K33"
    assert trace.mu <= trace.mu_bound


def test_tampering_yields_a_certificate_at_that_step():
    g = petersen()
    _, trace = cdc_with_trace(g)
    for step in range(1, trace.mu + 1):
        def drop_first(i, cover, step=step):
            return Cover(cover.elements[1:]) if i == step else cover

        cert, _ = construct(g, None, 0, drop_first)
        assert isinstance(cert, FailureCertificate)
        assert cert.step == step and cert.claimed_by == "verify"
        assert recheck_certificate(cert)
        assert json.dumps(cert.to_dict())


def test_recheck_refuses_false_claims():
    g = complete(4)
    good = cdc(g)
    fake = FailureCertificate(1, "verify", {"stage": "final"}, graph=g, cover=good)
    assert not recheck_certificate(fake)
    assert not recheck_certificate(FailureCertificate(1, "verify", {"stage": "final"}))
    assert not recheck_certificate(FailureCertificate(1, "P5.4", {"edge": 0}, graph=g))
    path = from_pairs([(0, 1), (1, 2)])
    assert recheck_certificate(FailureCertificate(1, "P5.4", {"edge": 0}, graph=path))


def test_two_triangles_joined_by_a_bridge():
    g = from_pairs([(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 3)])
    free = FreeEdgeSet(g, (FreeEdge(10, 0, 20), FreeEdge(11, 4, 21)))
    cover = ncdc_general(g, free)
    assert verify_ncdc(g, free, cover)
    assert cover_is_valid(g, {10: (0, 20), 11: (4, 21)}, cover)


def test_surrounding_is_a_precondition():
    g = from_pairs([(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 3)])
    with pytest.raises(PreconditionError):
        ncdc_general(g, FreeEdgeSet(g, (FreeEdge(10, 0, 20),)))


def test_bridges_rejected_with_the_bridge_ids():
    g = from_pairs([(0, 1), (1, 2), (2, 0), (2, 3)])
    with pytest.raises(BridgeError) as info:
        cdc(g)
    assert info.value.bridges == (3,)


def test_loops_and_parallel_edges():
    g = from_pairs([(0, 1), (0, 1), (1, 2), (2, 0), (1, 1), (0, 3), (3, 2), (3, 3)])
    cover = cdc(g)
    assert verify_cdc(g, cover) and cover_is_valid(g, {}, cover)


def test_deterministic_for_a_seed():
    g = blanusa_snarks()[0]
    a, b = cdc(g, seed=3), cdc(g, seed=3)
    assert json.dumps(cover_to_dict(a)) == json.dumps(cover_to_dict(b))
    _, trace = cdc_with_trace(g, seed=3)
    assert json.dumps(trace_to_dict(trace), sort_keys=True)


def test_peel_trace_records_cone_and_cuts():
    trace = peel(complete(6))
    first, last = trace.steps[0], trace.steps[-1]
    assert first.apex is None and first.major is not None
    assert last.major is None
    for s in trace.steps[1:]:
        assert len(s.cuts) == len(s.free_major)
        assert s.apex is not None or not len(s.free)


def test_random_bridgeless_multigraphs():
    rng = random.Random(21)
    covers = certs = 0
    for _ in range(60):
        g = random_multigraph(rng, rng.randint(3, 8), rng.randint(4, 16))
        if bridges_by_deletion(g) or not g.edges:
            continue
        out = cdc(g, seed=rng.randrange(100))
        if isinstance(out, FailureCertificate):
            certs += 1
            assert recheck_certificate(out), out.tag
        else:
            covers += 1
            assert cover_is_valid(g, {}, out)
    assert covers > certs
