import time

import pytest

from cdcpipe.cover import CoverElement, verify_cdc
from cdcpipe.errors import BridgeError, GraphError, PreconditionError
from cdcpipe.generators import complete, cycle, petersen
from cdcpipe.graph import Walk, from_pairs
from cdcpipe.pipeline import FailureCertificate, goddyn_cover, recheck_certificate

from oracles import all_cycles, cdc_containing_exists, cover_is_valid


def _edge(g, a, b):
    return next(e for e, ab in g.edges.items() if set(ab) == {a, b})


def _triangles(g):
    return [[_edge(g, a, b), _edge(g, b, c), _edge(g, c, a)] for a, b, c in
            ((0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3))]


def test_oracle_agrees_k4_triangles_extend():
    g = complete(4)
    assert len(all_cycles(g.vertices, g.edges)) == 7
    for tri in _triangles(g):
        assert cdc_containing_exists(g.vertices, dict(g.edges), frozenset(tri))


@pytest.mark.parametrize("which", range(4))
def test_k4_triangle_extends(which):
    g = complete(4)
    tri = _triangles(g)[which]
    t0 = time.perf_counter()
    cover = goddyn_cover(g, [tri])
    assert time.perf_counter() - t0 < 1
    assert not isinstance(cover, FailureCertificate)
    assert verify_cdc(g, cover) and cover_is_valid(g, {}, cover)
    assert cover.contains_cycle(tri)


def test_whole_graph_cycle():
    g = cycle(5)
    cover = goddyn_cover(g, [list(g.edges)])
    assert verify_cdc(g, cover)
    assert [sorted(el.edges) for el in cover] == [list(range(5))] * 2


def test_two_disjoint_triangles_in_k6():
    g = complete(6)
    t1 = [_edge(g, 0, 1), _edge(g, 1, 2), _edge(g, 2, 0)]
    t2 = [_edge(g, 3, 4), _edge(g, 4, 5), _edge(g, 5, 3)]
    cover = goddyn_cover(g, [t1, t2])
    assert not isinstance(cover, FailureCertificate)
    assert verify_cdc(g, cover)
    assert cover.contains_cycle(t1) and cover.contains_cycle(t2)


def test_square_in_k4_has_chords():
    g = complete(4)
    square = [_edge(g, 0, 1), _edge(g, 1, 3), _edge(g, 3, 2), _edge(g, 2, 0)]
    cover = goddyn_cover(g, [square])
    assert verify_cdc(g, cover) and cover.contains_cycle(square)


def test_petersen_pentagon_outcome_is_checkable():
    g = petersen()
    pentagon = [_edge(g, i, (i + 1) % 5) for i in range(5)]
    out = goddyn_cover(g, [pentagon])
    if isinstance(out, FailureCertificate):
        assert recheck_certificate(out)
    else:
        assert verify_cdc(g, out) and out.contains_cycle(pentagon)


def test_given_cycle_as_cover_element():
    g = complete(4)
    el = CoverElement.cycle((0, 1, 2, 0), (_edge(g, 0, 1), _edge(g, 1, 2), _edge(g, 2, 0)))
    cover = goddyn_cover(g, [el])
    assert cover.contains_cycle(el.edges)


def test_input_checks():
    g = complete(4)
    with pytest.raises(GraphError):
        goddyn_cover(g, [[_edge(g, 0, 1), _edge(g, 1, 3)]])  # not closed
    with pytest.raises(PreconditionError):
        goddyn_cover(g, [Walk((0, 1, 2), (_edge(g, 0, 1), _edge(g, 1, 2)))])
    tri = _triangles(g)
    with pytest.raises(PreconditionError):
        goddyn_cover(g, [tri[0], tri[1]])  # share edge 01
    with pytest.raises(BridgeError):
        goddyn_cover(from_pairs([(0, 1), (1, 2), (2, 0), (2, 3)]), [[0, 1, 2]])
