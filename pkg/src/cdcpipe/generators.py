"""Named test graphs and random bridgeless planar graphs."""

from __future__ import annotations

import random
from itertools import combinations

import networkx as nx

from .decompose import bridges
from .graph import MultiGraph, delete_edges, from_pairs


def _from_nx(h: nx.Graph) -> MultiGraph:
    h = nx.convert_node_labels_to_integers(h, ordering="sorted")
    return from_pairs(sorted(tuple(sorted(e)) for e in h.edges()), h.nodes())


def complete(n: int) -> MultiGraph:
    return from_pairs(combinations(range(n), 2), range(n))


def complete_bipartite(a: int, b: int) -> MultiGraph:
    return from_pairs(((i, a + j) for i in range(a) for j in range(b)), range(a + b))


def cycle(n: int) -> MultiGraph:
    return from_pairs(((i, (i + 1) % n) for i in range(n)), range(n))


def wheel(spokes: int) -> MultiGraph:
    """Hub 0 joined to the rim cycle 1..spokes."""
    rim = [(i, i % spokes + 1) for i in range(1, spokes + 1)]
    return from_pairs(rim + [(0, i) for i in range(1, spokes + 1)], range(spokes + 1))


def cube() -> MultiGraph:
    return _from_nx(nx.hypercube_graph(3))


def dodecahedron() -> MultiGraph:
    return _from_nx(nx.dodecahedral_graph())


def petersen() -> MultiGraph:
    """Outer 5-cycle 0..4, spokes i to i+5, inner pentagram on 5..9."""
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return from_pairs(outer + spokes + inner, range(10))


def flower_snark(n: int = 5) -> MultiGraph:
    """Flower snark J_n for odd n >= 5 (J_5 has 20 vertices).

    Star i has centre a_i and leaves b_i, c_i, d_i (ids 4i .. 4i+3); the b's
    form a cycle and the c's and d's one cycle of length 2n.
    """
    if n < 3 or n % 2 == 0:
        raise ValueError("flower snarks need odd n >= 3")
    a, b, c, d = (lambda i: 4 * (i % n)), (lambda i: 4 * (i % n) + 1), (lambda i: 4 * (i % n) + 2), (lambda i: 4 * (i % n) + 3)
    pairs = []
    for i in range(n):
        pairs += [(a(i), b(i)), (a(i), c(i)), (a(i), d(i)), (b(i), b(i + 1))]
    for i in range(n - 1):
        pairs += [(c(i), c(i + 1)), (d(i), d(i + 1))]
    pairs += [(c(n - 1), d(0)), (d(n - 1), c(0))]
    return from_pairs(pairs, range(4 * n))


def _petersen_nx() -> nx.Graph:
    g = petersen()
    return nx.Graph(list(g.edges.values()))


def _dot_product(first_edges: tuple[tuple[int, int], tuple[int, int]]) -> MultiGraph:
    """Dot product of two Petersen graphs.

    From one copy delete the adjacent vertices 0 and 1, leaving four
    degree-2 vertices; from the other delete the two given independent
    edges, leaving their four endpoints at degree 2. Pair them up by new
    edges so that the result is cubic.
    """
    left = _petersen_nx()
    x, y = 0, 1
    x_rest = sorted(v for v in left[x] if v != y)
    y_rest = sorted(v for v in left[y] if v != x)
    left.remove_nodes_from([x, y])
    right = nx.relabel_nodes(_petersen_nx(), {v: v + 10 for v in range(10)})
    (p, q), (r, s) = ((a + 10, b + 10) for a, b in first_edges)
    right.remove_edges_from([(p, q), (r, s)])
    h = nx.union(left, right)
    h.add_edges_from([(x_rest[0], p), (x_rest[1], q), (y_rest[0], r), (y_rest[1], s)])
    return _from_nx(h)


def blanusa_snarks() -> tuple[MultiGraph, MultiGraph]:
    """The two Blanuša snarks on 18 vertices.

    The removed edge pair of the second Petersen copy is at distance 1 for
    the first snark (joined by an edge) and distance 2 for the second.
    """
    first = _dot_product(((0, 1), (2, 3)))  # outer edges joined by edge 1-2
    second = _dot_product(((0, 1), (7, 9)))  # outer edge and inner edge, two steps apart
    return first, second


def stacked_triangulation(n: int, rng: random.Random) -> MultiGraph:
    """Maximal planar graph grown by inserting vertices into random faces."""
    if n < 3:
        raise ValueError("need at least 3 vertices")
    pairs = [(0, 1), (1, 2), (0, 2)]
    faces = [(0, 1, 2), (0, 1, 2)]
    for v in range(3, n):
        a, b, c = faces.pop(rng.randrange(len(faces)))
        pairs += [(a, v), (b, v), (c, v)]
        faces += [(a, b, v), (b, c, v), (a, c, v)]
    return from_pairs(pairs, range(n))


def random_bridgeless_planar(n: int, rng: random.Random, deletions: int | None = None) -> MultiGraph:
    """Stacked triangulation thinned by deletions that keep it bridgeless."""
    g = stacked_triangulation(n, rng)
    budget = rng.randint(0, g.num_edges()) if deletions is None else deletions
    order = sorted(g.edges)
    rng.shuffle(order)
    for e in order:
        if budget <= 0:
            break
        trial = delete_edges(g, [e])
        if not bridges(trial):
            g = trial
            budget -= 1
    return g


NAMED = {
    "k4": lambda: complete(4),
    "k5": lambda: complete(5),
    "k33": lambda: complete_bipartite(3, 3),
    "cube": cube,
    "wheel5": lambda: wheel(5),
    "dodecahedron": dodecahedron,
    "petersen": petersen,
    "flower5": lambda: flower_snark(5),
    "blanusa1": lambda: blanusa_snarks()[0],
    "blanusa2": lambda: blanusa_snarks()[1],
}
