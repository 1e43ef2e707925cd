import random

import pytest

from graphroots.graph import Graph, complete_bipartite, complete_graph, cycle_graph, path_graph
from graphroots.minors import connected_subsets, has_k4_minor, has_k23_minor, has_minor


def random_graph(rng, n, p):
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


def test_known_minors():
    k4 = complete_graph(4)
    k23 = complete_bipartite(2, 3)
    assert has_minor(k4, k4) and has_k4_minor(k4)
    assert not has_k4_minor(k23) and has_k23_minor(k23)
    assert has_k23_minor(complete_graph(5))
    assert not has_k23_minor(k4)
    # subdivided K4 still has a K4 minor
    sub = Graph(5, [(0, 4), (4, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
    assert has_k4_minor(sub)
    assert not has_minor(cycle_graph(6), k4)
    assert has_minor(cycle_graph(6), cycle_graph(4))
    assert not has_minor(path_graph(5), cycle_graph(3))


def test_pattern_cap():
    with pytest.raises(ValueError):
        has_minor(complete_graph(8), complete_graph(7))


def test_fast_routines_agree_with_branch_sets():
    rng = random.Random(7)
    k4, k23 = complete_graph(4), complete_bipartite(2, 3)
    for _ in range(250):
        g = random_graph(rng, rng.randint(4, 8), rng.choice([0.25, 0.4, 0.55]))
        assert has_k4_minor(g) == has_minor(g, k4)
        assert has_k23_minor(g) == has_minor(g, k23)


def test_connected_subsets_brute_force():
    rng = random.Random(3)
    for _ in range(40):
        g = random_graph(rng, rng.randint(1, 7), 0.35)
        allowed = (1 << g.n) - 1
        got = sorted(connected_subsets(g, allowed))
        want = []
        for s in range(1, 1 << g.n):
            verts = [v for v in range(g.n) if s >> v & 1]
            if g.induced(verts).is_connected():
                want.append(s)
        assert got == sorted(want)
