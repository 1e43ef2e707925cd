import itertools
import random

import pytest

from graphroots.graph import Graph, complete_bipartite, complete_graph, cycle_graph, path_graph, star_graph
from graphroots.width import (
    PATH,
    TREE,
    WIDTH_SATURATION,
    Decomposition,
    WidthCapExceeded,
    decomposition_violation,
    exact_width,
    power_width_bound,
    validate_decomposition,
    width_at_most,
)


def brute_treewidth(g):
    if g.n == 0:
        return -1
    best = g.n - 1
    for order in itertools.permutations(range(g.n)):
        nbrs = [set(g.neighbors(v)) for v in range(g.n)]
        width = 0
        for v in order:
            width = max(width, len(nbrs[v]))
            for a in nbrs[v]:
                nbrs[a] |= nbrs[v] - {a}
                nbrs[a].discard(v)
        best = min(best, width)
    return best


def brute_pathwidth(g):
    if g.n == 0:
        return -1
    best = g.n - 1
    for order in itertools.permutations(range(g.n)):
        width = 0
        for i in range(g.n):
            prefix = set(order[: i + 1])
            width = max(width, sum(1 for u in prefix if any(w not in prefix for w in g.neighbors(u))))
        best = min(best, width)
    return best


def random_graph(rng, n, p):
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


def test_exact_width_matches_permutation_brute_force():
    rng = random.Random(11)
    for _ in range(120):
        g = random_graph(rng, rng.randint(1, 7), rng.choice([0.2, 0.4, 0.6, 0.8]))
        tw, tdec = exact_width(g, TREE)
        pw, pdec = exact_width(g, PATH)
        assert tw == brute_treewidth(g)
        assert pw == brute_pathwidth(g)
        assert validate_decomposition(g, tdec) and tdec.width == tw
        assert validate_decomposition(g, pdec) and pdec.width == pw


def test_width_at_most_consistent():
    rng = random.Random(5)
    for _ in range(80):
        g = random_graph(rng, rng.randint(1, 9), 0.35)
        for kind in (TREE, PATH):
            w, _ = exact_width(g, kind)
            for k in range(-1, g.n):
                assert width_at_most(g, kind, k) == (w <= k)


def test_known_values():
    assert exact_width(complete_graph(5))[0] == 4
    assert exact_width(cycle_graph(7))[0] == 2
    assert exact_width(path_graph(5), PATH)[0] == 1
    assert exact_width(star_graph(6), PATH)[0] == 1
    assert exact_width(complete_bipartite(2, 3), PATH)[0] == 2
    assert exact_width(complete_bipartite(3, 3))[0] == 3
    assert exact_width(Graph(0))[0] == -1
    assert exact_width(Graph(3))[0] == 0


def test_path_bags_are_incomparable():
    g = star_graph(5)
    _, dec = exact_width(g, PATH)
    for i, a in enumerate(dec.bags):
        for j, b in enumerate(dec.bags):
            assert i == j or not a <= b


def test_violation_messages():
    g = path_graph(3)
    assert "no bag" in decomposition_violation(g, Decomposition(TREE, [frozenset({0, 1})]))
    bad = Decomposition(TREE, [frozenset({0, 1}), frozenset({2}), frozenset({1, 2})], [(0, 1), (1, 2)])
    assert "subtree" in decomposition_violation(g, bad)
    gap = Decomposition(PATH, [frozenset({0, 1}), frozenset({2}), frozenset({1, 2})])
    assert decomposition_violation(g, gap) is not None


def test_text_round_trip():
    g = cycle_graph(6)
    for kind in (TREE, PATH):
        _, dec = exact_width(g, kind)
        back = Decomposition.from_text(dec.to_text(), kind)
        assert [set(b) for b in back.bags] == [set(b) for b in dec.bags]
        assert back.tree_edges == dec.tree_edges
        assert validate_decomposition(g, back)
    assert exact_width(g, TREE)[1].to_text().startswith("bag 0 : ")


def test_cap_and_errors():
    with pytest.raises(WidthCapExceeded) as info:
        exact_width(cycle_graph(30), TREE)
    assert info.value.upper_bound >= 2
    with pytest.raises(ValueError):
        exact_width(path_graph(3), "branch")


def test_power_width_bound():
    assert power_width_bound(1, 3, 2) == 2 * 3**2
    assert power_width_bound(2, 42, 4) == 222264
    assert power_width_bound(2, 1511, 155) == WIDTH_SATURATION
    assert power_width_bound(0, 0, 3) == 0
    with pytest.raises(ValueError):
        power_width_bound(1, 2, 0)
