import random
import warnings

import networkx as nx
import pytest

from graphroots.families import (
    FAMILY_NAMES,
    OUTERPLANAR_WIDTH_CUTOFF,
    builtin_families,
    degree_capped,
    get_family,
    has_pathwidth_at_most_2,
    is_cactus,
    is_caterpillar_forest,
    is_forest,
    is_outerplanar,
    pw2_constants,
)
from graphroots.graph import Graph, complete_bipartite, complete_graph, cycle_graph, spider_graph, star_graph
from graphroots.width import PATH, WIDTH_SATURATION, exact_width


def to_nx(g):
    G = nx.Graph()
    G.add_nodes_from(range(g.n))
    G.add_edges_from(g.edges)
    return G


def nx_outerplanar(g):
    G = to_nx(g)
    G.add_edges_from(("apex", v) for v in range(g.n))
    return nx.check_planarity(G)[0]


def nx_cactus(g):
    G = to_nx(g)
    for comp in nx.biconnected_components(G):
        sub = G.subgraph(comp)
        if sub.number_of_edges() > 1 and sub.number_of_edges() != sub.number_of_nodes():
            return False
    return True


def nx_caterpillar(g):
    G = to_nx(g)
    if not nx.is_forest(G):
        return False
    spine = G.subgraph([v for v in G if G.degree(v) >= 2])
    return all(d <= 2 for _, d in spine.degree())


def random_graphs(seed, count, max_n=9):
    rng = random.Random(seed)
    for _ in range(count):
        n = rng.randint(1, max_n)
        p = rng.choice([0.15, 0.25, 0.35, 0.5])
        yield Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


def test_predicates_against_networkx():
    for g in random_graphs(1, 400):
        assert is_outerplanar(g) == nx_outerplanar(g)
        assert is_cactus(g) == nx_cactus(g)
        assert is_forest(g) == nx.is_forest(to_nx(g)) if g.n else True
        assert is_caterpillar_forest(g) == nx_caterpillar(g)


def test_pathwidth_two_predicate():
    for g in random_graphs(2, 200, max_n=8):
        assert has_pathwidth_at_most_2(g) == (exact_width(g, PATH)[0] <= 2)


def test_examples():
    assert is_outerplanar(cycle_graph(6)) and not is_outerplanar(complete_graph(4))
    assert not is_outerplanar(complete_bipartite(2, 3))
    assert has_pathwidth_at_most_2(complete_bipartite(2, 3))
    assert has_pathwidth_at_most_2(spider_graph(3))
    assert not is_caterpillar_forest(spider_graph(3))
    assert is_caterpillar_forest(star_graph(5))
    assert is_cactus(Graph(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]))
    assert not is_cactus(complete_graph(4))


def test_constants():
    assert OUTERPLANAR_WIDTH_CUTOFF == 3 * 42**3
    c2, c3, c4 = pw2_constants(10)
    assert (c2, c3, c4) == (1512, 154, WIDTH_SATURATION)
    fams = builtin_families()
    assert tuple(fams) == FAMILY_NAMES
    assert fams["outerplanar"].spread_count == 3 and fams["pw2"].spread_count == 3
    assert get_family("pw2", spread_count=5).spread_count == 5
    with pytest.raises(ValueError):
        get_family("pw2", spread_count=4)
    assert fams["pw2"].twin_threshold == 11 and fams["outerplanar"].twin_threshold == 8


def test_overrides_and_experimental_flag():
    fam = get_family("pw2", twin_threshold=4, width_cutoff=None)
    assert fam.experimental_twins and fam.width_cutoff is None
    assert not get_family("pw2", twin_threshold=20).experimental_twins
    assert get_family("pw2", c1=5).experimental_twins
    with pytest.raises(KeyError):
        get_family("planar")


def test_degree_capped_warns():
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        fam = degree_capped(get_family("outerplanar"), 3, twin_threshold=6)
    assert caught and "unverified" in str(caught[0].message)
    assert fam.is_member(cycle_graph(5)) and not fam.is_member(star_graph(4))
    assert fam.experimental_twins
