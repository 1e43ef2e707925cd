import random

import pytest

from graphroots.families import get_family
from graphroots.graph import Graph, complete_graph, cycle_graph, kth_power, path_graph, spider_graph, star_graph
from graphroots.oracle import has_family_root_bruteforce
from graphroots.reduction import (
    LABEL_CONFLICT,
    MISSING_SQUARE_EDGE,
    NO_ANSWER,
    RED_EDGE_DELETED,
    RUNNING,
    WIDTH_EXCEEDED,
    LabeledInstance,
    delete_irrelevant_edges,
    find_spread_neighbors,
    label_edges,
    reduce_instance,
    reduce_twins,
    width_cutoff_check,
)

OUTER = get_family("outerplanar")
PW2 = get_family("pw2")
SPIDER_SQ = kth_power(spider_graph(3), 2)

# smallest random graphs found to trip each refusal
LABEL_CONFLICT_G = Graph(8, [(0, 3), (1, 3), (1, 5), (2, 3), (2, 4), (2, 5), (2, 7), (3, 6), (3, 7), (4, 6)])
MISSING_EDGE_G = Graph(8, [(0, 1), (0, 3), (0, 4), (0, 5), (0, 6), (1, 2), (1, 4), (1, 7), (2, 5),
                           (2, 6), (3, 7), (4, 5), (5, 7)])
RED_DELETED_G = Graph(8, [(0, 2), (0, 6), (0, 7), (1, 4), (1, 6), (2, 3), (3, 4), (3, 5), (3, 6),
                          (3, 7), (4, 7), (5, 6), (6, 7)])


def test_twin_deletion_examples():
    g, log = reduce_twins(complete_graph(9), OUTER)
    # deletion repeats while the class still meets the threshold
    assert g == complete_graph(7) and [d.vertex for d in log] == [0, 1]
    assert log[0].representative == 1 and len(log[0].members) == 9
    g, log = reduce_twins(path_graph(5), PW2)
    assert g == path_graph(5) and log == []
    g, log = reduce_twins(complete_graph(4), PW2.with_overrides(twin_threshold=3))
    assert g == complete_graph(2) and [d.vertex for d in log] == [0, 1]
    assert g.labels == (2, 3)


def test_simplicial_rule_ignores_non_simplicial_twins():
    # a C4 whose vertex 0 is blown up into an 11-clique of true twins: their
    # closed neighbourhood holds the two non-adjacent vertices 1 and 3
    blob = range(4, 14)
    edges = [(0, 1), (1, 2), (2, 3), (3, 0)] + [(v, w) for v in (0, *blob) for w in (1, 3)]
    edges += [(a, b) for a in (0, *blob) for b in blob if a < b]
    g = Graph(14, edges)
    assert reduce_twins(g, OUTER)[1] == []
    reduced, log = reduce_twins(g, PW2)
    assert len(log) == 1 and reduced.n == 13


def test_spread_neighbors():
    assert find_spread_neighbors(star_graph(3), 0, 3) == (1, 2, 3)
    assert find_spread_neighbors(complete_graph(4), 0, 3) is None
    assert find_spread_neighbors(SPIDER_SQ, 0, 3) == (4, 5, 6)
    assert find_spread_neighbors(SPIDER_SQ, 0, 5) is None
    with pytest.raises(ValueError):
        find_spread_neighbors(SPIDER_SQ, 0, 4)


def test_labelling_examples():
    inst = label_edges(LabeledInstance.start(star_graph(3)), OUTER)
    assert inst.hubs == {0} and inst.red == set() and inst.blue == {(0, 1), (0, 2), (0, 3)}
    inst = label_edges(LabeledInstance.start(SPIDER_SQ), OUTER)
    assert inst.hubs == {0}
    assert inst.red == {(0, 1), (0, 2), (0, 3)} and inst.blue == {(0, 4), (0, 5), (0, 6)}
    inst = label_edges(LabeledInstance.start(cycle_graph(6)), OUTER)
    assert not (inst.hubs or inst.red or inst.blue)


def test_pw2_spread_setting_on_the_spider():
    inst = reduce_instance(SPIDER_SQ, PW2)
    assert inst.red == {(0, 1), (0, 2), (0, 3)} and inst.deleted == {(1, 2), (1, 3), (2, 3)}
    strict = reduce_instance(SPIDER_SQ, get_family("pw2", spread_count=5))
    assert strict.running and not (strict.hubs or strict.red or strict.blue or strict.deleted)


def test_irrelevant_edges_examples():
    inst = reduce_instance(SPIDER_SQ, OUTER)
    assert inst.deleted == {(1, 2), (1, 3), (2, 3)}
    assert inst.g == SPIDER_SQ.remove_edges(inst.deleted) and inst.status == RUNNING
    plain = delete_irrelevant_edges(LabeledInstance.start(cycle_graph(5)))
    assert plain.deleted == set() and plain.g == cycle_graph(5)


def test_hand_built_missing_square_edge():
    g = Graph(4, [(0, 1), (0, 2), (0, 3)])
    inst = LabeledInstance.start(g)
    inst.hubs = {0}
    inst.red = {(0, 1), (0, 2)}
    inst.blue = {(0, 3)}
    delete_irrelevant_edges(inst)
    assert inst.status == NO_ANSWER and inst.reason == MISSING_SQUARE_EDGE


def test_hand_built_red_edge_deleted():
    g = complete_graph(3)
    inst = LabeledInstance.start(g)
    inst.hubs = {0}
    inst.red = {(0, 1), (0, 2), (1, 2)}
    delete_irrelevant_edges(inst)
    assert inst.reason == RED_EDGE_DELETED and inst.failing_rule == "delete_irrelevant_edges"


@pytest.mark.parametrize(
    "g, reason",
    [(LABEL_CONFLICT_G, LABEL_CONFLICT), (MISSING_EDGE_G, MISSING_SQUARE_EDGE), (RED_DELETED_G, RED_EDGE_DELETED)],
)
def test_refusals_are_sound(g, reason):
    inst = reduce_instance(g, OUTER)
    assert inst.status == NO_ANSWER and inst.reason == reason
    assert not has_family_root_bruteforce(g, OUTER)


def test_width_cutoff():
    c4 = cycle_graph(4)
    low = OUTER.with_overrides(width_cutoff=1)
    inst = width_cutoff_check(LabeledInstance.start(c4), low)
    assert inst.reason == WIDTH_EXCEEDED
    unlimited = OUTER.with_overrides(width_cutoff=None)
    assert width_cutoff_check(LabeledInstance.start(c4), unlimited).running
    inst = reduce_instance(SPIDER_SQ, OUTER)
    assert inst.running and inst.trace[-1]["computed"] is False
    tight = reduce_instance(SPIDER_SQ, OUTER.with_overrides(width_cutoff=2))
    assert tight.running and tight.trace[-1]["computed"] is True
    assert reduce_instance(SPIDER_SQ, OUTER.with_overrides(width_cutoff=1)).reason == WIDTH_EXCEEDED


def test_invariants_on_random_squares():
    from graphroots.generate import gen_instance

    for fam_name in ("outerplanar", "pw2", "cactus"):
        fam = get_family(fam_name)
        for seed in range(30):
            g = gen_instance(fam_name, 10, seed).square
            inst = reduce_instance(g, fam)
            assert inst.running
            assert not (inst.red & inst.blue) and not (inst.red & inst.deleted)
            for u in inst.hubs:
                for x in inst.base.neighbors(u):
                    e = (min(u, x), max(u, x))
                    assert e in inst.red or e in inst.blue
            for x, y in inst.deleted:
                assert inst.hub_witnessed(x, y)


def test_trace_shape():
    inst = reduce_instance(SPIDER_SQ, OUTER)
    assert [t["rule"] for t in inst.trace] == [
        "reduce_twins",
        "label_edges",
        "delete_irrelevant_edges",
        "width_cutoff_check",
    ]
    assert inst.summary()["hubs"] == [0]


def test_three_spread_labels_hold_on_spider_extensions():
    # pw2 roots built around a 3-leg spider; whenever the root is minimal the
    # labels must agree with it and nothing may be refused
    from graphroots.families import has_pathwidth_at_most_2
    from graphroots.oracle import is_minimal_root

    rng = random.Random(20)
    base = [(0, 1), (0, 2), (0, 3), (1, 4), (2, 5), (3, 6)]
    fired = 0
    for _ in range(15000):
        n = 7 + rng.randint(1, 5)
        extra = [(a, b) for a in range(1, n) for b in range(a + 1, n)
                 if (a, b) not in base and rng.random() < 0.15]
        h = Graph(n, base + extra)
        if not h.is_connected() or not has_pathwidth_at_most_2(h):
            continue
        g = kth_power(h, 2)
        if not is_minimal_root(h, g):
            continue
        inst = reduce_instance(g, PW2, twins=False)
        assert inst.running
        assert inst.red <= h.edges and not (inst.blue & h.edges) and not (inst.deleted & h.edges)
        fired += bool(inst.hubs)
    assert fired > 200
