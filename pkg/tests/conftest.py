import itertools
from functools import lru_cache

import networkx as nx
import pytest

from graphroots.families import builtin_families
from graphroots.generate import gen_instance
from graphroots.graph import Graph, kth_power

ACCEPTANCE_LINES: list[str] = []


def record(number: int, title: str, ok: bool, detail: str = "") -> None:
    """Log one acceptance line; the summary hook prints them after the run."""
    status = "PASS" if ok else "FAIL"
    line = f"[{status}] criterion {number}: {title}"
    if detail:
        line += f" ({detail})"
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def from_nx(G) -> Graph:
    nodes = sorted(G.nodes())
    index = {v: i for i, v in enumerate(nodes)}
    return Graph(len(nodes), [(index[u], index[v]) for u, v in G.edges()])


@lru_cache(maxsize=None)
def connected_atlas(max_n: int) -> tuple[Graph, ...]:
    """Every connected graph on 1..max_n vertices, one per isomorphism class."""
    return tuple(
        from_nx(G)
        for G in nx.graph_atlas_g()[1:]
        if G.number_of_nodes() <= max_n and nx.is_connected(G)
    )


def brute_roots(g: Graph):
    """All edge subsets whose square is g (plain itertools, no pruning)."""
    edges = g.sorted_edges()
    out = []
    for r in range(len(edges) + 1):
        for sub in itertools.combinations(edges, r):
            if kth_power(Graph(g.n, sub), 2) == g:
                out.append(frozenset(sub))
    return out


def brute_minimal_roots(g: Graph):
    roots = set(brute_roots(g))
    return sorted(sorted(r) for r in roots if not any(r - {e} in roots for e in r))


@pytest.fixture(scope="session")
def families():
    return builtin_families()


@lru_cache(maxsize=None)
def perturbed_corpus(limit: int = 300, max_edges: int = 20) -> tuple:
    """Oracle-labelled perturbed instances, round-robin over the families."""
    out = []
    names = ("outerplanar", "pw2", "forest", "cactus", "caterpillar")
    seed = 0
    while len(out) < limit:
        for fam in names:
            n = 5 + seed % 5
            inst = gen_instance(fam, n, seed, "perturbed", oracle_cap=max_edges)
            if inst.label is not None and len(out) < limit:
                out.append(inst)
        seed += 1
    return tuple(out)


@lru_cache(maxsize=None)
def positive_corpus(max_edges: int = 20) -> tuple:
    names = ("outerplanar", "pw2", "forest", "cactus", "caterpillar")
    out = []
    for fam in names:
        for n in (4, 5, 6, 7, 8):
            for seed in range(8):
                inst = gen_instance(fam, n, seed)
                if inst.square.m <= max_edges:
                    out.append(inst)
    return tuple(out)
