"""Brute-force square roots for small graphs.

Ground truth for everything else in the package: a depth-first walk over
edge subsets of the input in lexicographic edge order, trying "exclude"
before "include". Two local checks keep it tractable:

* including an edge may not create a 2-path between vertices that are not
  adjacent in the input (the square would gain a non-edge);
* once every edge that could cover an input edge has been decided, that
  input edge must be covered by a chosen edge or a chosen 2-path.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .families import FamilyConfig, builtin_families
from .graph import Edge, Graph, kth_power

DEFAULT_EDGE_CAP = 24


class OracleCapExceeded(Exception):
    pass


@dataclass(frozen=True)
class RootWitness:
    edge_set: frozenset[Edge]
    minimal: bool
    family_tags: tuple[str, ...] = field(default=())

    def graph(self, n: int) -> Graph:
        return Graph(n, self.edge_set)


def is_square_root(h: Graph, g: Graph) -> bool:
    if h.n != g.n:
        raise ValueError(f"vertex counts differ: {h.n} vs {g.n}")
    return kth_power(h, 2) == g


def is_minimal_root(h: Graph, g: Graph) -> bool:
    if not is_square_root(h, g):
        raise ValueError("h is not a square root of g")
    return all(kth_power(h.remove_edges([e]), 2) != g for e in h.edges)


def _iter_roots(g: Graph, fam: FamilyConfig | None, cap: int):
    if g.m > cap:
        raise OracleCapExceeded(f"{g.m} edges exceeds oracle cap {cap}")
    edges = g.sorted_edges()
    index = {e: i for i, e in enumerate(edges)}
    m = len(edges)
    # for each input edge, the position after which every edge able to cover it is decided
    deadline = [[] for _ in range(m)]
    for i, (x, y) in enumerate(edges):
        last = i
        for z in range(g.n):
            if z != x and z != y and g.has_edge(x, z) and g.has_edge(z, y):
                last = max(last, index[tuple(sorted((x, z)))], index[tuple(sorted((z, y)))])
        deadline[last].append(i)

    chosen = [False] * m
    nbrs: list[set[int]] = [set() for _ in range(g.n)]

    def covered(i: int) -> bool:
        if chosen[i]:
            return True
        x, y = edges[i]
        return bool(nbrs[x] & nbrs[y])

    def current() -> Graph:
        return Graph(g.n, (edges[i] for i in range(m) if chosen[i]))

    def walk(i: int):
        if i == m:
            yield frozenset(edges[j] for j in range(m) if chosen[j])
            return
        x, y = edges[i]
        for include in (False, True):
            if include:
                # every chosen neighbour of x must be adjacent to y in g, and vice versa
                if any(w != y and not g.has_edge(w, y) for w in nbrs[x]):
                    continue
                if any(w != x and not g.has_edge(w, x) for w in nbrs[y]):
                    continue
                chosen[i] = True
                nbrs[x].add(y)
                nbrs[y].add(x)
                if fam is not None and not fam.is_member(current()):
                    chosen[i] = False
                    nbrs[x].discard(y)
                    nbrs[y].discard(x)
                    continue
            if all(covered(j) for j in deadline[i]):
                yield from walk(i + 1)
            if include:
                chosen[i] = False
                nbrs[x].discard(y)
                nbrs[y].discard(x)

    yield from walk(0)


def enumerate_roots(g: Graph, fam: FamilyConfig | None = None, cap: int = DEFAULT_EDGE_CAP):
    """All square roots of g (restricted to family members when given), as edge sets."""
    return list(_iter_roots(g, fam, cap))


def enumerate_minimal_roots(
    g: Graph, fam: FamilyConfig | None = None, cap: int = DEFAULT_EDGE_CAP, tag: bool = True
) -> list[RootWitness]:
    """All minimal square roots of g, restricted to members of ``fam`` when given.

    Results are sorted by their sorted edge lists. ``tag=False`` skips the
    built-in family tagging, which dominates the cost on dense inputs.
    """
    tagging = builtin_families() if tag else {}
    out = []
    for es in _iter_roots(g, fam, cap):
        h = Graph(g.n, es)
        if not is_minimal_root(h, g):
            continue
        tags = tuple(name for name, f in tagging.items() if f.is_member(h))
        out.append(RootWitness(es, True, tags))
    out.sort(key=lambda r: sorted(r.edge_set))
    return out


def has_family_root_bruteforce(g: Graph, fam: FamilyConfig, cap: int = DEFAULT_EDGE_CAP) -> bool:
    """Whether g has a square root in ``fam``.

    Stops at the first family root found; by subgraph closure this agrees
    with asking for a minimal family root.
    """
    for _ in _iter_roots(g, fam, cap):
        return True
    return False


def find_family_root(g: Graph, fam: FamilyConfig, cap: int = DEFAULT_EDGE_CAP) -> frozenset[Edge] | None:
    for es in _iter_roots(g, fam, cap):
        return es
    return None
