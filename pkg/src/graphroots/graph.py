"""Simple undirected graphs on dense vertex ids, plus the distance, twin and
simplicial primitives used throughout the package.

Vertices are ``0..n-1``. Adjacency is stored as one integer bitmask per
vertex, which keeps neighbourhood unions and BFS layers cheap. Graph values
are immutable; derived data (all-pairs distances) is cached on the value.
"""

from __future__ import annotations

import itertools
from typing import Hashable, Iterable, Iterator, Sequence

INF = float("inf")

Edge = tuple[int, int]


def norm_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


popcount = int.bit_count


class Graph:
    """Immutable simple graph.

    ``labels`` maps each dense id to an external label (defaults to the id
    itself); subgraph operations carry labels along so that results computed
    on a piece of a graph can be mapped back to the original vertices.
    """

    __slots__ = ("n", "edges", "_adj", "_nbrs", "labels", "_dist")

    def __init__(
        self,
        n: int,
        edges: Iterable[Sequence[int]] = (),
        labels: Sequence[Hashable] | None = None,
    ) -> None:
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        adj = [0] * n
        es = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            es.add(norm_edge(u, v))
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        self.n = n
        self.edges: frozenset[Edge] = frozenset(es)
        self._adj = tuple(adj)
        self._nbrs: tuple[tuple[int, ...], ...] = tuple(tuple(iter_bits(a)) for a in adj)
        if labels is None:
            self.labels: tuple[Hashable, ...] = tuple(range(n))
        else:
            if len(labels) != n:
                raise ValueError("label table length must equal n")
            self.labels = tuple(labels)
        self._dist = None

    # construction helpers -------------------------------------------------
    @classmethod
    def from_masks(cls, masks: Sequence[int], labels=None) -> Graph:
        n = len(masks)
        es = [(u, v) for u in range(n) for v in iter_bits(masks[u] >> (u + 1) << (u + 1))]
        return cls(n, es, labels)

    @classmethod
    def from_labeled_edges(cls, pairs: Iterable[tuple[Hashable, Hashable]], isolated=()) -> Graph:
        """Build a graph from edges over arbitrary hashable labels.

        Labels are sorted (by ``repr`` when not mutually comparable) and
        remapped to dense ids; the label table is kept on the result.
        """
        pairs = list(pairs)
        seen = set(isolated)
        for u, v in pairs:
            seen.add(u)
            seen.add(v)
        try:
            table = sorted(seen)
        except TypeError:
            table = sorted(seen, key=repr)
        index = {lab: i for i, lab in enumerate(table)}
        return cls(len(table), [(index[u], index[v]) for u, v in pairs], table)

    # basic queries ---------------------------------------------------------
    @property
    def m(self) -> int:
        return len(self.edges)

    def adj_mask(self, v: int) -> int:
        return self._adj[v]

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._nbrs[v]

    def closed_mask(self, v: int) -> int:
        return self._adj[v] | (1 << v)

    def degree(self, v: int) -> int:
        return len(self._nbrs[v])

    def max_degree(self) -> int:
        return max((len(nb) for nb in self._nbrs), default=0)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self._adj[u] >> v & 1)

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def vertices(self) -> range:
        return range(self.n)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __getstate__(self):
        return (self.n, sorted(self.edges), self.labels)

    def __setstate__(self, state):
        n, edges, labels = state
        self.__init__(n, edges, labels)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.sorted_edges()})"

    # derived graphs --------------------------------------------------------
    def with_edges(self, edges: Iterable[Edge]) -> Graph:
        """Same vertex set (and labels), different edge set."""
        return Graph(self.n, edges, self.labels)

    def remove_edges(self, edges: Iterable[Edge]) -> Graph:
        drop = {norm_edge(*e) for e in edges}
        return Graph(self.n, (e for e in self.edges if e not in drop), self.labels)

    def add_edges(self, edges: Iterable[Edge]) -> Graph:
        return Graph(self.n, itertools.chain(self.edges, edges), self.labels)

    def induced(self, vertices: Iterable[int]) -> Graph:
        """Induced subgraph, relabelled densely in increasing id order."""
        keep = sorted(set(vertices))
        index = {v: i for i, v in enumerate(keep)}
        es = [(index[u], index[v]) for u, v in self.edges if u in index and v in index]
        return Graph(len(keep), es, [self.labels[v] for v in keep])

    def remove_vertex(self, v: int) -> Graph:
        return self.induced(u for u in range(self.n) if u != v)

    def relabel(self, labels: Sequence[Hashable]) -> Graph:
        return Graph(self.n, self.edges, labels)

    def label_edges(self, edges: Iterable[Edge]) -> list[tuple]:
        """Translate dense-id edges to label pairs (sorted)."""
        out = []
        for u, v in edges:
            a, b = self.labels[u], self.labels[v]
            try:
                out.append((a, b) if a <= b else (b, a))
            except TypeError:
                out.append((a, b))
        try:
            return sorted(out)
        except TypeError:
            return sorted(out, key=repr)

    # connectivity and distances ---------------------------------------------
    def components(self) -> list[list[int]]:
        seen = 0
        comps = []
        for s in range(self.n):
            if seen >> s & 1:
                continue
            comp = self.reach_mask(s)
            seen |= comp
            comps.append(list(iter_bits(comp)))
        return comps

    def is_connected(self) -> bool:
        return self.n <= 1 or self.reach_mask(0) == (1 << self.n) - 1

    def reach_mask(self, source: int, banned: int = 0) -> int:
        seen = 1 << source
        frontier = seen
        adj = self._adj
        while frontier:
            nxt = 0
            for v in iter_bits(frontier):
                nxt |= adj[v]
            nxt &= ~seen & ~banned
            seen |= nxt
            frontier = nxt
        return seen

    def bfs_distances(self, source: int, banned: int = 0) -> list[float]:
        """Distances from ``source`` avoiding the vertices in ``banned``."""
        dist: list[float] = [INF] * self.n
        dist[source] = 0
        seen = 1 << source
        frontier = seen
        d = 0
        adj = self._adj
        while frontier:
            d += 1
            nxt = 0
            for v in iter_bits(frontier):
                nxt |= adj[v]
            nxt &= ~seen & ~banned
            for v in iter_bits(nxt):
                dist[v] = d
            seen |= nxt
            frontier = nxt
        return dist

    def distances(self) -> tuple[tuple[float, ...], ...]:
        """All-pairs distance matrix, cached on the value.

        Concurrent first calls may both compute it; they store equal tuples.
        """
        if self._dist is None:
            self._dist = tuple(tuple(self.bfs_distances(s)) for s in range(self.n))
        return self._dist

    def distance(self, u: int, v: int) -> float:
        return self.distances()[u][v]


# named graphs ----------------------------------------------------------------


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph(n, itertools.combinations(range(n), 2))


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def star_graph(leaves: int) -> Graph:
    """K_{1,leaves} with centre 0."""
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def spider_graph(legs: int, length: int = 2) -> Graph:
    """Centre 0 with ``legs`` paths of ``length`` edges.

    Vertex numbering puts the first ring of the legs right after the centre,
    so ``spider_graph(3)`` has centre 0, inner vertices 1, 2, 3 and tips
    4, 5, 6 (tip ``3 + i`` hangs off inner vertex ``i``).
    """
    es = []
    for ring in range(length):
        for leg in range(legs):
            v = 1 + ring * legs + leg
            parent = 0 if ring == 0 else v - legs
            es.append((parent, v))
    return Graph(1 + legs * length, es)


# core operations ----------------------------------------------------------------


def kth_power(g: Graph, k: int) -> Graph:
    """Graph on the same vertices joining every pair at distance 1..k."""
    if k < 1:
        raise ValueError("k must be a positive integer")
    adj = g._adj
    masks = []
    for s in range(g.n):
        seen = 1 << s
        frontier = seen
        for _ in range(k):
            nxt = 0
            for v in iter_bits(frontier):
                nxt |= adj[v]
            nxt &= ~seen
            if not nxt:
                break
            seen |= nxt
            frontier = nxt
        masks.append(seen & ~(1 << s))
    return Graph.from_masks(masks, g.labels)


def square(g: Graph) -> Graph:
    return kth_power(g, 2)


def distance_in_deleted(g: Graph, u: int, x: int, y: int) -> float:
    """Shortest x-y distance in ``g - u`` (``INF`` when disconnected)."""
    if x == u or y == u:
        raise ValueError("query endpoints must differ from the deleted vertex")
    return g.bfs_distances(x, banned=1 << u)[y]


def true_twin_classes(g: Graph) -> list[tuple[int, ...]]:
    """Classes of the relation N[u] = N[v], ordered by smallest member."""
    groups: dict[int, list[int]] = {}
    for v in range(g.n):
        groups.setdefault(g.closed_mask(v), []).append(v)
    return sorted(tuple(c) for c in groups.values())


def is_simplicial(g: Graph, v: int) -> bool:
    closed = g.closed_mask(v)
    return all(g.closed_mask(x) & closed == closed for x in g.neighbors(v))


def biconnected_blocks(g: Graph) -> list[list[Edge]]:
    """Edge sets of the blocks (maximal biconnected pieces), bridges included."""
    disc = [-1] * g.n
    low = [0] * g.n
    blocks: list[list[Edge]] = []
    stack: list[Edge] = []
    counter = 0
    for root in range(g.n):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = counter
        counter += 1
        # iterative DFS: frames of (vertex, parent, neighbour iterator)
        frames = [(root, -1, iter(g.neighbors(root)))]
        while frames:
            v, parent, it = frames[-1]
            advanced = False
            for w in it:
                if disc[w] == -1:
                    disc[w] = low[w] = counter
                    counter += 1
                    stack.append(norm_edge(v, w))
                    frames.append((w, v, iter(g.neighbors(w))))
                    advanced = True
                    break
                if w != parent and disc[w] < disc[v]:
                    stack.append(norm_edge(v, w))
                    low[v] = min(low[v], disc[w])
            if advanced:
                continue
            frames.pop()
            if parent != -1:
                low[parent] = min(low[parent], low[v])
                if low[v] >= disc[parent]:
                    block = []
                    target = norm_edge(parent, v)
                    while True:
                        e = stack.pop()
                        block.append(e)
                        if e == target:
                            break
                    blocks.append(sorted(block))
    return blocks
