"""Minor containment for small fixed patterns.

``has_minor`` is a general branch-set search usable for any pattern with at
most ``MAX_PATTERN`` vertices. The two patterns that characterise outerplanar
graphs also get dedicated exact routines (``has_k4_minor`` and
``has_k23_minor``) that run in polynomial time; tests check them against
the general search.
"""

from __future__ import annotations

from .graph import Graph, biconnected_blocks, iter_bits, popcount

MAX_PATTERN = 6


def _grow_from(adj: list[int], v: int, allowed: int):
    """Connected sets containing ``v`` whose other members lie in ``allowed``.

    Binary include/exclude tree over the lowest candidate, so each set is
    produced once.
    """

    def grow(s: int, ext: int, excluded: int):
        yield s
        while ext:
            low = ext & -ext
            ext ^= low
            w = low.bit_length() - 1
            yield from grow(s | low, ext | (adj[w] & allowed & ~s & ~excluded & ~low), excluded)
            excluded |= low

    yield from grow(1 << v, adj[v] & allowed, 0)


def connected_subsets(g: Graph, allowed: int | None = None):
    """All connected vertex subsets (as bitmasks) of ``g`` within ``allowed``."""
    if allowed is None:
        allowed = (1 << g.n) - 1
    adj = [g.adj_mask(v) for v in range(g.n)]
    for v in iter_bits(allowed):
        above = allowed & ~((1 << (v + 1)) - 1)
        yield from _grow_from(adj, v, above)


def _pattern_order(p: Graph) -> list[int]:
    """Most-constrained-first: highest degree, then most placed neighbours."""
    order: list[int] = []
    placed = 0
    remaining = set(range(p.n))
    while remaining:
        best = max(
            remaining,
            key=lambda v: (popcount(p.adj_mask(v) & placed), p.degree(v), -v),
        )
        order.append(best)
        placed |= 1 << best
        remaining.remove(best)
    return order


def has_minor(g: Graph, pattern: Graph, cap: int = MAX_PATTERN) -> bool:
    """True iff ``pattern`` is a minor of ``g``.

    Searches for a minor model: pairwise disjoint connected branch sets, one
    per pattern vertex, with an edge between the sets of adjacent pattern
    vertices. Pattern vertices are placed most-constrained-first; a branch
    set is rejected early if it has fewer outgoing edges than the pattern
    vertex has neighbours.
    """
    if pattern.n > cap:
        raise ValueError(f"pattern has {pattern.n} vertices; cap is {cap}")
    if pattern.n == 0:
        return True
    if g.n < pattern.n or g.m < pattern.m:
        return False
    adj = [g.adj_mask(v) for v in range(g.n)]
    full = (1 << g.n) - 1
    order = _pattern_order(pattern)
    pos = {pv: i for i, pv in enumerate(order)}
    earlier_nbrs = [
        [pos[w] for w in pattern.neighbors(pv) if pos[w] < i] for i, pv in enumerate(order)
    ]
    need = [pattern.degree(pv) for pv in order]
    sets = [0] * pattern.n
    k = pattern.n

    def out_edges(s: int, avail: int) -> int:
        total = 0
        for v in iter_bits(s):
            total += popcount(adj[v] & avail & ~s)
        return total

    def place(i: int, used: int) -> bool:
        if i == k:
            return True
        free = full & ~used
        if popcount(free) < k - i:
            return False
        reach_nbrs = earlier_nbrs[i]
        for s in connected_subsets(g, free):
            if popcount(free & ~s) < k - i - 1:
                continue
            nbr = 0
            for v in iter_bits(s):
                nbr |= adj[v]
            if any(not (nbr & sets[j]) for j in reach_nbrs):
                continue
            # edges to already-placed sets or still-free vertices
            if out_edges(s, full & ~(used & ~_union(sets, reach_nbrs))) < need[i]:
                continue
            sets[i] = s
            if place(i + 1, used | s):
                return True
        sets[i] = 0
        return False

    return place(0, 0)


def _union(sets: list[int], idx: list[int]) -> int:
    out = 0
    for j in idx:
        out |= sets[j]
    return out


# dedicated routines -----------------------------------------------------------


def has_k4_minor(g: Graph) -> bool:
    """K4-minor test via series-parallel reduction.

    A graph has no K4 minor iff repeatedly deleting vertices of degree at
    most one and suppressing degree-two vertices (joining their neighbours)
    empties it.
    """
    nbrs = [set(g.neighbors(v)) for v in range(g.n)]
    alive = set(range(g.n))
    queue = [v for v in alive if len(nbrs[v]) <= 2]
    while queue:
        v = queue.pop()
        if v not in alive or len(nbrs[v]) > 2:
            continue
        alive.remove(v)
        ns = list(nbrs[v])
        for w in ns:
            nbrs[w].discard(v)
        if len(ns) == 2:
            a, b = ns
            nbrs[a].add(b)
            nbrs[b].add(a)
        nbrs[v].clear()
        for w in ns:
            if len(nbrs[w]) <= 2:
                queue.append(w)
    return bool(alive)


def _three_disjoint_paths(nbrs: list[set[int]], a: int, b: int) -> bool:
    """At least three internally vertex-disjoint a-b paths (direct edge ignored).

    Unit vertex capacities via node splitting; three augmentations at most.
    """
    # flow[(x, y)] on split graph: node v -> (v, 0) in, (v, 1) out
    flow: dict[tuple, int] = {}

    def cap(x, y) -> int:
        (u, su), (v, sv) = x, y
        if u == v:
            # internal arc in->out (capacity 1 except at terminals)
            base = 1 if su == 0 and sv == 1 else 0
            if u in (a, b) and su == 0 and sv == 1:
                base = 3
        elif su == 1 and sv == 0 and v in nbrs[u] and not ({u, v} == {a, b}):
            base = 1
        else:
            base = 0
        return base - flow.get((x, y), 0) + flow.get((y, x), 0)

    def succ(x):
        u, s = x
        if s == 0:
            yield (u, 1)
            for w in nbrs[u]:
                yield (w, 1)  # reverse of w.out -> u.in
        else:
            yield (u, 0)  # reverse of in -> out
            for w in nbrs[u]:
                yield (w, 0)

    source, sink = (a, 1), (b, 0)
    for _ in range(3):
        parent = {source: None}
        frontier = [source]
        while frontier and sink not in parent:
            nxt = []
            for x in frontier:
                for y in succ(x):
                    if y not in parent and cap(x, y) > 0:
                        parent[y] = x
                        nxt.append(y)
            frontier = nxt
        if sink not in parent:
            return False
        y = sink
        while parent[y] is not None:
            x = parent[y]
            back = flow.get((y, x), 0)
            if back:
                flow[(y, x)] = back - 1
            else:
                flow[(x, y)] = flow.get((x, y), 0) + 1
            y = x
    return True


def has_k23_minor(g: Graph) -> bool:
    """K_{2,3}-minor test.

    K_{2,3} has maximum degree 3, so it is a minor iff it is a topological
    minor: two vertices joined by three internally disjoint paths of length
    at least two. K_{2,3} is 2-connected, so blocks are checked separately.
    """
    for block in biconnected_blocks(g):
        if len(block) < 6:
            continue
        verts = sorted({v for e in block for v in e})
        index = {v: i for i, v in enumerate(verts)}
        nbrs: list[set[int]] = [set() for _ in verts]
        for u, v in block:
            nbrs[index[u]].add(index[v])
            nbrs[index[v]].add(index[u])
        cand = [v for v in range(len(verts)) if len(nbrs[v]) >= 3]
        for i, a in enumerate(cand):
            for b in cand[i + 1:]:
                usable = len(nbrs[a] - {b})
                if usable >= 3 and len(nbrs[b] - {a}) >= 3 and _three_disjoint_paths(nbrs, a, b):
                    return True
    return False
