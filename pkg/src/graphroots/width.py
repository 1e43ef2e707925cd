"""Exact treewidth / pathwidth for small graphs.

Treewidth is decided through elimination orderings: a set S of already
eliminated vertices can be extended by v when the vertices reachable from
v through S (outside S and v) number at most k. Pathwidth uses the vertex
separation number over linear orderings. Both are searched over vertex
subsets with memoised dead ends, trying vertices in increasing id order so
the witness ordering is the lexicographically first feasible one.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .graph import Graph, iter_bits, popcount

TREE = "tree"
PATH = "path"

DEFAULT_CAPS = {TREE: 20, PATH: 22}

# stands in for "too large to matter"; power bounds saturate here
WIDTH_SATURATION = 2**63 - 1


class WidthCapExceeded(Exception):
    def __init__(self, n: int, cap: int, upper_bound: int):
        super().__init__(f"graph has {n} vertices; exact width cap is {cap} (upper bound {upper_bound})")
        self.n = n
        self.cap = cap
        self.upper_bound = upper_bound


@dataclass
class Decomposition:
    kind: str
    bags: list[frozenset[int]]
    tree_edges: list[tuple[int, int]] = field(default_factory=list)

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    def to_text(self) -> str:
        lines = [f"bag {i} : " + " ".join(str(v) for v in sorted(b)) for i, b in enumerate(self.bags)]
        if self.kind == TREE:
            lines += [f"tree-edge {a} {b}" for a, b in self.tree_edges]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str, kind: str) -> Decomposition:
        bags: dict[int, frozenset[int]] = {}
        tree_edges = []
        for line in text.splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if line.startswith("bag "):
                head, _, body = line.partition(":")
                bags[int(head.split()[1])] = frozenset(int(t) for t in body.split())
            elif line.startswith("tree-edge "):
                _, a, b = line.split()
                tree_edges.append((int(a), int(b)))
            else:
                raise ValueError(f"unrecognised decomposition line: {line!r}")
        return cls(kind, [bags[i] for i in sorted(bags)], tree_edges)


# validation -------------------------------------------------------------------


def decomposition_violation(g: Graph, dec: Decomposition) -> str | None:
    """First violated decomposition condition, or None when valid."""
    nb = len(dec.bags)
    for i, bag in enumerate(dec.bags):
        for v in bag:
            if not 0 <= v < g.n:
                return f"bag {i} contains unknown vertex {v}"
    covered = set().union(*dec.bags) if dec.bags else set()
    missing = set(range(g.n)) - covered
    if missing:
        return f"vertex {min(missing)} is in no bag"
    for u, v in sorted(g.edges):
        if not any(u in b and v in b for b in dec.bags):
            return f"edge ({u}, {v}) is in no bag"

    if dec.kind == PATH:
        for v in range(g.n):
            idx = [i for i, b in enumerate(dec.bags) if v in b]
            if idx[-1] - idx[0] + 1 != len(idx):
                return f"bags containing vertex {v} are not contiguous"
        for i in range(nb):
            for j in range(nb):
                if i != j and dec.bags[i] <= dec.bags[j]:
                    return f"bag {i} is contained in bag {j}"
        return None

    # tree: the edge list must form a tree on the bag indices
    if len(dec.tree_edges) != max(nb - 1, 0):
        return f"expected {max(nb - 1, 0)} tree edges, got {len(dec.tree_edges)}"
    adj: list[list[int]] = [[] for _ in range(nb)]
    for a, b in dec.tree_edges:
        if not (0 <= a < nb and 0 <= b < nb) or a == b:
            return f"invalid tree edge ({a}, {b})"
        adj[a].append(b)
        adj[b].append(a)
    if nb and len(_reach(adj, 0, lambda i: True)) != nb:
        return "tree edges do not connect all bags"
    for v in range(g.n):
        holders = {i for i, b in enumerate(dec.bags) if v in b}
        start = next(iter(holders))
        if _reach(adj, start, lambda i: i in holders) != holders:
            return f"bags containing vertex {v} do not induce a subtree"
    return None


def _reach(adj: list[list[int]], start: int, ok) -> set[int]:
    seen = {start}
    stack = [start]
    while stack:
        i = stack.pop()
        for j in adj[i]:
            if j not in seen and ok(j):
                seen.add(j)
                stack.append(j)
    return seen


def validate_decomposition(g: Graph, dec: Decomposition) -> bool:
    return decomposition_violation(g, dec) is None


# treewidth --------------------------------------------------------------------


def _elim_reach(adj: tuple[int, ...], eliminated: int, v: int) -> int:
    """Vertices outside ``eliminated | {v}`` reachable from v through ``eliminated``."""
    inside = 1 << v
    frontier = inside
    out = 0
    while frontier:
        nxt = 0
        for x in iter_bits(frontier):
            nxt |= adj[x]
        out |= nxt & ~eliminated
        nxt &= eliminated & ~inside
        inside |= nxt
        frontier = nxt
    return out & ~(1 << v)


def treewidth_ordering(g: Graph, k: int) -> list[int] | None:
    """An elimination ordering of width <= k, or None if tw(g) > k."""
    if g.n == 0:
        return []
    adj = g._adj
    full = (1 << g.n) - 1
    dead: set[int] = set()
    order: list[int] = []

    def search(s: int) -> bool:
        if s == full:
            return True
        if s in dead:
            return False
        remaining = popcount(full & ~s)
        for v in iter_bits(full & ~s):
            q = _elim_reach(adj, s, v)
            if popcount(q) > k:
                continue
            # the last k+1 vertices can always be eliminated in any order
            order.append(v)
            if remaining <= k + 1 or search(s | (1 << v)):
                if remaining <= k + 1:
                    order.extend(u for u in iter_bits(full & ~s & ~(1 << v)))
                return True
            order.pop()
        dead.add(s)
        return False

    return order if search(0) else None


def decomposition_from_ordering(g: Graph, order: list[int]) -> Decomposition:
    """Tree decomposition induced by an elimination ordering."""
    if g.n == 0:
        return Decomposition(TREE, [])
    pos = {v: i for i, v in enumerate(order)}
    adj = g._adj
    bags = []
    higher = []
    eliminated = 0
    for v in order:
        q = _elim_reach(adj, eliminated, v)
        bags.append(frozenset(iter_bits(q)) | {v})
        higher.append(q)
        eliminated |= 1 << v
    tree_edges = []
    roots = []
    for i, q in enumerate(higher):
        if q:
            parent = min(pos[u] for u in iter_bits(q))
            tree_edges.append((i, parent))
        else:
            roots.append(i)
    # join the per-component trees into one tree
    for a, b in zip(roots, roots[1:]):
        tree_edges.append((a, b))
    return Decomposition(TREE, bags, tree_edges)


def greedy_treewidth_upper(g: Graph) -> tuple[int, list[int]]:
    """Min-degree elimination heuristic: (width, ordering)."""
    nbrs = [set(g.neighbors(v)) for v in range(g.n)]
    alive = set(range(g.n))
    order = []
    width = 0
    while alive:
        v = min(alive, key=lambda x: (len(nbrs[x]), x))
        ns = nbrs[v]
        width = max(width, len(ns))
        for a in ns:
            nbrs[a] |= ns - {a}
            nbrs[a].discard(v)
        alive.remove(v)
        order.append(v)
    return width, order


def max_clique_size(g: Graph) -> int:
    best = 0

    def expand(size: int, cand: int) -> None:
        nonlocal best
        if size > best:
            best = size
        while cand:
            if size + popcount(cand) <= best:
                return
            low = cand & -cand
            v = low.bit_length() - 1
            cand ^= low
            expand(size + 1, cand & g.adj_mask(v))

    expand(0, (1 << g.n) - 1)
    return best


# pathwidth --------------------------------------------------------------------


def _boundary(adj: tuple[int, ...], s: int) -> int:
    """Members of s with a neighbour outside s."""
    return sum(1 for u in iter_bits(s) if adj[u] & ~s)


def _grow_boundary(adj: tuple[int, ...], s: int, b: int, v: int) -> tuple[int, int]:
    """(s + v, its boundary) from s and its boundary b; only N[v] can change."""
    t = s | (1 << v)
    b |= 1 << v
    for w in iter_bits((adj[v] | (1 << v)) & b):
        if not adj[w] & ~t:
            b &= ~(1 << w)
    return t, b


def pathwidth_ordering(g: Graph, k: int) -> list[int] | None:
    """A linear ordering of vertex separation <= k, or None if pw(g) > k.

    Prefix-set DFS with memoised dead prefixes. A vertex whose addition does
    not enlarge the boundary is taken without branching (some optimal
    ordering always continues that way).
    """
    if g.n == 0:
        return []
    adj = g._adj
    full = (1 << g.n) - 1
    dead: set[int] = set()
    order: list[int] = []

    def search(s: int, b: int) -> bool:
        if s == full:
            return True
        if s in dead:
            return False
        size = popcount(b)
        steps = []
        for v in iter_bits(full & ~s):
            t, tb = _grow_boundary(adj, s, b, v)
            c = popcount(tb)
            if c <= size:
                steps = [(v, t, tb)]
                break
            if c <= k:
                steps.append((v, t, tb))
        for v, t, tb in steps:
            order.append(v)
            if search(t, tb):
                return True
            order.pop()
        dead.add(s)
        return False

    return order if search(0, 0) else None


def path_decomposition_from_ordering(g: Graph, order: list[int]) -> Decomposition:
    adj = g._adj
    bags = []
    prefix = 0
    for v in order:
        bag = {u for u in iter_bits(prefix) if adj[u] & ~prefix}
        bag.add(v)
        bags.append(frozenset(bag))
        prefix |= 1 << v
    # drop bags contained in a neighbouring bag until the sequence is incomparable
    changed = True
    while changed:
        changed = False
        for i, b in enumerate(bags):
            if (i > 0 and b <= bags[i - 1]) or (i + 1 < len(bags) and b <= bags[i + 1]):
                del bags[i]
                changed = True
                break
    return Decomposition(PATH, bags)


def greedy_pathwidth_upper(g: Graph) -> tuple[int, list[int]]:
    """Greedy vertex-separation ordering: add the vertex keeping the boundary smallest."""
    adj = g._adj
    full = (1 << g.n) - 1
    s = 0
    order = []
    width = 0
    while s != full:
        v = min(iter_bits(full & ~s), key=lambda x: (_boundary(adj, s | (1 << x)), x))
        s |= 1 << v
        order.append(v)
        width = max(width, _boundary(adj, s))
    return width, order


# public API ---------------------------------------------------------------------


def width_at_most(g: Graph, kind: str, k: int) -> bool:
    """Decide tw(g) <= k or pw(g) <= k without computing the exact value."""
    if k >= g.n - 1:
        return True
    if k < 0:
        return g.n == 0
    parts = g.components() if g.n else []
    for comp in parts:
        h = g.induced(comp)
        if kind == TREE:
            if treewidth_ordering(h, k) is None:
                return False
        elif pathwidth_ordering(h, k) is None:
            return False
    return True


def exact_width(g: Graph, kind: str = TREE, cap: int | None = None) -> tuple[int, Decomposition]:
    """Minimum width over all tree (or path) decompositions, with a witness.

    Raises WidthCapExceeded, carrying a heuristic upper bound, when the graph
    is larger than ``cap`` vertices.
    """
    if kind not in (TREE, PATH):
        raise ValueError(f"unknown decomposition kind {kind!r}")
    if cap is None:
        cap = DEFAULT_CAPS[kind]
    if g.n > cap:
        ub = greedy_treewidth_upper(g)[0] if kind == TREE else greedy_pathwidth_upper(g)[0]
        raise WidthCapExceeded(g.n, cap, ub)
    if g.n == 0:
        return -1, Decomposition(kind, [])

    if kind == TREE:
        upper, greedy_order = greedy_treewidth_upper(g)
        lower = max_clique_size(g) - 1
        for k in range(lower, upper):
            order = treewidth_ordering(g, k)
            if order is not None:
                return k, decomposition_from_ordering(g, order)
        order = treewidth_ordering(g, upper)
        return upper, decomposition_from_ordering(g, order)

    upper, _ = greedy_pathwidth_upper(g)
    lower = max_clique_size(g) - 1
    for k in range(lower, upper + 1):
        order = pathwidth_ordering(g, k)
        if order is not None:
            return k, path_decomposition_from_ordering(g, order)
    raise AssertionError("greedy ordering bound was not attained")


def power_width_bound(base_width: int, max_degree: int, k: int) -> int:
    """Width bound for the k-th power: (w + 1) * D^(floor(k/2) + 1), saturating."""
    if base_width < 0 or max_degree < 0 or k < 1:
        raise ValueError("need base_width >= 0, max_degree >= 0, k >= 1")
    exp = k // 2 + 1
    if max_degree >= 2 and exp * max_degree.bit_length() > 70:
        return WIDTH_SATURATION
    return min((base_width + 1) * max_degree**exp, WIDTH_SATURATION)
