"""Root search on the reduced instance and the end-to-end solver.

After reduction the remaining question is whether some edge set L of the
reduced graph G' satisfies:

(i)   every red edge is in L and no blue edge is;
(ii)  every edge of G' is in L or joins the two ends of a 2-path in L;
(iii) every 2-path x-z-y in L closes in G' or is explained by a hub u
      with ux and uy red;
(iv)  the graph (V, L) belongs to the family.

``search_edge_set`` finds such an L by backtracking with propagation.
Condition (iii) is a binary conflict between edges sharing an endpoint;
condition (ii) is a cover constraint: each G'-edge keeps a count of its
still-possible covers (the edge itself or a 2-path), and one remaining
cover is forced in. Interchangeable true twins are handled by lex-leader
constraints, so only one assignment per twin permutation is explored.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field

from .families import ALL_TWINS, FamilyConfig
from .graph import Edge, Graph, kth_power, norm_edge, true_twin_classes
from .reduction import LabeledInstance, TwinDeletion, reduce_instance

UNDECIDED, IN, OUT = 0, 1, -1

DEFAULT_TIMEOUT = 30.0

YES = "yes"
NO = "no"
UNKNOWN = "unknown"


class SearchTimeout(Exception):
    pass


class ReconstructionFailed(Exception):
    pass


@dataclass
class SearchStats:
    nodes_expanded: int = 0
    family_checks: int = 0


class _Conflict(Exception):
    pass


class _Search:
    def __init__(self, inst: LabeledInstance, fam: FamilyConfig, deadline: float | None, stats: SearchStats):
        self.inst = inst
        self.fam = fam
        self.deadline = deadline
        self.stats = stats
        gp = inst.g
        self.n = gp.n
        self.edges = gp.sorted_edges()
        index = {e: i for i, e in enumerate(self.edges)}
        self.index = index
        m = len(self.edges)

        witnessed = set()
        for u in inst.hubs:
            reds = [x for x in inst.base.neighbors(u) if norm_edge(u, x) in inst.red]
            for i, x in enumerate(reds):
                for y in reds[i + 1:]:
                    witnessed.add(norm_edge(x, y))

        # (iii): edges sharing an endpoint whose far ends may not form a 2-path
        conflicts: list[list[int]] = [[] for _ in range(m)]
        for z in range(self.n):
            inc = [(w, index[norm_edge(z, w)]) for w in gp.neighbors(z)]
            for a in range(len(inc)):
                x, ex = inc[a]
                for b in range(a + 1, len(inc)):
                    y, ey = inc[b]
                    if not gp.has_edge(x, y) and norm_edge(x, y) not in witnessed:
                        conflicts[ex].append(ey)
                        conflicts[ey].append(ex)
        self.conflicts = conflicts

        # (ii): covers of each G'-edge
        cover_edges: list[tuple[int, ...]] = []
        cover_target: list[int] = []
        edge_covers: list[list[int]] = [[] for _ in range(m)]
        target_covers: list[list[int]] = [[] for _ in range(m)]
        for t, (x, y) in enumerate(self.edges):
            options = [(t,)]
            common = gp.adj_mask(x) & gp.adj_mask(y)
            z_list = [z for z in range(self.n) if common >> z & 1]
            for z in z_list:
                options.append((index[norm_edge(x, z)], index[norm_edge(z, y)]))
            for opt in options:
                c = len(cover_edges)
                cover_edges.append(opt)
                cover_target.append(t)
                target_covers[t].append(c)
                for e in opt:
                    edge_covers[e].append(c)
        self.cover_edges = cover_edges
        self.cover_target = cover_target
        self.edge_covers = edge_covers
        self.target_covers = target_covers

        # symmetry breaking: swapping two twins is an automorphism of the
        # whole instance, so only lex-leader assignments need exploring
        self.twin_chains = self._symmetric_twins(inst, witnessed)
        self.swap_pairs = []
        for chain in self.twin_chains:
            for i, a in enumerate(chain):
                for b in chain[i + 1:]:
                    pairs = []
                    for w in range(self.n):
                        if w in (a, b) or not gp.has_edge(a, w):
                            continue
                        ea, eb = index[norm_edge(a, w)], index[norm_edge(b, w)]
                        pairs.append((ea, eb) if ea < eb else (eb, ea))
                    pairs.sort()
                    self.swap_pairs.append(pairs)

    def _symmetric_twins(self, inst: LabeledInstance, witnessed: set[Edge]) -> list[tuple[int, ...]]:
        """True-twin classes of G' whose swaps also preserve labels and witnesses."""
        chains = []
        for cls in true_twin_classes(inst.g):
            if len(cls) < 2:
                continue
            keep = [cls[0]]
            for t in cls[1:]:
                swap = {keep[0]: t, t: keep[0]}
                if all(
                    {norm_edge(swap.get(a, a), swap.get(b, b)) for a, b in es} == es
                    for es in (inst.red, inst.blue, witnessed)
                ):
                    keep.append(t)
            if len(keep) >= 2:
                chains.append(tuple(keep))
        return chains

    def _symmetry_forced(self, val):
        """Assignments implied by the lex-leader constraints, or None on a violation."""
        forced = []
        for pairs in self.swap_pairs:
            for e1, e2 in pairs:
                v1, v2 = val[e1], val[e2]
                if v1 == v2:
                    if v1 == UNDECIDED:
                        break
                    continue
                if v1 == OUT:
                    if v2 == IN:
                        return None
                    forced.append((e2, OUT))
                elif v2 == IN:
                    forced.append((e1, IN))
                break
        return forced

    # state: (val, dead, nin, live, sat, in_count)
    def initial_state(self):
        m = len(self.edges)
        nc = len(self.cover_edges)
        state = [
            [UNDECIDED] * m,
            [False] * nc,
            [0] * nc,
            [len(self.target_covers[t]) for t in range(m)],
            [0] * m,
            [0],
        ]
        forced = [(self.index[e], IN) for e in sorted(self.inst.red) if e in self.index]
        forced += [(self.index[e], OUT) for e in sorted(self.inst.blue) if e in self.index]
        # red edges deleted from G' cannot be in L; the reductions already refuse that case
        self.propagate(state, forced)
        return state

    def propagate(self, state, queue: list[tuple[int, int]]) -> None:
        val, dead, nin, live, sat, in_count = state
        cover_edges = self.cover_edges
        cover_target = self.cover_target
        while queue:
            e, v = queue.pop()
            if val[e] == v:
                continue
            if val[e] == -v:
                raise _Conflict
            val[e] = v
            if v == IN:
                in_count[0] += 1
                for f in self.conflicts[e]:
                    if val[f] == IN:
                        raise _Conflict
                    if val[f] == UNDECIDED:
                        queue.append((f, OUT))
                for c in self.edge_covers[e]:
                    if not dead[c]:
                        nin[c] += 1
                        if nin[c] == len(cover_edges[c]):
                            sat[cover_target[c]] += 1
            else:
                for c in self.edge_covers[e]:
                    if dead[c]:
                        continue
                    dead[c] = True
                    t = cover_target[c]
                    live[t] -= 1
                    if sat[t]:
                        continue
                    if live[t] == 0:
                        raise _Conflict
                    if live[t] == 1:
                        for c2 in self.target_covers[t]:
                            if not dead[c2]:
                                queue.extend((f, IN) for f in cover_edges[c2] if val[f] != IN)
                                break

    def in_graph(self, val) -> Graph:
        return Graph(self.n, (self.edges[i] for i, s in enumerate(val) if s == IN))

    def member(self, val) -> bool:
        self.stats.family_checks += 1
        return self.fam.is_member(self.in_graph(val))

    def run(self) -> frozenset[Edge] | None:
        try:
            state = self.initial_state()
        except _Conflict:
            return None
        if not self.member(state[0]):
            return None
        return self._dfs(state, state[5][0])

    def _dfs(self, state, checked_at: int) -> frozenset[Edge] | None:
        stats = self.stats
        stats.nodes_expanded += 1
        if self.deadline is not None and stats.nodes_expanded % 64 == 1 and time.monotonic() > self.deadline:
            raise SearchTimeout
        val, dead, nin, live, sat, in_count = state
        while self.swap_pairs:
            forced = self._symmetry_forced(val)
            if forced is None:
                return None
            if not forced:
                break
            try:
                self.propagate(state, forced)
            except _Conflict:
                return None
        if in_count[0] - checked_at >= self.fam.check_interval:
            if not self.member(val):
                return None
            checked_at = in_count[0]

        # uncovered G'-edge with the fewest remaining covers
        best_t = -1
        best_live = 1 << 30
        for t in range(len(self.edges)):
            if not sat[t] and live[t] < best_live:
                best_t, best_live = t, live[t]
        if best_t < 0:
            if in_count[0] != checked_at and not self.member(val):
                return None
            return frozenset(self.edges[i] for i, s in enumerate(val) if s == IN)

        branch_edge = -1
        for c in self.target_covers[best_t]:
            if dead[c]:
                continue
            for f in self.cover_edges[c]:
                if val[f] == UNDECIDED:
                    branch_edge = f
                    break
            if branch_edge >= 0:
                break

        for choice in (IN, OUT):
            child = [list(val), list(dead), list(nin), list(live), list(sat), [in_count[0]]]
            try:
                self.propagate(child, [(branch_edge, choice)])
            except _Conflict:
                continue
            found = self._dfs(child, checked_at)
            if found is not None:
                return found
        return None


def search_edge_set(
    inst: LabeledInstance,
    fam: FamilyConfig,
    deadline: float | None = None,
    stats: SearchStats | None = None,
) -> frozenset[Edge] | None:
    """An edge set L of the reduced graph meeting conditions (i)-(iv), or None.

    Raises SearchTimeout once ``deadline`` (a ``time.monotonic`` value) passes.
    """
    if not inst.running:
        raise ValueError("instance was already refused by a reduction rule")
    return _Search(inst, fam, deadline, stats or SearchStats()).run()


def condition_violations(inst: LabeledInstance, fam: FamilyConfig, edge_set) -> list[str]:
    """Re-check (i)-(iv) for a candidate edge set directly, outside the search."""
    gp = inst.g
    L = {norm_edge(*e) for e in edge_set}
    out = []
    if not L <= gp.edges:
        return ["edge set is not inside the reduced graph"]
    if not inst.red <= L or inst.blue & L:
        out.append("(i) red/blue labels violated")
    h = Graph(gp.n, L)
    for x, y in gp.sorted_edges():
        if (x, y) not in L and not (h.adj_mask(x) & h.adj_mask(y)):
            out.append(f"(ii) edge {x}-{y} uncovered")
    for z in range(gp.n):
        nb = h.neighbors(z)
        for i, x in enumerate(nb):
            for y in nb[i + 1:]:
                if not gp.has_edge(x, y) and not inst.hub_witnessed(x, y):
                    out.append(f"(iii) 2-path {x}-{z}-{y} neither closes nor is hub-witnessed")
    if not fam.is_member(h):
        out.append("(iv) not a family member")
    return out


def minimalize_root(h: frozenset[Edge] | set[Edge], g: Graph, fam: FamilyConfig) -> frozenset[Edge]:
    """Drop edges in lexicographic order while the square stays g.

    One pass suffices: an edge that is needed stays needed after later
    removals, because removing edges only shrinks the square.
    """
    root = Graph(g.n, h)
    if kth_power(root, 2) != g or not fam.is_member(root):
        raise ValueError("minimalize_root needs a family root of g")
    keep = set(root.edges)
    for e in sorted(root.edges):
        trial = Graph(g.n, keep - {e})
        if kth_power(trial, 2) == g:
            keep.discard(e)
    return frozenset(keep)


def reattach_twins(
    root: set[tuple],
    twin_log: list[TwinDeletion],
    g: Graph,
    fam: FamilyConfig,
) -> set[tuple]:
    """Undo twin deletions on a root given over labels of ``g``.

    ``root`` is a root of ``g`` restricted to the vertices that survived the
    twin rule. Deletions are replayed in reverse; each deleted vertex goes
    next to a pendant twin's neighbour, or (all-twins rule) onto the common
    neighbours of three degree-2 twins. Every step is verified.
    """
    index = {lab: i for i, lab in enumerate(g.labels)}
    present = set(g.labels)
    for d in twin_log:
        present.discard(d.vertex)
    edges = {norm_edge(index[a], index[b]) for a, b in root}

    for d in reversed(twin_log):
        u = index[d.vertex]
        verts = sorted(index[lab] for lab in present)
        sub_before = g.induced(verts)
        pos = {v: i for i, v in enumerate(verts)}
        # minimal root of the current graph before looking for the pattern
        local = {norm_edge(pos[a], pos[b]) for a, b in edges}
        local = minimalize_root(local, sub_before, fam)
        edges = {norm_edge(verts[a], verts[b]) for a, b in local}
        nb: dict[int, set[int]] = {v: set() for v in verts}
        for a, b in edges:
            nb[a].add(b)
            nb[b].add(a)

        twins = [index[lab] for lab in d.members if lab in present and lab != d.vertex]
        candidates: list[set[tuple]] = []
        for w in twins:
            if len(nb[w]) == 1:
                (v,) = nb[w]
                candidates.append({norm_edge(u, v)})
        if fam.twin_rule == ALL_TWINS:
            by_pair: dict[frozenset, list[int]] = {}
            for w in twins:
                if len(nb[w]) == 2:
                    by_pair.setdefault(frozenset(nb[w]), []).append(w)
            for pair, group in sorted(by_pair.items(), key=lambda kv: sorted(kv[0])):
                independent = [w for w in group if not (nb[w] & set(group))]
                if len(independent) >= 3:
                    candidates.append({norm_edge(u, p) for p in pair})

        new_verts = sorted(verts + [u])
        sub_after = g.induced(new_verts)
        npos = {v: i for i, v in enumerate(new_verts)}
        for extra in candidates:
            trial = edges | extra
            h = Graph(len(new_verts), ((npos[a], npos[b]) for a, b in trial))
            if kth_power(h, 2) == sub_after and fam.is_member(h):
                edges = trial
                break
        else:
            raise ReconstructionFailed(f"no pendant or degree-2 twin pattern for vertex {d.vertex!r}")
        present.add(d.vertex)

    return {tuple(sorted((g.labels[a], g.labels[b]))) for a, b in edges}


# end-to-end solver -------------------------------------------------------------


@dataclass
class SolveOutcome:
    answer: str
    family: str
    root: list[tuple] | None = None
    reason: str | None = None
    failing_rule: str | None = None
    stats: SearchStats = field(default_factory=SearchStats)
    trail: list[dict] = field(default_factory=list)

    @property
    def is_yes(self) -> bool:
        return self.answer == YES

    def to_json(self) -> dict:
        out = {
            "answer": self.answer,
            "root_edges": None if self.root is None else [list(e) for e in self.root],
            "family": self.family,
            "stats": {"nodes_expanded": self.stats.nodes_expanded, "rule_trace": self.trail},
        }
        if self.reason is not None:
            out["reason"] = self.reason
        if self.failing_rule is not None:
            out["failing_rule"] = self.failing_rule
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


@dataclass
class _ComponentResult:
    answer: str
    root: set[tuple] | None
    trace: dict
    reason: str | None = None
    failing_rule: str | None = None


def _solve_component(comp: Graph, fam: FamilyConfig, deadline: float | None, stats: SearchStats, twins: bool = True) -> _ComponentResult:
    trace: dict = {"vertices": list(comp.labels), "twin_rule_enabled": twins}
    if comp.n == 1:
        trace["rules"] = []
        return _ComponentResult(YES, set(), trace)

    inst = reduce_instance(comp, fam, twins=twins)
    trace["rules"] = inst.trace
    trace["labels"] = inst.summary()
    if not inst.running:
        return _ComponentResult(NO, None, trace, inst.reason, inst.failing_rule)

    before = stats.nodes_expanded
    try:
        found = search_edge_set(inst, fam, deadline, stats)
    except SearchTimeout:
        trace["search"] = {"nodes_expanded": stats.nodes_expanded - before, "result": "timeout"}
        return _ComponentResult(UNKNOWN, None, trace, "search-timeout", "search_edge_set")
    trace["search"] = {
        "nodes_expanded": stats.nodes_expanded - before,
        "result": "found" if found is not None else "none",
    }
    if found is None:
        return _ComponentResult(NO, None, trace, "no-edge-set", "search_edge_set")

    base = inst.base
    if kth_power(Graph(base.n, found), 2) != base:
        raise RuntimeError("edge set from the search is not a root of the reduced graph")
    minimal = minimalize_root(found, base, fam)
    root = set(base.label_edges(minimal))
    if inst.twin_log:
        try:
            root = reattach_twins(root, inst.twin_log, comp, fam)
            trace["reattach"] = "ok"
        except ReconstructionFailed as exc:
            trace["reattach"] = f"failed: {exc}; rerunning without twin deletion"
            retry = _solve_component(comp, fam, deadline, stats, twins=False)
            retry.trace = {**trace, "fallback": retry.trace}
            return retry
    return _ComponentResult(YES, root, trace)


def solve(g: Graph, fam: FamilyConfig, timeout: float | None = DEFAULT_TIMEOUT) -> SolveOutcome:
    """Decide whether g has a square root in ``fam``; yes-answers carry a verified root.

    Components are solved independently (the square of a disjoint union is
    the disjoint union of the squares). ``timeout`` applies per component.
    """
    stats = SearchStats()
    trail = []
    roots: set[tuple] = set()
    unknown = None
    for comp_vertices in g.components():
        comp = g.induced(comp_vertices)
        deadline = None if timeout is None else time.monotonic() + timeout
        res = _solve_component(comp, fam, deadline, stats)
        trail.append(res.trace)
        if res.answer == NO:
            return SolveOutcome(NO, fam.name, None, res.reason, res.failing_rule, stats, trail)
        if res.answer == UNKNOWN:
            unknown = res
            continue
        roots |= res.root
    if unknown is not None:
        return SolveOutcome(UNKNOWN, fam.name, None, unknown.reason, unknown.failing_rule, stats, trail)

    index = {lab: i for i, lab in enumerate(g.labels)}
    h = Graph(g.n, ((index[a], index[b]) for a, b in roots))
    if kth_power(h, 2) != g or not fam.is_member(h):
        raise RuntimeError("solver produced a root that fails verification")
    return SolveOutcome(YES, fam.name, g.label_edges(h.edges), stats=stats, trail=trail)
