"""Reduction rules run before the root search.

Order is fixed: twin deletion (exhaustive), edge labelling, deletion of
irrelevant edges, width cutoff. Each rule either leaves the instance
running or sets a no-answer with a reason code.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from .families import SIMPLICIAL_TWINS, FamilyConfig
from .graph import Edge, Graph, is_simplicial, norm_edge, true_twin_classes
from .width import width_at_most

log = logging.getLogger(__name__)

RUNNING = "running"
NO_ANSWER = "no_answer"

LABEL_CONFLICT = "label-conflict"
MISSING_SQUARE_EDGE = "missing-square-edge"
RED_EDGE_DELETED = "red-edge-deleted"
WIDTH_EXCEEDED = "width-exceeded"


@dataclass(frozen=True)
class TwinDeletion:
    vertex: object
    representative: object
    members: tuple
    rule: str

    def as_dict(self) -> dict:
        return {
            "vertex": self.vertex,
            "representative": self.representative,
            "members": list(self.members),
            "rule": self.rule,
        }


@dataclass
class LabeledInstance:
    """Graph under reduction with its edge labels.

    ``base`` is the twin-reduced graph the labels refer to; ``g`` is the
    current graph (``base`` minus the deleted edges once that rule ran).
    Both use the same dense ids; ``g.labels`` maps them to input vertices.
    """

    base: Graph
    g: Graph
    red: set[Edge] = field(default_factory=set)
    blue: set[Edge] = field(default_factory=set)
    hubs: set[int] = field(default_factory=set)
    deleted: set[Edge] = field(default_factory=set)
    twin_log: list[TwinDeletion] = field(default_factory=list)
    status: str = RUNNING
    reason: str | None = None
    failing_rule: str | None = None
    trace: list[dict] = field(default_factory=list)

    @classmethod
    def start(cls, g: Graph, twin_log=()) -> LabeledInstance:
        return cls(base=g, g=g, twin_log=list(twin_log))

    @property
    def running(self) -> bool:
        return self.status == RUNNING

    def refuse(self, reason: str, rule: str) -> None:
        self.status = NO_ANSWER
        self.reason = reason
        self.failing_rule = rule

    def hub_witnessed(self, x: int, y: int) -> bool:
        """Some hub u has both ux and uy red."""
        return any(norm_edge(u, x) in self.red and norm_edge(u, y) in self.red for u in self.hubs)

    def summary(self) -> dict:
        lab = self.g.label_edges
        return {
            "hubs": sorted(self.g.labels[u] for u in self.hubs),
            "red": [list(e) for e in lab(self.red)],
            "blue": [list(e) for e in lab(self.blue)],
            "deleted": [list(e) for e in lab(self.deleted)],
            "status": self.status,
            "reason": self.reason,
        }


# deleting twins ---------------------------------------------------------------


def reduce_twins(g: Graph, fam: FamilyConfig) -> tuple[Graph, list[TwinDeletion]]:
    """Exhaustively delete the lowest-id member of any large twin class.

    With the simplicial rule only classes of simplicial vertices count (true
    twins share their closed neighbourhood, so a class is simplicial as a
    whole or not at all).
    """
    twin_log: list[TwinDeletion] = []
    threshold = fam.twin_threshold
    while True:
        target = None
        for cls in true_twin_classes(g):
            if len(cls) < threshold:
                continue
            if fam.twin_rule == SIMPLICIAL_TWINS and not is_simplicial(g, cls[0]):
                continue
            target = cls
            break
        if target is None:
            return g, twin_log
        v = target[0]
        twin_log.append(
            TwinDeletion(
                vertex=g.labels[v],
                representative=g.labels[target[1]],
                members=tuple(g.labels[x] for x in target),
                rule=fam.twin_rule,
            )
        )
        g = g.remove_vertex(v)


# labelling ----------------------------------------------------------------------


def neighbor_distances(g: Graph, u: int) -> dict[int, list[float]]:
    """Distances in g - u from every neighbour of u (one BFS per neighbour)."""
    banned = 1 << u
    return {x: g.bfs_distances(x, banned=banned) for x in g.neighbors(u)}


def find_spread_neighbors(
    g: Graph, u: int, count: int, dist: dict[int, list[float]] | None = None
) -> tuple[int, ...] | None:
    """``count`` neighbours of u pairwise at distance >= 3 in g - u, if any.

    Independent-set search in the conflict graph on N(u) (x ~ y when
    dist(x, y) <= 2 in g - u). Candidates are tried in increasing order, so
    the first hit is the lexicographically smallest such set.
    """
    if count not in (3, 5):
        raise ValueError("spread count must be 3 or 5")
    nbrs = g.neighbors(u)
    if len(nbrs) < count:
        return None
    if dist is None:
        dist = neighbor_distances(g, u)
    far = {x: [y for y in nbrs if y != x and dist[x][y] >= 3] for x in nbrs}

    def extend(chosen: list[int], cands: list[int]) -> tuple[int, ...] | None:
        if len(chosen) == count:
            return tuple(chosen)
        for i, x in enumerate(cands):
            if len(chosen) + len(cands) - i < count:
                return None
            fx = far[x]
            rest = [y for y in cands[i + 1:] if y in fx]
            found = extend(chosen + [x], rest)
            if found:
                return found
        return None

    return extend([], list(nbrs))


def label_edges(inst: LabeledInstance, fam: FamilyConfig) -> LabeledInstance:
    """Mark edges at spread hubs red (in every minimal root) or blue (in none)."""
    g = inst.base
    before = {"red": len(inst.red), "blue": len(inst.blue), "hubs": len(inst.hubs)}
    for u in range(g.n):
        dist = neighbor_distances(g, u) if g.degree(u) >= fam.spread_count else None
        if dist is None:
            continue
        spread = find_spread_neighbors(g, u, fam.spread_count, dist)
        if spread is None:
            continue
        inst.hubs.add(u)
        for x in g.neighbors(u):
            e = norm_edge(u, x)
            if any(dist[v][x] >= 3 for v in spread):
                inst.blue.add(e)
            else:
                inst.red.add(e)
        if inst.red & inst.blue:
            inst.refuse(LABEL_CONFLICT, "label_edges")
            break
    inst.trace.append(
        {
            "rule": "label_edges",
            "before": before,
            "after": {"red": len(inst.red), "blue": len(inst.blue), "hubs": len(inst.hubs)},
            "status": inst.status,
        }
    )
    return inst


def delete_irrelevant_edges(inst: LabeledInstance) -> LabeledInstance:
    """Drop edges between red neighbours of a hub that no blue neighbour explains."""
    g = inst.base
    edges_before = inst.g.m
    deleted: set[Edge] = set()
    for u in sorted(inst.hubs):
        if not inst.running:
            break
        reds = [x for x in g.neighbors(u) if norm_edge(u, x) in inst.red]
        blues = [v for v in g.neighbors(u) if norm_edge(u, v) in inst.blue]
        for i, x in enumerate(reds):
            for y in reds[i + 1:]:
                if not g.has_edge(x, y):
                    inst.refuse(MISSING_SQUARE_EDGE, "delete_irrelevant_edges")
                    break
                pair = (1 << x) | (1 << y)
                if not any(g.adj_mask(v) & pair == pair for v in blues):
                    deleted.add(norm_edge(x, y))
                    if norm_edge(x, y) in inst.red:
                        inst.refuse(RED_EDGE_DELETED, "delete_irrelevant_edges")
                        break
            if not inst.running:
                break
    inst.deleted |= deleted
    if inst.running:
        inst.g = inst.base.remove_edges(inst.deleted)
    inst.trace.append(
        {
            "rule": "delete_irrelevant_edges",
            "edges_before": edges_before,
            "edges_after": inst.g.m,
            "deleted": len(inst.deleted),
            "status": inst.status,
        }
    )
    return inst


def width_cutoff_check(inst: LabeledInstance, fam: FamilyConfig) -> LabeledInstance:
    """Refuse when the reduced graph is wider than the family's cutoff.

    Widths never exceed n - 1, so cutoffs at or above that pass without any
    computation; this is always the case for the built-in constants at
    desk scale.
    """
    cutoff = fam.width_cutoff
    checked = False
    if cutoff is not None and cutoff < inst.g.n - 1:
        checked = True
        if not width_at_most(inst.g, fam.width_kind, cutoff):
            inst.refuse(WIDTH_EXCEEDED, "width_cutoff_check")
    inst.trace.append(
        {
            "rule": "width_cutoff_check",
            "kind": fam.width_kind,
            "cutoff": "unlimited" if cutoff is None else cutoff,
            "computed": checked,
            "status": inst.status,
        }
    )
    return inst


def reduce_instance(g: Graph, fam: FamilyConfig, twins: bool = True) -> LabeledInstance:
    """Run every rule in order and return the labelled instance."""
    if twins:
        reduced, twin_log = reduce_twins(g, fam)
    else:
        reduced, twin_log = g, []
    inst = LabeledInstance.start(reduced, twin_log)
    inst.trace.append(
        {
            "rule": "reduce_twins",
            "vertices_before": g.n,
            "vertices_after": reduced.n,
            "edges_before": g.m,
            "edges_after": reduced.m,
            "twin_log": [t.as_dict() for t in twin_log],
            "enabled": twins,
        }
    )
    for step in (label_edges, delete_irrelevant_edges, width_cutoff_check):
        if not inst.running:
            break
        inst = step(inst, fam) if step is not delete_irrelevant_edges else step(inst)
    if inst.status != RUNNING:
        log.debug("reduction refused: %s at %s", inst.reason, inst.failing_rule)
    return inst

