"""Subgraph-closed graph families and the pipeline parameters each one uses."""

from __future__ import annotations

import warnings
from functools import lru_cache
from dataclasses import dataclass, replace
from typing import Callable

from .graph import Graph, biconnected_blocks
from .minors import has_k23_minor, has_k4_minor
from .width import PATH, TREE, WIDTH_SATURATION, power_width_bound, width_at_most

SIMPLICIAL_TWINS = "simplicial-twins"
ALL_TWINS = "all-twins"

DEFAULT_C1 = 10
OUTERPLANAR_TWIN_THRESHOLD = 8
OUTERPLANAR_WIDTH_CUTOFF = power_width_bound(2, 42, 4)  # 3 * 42^3
# pw2 labels hubs with three spread neighbours by default, which the spider
# trace requires; five is the count with a written proof (pass spread_count=5)
PW2_SPREAD_COUNT = 3
PW2_PROVEN_SPREAD_COUNT = 5


def is_forest(g: Graph) -> bool:
    return g.m == g.n - len(g.components())


@lru_cache(maxsize=1 << 16)
def _outerplanar_block(edges: frozenset) -> bool:
    verts = sorted({v for e in edges for v in e})
    if len(edges) > 2 * len(verts) - 3:
        return False
    index = {v: i for i, v in enumerate(verts)}
    h = Graph(len(verts), ((index[a], index[b]) for a, b in edges))
    return not has_k4_minor(h) and not has_k23_minor(h)


def is_outerplanar(g: Graph) -> bool:
    """No K4 and no K_{2,3} minor.

    Both patterns are 2-connected, so each biconnected block is tested on
    its own; block verdicts are memoised because the root search re-tests
    graphs that differ in a single block.
    """
    if g.n >= 2 and g.m > 2 * g.n - 3:
        return False
    for block in biconnected_blocks(g):
        if len(block) >= 6 and not _outerplanar_block(frozenset(block)):
            return False
    return True


def is_cactus(g: Graph) -> bool:
    """Every block is a bridge or a cycle (each edge on at most one cycle)."""
    for block in biconnected_blocks(g):
        if len(block) > 1:
            verts = {v for e in block for v in e}
            if len(block) != len(verts):
                return False
    return True


def is_caterpillar_forest(g: Graph) -> bool:
    """Forest in which removing the leaves of each tree leaves a path (or nothing)."""
    if not is_forest(g):
        return False
    for v in range(g.n):
        inner = sum(1 for w in g.neighbors(v) if g.degree(w) >= 2)
        if g.degree(v) >= 2 and inner > 2:
            return False
    return True


def has_pathwidth_at_most_2(g: Graph) -> bool:
    if g.n <= 3:
        return True
    if g.m > 2 * g.n - 3 or has_k4_minor(g):
        return False
    return width_at_most(g, PATH, 2)


def pw2_constants(c1: int) -> tuple[int, int, int]:
    """(c2, c3, c4) derived from the twin bound c1; c4 saturates."""
    c2 = 6 * 21 * (c1 + 2)
    c3 = 15 * c1 + 4
    c4 = power_width_bound(2, c2 - 1, c3 + 1)
    return c2, c3, c4


@dataclass(frozen=True)
class FamilyConfig:
    """A subgraph-closed family plus the reduction parameters it runs with.

    ``width_cutoff`` of None means unlimited. ``check_interval`` controls how
    often the root search re-tests membership of its partial edge set.
    """

    name: str
    predicate: Callable[[Graph], bool]
    spread_count: int
    twin_rule: str
    twin_threshold: int
    width_kind: str
    width_cutoff: int | None
    check_interval: int = 1
    c1: int | None = None
    experimental_twins: bool = False

    def is_member(self, g: Graph) -> bool:
        return self.predicate(g)

    def with_overrides(self, *, twin_threshold=None, width_cutoff="keep", spread_count=None) -> FamilyConfig:
        cfg = self
        if spread_count is not None:
            if spread_count not in (3, 5):
                raise ValueError("spread count must be 3 or 5")
            cfg = replace(cfg, spread_count=spread_count)
        if twin_threshold is not None:
            cfg = replace(cfg, twin_threshold=twin_threshold)
            if cfg.twin_rule == ALL_TWINS and cfg.c1 is not None and twin_threshold < cfg.c1 + 1:
                cfg = replace(cfg, experimental_twins=True)
        if width_cutoff != "keep":
            cfg = replace(cfg, width_cutoff=width_cutoff)
        return cfg


def is_member(fam: FamilyConfig, g: Graph) -> bool:
    return fam.predicate(g)


def outerplanar_family() -> FamilyConfig:
    return FamilyConfig(
        name="outerplanar",
        predicate=is_outerplanar,
        spread_count=3,
        twin_rule=SIMPLICIAL_TWINS,
        twin_threshold=OUTERPLANAR_TWIN_THRESHOLD,
        width_kind=TREE,
        width_cutoff=OUTERPLANAR_WIDTH_CUTOFF,
    )


def pw2_family(c1: int = DEFAULT_C1) -> FamilyConfig:
    c4 = pw2_constants(c1)[2]
    return FamilyConfig(
        name="pw2",
        predicate=has_pathwidth_at_most_2,
        spread_count=PW2_SPREAD_COUNT,
        twin_rule=ALL_TWINS,
        twin_threshold=c1 + 1,
        width_kind=PATH,
        width_cutoff=c4,
        c1=c1,
        experimental_twins=c1 < DEFAULT_C1,
    )


def builtin_families(c1: int = DEFAULT_C1) -> dict[str, FamilyConfig]:
    outer = outerplanar_family()
    pw2 = pw2_family(c1)
    return {
        "outerplanar": outer,
        "pw2": pw2,
        "forest": replace(outer, name="forest", predicate=is_forest),
        "cactus": replace(outer, name="cactus", predicate=is_cactus),
        "caterpillar": replace(pw2, name="caterpillar", predicate=is_caterpillar_forest),
    }


FAMILY_NAMES = ("outerplanar", "pw2", "forest", "cactus", "caterpillar")


def get_family(
    name: str,
    c1: int | None = None,
    twin_threshold: int | None = None,
    width_cutoff: int | None | str = "keep",
    spread_count: int | None = None,
) -> FamilyConfig:
    fams = builtin_families(DEFAULT_C1 if c1 is None else c1)
    if name not in fams:
        raise KeyError(f"unknown family {name!r}; choose from {', '.join(FAMILY_NAMES)}")
    return fams[name].with_overrides(
        twin_threshold=twin_threshold, width_cutoff=width_cutoff, spread_count=spread_count
    )


def degree_capped(base: FamilyConfig, max_degree: int, twin_threshold: int) -> FamilyConfig:
    """Members of ``base`` with maximum degree at most ``max_degree``.

    Such families are not closed under adding pendant vertices, so the
    plain twin-deletion rule is not known to be safe for them; the caller
    has to choose the threshold and results should be checked with the
    oracle.
    """
    warnings.warn(
        f"degree-capped family: twin threshold {twin_threshold} is user-supplied and unverified",
        stacklevel=2,
    )
    pred = base.predicate

    def predicate(g: Graph) -> bool:
        return g.max_degree() <= max_degree and pred(g)

    return replace(
        base,
        name=f"{base.name}-deg{max_degree}",
        predicate=predicate,
        twin_threshold=twin_threshold,
        experimental_twins=True,
    )

