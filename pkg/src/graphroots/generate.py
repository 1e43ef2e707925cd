"""Random family members, their squares, and perturbed near-misses.

All randomness comes from ``random.Random`` seeded with a string built from
(family, n, seed), so every generator is a pure function of its arguments.
"""

from __future__ import annotations

import json
import os
import random
from dataclasses import dataclass
from pathlib import Path

from .edgelist import format_edge_list, read_edge_list
from .families import FAMILY_NAMES, get_family
from .graph import Graph, kth_power
from .oracle import DEFAULT_EDGE_CAP, has_family_root_bruteforce

POSITIVE = "positive"
PERTURBED = "perturbed"
NEGATIVE = "negative"
KINDS = (POSITIVE, PERTURBED)

MANIFEST = "manifest.json"
MANIFEST_VERSION = 1


def _rng(*parts) -> random.Random:
    return random.Random(":".join(str(p) for p in parts))


def _random_tree(n: int, rng: random.Random) -> set[tuple[int, int]]:
    return {(rng.randrange(i), i) for i in range(1, n)}


def _forest(n, rng):
    return _random_tree(n, rng)


def _caterpillar(n, rng):
    spine = rng.randint(1, max(1, (n + 1) // 2))
    edges = {(i - 1, i) for i in range(1, spine)}
    edges |= {(rng.randrange(spine), v) for v in range(spine, n)}
    return edges


def _cactus(n, rng):
    edges = set()
    size = 1
    while size < n:
        v = rng.randrange(size)
        room = n - size
        if room >= 2 and rng.random() < 0.6:
            k = rng.randint(2, min(room, 5))  # new vertices on a cycle of length k + 1
            ring = [v] + list(range(size, size + k))
            edges |= {(min(a, b), max(a, b)) for a, b in zip(ring, ring[1:] + ring[:1])}
            size += k
        else:
            edges.add((v, size))
            size += 1
    return edges


def _triangulated_polygon(n, rng):
    edges = {(i, i + 1) for i in range(n - 1)}
    if n >= 3:
        edges.add((0, n - 1))
    stack = [list(range(n))]
    while stack:
        poly = stack.pop()
        if len(poly) < 4:
            continue
        # cut off a random diagonal from a random corner
        i = rng.randrange(len(poly))
        poly = poly[i:] + poly[:i]
        j = rng.randrange(2, len(poly) - 1)
        a, b = poly[0], poly[j]
        edges.add((min(a, b), max(a, b)))
        stack.append(poly[: j + 1])
        stack.append([poly[0]] + poly[j:])
    return edges


def _connected_after(n, edges, drop) -> bool:
    rest = Graph(n, edges - {drop})
    return rest.is_connected()


def _outerplanar(n, rng):
    edges = _triangulated_polygon(n, rng)
    rate = rng.uniform(0.1, 0.5)
    for e in sorted(edges):
        if rng.random() < rate and _connected_after(n, edges, e):
            edges.discard(e)
    return edges


def _pw2(n, rng):
    if n == 1:
        return set()
    edges = {(0, 1)}
    bag = [0, 1]
    for v in range(2, n):
        if len(bag) == 3:
            bag.pop(rng.randrange(3))
        k = rng.randint(1, len(bag))
        for u in rng.sample(bag, k):
            edges.add((min(u, v), max(u, v)))
        bag.append(v)
    return edges


_BUILDERS = {
    "forest": _forest,
    "caterpillar": _caterpillar,
    "cactus": _cactus,
    "outerplanar": _outerplanar,
    "pw2": _pw2,
}


def gen_family_graph(fam: str, n: int, seed: int) -> Graph:
    """A random connected member of ``fam`` on n vertices, randomly relabelled."""
    if n < 1:
        raise ValueError("n must be at least 1")
    if fam not in _BUILDERS:
        raise KeyError(f"unknown family {fam!r}; choose from {', '.join(FAMILY_NAMES)}")
    rng = _rng("graph", fam, n, seed)
    edges = _BUILDERS[fam](n, rng)
    perm = list(range(n))
    rng.shuffle(perm)
    g = Graph(n, ((perm[u], perm[v]) for u, v in edges))
    if not get_family(fam).is_member(g):
        raise AssertionError(f"generator for {fam} produced a non-member (n={n}, seed={seed})")
    return g


@dataclass(frozen=True)
class Instance:
    name: str
    family: str
    n: int
    seed: int
    kind: str
    square: Graph
    planted_root: Graph | None = None
    label: bool | None = None  # known answer; None when unlabelled

    def check(self) -> None:
        if self.planted_root is not None:
            if kth_power(self.planted_root, 2) != self.square:
                raise AssertionError(f"{self.name}: planted root does not square to the instance")
            if not get_family(self.family).is_member(self.planted_root):
                raise AssertionError(f"{self.name}: planted root is not a {self.family} member")

    def manifest_entry(self) -> dict:
        return {
            "name": self.name,
            "family": self.family,
            "n": self.n,
            "seed": self.seed,
            "kind": self.kind,
            "edges": self.square.m,
            "label": None if self.label is None else ("yes" if self.label else "no"),
            "root": None if self.planted_root is None else f"{self.name}.root",
        }


def gen_instance(
    fam: str, n: int, seed: int, kind: str = POSITIVE, oracle_cap: int = DEFAULT_EDGE_CAP
) -> Instance:
    """A planted-root square, or that square with one random edge flipped.

    Perturbed instances keep no root and are labelled by the oracle when the
    edge count is within ``oracle_cap``; larger ones stay unlabelled.
    """
    if kind not in KINDS:
        raise ValueError(f"kind must be one of {KINDS}")
    root = gen_family_graph(fam, n, seed)
    square = kth_power(root, 2)
    name = f"{fam}-n{n}-s{seed}-{kind}"
    if kind == POSITIVE:
        inst = Instance(name, fam, n, seed, kind, square, root, True)
        inst.check()
        return inst
    rng = _rng("perturb", fam, n, seed)
    non_edges = [(u, v) for u in range(n) for v in range(u + 1, n) if not square.has_edge(u, v)]
    if non_edges and (square.m == 0 or rng.random() < 0.5):
        flipped = square.add_edges([rng.choice(non_edges)])
    elif square.m:
        flipped = square.remove_edges([rng.choice(square.sorted_edges())])
    else:
        flipped = square
    label = None
    if flipped.m <= oracle_cap:
        label = has_family_root_bruteforce(flipped, get_family(fam), cap=oracle_cap)
    return Instance(name, fam, n, seed, kind, flipped, None, label)


# corpora ------------------------------------------------------------------


def write_corpus(directory, instances) -> Path:
    """One edge-list file per instance, roots beside them, and a manifest."""
    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    entries = []
    for inst in sorted(instances, key=lambda i: i.name):
        (out / f"{inst.name}.el").write_text(format_edge_list(inst.square), encoding="utf-8")
        if inst.planted_root is not None:
            (out / f"{inst.name}.root").write_text(
                format_edge_list(inst.planted_root), encoding="utf-8"
            )
        entries.append(inst.manifest_entry())
    manifest = {"version": MANIFEST_VERSION, "instances": entries}
    tmp = out / (MANIFEST + ".tmp")
    tmp.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    os.replace(tmp, out / MANIFEST)
    return out


def read_corpus(directory) -> list[Instance]:
    base = Path(directory)
    manifest = json.loads((base / MANIFEST).read_text(encoding="utf-8"))
    if manifest.get("version") != MANIFEST_VERSION:
        raise ValueError(f"unsupported manifest version {manifest.get('version')!r}")
    out = []
    for e in manifest["instances"]:
        square = read_edge_list(base / f"{e['name']}.el")
        root = read_edge_list(base / e["root"]) if e.get("root") else None
        label = None if e["label"] is None else e["label"] == "yes"
        out.append(Instance(e["name"], e["family"], e["n"], e["seed"], e["kind"], square, root, label))
    return out


def gen_corpus(fam: str, n: int, count: int, seed: int = 0, kind: str = POSITIVE) -> list[Instance]:
    return [gen_instance(fam, n, seed + i, kind) for i in range(count)]
