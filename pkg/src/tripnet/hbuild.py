"""Trees from height functions, and networks realizing arbitrary height functions."""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Mapping

from .consistency import tree_height
from .model import HeightFunction, PhyloNetwork, PhyloTree, Taxon

__all__ = ["tree_height", "hbuild", "split_at_max", "realize_height"]


def _components(nodes: list[Taxon], edges: Iterable[tuple[Taxon, Taxon]]) -> list[list[Taxon]]:
    parent = {x: x for x in nodes}

    def find(x: Taxon) -> Taxon:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in edges:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    groups: dict[Taxon, list[Taxon]] = {}
    for x in nodes:
        groups.setdefault(find(x), []).append(x)
    return sorted((sorted(g) for g in groups.values()), key=lambda g: g[0])


def split_at_max(weights: Mapping[tuple[Taxon, Taxon], int], nodes: Iterable[Taxon], below: int | None = None) -> tuple[int | None, list[list[Taxon]]]:
    """Drop the heaviest surviving edges among ``nodes`` and return the components.

    Only edges lighter than ``below`` survive from earlier rounds. Returns the
    weight that was removed (None when no edge is left) and the components;
    a single component means the removal left the graph connected.
    """
    members = sorted(nodes)
    pairs = [p for p in combinations(members, 2) if below is None or weights[p] < below]
    if not pairs:
        return None, [[x] for x in members]
    top = max(weights[p] for p in pairs)
    return top, _components(members, (p for p in pairs if weights[p] < top))


def hbuild(h: HeightFunction, taxa: Iterable[Taxon] | None = None) -> PhyloTree | None:
    """Rebuild a tree from a height function, or None if none is produced.

    Repeatedly removes the heaviest remaining edges of the complete weighted
    graph; each disconnection becomes an internal node whose children are the
    resulting components, which keep only the edges lighter than the removed
    weight. The build fails as soon as a removal leaves some component
    connected.
    """
    names = sorted(taxa) if taxa is not None else list(h.taxa)
    if not names:
        raise ValueError("hbuild needs at least one taxon")
    children: dict[int, tuple[int, ...]] = {}
    labels: dict[int, str] = {}
    counter = iter(range(1 << 30))

    def build(members: list[Taxon], below: int | None) -> int | None:
        v = next(counter)
        if len(members) == 1:
            labels[v] = members[0]
            children[v] = ()
            return v
        top, parts = split_at_max(h, members, below)
        if len(parts) == 1:
            return None
        kids = []
        for part in parts:
            c = build(part, top)
            if c is None:
                return None
            kids.append(c)
        children[v] = tuple(kids)
        return v

    root = build(names, None)
    if root is None:
        return None
    return PhyloTree(children, labels, root)


def realize_height(h: HeightFunction) -> PhyloNetwork:
    """A (non-binary) network whose height function is exactly ``h``.

    Pairs at the maximum value hang directly from the root. Every other pair
    ``x, y`` gets its own chain of ``max - h(x, y)`` edges from the root, with
    ``x`` and ``y`` both attached below the chain's last node. When the
    smallest value exceeds 1 a single-child chain of length ``max`` is added
    above one leaf, so the deepest leaf sits at depth ``max`` and the network
    height reproduces ``h`` exactly.
    """
    taxa = list(h.taxa)
    children: dict[int, list[int]] = {0: []}
    labels: dict[int, str] = {}
    leaf = {}
    for n, name in enumerate(taxa, start=1):
        leaf[name] = n
        labels[n] = name
        children[n] = []
    next_id = len(taxa) + 1

    def add_edge(u: int, v: int) -> None:
        if v not in children[u]:
            children[u].append(v)

    def chain(length: int) -> int:
        nonlocal next_id
        tip = 0
        for _ in range(length):
            node = next_id
            next_id += 1
            children[node] = []
            add_edge(tip, node)
            tip = node
        return tip

    if len(taxa) == 1:
        add_edge(0, leaf[taxa[0]])
    top = h.max_value()
    for (x, y), value in h.items():
        tip = chain(top - value)
        add_edge(tip, leaf[x])
        add_edge(tip, leaf[y])
    if len(taxa) >= 2 and h.min_value() > 1:
        tip = chain(top - 1)
        add_edge(tip, leaf[taxa[0]])
    return PhyloNetwork({u: tuple(cs) for u, cs in children.items()}, labels, 0, relaxed=True)
