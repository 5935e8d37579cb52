"""Which triplets a tree or a network displays, plus height and level statistics.

A network displays ``ij|k`` when it has distinct nodes ``u`` and ``v`` with
paths ``u -> i``, ``u -> j``, ``v -> u`` and ``v -> k`` that meet only where a
subdivided triplet forces them to (``u`` for the first three, ``v`` for the
last two).

The exact search fixes ``u`` and a disjoint pair of paths ``u -> i``,
``u -> j``, then asks whether some proper ancestor of ``u`` reaches ``k``
while avoiding those paths. That reachability question is equivalent to the
existence of disjoint ``v -> u`` and ``v -> k`` paths: take any ``w`` reaching
both, paths ``A: w -> u`` and ``B: w -> k``, and let ``v`` be the last node of
``B`` lying on ``A``; acyclicity keeps ``A[v:]`` and ``B[v:]`` apart, and
ancestors of ``u`` can never lie on the paths below ``u``.
"""

from __future__ import annotations

from collections import deque
from itertools import combinations
from typing import Iterable, Union

import networkx as nx

from .model import HeightFunction, PhyloNetwork, PhyloTree, Taxon, Triplet, TripletSet

Rooted = Union[PhyloTree, PhyloNetwork]


class _Index:
    """Reachability data for one network, built once and cached on it."""

    def __init__(self, net: Rooted) -> None:
        order = net.topological_order()
        if order is None:
            raise ValueError("network has a directed cycle")
        self.children = net.children
        self.parents = {v: net.parents(v) for v in net.children}
        self.leaf = net.leaf_nodes()
        self.order = order
        self.below: dict[int, frozenset[int]] = {}
        for v in reversed(order):
            acc = {v}
            for c in self.children[v]:
                acc |= self.below[c]
            self.below[v] = frozenset(acc)
        self.above: dict[int, frozenset[int]] = {}
        for v in order:
            acc = {v}
            for p in self.parents[v]:
                acc |= self.above[p]
            self.above[v] = frozenset(acc)
        self._paths: dict[tuple[int, int], list[tuple[int, ...]]] = {}

    def paths(self, src: int, dst: int) -> list[tuple[int, ...]]:
        key = (src, dst)
        if key not in self._paths:
            if src == dst:
                found = [(dst,)]
            else:
                found = [(src,) + rest for c in self.children[src] if dst in self.below[c] for rest in self.paths(c, dst)]
            self._paths[key] = found
        return self._paths[key]

    def reaches_avoiding(self, target: int, sources: frozenset[int], forbidden: set[int]) -> bool:
        """Whether some node of ``sources`` reaches ``target`` without touching ``forbidden``."""
        if target in sources:
            return True
        seen = {target}
        queue = deque([target])
        while queue:
            x = queue.popleft()
            for p in self.parents[x]:
                if p in seen or p in forbidden:
                    continue
                if p in sources:
                    return True
                seen.add(p)
                queue.append(p)
        return False


def _index(net: Rooted) -> _Index:
    idx = net.__dict__.get("_consistency_index")
    if idx is None:
        idx = _Index(net)
        object.__setattr__(net, "_consistency_index", idx)
    return idx


def _require_taxa(net: Rooted, t: Triplet) -> None:
    missing = t.taxa - net.taxa
    if missing:
        raise KeyError(f"taxa {sorted(missing)} of {t} are not leaves of the network")


def triplet_in_tree(tree: PhyloTree, t: Triplet) -> bool:
    """``ij|k`` holds iff ``lca(i, j)`` lies strictly below ``lca(i, k)``."""
    _require_taxa(tree, t)
    idx = _index(tree)
    i, j, k = idx.leaf[t.left1], idx.leaf[t.left2], idx.leaf[t.right]
    depth = tree.depths()

    def lca(a: int, b: int) -> int:
        common = idx.above[a] & idx.above[b]
        return max(common, key=lambda v: depth[v])

    return depth[lca(i, j)] > depth[lca(i, k)]


def triplet_in_network(net: Rooted, t: Triplet) -> bool:
    """Exact subdivision test for a triplet in a rooted DAG."""
    _require_taxa(net, t)
    idx = _index(net)
    i, j, k = idx.leaf[t.left1], idx.leaf[t.left2], idx.leaf[t.right]
    k_above = idx.above[k]
    for u in idx.order:
        if u in (i, j, k):
            continue
        below = idx.below[u]
        if i not in below or j not in below:
            continue
        proper_above = idx.above[u] - {u}
        if not (proper_above & k_above):
            continue
        paths_i = idx.paths(u, i)
        paths_j = idx.paths(u, j)
        for pi in paths_i:
            used = set(pi)
            for pj in paths_j:
                if any(x in used for x in pj[1:]):
                    continue
                forbidden = used.union(pj)
                if idx.reaches_avoiding(k, proper_above, forbidden):
                    return True
    return False


def triplets_of(net: Rooted) -> TripletSet:
    """Every triplet displayed by ``net``."""
    names = sorted(net.taxa)
    check = triplet_in_tree if isinstance(net, PhyloTree) else triplet_in_network
    out = []
    for a, b, c in combinations(names, 3):
        for t in (Triplet(a, b, c), Triplet(a, c, b), Triplet(b, c, a)):
            if check(net, t):
                out.append(t)
    return TripletSet(out)


def consistent_count(net: Rooted, triplets: Iterable[Triplet]) -> int:
    return sum(1 for t in triplets if triplet_in_network(net, t))


def inconsistent_triplets(net: Rooted, triplets: Iterable[Triplet]) -> list[Triplet]:
    return [t for t in triplets if not triplet_in_network(net, t)]


def root_distances(net: Rooted) -> dict[int, int]:
    """Longest directed path length from the root to each node."""
    idx = _index(net)
    dist: dict[int, int] = {}
    for v in idx.order:
        dist[v] = max((dist[p] + 1 for p in idx.parents[v]), default=0)
    return dist


def lowest_common_ancestors(net: Rooted, a: Taxon, b: Taxon) -> list[int]:
    """Common ancestors of two leaves from which no other common ancestor is reachable."""
    idx = _index(net)
    x, y = idx.leaf[a], idx.leaf[b]
    common = idx.above[x] & idx.above[y]
    return sorted(c for c in common if not any(d != c and d in idx.below[c] for d in common))


def network_height(net: Rooted) -> HeightFunction:
    """``h(i, j) = min(l - d(c))`` over lowest common ancestors ``c``.

    ``d`` is the longest root distance and ``l`` its maximum over leaves.
    """
    dist = root_distances(net)
    leaves = net.leaf_nodes()
    top = max((dist[v] for v in leaves.values()), default=0)
    values = {}
    for a, b in combinations(sorted(leaves), 2):
        values[(a, b)] = min(top - dist[c] for c in lowest_common_ancestors(net, a, b))
    return HeightFunction(values, leaves)


def tree_height(tree: PhyloTree) -> HeightFunction:
    """``h(i, j) = l - depth(lca(i, j))`` with ``l`` the tree's depth."""
    if len(tree.labels) < 2:
        raise ValueError("height function needs at least two leaves")
    depth = tree.depths()
    idx = _index(tree)
    top = max(depth.values())
    leaves = tree.leaf_nodes()
    values = {}
    for a, b in combinations(sorted(leaves), 2):
        common = idx.above[leaves[a]] & idx.above[leaves[b]]
        values[(a, b)] = top - max(depth[c] for c in common)
    return HeightFunction(values, leaves)


def reticulation_count(net: Rooted) -> int:
    return sum(1 for v in net.children if len(net.parents(v)) >= 2)


def level(net: Rooted) -> int:
    """Largest number of reticulations inside one biconnected component."""
    g = nx.Graph()
    g.add_nodes_from(net.children)
    g.add_edges_from(net.edges)
    best = 0
    for comp_edges in nx.biconnected_component_edges(g):
        edge_set = {frozenset(e) for e in comp_edges}
        count = 0
        for v in {x for e in comp_edges for x in e}:
            ps = net.parents(v)
            if len(ps) >= 2 and all(frozenset((p, v)) in edge_set for p in ps):
                count += 1
        best = max(best, count)
    return best
