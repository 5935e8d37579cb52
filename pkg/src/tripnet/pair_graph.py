"""The directed graph on taxon pairs induced by a triplet set.

Every triplet ``ij|k`` contributes the edges ``ij -> ik`` and ``ij -> jk``.
Edges carry the set of triplets that support them.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

import networkx as nx

from .model import HeightFunction, Pair, Taxon, Triplet, TripletSet, pair


class CycleError(ValueError):
    """Raised when an acyclic pair graph is required but a cycle exists."""


@dataclass(frozen=True)
class RemovedEdge:
    source: Pair
    target: Pair
    support: frozenset[Triplet]


class PairGraph:
    """Directed graph on all unordered pairs of a taxon set."""

    def __init__(self, graph: nx.DiGraph, taxa: Iterable[Taxon]) -> None:
        self._g = graph
        self.taxa = tuple(sorted(taxa))

    @property
    def graph(self) -> nx.DiGraph:
        return self._g

    @property
    def nodes(self) -> list[Pair]:
        return sorted(self._g.nodes)

    @property
    def edges(self) -> list[tuple[Pair, Pair]]:
        return sorted(self._g.edges)

    def support(self, source: Pair, target: Pair) -> frozenset[Triplet]:
        return self._g.edges[source, target]["support"]

    def copy(self) -> "PairGraph":
        g = nx.DiGraph()
        g.add_nodes_from(self._g.nodes)
        for u, v, data in self._g.edges(data=True):
            g.add_edge(u, v, support=data["support"])
        return PairGraph(g, self.taxa)

    def to_dot(self) -> str:
        lines = ["digraph G_tau {"]
        for a, b in self.nodes:
            lines.append(f'  "{a},{b}";')
        for (a, b), (c, d) in self.edges:
            label = " ".join(str(t) for t in sorted(self.support((a, b), (c, d))))
            lines.append(f'  "{a},{b}" -> "{c},{d}" [label="{label}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def build_pair_graph(triplets: TripletSet, taxa: Iterable[Taxon] | None = None) -> PairGraph:
    """Build the pair graph; ``taxa`` may add taxa that occur in no triplet."""
    names = set(triplets.taxa) | set(taxa or ())
    g = nx.DiGraph()
    g.add_nodes_from(combinations(sorted(names), 2))
    for t in triplets:
        src = t.cherry
        for tgt in (pair(t.left1, t.right), pair(t.left2, t.right)):
            if g.has_edge(src, tgt):
                g.edges[src, tgt]["support"] = g.edges[src, tgt]["support"] | {t}
            else:
                g.add_edge(src, tgt, support=frozenset({t}))
    return PairGraph(g, names)


def is_dag(graph: PairGraph) -> bool:
    return nx.is_directed_acyclic_graph(graph.graph)


def _shortest_cycle(g: nx.DiGraph) -> list[Pair] | None:
    """A shortest directed cycle inside the first nontrivial strongly connected component."""
    components = [sorted(c) for c in nx.strongly_connected_components(g) if len(c) > 1]
    if not components:
        return None
    component = min(components)
    members = set(component)
    best: list[Pair] | None = None
    for start in component:
        # BFS from start back to start, staying inside the component
        prev = {start: None}
        queue = deque([start])
        found = None
        while queue and found is None:
            u = queue.popleft()
            for v in sorted(g.successors(u)):
                if v not in members:
                    continue
                if v == start:
                    found = u
                    break
                if v not in prev:
                    prev[v] = u
                    queue.append(v)
        if found is None:
            continue
        cycle = [found]
        while cycle[-1] != start:
            cycle.append(prev[cycle[-1]])
        cycle.reverse()
        if best is None or len(cycle) < len(best):
            best = cycle
            if len(best) == 2:
                break
    return best


def eades_order(g: nx.DiGraph) -> dict[Pair, int]:
    """Vertex positions from the Eades-Lin-Smyth greedy feedback-arc-set ordering.

    Sinks go to the back, sources to the front, otherwise the vertex with
    the largest out-degree minus in-degree goes to the front. Ties resolve by
    node order. Edges pointing backward in this order form a feedback arc set.
    """
    g = g.copy()
    front: list[Pair] = []
    back: list[Pair] = []
    while g:
        changed = True
        while changed:
            changed = False
            for v in sorted(g):
                if g.out_degree(v) == 0:
                    back.append(v)
                    g.remove_node(v)
                    changed = True
            for v in sorted(g):
                if g.in_degree(v) == 0:
                    front.append(v)
                    g.remove_node(v)
                    changed = True
        if g:
            v = max(sorted(g), key=lambda x: g.out_degree(x) - g.in_degree(x))
            front.append(v)
            g.remove_node(v)
    return {v: n for n, v in enumerate(front + back[::-1])}


def make_dag(graph: PairGraph) -> tuple[PairGraph, list[RemovedEdge]]:
    """Greedy feedback arc set removal.

    While a cycle exists, take a shortest cycle and delete its edge with the
    fewest supporting triplets. Ties prefer an edge that points backward in
    the Eades-Lin-Smyth order of the input graph, then the smallest
    ``(source, target)``.
    """
    result = graph.copy()
    g = result.graph
    removed: list[RemovedEdge] = []
    order = eades_order(g)
    while True:
        cycle = _shortest_cycle(g)
        if cycle is None:
            return result, removed
        cycle_edges = [(cycle[i], cycle[(i + 1) % len(cycle)]) for i in range(len(cycle))]
        u, v = min(cycle_edges, key=lambda e: (len(g.edges[e]["support"]), order[e[0]] < order[e[1]], e))
        removed.append(RemovedEdge(u, v, g.edges[u, v]["support"]))
        g.remove_edge(u, v)


def longest_paths_from(graph: PairGraph) -> dict[Pair, int]:
    """Edge count of the longest directed path starting at each node."""
    g = graph.graph
    try:
        order = list(nx.topological_sort(g))
    except nx.NetworkXUnfeasible as exc:
        raise CycleError("pair graph has a directed cycle") from exc
    longest: dict[Pair, int] = {}
    for u in reversed(order):
        longest[u] = max((longest[v] + 1 for v in g.successors(u)), default=0)
    return longest


def longest_path_length(graph: PairGraph) -> int:
    return max(longest_paths_from(graph).values(), default=0)


def dag_height(graph: PairGraph) -> HeightFunction:
    """Layer-peeling height: sinks get ``l + 1``, the next layer ``l``, and so on.

    Equivalently ``h(p) = l + 1 - LP(p)`` with ``LP(p)`` the longest path
    leaving ``p`` and ``l`` the longest path overall.
    """
    lp = longest_paths_from(graph)
    top = max(lp.values(), default=0) + 1
    return HeightFunction({p: top - d for p, d in lp.items()}, graph.taxa)
