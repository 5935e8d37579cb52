"""Exact solution of the height integer program IP(tau, s).

    maximize   sum of h(p) over all pairs p
    subject to h(i,k) - h(i,j) >= 1 and h(j,k) - h(i,j) >= 1   for ij|k in tau
               1 <= h(p) <= s

Every constraint is a difference constraint along an edge of the pair graph,
so the system is feasible iff the pair graph is acyclic and ``s`` is at least
one more than its longest path. Setting ``h(p) = s - LP(p)`` (``LP`` the
longest path leaving ``p``) is feasible and coordinatewise maximal: any
feasible ``h`` satisfies ``h(p) <= h(q) - 1`` along each edge, so
``h(p) <= s - LP(p)``. A coordinatewise maximum is the unique sum maximizer.
"""

from __future__ import annotations

import itertools
from typing import Iterable

from .model import HeightFunction, Taxon, TripletSet, pair
from .pair_graph import build_pair_graph, is_dag, longest_path_length, longest_paths_from

BRUTE_FORCE_MAX_TAXA = 5
BRUTE_FORCE_MAX_S = 6


def min_feasible_s(triplets: TripletSet, taxa: Iterable[Taxon] | None = None) -> int | None:
    """Smallest ``s`` for which IP(tau, s) is feasible, or None if none is."""
    graph = build_pair_graph(triplets, taxa)
    if not is_dag(graph):
        return None
    return longest_path_length(graph) + 1


def ip_optimal_height(triplets: TripletSet, s: int, taxa: Iterable[Taxon] | None = None) -> HeightFunction | None:
    """The unique optimum of IP(tau, s), or None when infeasible.

    Values of ``s`` above the minimum are accepted; the optimum then shifts
    every pair upward until the bound binds on the sinks.
    """
    graph = build_pair_graph(triplets, taxa)
    if not is_dag(graph):
        return None
    lp = longest_paths_from(graph)
    if s < max(lp.values(), default=0) + 1:
        return None
    return HeightFunction({p: s - d for p, d in lp.items()}, graph.taxa)


def _constraints(triplets: TripletSet) -> list[tuple[tuple[str, str], tuple[str, str]]]:
    out = []
    for t in triplets:
        low = t.cherry
        out.append((low, pair(t.left1, t.right)))
        out.append((low, pair(t.left2, t.right)))
    return out


def brute_force_ip(triplets: TripletSet, s: int, taxa: Iterable[Taxon] | None = None) -> list[HeightFunction]:
    """All optimal solutions of IP(tau, s) by exhaustive search.

    Test oracle only; refuses more than five taxa or ``s > 6``. The search
    walks every assignment in ``{1..s}^pairs`` and prunes a branch only when a
    constraint between assigned pairs fails or when even setting every
    remaining pair to ``s`` cannot reach the best sum seen so far.
    """
    names = sorted(set(triplets.taxa) | set(taxa or ()))
    if len(names) > BRUTE_FORCE_MAX_TAXA or s > BRUTE_FORCE_MAX_S or s < 1:
        raise ValueError(f"brute force limited to {BRUTE_FORCE_MAX_TAXA} taxa and 1 <= s <= {BRUTE_FORCE_MAX_S}")
    pairs = list(itertools.combinations(names, 2))
    index = {p: n for n, p in enumerate(pairs)}
    # checks[n]: constraints (lower, upper) whose later-indexed end is n
    checks: list[list[tuple[int, int]]] = [[] for _ in pairs]
    for a, b in _constraints(triplets):
        lo, hi = index[a], index[b]
        checks[max(lo, hi)].append((lo, hi))
    n = len(pairs)
    values = [0] * n
    best_sum = -1
    best: list[tuple[int, ...]] = []

    def search(k: int, total: int) -> None:
        nonlocal best_sum, best
        if total + s * (n - k) < best_sum:
            return
        if k == n:
            if total > best_sum:
                best_sum, best = total, [tuple(values)]
            else:
                best.append(tuple(values))
            return
        for v in range(s, 0, -1):
            values[k] = v
            if all(values[hi] - values[lo] >= 1 for lo, hi in checks[k]):
                search(k + 1, total + v)
        values[k] = 0

    search(0, 0)
    return [HeightFunction(dict(zip(pairs, vals)), names) for vals in best]
