"""Reticulation-leaf selection, network assembly and the TripNet driver."""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

from .consistency import inconsistent_triplets, reticulation_count, triplet_in_network
from .hbuild import hbuild
from .model import HeightFunction, PhyloNetwork, PhyloTree, Taxon, Triplet, TripletSet, binarize, restrict
from .pair_graph import RemovedEdge, build_pair_graph, dag_height, is_dag, make_dag
from .sn_sets import contract, sn_decomposition

log = logging.getLogger("tripnet")

SPEEDS = ("slow", "normal", "fast")
MAX_BRANCHES = 256


@dataclass(frozen=True)
class SpeedMode:
    """How ties left after the three criteria are broken.

    ``slow`` examines every tied candidate, ``normal`` two random ones and
    ``fast`` a single random one, drawn from ``random.Random(seed)``.
    """

    speed: str = "slow"
    seed: int = 0

    def __post_init__(self) -> None:
        if self.speed not in SPEEDS:
            raise ValueError(f"speed must be one of {SPEEDS}, got {self.speed!r}")

    def draw(self, candidates: Sequence[Taxon], rng: random.Random) -> list[Taxon]:
        ordered = sorted(candidates)
        if len(ordered) <= 1 or self.speed == "slow":
            return ordered
        if self.speed == "normal":
            return sorted(rng.sample(ordered, 2))
        return [rng.choice(ordered)]


class InternalError(RuntimeError):
    """An invariant that the construction guarantees was violated."""


# -- criteria ---------------------------------------------------------------


def _incident(weights: HeightFunction, node: Taxon) -> list[int]:
    return [weights[node, other] for other in weights.taxa if other != node]


def criterion_one(weights: HeightFunction, nodes: Iterable[Taxon] | None = None) -> list[Taxon]:
    """Nodes whose lightest incident edge is lightest overall; ties by lightest heaviest edge."""
    pool = sorted(nodes) if nodes is not None else list(weights.taxa)
    lo = {s: min(_incident(weights, s)) for s in pool}
    hi = {s: max(_incident(weights, s)) for s in pool}
    best_lo = min(lo.values())
    first = [s for s in pool if lo[s] == best_lo]
    best_hi = min(hi[s] for s in first)
    return [s for s in first if hi[s] == best_hi]


def criterion_two(weights: HeightFunction, candidates: Iterable[Taxon]) -> list[Taxon]:
    """Candidates of maximum degree among the globally lightest edges."""
    pool = sorted(candidates)
    if len(pool) <= 1:
        return pool
    w_min = weights.min_value()
    degree = {s: sum(1 for v in _incident(weights, s) if v == w_min) for s in pool}
    top = max(degree.values())
    return [s for s in pool if degree[s] == top]


def criterion_three(weights: HeightFunction, triplets: TripletSet, candidates: Iterable[Taxon]) -> list[Taxon]:
    """Candidates whose removal leaves the most SN-set blocks with more than one member."""
    pool = sorted(candidates)
    if len(pool) <= 1:
        return pool
    counts = {s: nontrivial_blocks_without(weights, triplets, s) for s in pool}
    top = max(counts.values())
    return [s for s in pool if counts[s] == top]


def nontrivial_blocks_without(weights: HeightFunction, triplets: TripletSet, node: Taxon) -> int:
    rest = [x for x in weights.taxa if x != node]
    if len(rest) < 2:
        return 0
    blocks = sn_decomposition(weights.restrict(rest), triplets.without(node), rest)
    return sum(1 for b in blocks if len(b) > 1)


# -- trees for tree-consistent triplet sets ---------------------------------


def tree_for(triplets: TripletSet, taxa: Iterable[Taxon]) -> PhyloTree | None:
    """The tree HBUILD builds from the pair-graph height, if it displays every triplet."""
    names = sorted(taxa)
    if len(names) == 1:
        return PhyloTree.from_nested(names[0])
    graph = build_pair_graph(triplets, names)
    if not is_dag(graph):
        return None
    tree = hbuild(dag_height(graph), names)
    if tree is None:
        return None
    net = tree.to_network()
    if any(not triplet_in_network(net, t) for t in triplets):
        return None
    return tree


# -- network surgery ---------------------------------------------------------

STEM = (-1, -1)


def _mutable(net: PhyloNetwork) -> tuple[dict[int, list[int]], dict[int, str], int]:
    return {u: list(cs) for u, cs in net.children.items()}, dict(net.labels), max(net.children) + 1


def candidate_edges(net: PhyloNetwork) -> list[tuple[int, int]]:
    """Edges available for subdivision, including a stem above the root."""
    return [STEM] + net.edges


def _subdivide(children: dict[int, list[int]], edge: tuple[int, int], new: int, root: int) -> int:
    """Put ``new`` in the middle of ``edge``; returns the (possibly new) root."""
    if edge == STEM:
        children[new] = [root]
        return new
    p, c = edge
    children[p] = [new if x == c else x for x in children[p]]
    children[new] = [c]
    return root


def attach_reticulation(net: PhyloNetwork, x: Taxon, e1: tuple[int, int], e2: tuple[int, int]) -> PhyloNetwork:
    """Subdivide ``e1`` and ``e2`` and hang leaf ``x`` below a new node joining them."""
    children, labels, nxt = _mutable(net)
    y1, y2, y3, leaf = nxt, nxt + 1, nxt + 2, nxt + 3
    root = _subdivide(children, e1, y1, net.root)
    # the stem sorts first, so e2 is never the stem
    root = _subdivide(children, e2, y2, root)
    children[y1].append(y3)
    children[y2].append(y3)
    children[y3] = [leaf]
    children[leaf] = []
    labels[leaf] = x
    return PhyloNetwork({u: tuple(cs) for u, cs in children.items()}, labels, root)


def insert_reticulation_leaf(net: PhyloNetwork, x: Taxon, triplets: Iterable[Triplet]) -> PhyloNetwork:
    """Add ``x`` as a reticulation leaf at the edge pair displaying the most triplets.

    New structure only leads to ``x``, so triplets on the old leaves keep their
    status; only triplets that mention ``x`` need scoring.
    """
    if x in net.taxa:
        raise ValueError(f"{x!r} is already a leaf")
    edges = candidate_edges(net)
    if len(edges) < 2:
        raise ValueError("network has no pair of edges to subdivide")
    present = net.taxa | {x}
    scored = [t for t in restrict(triplets, present) if x in t.taxa]
    best = None
    best_score = -1
    for e1, e2 in combinations(edges, 2):
        candidate = attach_reticulation(net, x, e1, e2)
        score = sum(1 for t in scored if triplet_in_network(candidate, t))
        if score > best_score:
            best, best_score = candidate, score
            if score == len(scored):
                break
    return best


def add_cross_edge(net: PhyloNetwork, i: Taxon, j: Taxon) -> PhyloNetwork:
    """Subdivide the pendant edges above ``i`` and ``j`` and join the new nodes.

    The new edge runs from the node above ``i`` to the node above ``j``; the
    reverse is used if that would close a cycle.
    """
    children, labels, nxt = _mutable(net)
    leaf_i, leaf_j = net.leaf_of(i), net.leaf_of(j)
    (p_i,) = net.parents(leaf_i)
    (p_j,) = net.parents(leaf_j)
    a, b = nxt, nxt + 1
    _subdivide(children, (p_i, leaf_i), a, net.root)
    _subdivide(children, (p_j, leaf_j), b, net.root)
    for src, dst in ((a, b), (b, a)):
        trial = {u: list(cs) for u, cs in children.items()}
        trial[src].append(dst)
        out = PhyloNetwork({u: tuple(cs) for u, cs in trial.items()}, labels, net.root)
        if out.topological_order() is not None:
            return out
    raise InternalError(f"both orientations of the cross edge between {i} and {j} close a cycle")


def repair(net: PhyloNetwork, triplets: Iterable[Triplet], trace: list[str] | None = None) -> PhyloNetwork:
    """Add cross edges until every triplet is displayed.

    Each round targets the pair ``i, j`` with the most missing triplets of the
    form ``ij|c`` (ties: smallest pair).
    """
    missing = inconsistent_triplets(net, triplets)
    while missing:
        groups: dict[tuple[str, str], list[Triplet]] = {}
        for t in missing:
            groups.setdefault(t.cherry, []).append(t)
        target = min(groups, key=lambda p: (-len(groups[p]), p))
        net = add_cross_edge(net, *target)
        _emit(trace, f"step9 cross-edge {target[0]} {target[1]} fixes={len(groups[target])}")
        still = [t for t in missing if not triplet_in_network(net, t)]
        if any(t in still for t in groups[target]):
            raise InternalError(f"cross edge {target} failed to display its triplets")
        missing = still
    return net


def substitute(net: PhyloNetwork, replacements: dict[Taxon, PhyloNetwork]) -> PhyloNetwork:
    """Replace leaves by whole networks, hanging each network's root where the leaf was."""
    children, labels, nxt = _mutable(net)
    for name, sub in sorted(replacements.items()):
        leaf = net.leaf_of(name)
        offset = nxt - min(sub.children)
        nxt += max(sub.children) - min(sub.children) + 1
        for u, cs in sub.children.items():
            children[u + offset] = [c + offset for c in cs]
        for u, lab in sub.labels.items():
            labels[u + offset] = lab
        new_root = sub.root + offset
        for p in net.parents(leaf):
            children[p] = [new_root if c == leaf else c for c in children[p]]
        del children[leaf]
        del labels[leaf]
    return PhyloNetwork({u: tuple(cs) for u, cs in children.items()}, labels, net.root)


def _emit(trace: list[str] | None, line: str) -> None:
    log.debug(line)
    if trace is not None:
        trace.append(line)


# -- choosing reticulation leaves -----------------------------------------


@dataclass(frozen=True)
class Selection:
    leaves: tuple[Taxon, ...]
    tree: PhyloTree
    triplets: TripletSet
    network: PhyloNetwork | None = None


def _explore(
    nodes: list[Taxon],
    weights: HeightFunction,
    triplets: TripletSet,
    mode: SpeedMode,
    rng: random.Random,
    picked: tuple[Taxon, ...],
    out: list[Selection],
    trace: list[str] | None,
) -> None:
    if len(out) >= MAX_BRANCHES:
        return
    tree = tree_for(triplets, nodes)
    if tree is not None:
        out.append(Selection(picked, tree, triplets))
        return
    sub = weights.restrict(nodes)
    r1 = criterion_one(sub)
    r2 = criterion_two(sub, r1) if len(r1) > 1 else r1
    r3 = criterion_three(sub, triplets, r2) if len(r2) > 1 else r2
    chosen = mode.draw(r3, rng)
    _emit(trace, f"step5 R1={','.join(r1)} R2={','.join(r2)} R3={','.join(r3)} try={','.join(chosen)}")
    for x in chosen:
        rest = [v for v in nodes if v != x]
        _explore(rest, weights, triplets.without(x), mode, rng, picked + (x,), out, trace)


def build_with_reticulations(tree: PhyloTree, leaves: Sequence[Taxon], triplets: TripletSet, trace: list[str] | None = None) -> PhyloNetwork:
    """Binarize ``tree`` and add ``leaves`` as reticulation leaves, last one first."""
    net = binarize(tree).to_network()
    for x in reversed(leaves):
        net = insert_reticulation_leaf(net, x, triplets)
        _emit(trace, f"step6 insert {x}")
    return net


def select_reticulations(
    weights: HeightFunction,
    triplets: TripletSet,
    mode: SpeedMode = SpeedMode(),
    rng: random.Random | None = None,
    trace: list[str] | None = None,
) -> Selection:
    """Pick reticulation leaves until the remaining triplets fit a tree.

    Each explored branch is assembled into a network; the winner displays
    the most triplets, then uses the fewest reticulation leaves, then has
    the lexicographically smallest leaf sequence.
    """
    rng = rng if rng is not None else random.Random(mode.seed)
    nodes = list(weights.taxa)
    branches: list[Selection] = []
    _explore(nodes, weights, triplets, mode, rng, (), branches, trace)
    best = None
    best_key = None
    for sel in branches:
        net = build_with_reticulations(sel.tree, sel.leaves, triplets)
        key = (-sum(1 for t in triplets if triplet_in_network(net, t)), len(sel.leaves), sel.leaves)
        if best_key is None or key < best_key:
            best, best_key = Selection(sel.leaves, sel.tree, sel.triplets, net), key
    _emit(trace, f"step5 reticulation-leaves={','.join(best.leaves) or '-'} branches={len(branches)}")
    return best


# -- driver -------------------------------------------------------------------


@dataclass
class TripNetResult:
    network: PhyloNetwork
    removed_edges: list[RemovedEdge] = field(default_factory=list)
    reticulation_leaves: list[Taxon] = field(default_factory=list)
    trace: list[str] = field(default_factory=list)


def _cherry(names: Sequence[Taxon]) -> PhyloNetwork:
    if len(names) == 1:
        return PhyloNetwork({0: ()}, {0: names[0]}, 0)
    return PhyloNetwork({0: (1, 2), 1: (), 2: ()}, {1: names[0], 2: names[1]}, 0)


def _run(triplets: TripletSet, names: list[Taxon], mode: SpeedMode, rng: random.Random, result: TripNetResult, depth: int) -> PhyloNetwork:
    trace = result.trace
    tag = f"[{depth}]"
    if len(names) <= 2:
        return _cherry(names)
    _emit(trace, f"{tag} taxa={len(names)} triplets={len(triplets)}")

    graph = build_pair_graph(triplets, names)
    dag, removed = make_dag(graph)
    result.removed_edges.extend(removed)
    h = dag_height(dag)
    _emit(trace, f"{tag} step1 removed-edges={len(removed)} max-height={h.max_value()}")

    tree = hbuild(h, names)
    if tree is not None:
        _emit(trace, f"{tag} step2 tree")
        net = binarize(tree).to_network()
        return repair(net, triplets, trace)
    _emit(trace, f"{tag} step2 no-tree")

    blocks = sn_decomposition(h, triplets, names)
    _emit(trace, f"{tag} step4 sn-sets=" + " ".join("{" + ",".join(b) + "}" for b in blocks))
    instance = contract(h, triplets, blocks)

    selection = select_reticulations(instance.weights, instance.triplets, mode, rng, trace)
    result.reticulation_leaves.extend(
        x for rep in selection.leaves for x in instance.blocks[rep]
    )
    net = selection.network

    replacements = {}
    for rep, members in sorted(instance.blocks.items()):
        if len(members) > 1:
            _emit(trace, f"{tag} step7 recurse {rep}")
            replacements[rep] = _run(restrict(triplets, members), list(members), mode, rng, result, depth + 1)
    if replacements:
        net = substitute(net, replacements)
        _emit(trace, f"{tag} step8 substituted={len(replacements)}")
    net = repair(net, triplets, trace)
    _emit(trace, f"{tag} done reticulations={reticulation_count(net)}")
    return net


def run_tripnet(triplets: TripletSet, mode: SpeedMode = SpeedMode(), taxa: Iterable[Taxon] | None = None) -> TripNetResult:
    """TripNet with its bookkeeping: removed pair-graph edges, chosen leaves and a step trace."""
    names = sorted(set(triplets.taxa) | set(taxa or ()))
    if len(names) < 3:
        raise ValueError(f"TripNet needs at least 3 taxa, got {len(names)}")
    result = TripNetResult(network=None)  # type: ignore[arg-type]
    result.network = _run(triplets, names, mode, random.Random(mode.seed), result, 0)
    return result


def tripnet(triplets: TripletSet, mode: SpeedMode = SpeedMode(), taxa: Iterable[Taxon] | None = None) -> PhyloNetwork:
    """A network displaying every input triplet."""
    return run_tripnet(triplets, mode, taxa).network
