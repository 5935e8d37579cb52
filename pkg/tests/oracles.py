"""Independent reference implementations used only by the tests."""

from __future__ import annotations

import random
from itertools import combinations

from tripnet.model import PhyloNetwork, PhyloTree, Triplet, TripletSet


def all_paths(children, src, dst):
    if src == dst:
        return [[dst]]
    return [[src] + rest for c in children[src] for rest in all_paths(children, c, dst)]


def brute_triplet_in_network(net, t: Triplet) -> bool:
    """Literal definition: distinct u, v and four paths meeting only where a triplet's subdivision allows."""
    leaf = net.leaf_nodes()
    i, j, k = leaf[t.left1], leaf[t.left2], leaf[t.right]
    ch = net.children
    for u in ch:
        for v in ch:
            if u == v or u in (i, j, k) or v in (i, j, k):
                continue
            for pui in all_paths(ch, u, i):
                for puj in all_paths(ch, u, j):
                    if set(pui) & set(puj) != {u}:
                        continue
                    for pvu in all_paths(ch, v, u):
                        if set(pvu) & set(pui) != {u} or set(pvu) & set(puj) != {u}:
                            continue
                        for pvk in all_paths(ch, v, k):
                            if set(pvk) & set(pvu) != {v}:
                                continue
                            if set(pvk) & (set(pui) | set(puj)):
                                continue
                            return True
    return False


def classic_build(triplets: TripletSet, taxa):
    """Aho et al. BUILD; nested tuples of leaf names, or None if no tree exists."""
    names = sorted(taxa)
    if len(names) == 1:
        return names[0]
    parent = {x: x for x in names}

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    keep = set(names)
    relevant = [t for t in triplets if t.taxa <= keep]
    for t in relevant:
        a, b = find(t.left1), find(t.left2)
        if a != b:
            parent[max(a, b)] = min(a, b)
    groups = {}
    for x in names:
        groups.setdefault(find(x), []).append(x)
    if len(groups) == 1:
        return None
    parts = []
    for g in sorted(groups.values()):
        sub = classic_build(TripletSet(relevant), g)
        if sub is None:
            return None
        parts.append(sub)
    return tuple(parts)


def random_tree(rng: random.Random, n: int, binary: bool = False) -> PhyloTree:
    """Random rooted tree on taxa t0..t{n-1}, built by random merges."""
    items = [f"t{x}" for x in range(n)]
    rng.shuffle(items)
    while len(items) > 1:
        k = 2 if binary or len(items) == 2 else rng.choice([2, 2, 3])
        k = min(k, len(items))
        picked = rng.sample(range(len(items)), k)
        group = tuple(items[p] for p in sorted(picked))
        items = [x for p, x in enumerate(items) if p not in picked] + [group]
    return PhyloTree.from_nested(items[0])


def random_network(rng: random.Random, n: int, reticulations: int) -> PhyloNetwork:
    """Random binary tree plus random cross edges between subdivided edges."""
    net = random_tree(rng, n, binary=True).to_network()
    added = 0
    while added < reticulations:
        edges = net.edges
        e1, e2 = rng.sample(edges, 2)
        children = {u: list(cs) for u, cs in net.children.items()}
        a, b = max(children) + 1, max(children) + 2
        for (p, c), new in ((e1, a), (e2, b)):
            children[p] = [new if x == c else x for x in children[p]]
            children[new] = [c]
        children[a].append(b)
        cand = PhyloNetwork({u: tuple(cs) for u, cs in children.items()}, net.labels, net.root)
        if cand.topological_order() is None:
            continue
        net = cand
        added += 1
    return net


def all_candidate_triplets(names):
    for a, b, c in combinations(sorted(names), 3):
        yield Triplet(a, b, c)
        yield Triplet(a, c, b)
        yield Triplet(b, c, a)


def naive_closure(triplets):
    """Apply ij|k, js|i => js|k over all ordered premise pairs until nothing changes."""
    known = set(triplets)
    while True:
        new = set()
        for t1 in known:
            for t2 in known:
                for i in t1.cherry:
                    j = t1.left2 if i == t1.left1 else t1.left1
                    if t2.right != i or j not in t2.cherry:
                        continue
                    s = t2.left2 if t2.left1 == j else t2.left1
                    if s != t1.right:
                        new.add(Triplet(j, s, t1.right))
        if new <= known:
            return TripletSet(known)
        known |= new


def weighted_tree(rng: random.Random, n: int, outgroup: str = "out"):
    """Random binary rooted tree on n taxa, an outgroup hung from its root, and random edge lengths.

    Returns the rooted ingroup tree, the undirected weighted graph and the
    additive distance matrix over all leaves.
    """
    import networkx as nx
    import numpy as np

    from tripnet import DistanceMatrix

    tree = random_tree(rng, n, binary=True)
    g = nx.Graph()
    for u, v in tree.edges:
        g.add_edge(u, v, weight=rng.uniform(0.1, 2.0))
    g.add_edge(tree.root, outgroup, weight=rng.uniform(0.1, 2.0))
    leaf = {**tree.leaf_nodes(), outgroup: outgroup}
    names = sorted(leaf)
    lengths = dict(nx.all_pairs_dijkstra_path_length(g))
    d = np.array([[lengths[leaf[a]][leaf[b]] for b in names] for a in names])
    return tree, g, DistanceMatrix(names, d)


def quartet_from_topology(g, leaf, a, b, c, d):
    """The split whose two leaf-to-leaf paths share no vertex."""
    import networkx as nx

    for (p, q), (r, s) in (((a, b), (c, d)), ((a, c), (b, d)), ((a, d), (b, c))):
        if not set(nx.shortest_path(g, leaf[p], leaf[q])) & set(nx.shortest_path(g, leaf[r], leaf[s])):
            return {frozenset((p, q)), frozenset((r, s))}
    return None
