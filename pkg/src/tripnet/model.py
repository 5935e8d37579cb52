"""Taxa, rooted triplets, height functions, rooted trees and rooted networks.

All objects here are immutable after construction. Operations that "modify" a
tree or a network return a new object.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator, Mapping, Sequence

Taxon = str
Pair = tuple[str, str]


def pair(a: Taxon, b: Taxon) -> Pair:
    """Canonical (sorted) form of an unordered taxon pair."""
    if a == b:
        raise ValueError(f"a pair needs two distinct taxa, got {a!r} twice")
    return (a, b) if a < b else (b, a)


@dataclass(frozen=True, order=True)
class Triplet:
    """The rooted triplet ``left1 left2 | right``.

    The two left taxa are stored in sorted order, so ``Triplet("j", "i", "k")``
    and ``Triplet("i", "j", "k")`` are the same value.
    """

    left1: Taxon
    left2: Taxon
    right: Taxon

    def __post_init__(self) -> None:
        for name in (self.left1, self.left2, self.right):
            if not isinstance(name, str) or not name:
                raise ValueError(f"taxon names must be nonempty strings, got {name!r}")
        if len({self.left1, self.left2, self.right}) != 3:
            raise ValueError(f"triplet needs three distinct taxa: {self.left1} {self.left2} | {self.right}")
        if self.left2 < self.left1:
            a, b = self.left2, self.left1
            object.__setattr__(self, "left1", a)
            object.__setattr__(self, "left2", b)

    @classmethod
    def parse(cls, text: str) -> "Triplet":
        """Parse ``"ij|k"`` (single-character taxa) or ``"a b | c"``."""
        if text.count("|") != 1:
            raise ValueError(f"not a triplet: {text!r}")
        left, right = (part.strip() for part in text.split("|"))
        names = left.split()
        if len(names) == 1 and len(names[0]) == 2:
            names = list(names[0])
        if len(names) != 2 or not right or len(right.split()) != 1:
            raise ValueError(f"not a triplet: {text!r}")
        return cls(names[0], names[1], right)

    @property
    def cherry(self) -> Pair:
        return (self.left1, self.left2)

    @property
    def taxa(self) -> frozenset[Taxon]:
        return frozenset((self.left1, self.left2, self.right))

    def canonical(self) -> "Triplet":
        return Triplet(self.left1, self.left2, self.right)

    def __str__(self) -> str:
        if max(len(self.left1), len(self.left2), len(self.right)) == 1:
            return f"{self.left1}{self.left2}|{self.right}"
        return f"{self.left1} {self.left2} | {self.right}"


class TripletSet:
    """A deduplicated set of triplets. Contradictory members are allowed."""

    __slots__ = ("_triplets", "_taxa")

    def __init__(self, triplets: Iterable[Triplet | str] = ()) -> None:
        items = frozenset(Triplet.parse(t) if isinstance(t, str) else t for t in triplets)
        self._triplets = items
        self._taxa = frozenset(x for t in items for x in (t.left1, t.left2, t.right))

    @property
    def taxa(self) -> frozenset[Taxon]:
        return self._taxa

    def __iter__(self) -> Iterator[Triplet]:
        return iter(sorted(self._triplets))

    def __len__(self) -> int:
        return len(self._triplets)

    def __contains__(self, item: object) -> bool:
        if isinstance(item, str):
            item = Triplet.parse(item)
        return item in self._triplets

    def __eq__(self, other: object) -> bool:
        if isinstance(other, TripletSet):
            return self._triplets == other._triplets
        if isinstance(other, (set, frozenset)):
            return self._triplets == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._triplets)

    def __le__(self, other: "TripletSet") -> bool:
        return self._triplets <= other._triplets

    def __or__(self, other: Iterable[Triplet]) -> "TripletSet":
        return TripletSet(self._triplets | frozenset(other))

    def __sub__(self, other: Iterable[Triplet]) -> "TripletSet":
        return TripletSet(self._triplets - frozenset(other))

    def __repr__(self) -> str:
        return "TripletSet({" + ", ".join(str(t) for t in self) + "})"

    def as_frozenset(self) -> frozenset[Triplet]:
        return self._triplets

    def restrict(self, taxa: Iterable[Taxon]) -> "TripletSet":
        return restrict(self, taxa)

    def without(self, taxon: Taxon) -> "TripletSet":
        return TripletSet(t for t in self._triplets if taxon not in t.taxa)


def leaf_set(triplets: TripletSet | Iterable[Triplet]) -> frozenset[Taxon]:
    if isinstance(triplets, TripletSet):
        return triplets.taxa
    return TripletSet(triplets).taxa


def restrict(triplets: TripletSet | Iterable[Triplet], taxa: Iterable[Taxon]) -> TripletSet:
    """Triplets whose three taxa all lie in ``taxa``."""
    keep = frozenset(taxa)
    return TripletSet(t for t in triplets if t.taxa <= keep)


class HeightFunction(Mapping[Pair, int]):
    """Integer values on the unordered pairs of a taxon set.

    Lookups accept pairs in either order: ``h["a", "b"] == h["b", "a"]``.
    """

    __slots__ = ("_taxa", "_values")

    def __init__(self, values: Mapping[tuple[Taxon, Taxon], int], taxa: Iterable[Taxon] | None = None) -> None:
        canon: dict[Pair, int] = {}
        for (a, b), v in values.items():
            key = pair(a, b)
            if key in canon and canon[key] != v:
                raise ValueError(f"conflicting values for pair {key}")
            canon[key] = int(v)
        names = set(taxa) if taxa is not None else {x for p in canon for x in p}
        missing = [p for p in combinations(sorted(names), 2) if p not in canon]
        if missing:
            raise ValueError(f"height function is not total, missing {missing[:3]}")
        extra = [p for p in canon if not (p[0] in names and p[1] in names)]
        if extra:
            raise ValueError(f"pairs outside the domain: {extra[:3]}")
        self._taxa = tuple(sorted(names))
        self._values = {p: canon[p] for p in combinations(self._taxa, 2)}

    @property
    def taxa(self) -> tuple[Taxon, ...]:
        return self._taxa

    def __getitem__(self, key: tuple[Taxon, Taxon]) -> int:
        return self._values[pair(*key)]

    def __iter__(self) -> Iterator[Pair]:
        return iter(self._values)

    def __len__(self) -> int:
        return len(self._values)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, HeightFunction):
            return self._taxa == other._taxa and self._values == other._values
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self._taxa, tuple(self._values.items())))

    def __repr__(self) -> str:
        body = ", ".join(f"{a}{b}:{v}" if len(a + b) == 2 else f"{a},{b}:{v}" for (a, b), v in self._values.items())
        return f"HeightFunction({{{body}}})"

    def restrict(self, taxa: Iterable[Taxon]) -> "HeightFunction":
        keep = set(taxa)
        return HeightFunction({p: v for p, v in self._values.items() if p[0] in keep and p[1] in keep}, keep)

    def max_value(self) -> int:
        return max(self._values.values(), default=0)

    def min_value(self) -> int:
        return min(self._values.values(), default=0)


def _topological_order(children: Mapping[int, Sequence[int]], nodes: Iterable[int]) -> list[int] | None:
    indeg = {v: 0 for v in nodes}
    for u in indeg:
        for c in children.get(u, ()):
            indeg[c] += 1
    queue = deque(sorted(v for v, d in indeg.items() if d == 0))
    order = []
    while queue:
        u = queue.popleft()
        order.append(u)
        for c in children.get(u, ()):
            indeg[c] -= 1
            if indeg[c] == 0:
                queue.append(c)
    return order if len(order) == len(indeg) else None


@dataclass(frozen=True, eq=False)
class _Rooted:
    """Shared read-only machinery for trees and networks.

    Nodes are integers; ``labels`` maps leaf nodes to taxon names.
    """

    children: Mapping[int, tuple[int, ...]]
    labels: Mapping[int, Taxon]
    root: int
    _parents: dict[int, tuple[int, ...]] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        kids = {u: tuple(cs) for u, cs in self.children.items()}
        nodes = set(kids) | {c for cs in kids.values() for c in cs} | set(self.labels) | {self.root}
        for v in nodes:
            kids.setdefault(v, ())
        object.__setattr__(self, "children", kids)
        object.__setattr__(self, "labels", dict(self.labels))
        parents: dict[int, list[int]] = {v: [] for v in kids}
        for u, cs in kids.items():
            for c in cs:
                parents[c].append(u)
        object.__setattr__(self, "_parents", {v: tuple(ps) for v, ps in parents.items()})
        names = list(self.labels.values())
        if len(set(names)) != len(names):
            raise ValueError("leaf labels must be distinct")

    @property
    def nodes(self) -> list[int]:
        return sorted(self.children)

    def parents(self, v: int) -> tuple[int, ...]:
        return self._parents[v]

    @property
    def edges(self) -> list[tuple[int, int]]:
        return [(u, c) for u in sorted(self.children) for c in self.children[u]]

    @property
    def taxa(self) -> frozenset[Taxon]:
        return frozenset(self.labels.values())

    def leaf_of(self, name: Taxon) -> int:
        for v, lab in self.labels.items():
            if lab == name:
                return v
        raise KeyError(name)

    def leaf_nodes(self) -> dict[Taxon, int]:
        return {lab: v for v, lab in self.labels.items()}

    def topological_order(self) -> list[int] | None:
        return _topological_order(self.children, self.children)

    def descendant_taxa(self) -> dict[int, frozenset[Taxon]]:
        order = self.topological_order()
        if order is None:
            raise ValueError("graph has a cycle")
        below: dict[int, frozenset[Taxon]] = {}
        for v in reversed(order):
            acc = {self.labels[v]} if v in self.labels else set()
            for c in self.children[v]:
                acc |= below[c]
            below[v] = frozenset(acc)
        return below

    def clusters(self) -> set[frozenset[Taxon]]:
        """Leaf sets below every node."""
        return set(self.descendant_taxa().values())


class PhyloTree(_Rooted):
    """A rooted leaf-labelled tree whose internal nodes have outdegree >= 2."""

    def __post_init__(self) -> None:
        super().__post_init__()
        for v in self.children:
            ps = self._parents[v]
            if v == self.root:
                if ps:
                    raise ValueError("root has a parent")
            elif len(ps) != 1:
                raise ValueError(f"node {v} has {len(ps)} parents")
            kids = self.children[v]
            if not kids and v not in self.labels:
                raise ValueError(f"unlabelled leaf {v}")
            if kids and v in self.labels:
                raise ValueError(f"internal node {v} carries a label")
            if len(kids) == 1:
                raise ValueError(f"node {v} has outdegree 1")
        if self.topological_order() is None:
            raise ValueError("tree has a cycle")
        reached = set()
        stack = [self.root]
        while stack:
            u = stack.pop()
            reached.add(u)
            stack.extend(self.children[u])
        if reached != set(self.children):
            raise ValueError("tree is not connected")

    @classmethod
    def from_nested(cls, nested) -> "PhyloTree":
        """Build from nested tuples/lists of leaf names, e.g. ``("i", ("j", ("k", "l")))``."""
        children: dict[int, tuple[int, ...]] = {}
        labels: dict[int, str] = {}
        counter = iter(range(1 << 30))

        def visit(item) -> int:
            v = next(counter)
            if isinstance(item, str):
                labels[v] = item
                children[v] = ()
            else:
                children[v] = tuple(visit(x) for x in item)
            return v

        root = visit(nested)
        return cls(children, labels, root)

    def is_binary(self) -> bool:
        return all(len(cs) in (0, 2) for cs in self.children.values())

    def depths(self) -> dict[int, int]:
        depth = {self.root: 0}
        stack = [self.root]
        while stack:
            u = stack.pop()
            for c in self.children[u]:
                depth[c] = depth[u] + 1
                stack.append(c)
        return depth

    def to_nested(self):
        """Canonical nested-tuple form: children sorted by their smallest leaf."""
        below = self.descendant_taxa()

        def visit(v):
            if v in self.labels:
                return self.labels[v]
            kids = sorted(self.children[v], key=lambda c: min(below[c]))
            return tuple(visit(c) for c in kids)

        return visit(self.root)

    def to_network(self) -> "PhyloNetwork":
        """The tree as a network. Strict mode requires a binary tree."""
        return PhyloNetwork(self.children, self.labels, self.root, relaxed=not self.is_binary())

    def __eq__(self, other: object) -> bool:
        if isinstance(other, PhyloTree):
            return self.to_nested() == other.to_nested()
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.to_nested())

    def __repr__(self) -> str:
        return f"PhyloTree({self.to_nested()!r})"


class PhyloNetwork(_Rooted):
    """A rooted directed acyclic graph with labelled leaves.

    ``relaxed`` marks networks that are allowed to break the binary degree
    rules (realizations of arbitrary height functions). Construction does not
    validate degrees; see :func:`network_problems`.
    """

    def __init__(self, children, labels, root, relaxed: bool = False) -> None:
        super().__init__(children, labels, root)
        object.__setattr__(self, "relaxed", relaxed)

    relaxed: bool = False

    def reticulations(self) -> list[int]:
        return [v for v in self.nodes if len(self._parents[v]) >= 2]

    def is_tree(self) -> bool:
        return not self.reticulations()

    def to_tree(self) -> PhyloTree:
        return PhyloTree(self.children, self.labels, self.root)

    def __repr__(self) -> str:
        return f"PhyloNetwork(root={self.root}, edges={self.edges}, labels={dict(sorted(self.labels.items()))})"


def network_problems(net: PhyloNetwork, strict: bool | None = None) -> list[str]:
    """Diagnostics for every violated network invariant; empty when valid.

    ``strict`` defaults to ``not net.relaxed``. Relaxed checking keeps only
    acyclicity and a parentless root.
    """
    if strict is None:
        strict = not net.relaxed
    problems = []
    if net.topological_order() is None:
        problems.append("cycle")
    if net.parents(net.root):
        problems.append(f"root {net.root} has indegree {len(net.parents(net.root))}")
    if not strict:
        return problems
    if len(net.children[net.root]) != 2:
        problems.append(f"root {net.root} has outdegree {len(net.children[net.root])}")
    for v in net.nodes:
        if v == net.root:
            continue
        indeg, outdeg = len(net.parents(v)), len(net.children[v])
        if (indeg, outdeg) not in ((2, 1), (1, 2), (1, 0)):
            problems.append(f"node {v} has indegree {indeg} and outdegree {outdeg}")
        if outdeg == 0 and v not in net.labels:
            problems.append(f"leaf {v} is unlabelled")
        if outdeg > 0 and v in net.labels:
            problems.append(f"internal node {v} is labelled")
    reached = set()
    stack = [net.root]
    while stack:
        u = stack.pop()
        if u in reached:
            continue
        reached.add(u)
        stack.extend(net.children[u])
    unreached = set(net.children) - reached
    if unreached:
        problems.append(f"nodes unreachable from root: {sorted(unreached)}")
    return problems


def is_valid_network(net: PhyloNetwork, strict: bool | None = None) -> bool:
    return not network_problems(net, strict)


def binarize(tree: PhyloTree, rng: random.Random | None = None) -> PhyloTree:
    """Refine every node of outdegree k >= 3 into a binary cascade.

    A node ``x`` with children ``x1..xk`` gets a new child ``y`` that adopts
    ``x1..x(k-1)``; this repeats until every internal node is binary. Children
    are ordered by their smallest leaf label, or shuffled when ``rng`` is given.
    """
    below = tree.descendant_taxa()
    children = {v: list(cs) for v, cs in tree.children.items()}
    next_id = max(children) + 1
    stack = [tree.root]
    while stack:
        x = stack.pop()
        kids = children[x]
        if len(kids) >= 3:
            if rng is None:
                kids = sorted(kids, key=lambda c: min(below[c]))
            else:
                kids = list(kids)
                rng.shuffle(kids)
            y = next_id
            next_id += 1
            children[y] = kids[:-1]
            children[x] = [y, kids[-1]]
            below[y] = frozenset().union(*(below[c] for c in kids[:-1]))
            stack.append(x)
            continue
        stack.extend(kids)
    return PhyloTree({v: tuple(cs) for v, cs in children.items()}, tree.labels, tree.root)
