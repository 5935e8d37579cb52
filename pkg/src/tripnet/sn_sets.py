"""SN-sets found by stripping heavy edges, and contraction of SN-set blocks."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Mapping

from .hbuild import _components
from .model import HeightFunction, Taxon, Triplet, TripletSet, pair


def is_sn_set(subset: Iterable[Taxon], triplets: Iterable[Triplet]) -> bool:
    """True when no triplet ``ij|k`` has ``i`` outside and ``j, k`` inside."""
    s = set(subset)
    for t in triplets:
        if t.right in s and (t.left1 in s) != (t.left2 in s):
            return False
    return True


def strip_until_disconnected(weights: Mapping[tuple[Taxon, Taxon], int], nodes: Iterable[Taxon]) -> list[list[Taxon]]:
    """Remove maximum-weight edges, level by level, until the graph falls apart."""
    members = sorted(nodes)
    if len(members) < 2:
        return [members]
    edges = sorted(combinations(members, 2), key=lambda p: weights[p])
    while edges:
        top = weights[edges[-1]]
        while edges and weights[edges[-1]] == top:
            edges.pop()
        parts = _components(members, edges)
        if len(parts) > 1:
            return parts
    return [[x] for x in members]


def sn_decomposition(h: Mapping[tuple[Taxon, Taxon], int], triplets: TripletSet, taxa: Iterable[Taxon] | None = None) -> list[list[Taxon]]:
    """Blocks obtained by heavy-edge stripping, refined until each is an SN-set.

    The whole taxon set is always stripped at least once; a resulting
    component is accepted as soon as it is an SN-set, otherwise it is
    stripped again with its own local maximum.
    """
    names = sorted(taxa) if taxa is not None else sorted(h.taxa if isinstance(h, HeightFunction) else triplets.taxa)
    relevant = list(restrict_to(triplets, names))
    blocks: list[list[Taxon]] = []

    def refine(members: list[Taxon]) -> None:
        for part in strip_until_disconnected(h, members):
            if len(part) == 1 or is_sn_set(part, relevant):
                blocks.append(part)
            else:
                refine(part)

    if len(names) <= 1:
        return [names] if names else []
    refine(names)
    return sorted(blocks, key=lambda b: b[0])


def restrict_to(triplets: Iterable[Triplet], taxa: Iterable[Taxon]) -> list[Triplet]:
    keep = set(taxa)
    return [t for t in triplets if t.taxa <= keep]


@dataclass(frozen=True)
class ContractedInstance:
    """The instance after replacing each block by one representative node.

    ``blocks`` maps each representative name to its block (a singleton block
    keeps the taxon's own name).
    """

    blocks: dict[Taxon, tuple[Taxon, ...]]
    weights: HeightFunction
    triplets: TripletSet

    @property
    def nodes(self) -> list[Taxon]:
        return sorted(self.blocks)


def representative_names(blocks: Iterable[Iterable[Taxon]], taxa: Iterable[Taxon]) -> dict[Taxon, tuple[Taxon, ...]]:
    taken = set(taxa)
    out = {}
    for block in blocks:
        members = tuple(sorted(block))
        if len(members) == 1:
            out[members[0]] = members
            continue
        name = "{" + ",".join(members) + "}"
        while name in taken or name in out:
            name += "'"
        out[name] = members
    return out


def contract(h: Mapping[tuple[Taxon, Taxon], int], triplets: TripletSet, partition: Iterable[Iterable[Taxon]]) -> ContractedInstance:
    """Collapse blocks to single nodes.

    Weights between representatives are the minimum over cross-block pairs;
    a triplet survives, renamed, only when its three taxa fall in three
    different blocks.
    """
    parts = [sorted(p) for p in partition]
    all_taxa = [x for p in parts for x in p]
    if len(set(all_taxa)) != len(all_taxa):
        raise ValueError("partition blocks overlap")
    blocks = representative_names(parts, all_taxa)
    owner = {x: rep for rep, members in blocks.items() for x in members}
    weights = {}
    for r1, r2 in combinations(sorted(blocks), 2):
        weights[(r1, r2)] = min(h[pair(x, y)] for x in blocks[r1] for y in blocks[r2])
    contracted = []
    for t in triplets:
        if not t.taxa <= owner.keys():
            continue
        a, b, c = owner[t.left1], owner[t.left2], owner[t.right]
        if len({a, b, c}) == 3:
            contracted.append(Triplet(a, b, c))
    return ContractedInstance(blocks, HeightFunction(weights, blocks), TripletSet(contracted))
