"""Triplets from a distance matrix and an outgroup, and the triplet closure.

Each three-taxon subset is completed with the outgroup into a quartet whose
topology comes from the four-point condition; dropping the outgroup from an
informative quartet leaves a rooted triplet.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Mapping, Sequence

import numpy as np

from .model import Pair, Taxon, Triplet, TripletSet, pair

DEFAULT_TOL = 1e-9


class DistanceMatrix:
    """Symmetric, nonnegative, zero-diagonal distances over named taxa."""

    def __init__(self, taxa: Sequence[Taxon], values, atol: float = 1e-6) -> None:
        names = list(taxa)
        if len(set(names)) != len(names) or any(not n for n in names):
            raise ValueError("taxon names must be distinct and nonempty")
        d = np.asarray(values, dtype=float)
        if d.shape != (len(names), len(names)):
            raise ValueError(f"matrix shape {d.shape} does not match {len(names)} taxa")
        if not np.all(np.isfinite(d)) or np.any(d < 0):
            raise ValueError("distances must be finite and nonnegative")
        if np.any(np.abs(np.diag(d)) > atol):
            raise ValueError("diagonal must be zero")
        if not np.allclose(d, d.T, atol=atol, rtol=0):
            raise ValueError("matrix is not symmetric")
        d = (d + d.T) / 2
        np.fill_diagonal(d, 0.0)
        self.taxa = tuple(names)
        self._index = {n: k for k, n in enumerate(names)}
        self.values = d

    @classmethod
    def from_pairs(cls, taxa: Sequence[Taxon], distances: Mapping[tuple[Taxon, Taxon], float]) -> "DistanceMatrix":
        idx = {n: k for k, n in enumerate(taxa)}
        d = np.zeros((len(taxa), len(taxa)))
        for (a, b), v in distances.items():
            d[idx[a], idx[b]] = d[idx[b], idx[a]] = v
        return cls(taxa, d)

    def __call__(self, a: Taxon, b: Taxon) -> float:
        return float(self.values[self._index[a], self._index[b]])

    def restrict(self, taxa: Sequence[Taxon]) -> "DistanceMatrix":
        idx = [self._index[n] for n in taxa]
        return DistanceMatrix(taxa, self.values[np.ix_(idx, idx)])


@dataclass(frozen=True)
class Quartet:
    """Unrooted quartet ``ab|cd``; the two sides are sorted, then ordered."""

    side_a: Pair
    side_b: Pair

    def __post_init__(self) -> None:
        a, b = pair(*self.side_a), pair(*self.side_b)
        if len(set(a) | set(b)) != 4:
            raise ValueError("quartet needs four distinct taxa")
        a, b = min(a, b), max(a, b)
        object.__setattr__(self, "side_a", a)
        object.__setattr__(self, "side_b", b)

    def __str__(self) -> str:
        return f"{''.join(self.side_a)}|{''.join(self.side_b)}"


def infer_quartet(d: DistanceMatrix, taxa: Sequence[Taxon] | None = None, tol: float = DEFAULT_TOL) -> Quartet | None:
    """The informative quartet on four taxa, or None.

    A topology is returned only when its pair sum undercuts both alternatives
    by more than ``tol`` (absolute).
    """
    names = list(taxa) if taxa is not None else list(d.taxa)
    if len(names) != 4 or len(set(names)) != 4:
        raise ValueError(f"quartet inference needs exactly 4 taxa, got {len(names)}")
    i, j, k, l = names
    splits = [((i, j), (k, l)), ((i, k), (j, l)), ((i, l), (j, k))]
    sums = [d(*a) + d(*b) for a, b in splits]
    best = min(range(3), key=lambda n: sums[n])
    if all(sums[n] - sums[best] > tol for n in range(3) if n != best):
        a, b = splits[best]
        return Quartet(a, b)
    return None


def qot_triplets(d: DistanceMatrix, outgroup: Taxon, tol: float = DEFAULT_TOL) -> TripletSet:
    """One triplet per informative quartet ``{i, j, k, outgroup}``."""
    if outgroup not in d.taxa:
        raise ValueError(f"outgroup {outgroup!r} is not in the matrix")
    ingroup = sorted(n for n in d.taxa if n != outgroup)
    if len(ingroup) < 3:
        raise ValueError("need at least three taxa besides the outgroup")
    out = []
    for triple in combinations(ingroup, 3):
        q = infer_quartet(d, (*triple, outgroup), tol)
        if q is None:
            continue
        cherry = q.side_a if outgroup in q.side_b else q.side_b
        (rest,) = set(triple) - set(cherry)
        out.append(Triplet(cherry[0], cherry[1], rest))
    return TripletSet(out)


def _derive(t1: Triplet, t2: Triplet) -> Triplet | None:
    """Apply ``ij|k, js|i => js|k`` with ``t1 = ij|k`` and ``t2 = js|i``."""
    if t2.right not in t1.cherry:
        return None
    i = t2.right
    j = t1.left2 if t1.left1 == i else t1.left1
    if j not in t2.cherry:
        return None
    s = t2.left2 if t2.left1 == j else t2.left1
    k = t1.right
    if s == k:
        return None
    return Triplet(j, s, k)


def closure(triplets: TripletSet | Iterable[Triplet]) -> TripletSet:
    """Smallest superset closed under ``ij|k, js|i => js|k``."""
    known = set(triplets)
    by_cherry_member: dict[Taxon, set[Triplet]] = {}
    by_right: dict[Taxon, set[Triplet]] = {}

    def index(t: Triplet) -> None:
        by_cherry_member.setdefault(t.left1, set()).add(t)
        by_cherry_member.setdefault(t.left2, set()).add(t)
        by_right.setdefault(t.right, set()).add(t)

    for t in known:
        index(t)
    work = sorted(known)
    while work:
        t = work.pop()
        # t as the first premise: partners have right side in t's cherry
        candidates = [(t, u) for x in t.cherry for u in by_right.get(x, ())]
        # t as the second premise: partners contain t.right in their cherry
        candidates += [(u, t) for u in by_cherry_member.get(t.right, ())]
        for first, second in candidates:
            new = _derive(first, second)
            if new is not None and new not in known:
                known.add(new)
                index(new)
                work.append(new)
    return TripletSet(known)
