"""Text formats: triplet lists, PHYLIP distance matrices, extended Newick and DOT."""

from __future__ import annotations

import hashlib
import re

from .consistency import Rooted
from .distance import DistanceMatrix
from .model import PhyloNetwork, PhyloTree, Triplet, TripletSet, network_problems


class ParseError(ValueError):
    pass


def parse_triplets(text: str) -> TripletSet:
    """One ``A B | C`` per line; ``#`` starts a comment line, blank lines are skipped."""
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.count("|") != 1:
            raise ParseError(f"expected 'A B | C', line {lineno}: {raw!r}")
        left, right = line.split("|")
        names, rhs = left.split(), right.split()
        if len(names) != 2 or len(rhs) != 1:
            raise ParseError(f"expected 'A B | C', line {lineno}: {raw!r}")
        if len({*names, *rhs}) != 3:
            raise ParseError(f"duplicate taxon, line {lineno}")
        out.append(Triplet(names[0], names[1], rhs[0]))
    return TripletSet(out)


def format_triplets(triplets: TripletSet) -> str:
    return "".join(f"{t.left1} {t.left2} | {t.right}\n" for t in triplets)


def parse_matrix(text: str, atol: float = 1e-6) -> DistanceMatrix:
    """PHYLIP square matrix: a taxon count, then ``name d1 ... dn`` rows."""
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise ParseError("empty matrix file")
    try:
        n = int(lines[0].split()[0])
    except ValueError:
        raise ParseError(f"first line must be the taxon count, got {lines[0]!r}") from None
    if n < 2:
        raise ParseError(f"matrix needs at least 2 taxa, got {n}")
    rows = lines[1:]
    if len(rows) != n:
        raise ParseError(f"expected {n} rows, found {len(rows)}")
    names, values = [], []
    for lineno, row in enumerate(rows, start=2):
        parts = row.split()
        if len(parts) != n + 1:
            raise ParseError(f"expected a name and {n} distances, line {lineno}")
        names.append(parts[0])
        try:
            values.append([float(x) for x in parts[1:]])
        except ValueError:
            raise ParseError(f"non-numeric distance, line {lineno}") from None
    try:
        return DistanceMatrix(names, values, atol=atol)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def format_matrix(d: DistanceMatrix) -> str:
    lines = [str(len(d.taxa))]
    for name, row in zip(d.taxa, d.values):
        lines.append(name + " " + " ".join(repr(float(x)) for x in row))
    return "\n".join(lines) + "\n"


# -- extended Newick ---------------------------------------------------------

_LABEL = re.compile(r"[^(),;:\[\]\s]+")


def _signatures(net: Rooted) -> dict[int, str]:
    """Structure digests that ignore node ids, used to order children canonically."""
    order = net.topological_order()
    if order is None:
        raise ValueError("cannot serialize a cyclic graph")
    sig: dict[int, str] = {}
    for v in reversed(order):
        kids = sorted(sig[c] for c in net.children[v])
        body = net.labels.get(v, "") + "(" + ",".join(kids) + ")" + ("H" if len(net.parents(v)) > 1 else "")
        sig[v] = hashlib.sha1(body.encode()).hexdigest()[:16]
    return sig


def emit_enewick(net: Rooted) -> str:
    """Extended Newick; each reticulation is written once in full and then as ``#Hk``.

    Hybrid numbers follow first appearance in a depth-first walk whose child
    order depends only on the labelled structure, so isomorphic inputs give
    identical text. Trees come out as plain Newick.
    """
    below = net.descendant_taxa()
    sig = _signatures(net)
    number: dict[int, int] = {}

    def key(c: int):
        return (min(below[c]) if below[c] else "", sig[c])

    def visit(v: int) -> str:
        hybrid = len(net.parents(v)) > 1
        if hybrid and v in number:
            return f"#H{number[v]}"
        if hybrid:
            number[v] = len(number) + 1
        tag = f"#H{number[v]}" if hybrid else ""
        if not net.children[v]:
            return net.labels.get(v, "") + tag
        inner = ",".join(visit(c) for c in sorted(net.children[v], key=key))
        return f"({inner}){net.labels.get(v, '')}{tag}"

    return visit(net.root) + ";"


def parse_enewick(text: str) -> PhyloNetwork:
    """Parse extended Newick with ``#H`` hybrid labels into a network.

    The result is marked relaxed when it breaks the binary degree rules.
    """
    s = "".join(text.split())
    if not s.endswith(";"):
        raise ParseError("eNewick must end with ';'")
    s = s[:-1]
    pos = 0
    children: dict[int, list[int]] = {}
    labels: dict[int, str] = {}
    hybrids: dict[str, int] = {}
    counter = iter(range(1 << 30))

    def node_for(label: str) -> int:
        if "#" in label:
            name, tag = label.split("#", 1)
            if tag not in hybrids:
                hybrids[tag] = next(counter)
                children[hybrids[tag]] = []
            v = hybrids[tag]
        else:
            name = label
            v = next(counter)
            children[v] = []
        if name:
            if v in labels and labels[v] != name:
                raise ParseError(f"hybrid #{label.split('#', 1)[1]} has two names")
            labels[v] = name
        return v

    def parse_subtree() -> int:
        nonlocal pos
        kids = []
        if pos < len(s) and s[pos] == "(":
            pos += 1
            kids.append(parse_subtree())
            while pos < len(s) and s[pos] == ",":
                pos += 1
                kids.append(parse_subtree())
            if pos >= len(s) or s[pos] != ")":
                raise ParseError(f"expected ')' at offset {pos}")
            pos += 1
        m = _LABEL.match(s, pos)
        label = m.group(0) if m else ""
        pos = m.end() if m else pos
        if pos < len(s) and s[pos] == ":":
            m2 = re.compile(r":[^,();]*").match(s, pos)
            pos = m2.end()
        if not kids and not label:
            raise ParseError(f"empty leaf at offset {pos}")
        v = node_for(label)
        if kids:
            if children[v]:
                raise ParseError(f"hybrid {label} defined twice")
            children[v] = kids
        return v

    root = parse_subtree()
    if pos != len(s):
        raise ParseError(f"unexpected text at offset {pos}: {s[pos:pos + 10]!r}")
    internal_named = [v for v in labels if children[v]]
    for v in internal_named:
        del labels[v]
    net = PhyloNetwork({u: tuple(cs) for u, cs in children.items()}, labels, root)
    if network_problems(net, strict=True):
        net = PhyloNetwork(net.children, net.labels, net.root, relaxed=True)
    return net


def emit_dot(net: Rooted, name: str = "N") -> str:
    lines = [f"digraph {name} {{"]
    for v in net.nodes:
        if v in net.labels:
            lines.append(f'  n{v} [label="{net.labels[v]}", shape=plaintext];')
        elif len(net.parents(v)) > 1:
            lines.append(f'  n{v} [label="", shape=box, width=0.15, height=0.15];')
        else:
            lines.append(f'  n{v} [label="", shape=point];')
    for u, c in net.edges:
        lines.append(f"  n{u} -> n{c};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def tree_from_newick(text: str) -> PhyloTree:
    return parse_enewick(text).to_tree()


