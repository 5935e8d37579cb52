import random

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from tripnet import PhyloTree, Triplet, emit_dot, emit_enewick, parse_enewick, parse_matrix, parse_triplets
from tripnet.io import ParseError, format_matrix, format_triplets, tree_from_newick

from conftest import SIX_TAXA
from oracles import random_network, weighted_tree


def as_graph(net):
    g = nx.DiGraph()
    for v in net.nodes:
        g.add_node(v, label=net.labels.get(v))
    g.add_edges_from(net.edges)
    return g


def same_network(a, b):
    return nx.is_isomorphic(as_graph(a), as_graph(b), node_match=lambda x, y: x["label"] == y["label"])


def test_parse_triplets():
    assert parse_triplets("i j | k\n") == {Triplet("i", "j", "k")}
    tau = parse_triplets(SIX_TAXA)
    assert len(tau) == 20 and tau.taxa == {"1", "2", "3", "4", "5", "6"}
    assert parse_triplets("# comment\n\n a b|c ") == {Triplet("a", "b", "c")}


@pytest.mark.parametrize("text, message", [
    ("i i | k", "duplicate taxon, line 1"),
    ("a b c", "line 1"),
    ("a b | c\na | b", "line 2"),
])
def test_parse_triplet_errors(text, message):
    with pytest.raises(ParseError, match=message):
        parse_triplets(text)


def test_format_round_trip():
    tau = parse_triplets(SIX_TAXA)
    assert parse_triplets(format_triplets(tau)) == tau


def test_matrix_round_trip():
    _, _, d = weighted_tree(random.Random(0), 5)
    back = parse_matrix(format_matrix(d))
    assert back.taxa == d.taxa
    assert abs(back.values - d.values).max() < 1e-12


@pytest.mark.parametrize("text", ["", "1\na 0\n", "2\na 0 1\n", "2\na 0 x\nb 1 0\n", "x\n"])
def test_matrix_errors(text):
    with pytest.raises(ParseError):
        parse_matrix(text)


def test_enewick_hybrid():
    net = parse_enewick("((i,(j)#H1),(#H1,k));")
    assert net.reticulations() and net.taxa == {"i", "j", "k"}
    assert emit_enewick(net) == "((i,(j)#H1),(#H1,k));"


def test_tree_newick():
    assert tree_from_newick("((a,b),c);") == PhyloTree.from_nested((("a", "b"), "c"))
    assert emit_enewick(PhyloTree.from_nested(("c", ("b", "a")))) == "((a,b),c);"
    assert tree_from_newick("((a:1,b:2)x:0.5,c);") == PhyloTree.from_nested((("a", "b"), "c"))


@pytest.mark.parametrize("text", ["(a,b)", "(a,b;", "(a,,b);", "(a,b)c;x"])
def test_enewick_errors(text):
    with pytest.raises(ParseError):
        parse_enewick(text)


def test_dot_output():
    dot = emit_dot(parse_enewick("((i,(j)#H1),(#H1,k));"))
    assert dot.startswith("digraph") and "shape=box" in dot and 'label="j"' in dot


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10_000), st.integers(3, 7), st.integers(0, 3))
def test_enewick_round_trip(seed, n, r):
    net = random_network(random.Random(seed), n, r)
    text = emit_enewick(net)
    back = parse_enewick(text)
    assert same_network(net, back)
    assert emit_enewick(back) == text
