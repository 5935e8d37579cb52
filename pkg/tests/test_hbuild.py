import random

from hypothesis import given, settings, strategies as st

from tripnet import HeightFunction, PhyloTree, Triplet, TripletSet, build_pair_graph, dag_height, hbuild, network_height, realize_height, tree_height
from tripnet.consistency import triplet_in_tree, triplets_of
from tripnet.hbuild import split_at_max

from conftest import ts
from oracles import all_candidate_triplets, classic_build, random_tree


def test_four_taxa_tree(four_taxa):
    tree = hbuild(dag_height(build_pair_graph(four_taxa)))
    assert tree.to_nested() == PhyloTree.from_nested(("i", ("j", ("k", "l")))).to_nested()


def test_caterpillar_heights():
    h = tree_height(PhyloTree.from_nested(("l", ("i", ("j", "k")))))
    assert dict(h) == {("j", "k"): 1, ("i", "j"): 2, ("i", "k"): 2, ("i", "l"): 3, ("j", "l"): 3, ("k", "l"): 3}


def test_split_at_max():
    h = HeightFunction({("a", "b"): 1, ("a", "c"): 2, ("b", "c"): 2}, "abc")
    assert split_at_max(h, "abc") == (2, [["a", "b"], ["c"]])
    assert split_at_max(h, ["a", "b"], below=2) == (1, [["a"], ["b"]])


def test_connected_after_removal_fails():
    h = HeightFunction({("i", "j"): 1, ("j", "k"): 1, ("i", "k"): 2}, "ijk")
    assert hbuild(h) is None
    assert dict(network_height(realize_height(h))) == dict(h)


def test_removed_edges_stay_removed():
    # t1t3 goes with the first round; {t0,t1,t3} then splits on t0t1 alone
    tau = ts("t0 t1|t2, t0 t3|t1")
    tree = hbuild(dag_height(build_pair_graph(tau)))
    assert tree.to_nested() == PhyloTree.from_nested(((("t0", "t3"), "t1"), "t2")).to_nested()


def test_sparse_input_can_mislead():
    # heights of unequal-depth subtrees get shifted, so t1t2|t0 is lost
    tau = ts("t0 t5|t2, t0 t5|t3, t1 t2|t0, t1 t2|t3, t1 t4|t6, t1 t5|t6, t2 t4|t3, t2 t5|t3, t2 t5|t6")
    tree = hbuild(dag_height(build_pair_graph(tau)))
    assert classic_build(tau, tau.taxa) == ((("t0", "t5"), ("t1", "t2"), "t4"), "t3", "t6")
    assert not triplet_in_tree(tree, Triplet("t1", "t2", "t0"))


def test_single_level_star():
    h = HeightFunction({("a", "b"): 1, ("a", "c"): 1, ("b", "c"): 1}, "abc")
    net = realize_height(h)
    assert len(net.children[net.root]) == 3
    assert dict(network_height(net)) == dict(h)


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10_000), st.integers(2, 8))
def test_hbuild_tree_agrees_with_build_when_it_displays_input(seed, n):
    rng = random.Random(seed)
    full = sorted(triplets_of(random_tree(rng, n).to_network()))
    tau = TripletSet(rng.sample(full, rng.randint(0, len(full))))
    taxa = [f"t{x}" for x in range(n)]
    tree = hbuild(dag_height(build_pair_graph(tau, taxa)))
    assert tree is not None
    if all(triplet_in_tree(tree, t) for t in tau):
        assert tree.to_nested() == PhyloTree.from_nested(classic_build(tau, taxa)).to_nested()


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10_000), st.integers(2, 8))
def test_full_tree_height_round_trip(seed, n):
    tree = random_tree(random.Random(seed), n)
    h = tree_height(tree)
    assert hbuild(h) == tree
    assert dict(dag_height(build_pair_graph(triplets_of(tree.to_network()), tree.taxa))) == dict(h)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10_000), st.integers(3, 7))
def test_tree_height_characterizes_triplets(seed, n):
    tree = random_tree(random.Random(seed), n)
    h = tree_height(tree)
    for t in all_candidate_triplets(tree.taxa):
        forced = h[t.left1, t.left2] < min(h[t.left1, t.right], h[t.left2, t.right])
        assert forced == triplet_in_tree(tree, t)
