import random

import pytest

from tripnet import HeightFunction, PhyloNetwork, PhyloTree, Triplet, TripletSet, binarize, leaf_set, network_problems, restrict
from tripnet.consistency import triplets_of

from oracles import random_tree


def test_triplet_canonical_and_parse():
    assert Triplet("j", "i", "k") == Triplet("i", "j", "k")
    assert Triplet.parse("ij|k") == Triplet("i", "j", "k")
    assert Triplet.parse("a b | c") == Triplet("a", "b", "c")
    assert str(Triplet("b", "a", "c")) == "ab|c"
    with pytest.raises(ValueError):
        Triplet("i", "i", "k")


def test_leaf_set_and_restrict(four_taxa):
    assert leaf_set(four_taxa) == {"i", "j", "k", "l"}
    got = restrict(TripletSet([Triplet.parse("ij|k"), Triplet.parse("kl|j")]), {"i", "j", "k"})
    assert got == {Triplet.parse("ij|k")}
    assert len(TripletSet([Triplet.parse("ij|k"), Triplet.parse("ji|k")])) == 1


def test_height_function_is_symmetric():
    h = HeightFunction({("a", "b"): 1, ("c", "a"): 2, ("b", "c"): 2}, "abc")
    assert h["b", "a"] == 1 and h["a", "c"] == 2
    assert h.max_value() == 2 and h.min_value() == 1
    with pytest.raises((KeyError, ValueError)):
        HeightFunction({("a", "b"): 1}, "abc")


def test_tree_from_nested():
    t = PhyloTree.from_nested(("i", ("j", ("k", "l"))))
    assert t.taxa == {"i", "j", "k", "l"}
    assert t.is_binary()
    assert t.to_nested() == PhyloTree.from_nested(((("l", "k"), "j"), "i")).to_nested()


def test_network_validation():
    ok = PhyloNetwork({0: (1, 2), 1: (3, 4), 2: (4, 5), 4: (6,), 3: (), 5: (), 6: ()}, {3: "i", 5: "k", 6: "j"}, 0)
    assert network_problems(ok) == []
    assert ok.reticulations() == [4]
    bad = PhyloNetwork({0: (1, 2, 3), 1: (), 2: (), 3: ()}, {1: "a", 2: "b", 3: "c"}, 0, relaxed=True)
    assert network_problems(bad, strict=True)


def test_binarize_keeps_triplets():
    rng = random.Random(3)
    for _ in range(50):
        tree = random_tree(rng, rng.randint(3, 8))
        b = binarize(tree)
        assert b.is_binary()
        assert triplets_of(tree.to_network()) <= triplets_of(b.to_network())
