"""
Height functions and trees
==========================

A triplet set that fits a tree is turned into a graph on taxon pairs,
heights are read off its longest paths, and the tree is rebuilt from them.
"""

from tripnet import Triplet, TripletSet, build_pair_graph, dag_height, emit_enewick, hbuild, tree_height

tau = TripletSet(Triplet.parse(x) for x in ["kl|j", "kl|i", "jk|i", "jl|i"])

# each triplet ij|k points pair ij at the two pairs that contain k
graph = build_pair_graph(tau)
for source, target in graph.edges:
    print("".join(source), "->", "".join(target))

h = dag_height(graph)
print({"".join(p): v for p, v in h.items()})

tree = hbuild(h)
print(emit_enewick(tree))

# the tree's own height function is the same map
assert dict(tree_height(tree)) == dict(h)
