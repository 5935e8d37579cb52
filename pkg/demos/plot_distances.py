"""
Triplets from distances
=======================

Build an additive distance matrix from a weighted tree, read one triplet
from each quartet that contains the outgroup, and rebuild the rooted tree.
"""

import networkx as nx
import numpy as np

from tripnet import DistanceMatrix, closure, emit_enewick, qot_triplets, tripnet

# ((a,b),(c,(d,e))) with an outgroup hanging off the root
edges = [
    ("r", "x", 1.0), ("r", "y", 0.5), ("r", "out", 3.0),
    ("x", "a", 1.0), ("x", "b", 2.0),
    ("y", "c", 1.5), ("y", "z", 0.7),
    ("z", "d", 0.3), ("z", "e", 0.9),
]
g = nx.Graph()
g.add_weighted_edges_from(edges)

names = ["a", "b", "c", "d", "e", "out"]
lengths = dict(nx.all_pairs_dijkstra_path_length(g))
d = DistanceMatrix(names, np.array([[lengths[p][q] for q in names] for p in names]))
print(np.round(d.values, 2))

tau = qot_triplets(d, "out")
print(sorted(str(t) for t in tau))
print("closed under inference:", closure(tau) == tau)

print(emit_enewick(tripnet(tau)))
