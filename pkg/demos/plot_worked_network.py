"""
A network with one reticulation
===============================

Fifteen triplets on seven taxa contradict each other, so no tree displays
them all. The run below prints each step and the final network.
"""

from tripnet import Triplet, TripletSet, consistent_count, emit_enewick, level, reticulation_count, run_tripnet

raw = "ij|l jk|i kl|j kl|i no|m lo|k jl|o mn|l mn|j no|k mo|i jk|n ij|o ik|m il|n"
tau = TripletSet(Triplet.parse(x) for x in raw.split())

result = run_tripnet(tau)
for line in result.trace:
    print(line)

# one pair-graph edge is dropped to break the only cycle
for edge in result.removed_edges:
    print("removed", "".join(edge.source), "->", "".join(edge.target), [str(t) for t in edge.support])

net = result.network
print(emit_enewick(net))
print("reticulations", reticulation_count(net), "level", level(net))
print("consistent", consistent_count(net, tau), "of", len(tau))
