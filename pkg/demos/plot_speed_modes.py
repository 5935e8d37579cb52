"""
Speed modes
===========

Slow mode follows every tied candidate when picking reticulation leaves,
normal mode samples a few and fast mode just one. All of them end with
every triplet displayed; they can differ in how many reticulations it took.
"""

import time

from tripnet import SpeedMode, consistent_count, emit_enewick, parse_triplets, reticulation_count, tripnet

text = """
2 3|1
4 1|2
5 2|1
2 6|1
3 4|1
1 3|5
1 3|6
5 4|1
4 6|1
5 6|1
3 4|2
3 5|2
2 6|3
4 5|2
2 4|6
5 6|2
3 4|5
3 4|6
5 6|3
5 6|4
"""
tau = parse_triplets(text)

for speed in ("slow", "normal", "fast"):
    for seed in (0, 1):
        t = time.perf_counter()
        net = tripnet(tau, SpeedMode(speed, seed))
        dt = time.perf_counter() - t
        print(f"{speed:6s} seed={seed} reticulations={reticulation_count(net)} "
              f"consistent={consistent_count(net, tau)}/{len(tau)} {dt:.3f}s")
        print("   ", emit_enewick(net))
