"""Rooted phylogenetic networks from arbitrary sets of rooted triplets.

The pipeline turns triplets into a height function on taxon pairs, rebuilds
a tree from it when possible, and otherwise splits the taxa into SN-sets,
picks reticulation leaves, and patches the network until every input
triplet is displayed.
"""

from .consistency import (
    consistent_count,
    inconsistent_triplets,
    level,
    network_height,
    reticulation_count,
    tree_height,
    triplet_in_network,
    triplet_in_tree,
    triplets_of,
)
from .distance import DistanceMatrix, Quartet, closure, infer_quartet, qot_triplets
from .hbuild import hbuild, realize_height
from .io import emit_dot, emit_enewick, parse_enewick, parse_matrix, parse_triplets
from .ip_height import brute_force_ip, ip_optimal_height, min_feasible_s
from .model import (
    HeightFunction,
    PhyloNetwork,
    PhyloTree,
    Triplet,
    TripletSet,
    binarize,
    is_valid_network,
    leaf_set,
    network_problems,
    restrict,
)
from .pair_graph import PairGraph, build_pair_graph, dag_height, is_dag, longest_path_length, make_dag
from .reticulation import (
    SpeedMode,
    criterion_one,
    criterion_three,
    criterion_two,
    insert_reticulation_leaf,
    repair,
    run_tripnet,
    select_reticulations,
    tripnet,
)
from .sn_sets import contract, is_sn_set, sn_decomposition

__version__ = "0.1.0"
