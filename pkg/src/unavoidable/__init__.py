"""Unavoidable induced substructures of 2-edge-connected graphs.

Graphs go in, machine-checkable certificates come out.  ``find_unavoidable``
is the main entry point; ``certify`` checks any certificate independently.
"""

from .decomposition import BlockCutTree, bc_tree_stats, biconnected_components, block_cut_tree
from .errors import (
    AlgorithmError,
    DomainError,
    NotEulerianError,
    NotGuaranteedError,
    ParseError,
    PreconditionError,
    SizeLimitError,
    UnavoidableError,
    ValidationError,
)
from .extraction import NotFound, chain_between, find_unavoidable, flower_at, min_edge_disjoint_path_pair
from .graph import Graph, connectivity_profile, from_graph6, parse_graph, serialize_graph, to_graph6
from .oracle import bound, empirical_threshold, enumerate_2ec, find_clean_ladder, find_theta, max_clique
from .reductions import eulerian_circuit, reduce_minor, reduce_topological
from .structures import (
    ChainWitness,
    Clique,
    FlowerWitness,
    LadderWitness,
    PinchedLadderWitness,
    StructureCertificate,
    ThetaWitness,
    Valid,
    Violation,
    certify,
    crosses_and_fans,
)
from .supercleaning import f_supercleaning, superclean, superclean_or_outcome

__version__ = "0.1.0"
