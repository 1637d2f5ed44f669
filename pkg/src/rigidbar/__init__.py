"""Generic rigidity of linearly constrained bar-joint frameworks.

Two independent routes decide independence and rigidity of a looped simple
graph in R^d: randomized exact rank of the rigidity matrix over a large prime
field, and counting (d-sparsity plus K_{d+2}-freeness) when every vertex
carries at least floor(d/2) loops.
"""

from .algebra import DEFAULT_PRIME, DEFAULT_TRIALS, ExactMatrix, RandomSource, nullspace_basis, rank
from .characterisation import (
    CharacterisationVerdict,
    combinatorial_independent,
    combinatorial_rigid,
    conjecture_instance_check,
    one_extension,
    pinned_sufficiency,
    zero_extension,
)
from .graph import Edge, GraphError, Loop, LoopedGraph, add_uniform_loops, contains_clique, induced_count
from .rigidity import (
    HypothesisError,
    Realisation,
    build_matrix,
    build_pinned_matrix,
    find_circuit,
    fixed_vertex_check,
    generic_rank,
    is_independent,
    is_rigid,
    motion_space,
)
from .sparsity import brute_force_sparse, has_tight_spanning_subgraph, is_tight, pebble_game

__version__ = "0.1.0"
