"""Spanning-tree inconsistency indices for complete and incomplete pairwise comparison matrices."""

from .errors import (
    DegenerateSample,
    DisconnectedGraph,
    EdgeNotInMatrix,
    IncompleteMatrix,
    InvalidMatrix,
    LengthMismatch,
    NonConvergence,
    ParseError,
    PCMError,
    TooSmall,
    TreeCountExceedsCap,
)
from .graph import (
    ComparisonGraph,
    SpanningTree,
    count_spanning_trees,
    enumerate_spanning_trees,
    induce_graph,
    laplacian,
)
from .indices import (
    ClassicalIndices,
    IndexReport,
    amd,
    analyze,
    classical_indices,
    kendall_tau,
    kii,
    mii,
    order_vector,
)
from .matrix import (
    PCMatrix,
    ValidationReport,
    format_matrix,
    from_weights,
    is_consistent,
    parse_matrix,
    read_matrix,
    validate,
)
from .weights import EigenResult, evm_weights, gmm_weights, gmt_weights, tree_weights

__version__ = "0.1.0"
