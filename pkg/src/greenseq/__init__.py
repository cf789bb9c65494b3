"""Exact quiver mutation and maximal green sequences for type-A quivers."""

from .quiver import (
    EntryOverflowError,
    ExtendedQuiver,
    Permutation,
    Quiver,
    QuiverError,
    QuiverParseError,
    SignCoherenceError,
    all_colors,
    apply_sequence,
    coframe,
    frame,
    format_extended,
    green_vertices,
    matrix_mutate,
    mutate,
    parse_quiver,
    serialize_quiver,
    subquiver,
    vertex_color,
)
from .green import (
    DepthGuardExceeded,
    ExchangeGraphSlice,
    GreenTrace,
    MgsReport,
    NodeBoundExceeded,
    NotAcyclicError,
    NotMaximalGreenError,
    acyclic_mgs,
    enumerate_mgs,
    first_mgs,
    exchange_graph,
    exchange_graph_dot,
    induced_permutation,
    is_maximal_green,
    matrix_hash,
    verify_green,
)
from .directsum import (
    Decomposition,
    DirectSumError,
    SummandNotGreenError,
    color_count,
    concat_mgs,
    decompose,
    decomposition_report,
    direct_sum,
    net_arrows,
)
from .typea import (
    CycleTree,
    NoCyclesError,
    NotIrreducibleError,
    NotTypeAError,
    TypeAReport,
    cycle_tree,
    is_type_a,
    leaf_cycles,
    oriented_triangles,
    type_a_report_text,
)
from .embedding import (
    Branch,
    EmbeddedCycle,
    EmbeddedQuiver,
    EmbeddingError,
    base_cycle,
    branches,
    closing_vertex,
    descent_path,
    embed,
    embedding_report,
    hanging_chain,
    northeast_region,
    outlets,
    validate_embedding,
)
from .assocseq import PipelineResult, StageParts, associated_sequence, mgs_for_type_a, stage_parts
from .permmodel import (
    PermIdentityReport,
    check_permutation_identities,
    rotation_table,
    stage_permutation,
    stage_rotation,
)
from .matrixmodel import (
    FrontierMatrix,
    ModelReport,
    PendingCycle,
    PredictedMatrix,
    base_c_vector,
    frontier_matrix,
    pending_cycles,
    pending_set,
    predicted_matrix,
    verify_model,
)

__version__ = "0.1.0"
