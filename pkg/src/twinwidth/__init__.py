"""Twin-width toolkit: trigraph contraction sequences with verification,
exact small-instance twin-width, matrix divisions and grid/mixed minors,
neat-division coarsening, adjacency labels, a contraction-sequence codec,
and generators for the explicit families."""

from .trigraph import (
    BLACK,
    NONE,
    RED,
    ContractionSequence,
    ContractionStep,
    ParallelSequence,
    ParallelStep,
    SplitSpec,
    Trigraph,
    TrigraphError,
    VerifyReport,
    apply_parallel,
    contract,
    greedy_parallel_sequence,
    max_red_degree,
    parallel_trace,
    sequentialize,
    split,
    split_spec_of,
    verify_parallel,
    verify_sequence,
)
from .exact import (
    CapExceededError,
    census,
    tww_decide,
    tww_decide_bfs,
    tww_exact,
    tww_sequence,
)
from .matrices import (
    Division,
    TriMatrix,
    Zone,
    adjacency_matrix,
    classify_zone,
    find_corners,
    find_t_grid,
    find_t_mixed,
    has_corner,
    is_t_grid,
    is_t_mixed,
    marcus_tardos_bound,
    twin_order,
)
from .coarsen import (
    CoarsenParams,
    NeatDivision,
    check_membership,
    coarsen_to,
    delete_duplicate,
    extract_parallel_sequence,
    find_t_mixed_neat,
    greedy_coarsen,
    mixed_value,
    red_number,
    symmetric_fusion,
    versatile_tree,
)
from .labeling import (
    Label,
    LabelScheme,
    build_labels,
    decode_adjacency,
    label_query_cost,
    record_width,
)
from .codec import CodecBlob, codec_decode, codec_encode, read_blob, write_blob
from .families import (
    Layout,
    Permutation,
    Signing,
    SubdivisionOrder,
    gen_halfgraph_sandwich,
    gen_rook,
    has_biclique,
    host_replay,
    is_parallel_t_merge,
    iterated_lift,
    layout_check,
    layout_grid_bound,
    merge_decompose,
    product_sequence,
    product_width_bound,
    strong_product,
    subdivide,
    subdivision_order,
    two_lift,
)

__version__ = "0.1.0"
