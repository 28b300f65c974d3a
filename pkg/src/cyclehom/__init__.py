"""Hom complexes of cycles and strings.

Library layout:

- graphs: finite graphs, cycle/path families, twin vertices
- complexes: the brute-force Hom(G, H) builder, faces, twin folds
- codec: returning-point codes, fast enumeration, code-level facets
- morse: partial matchings, acyclicity verification, collapse matchings
- homology: boundary matrices, exact Smith normal form, components
- census: closed-form counts, the component table, identities
- verify: the cross-check suite the CLI's `verify` command runs
"""

from .graphs import Graph, cycle, path, twins
from .complexes import (
    CellBudgetExceeded,
    HomComplex,
    MultiHomCell,
    build,
    closure,
    facets,
    fold_chain,
    fold_reduce,
    homomorphisms,
)
from .codec import (
    CellCode,
    ComponentKey,
    CycleSpec,
    VertexCode,
    component_key,
    decode_cell,
    decode_vertex,
    encode_cell,
    encode_vertex,
    enumerate_cells,
    enumerate_vertices,
    facets_of_code,
    format_code,
    parse_code,
)
from .morse import (
    MatchingStructureError,
    MorseReport,
    PartialMatching,
    first_entry_matching,
    pinned_stratum,
    predicted_critical_cell,
    right_shift_matching,
    star_cells,
    verify_matching,
)
from .homology import (
    BettiVector,
    ChainComplex,
    ComponentReport,
    analyze_components,
    betti,
    boundary_matrices,
    classify,
    classify_total,
    component_cells,
    invariant_factors,
)
from .census import (
    CensusEntry,
    alternating_identity,
    cell_count,
    euler_char,
    is_empty,
    table9,
    table9_row_counts,
)

__version__ = "0.1.0"
