"""Exact ground-state entanglement entropy of the toric code on closed surfaces."""

from .engine import EntropyReport, entanglement_entropy, group_stats, sweep_rectangles
from .errors import (
    ArgumentError,
    ResourceLimitError,
    StructuralError,
    ToricEntropyError,
    UnsupportedOperationError,
    ValidationError,
)
from .gf2 import BitMatrix, BitVector, column_submatrix, enumerate_rowspace, rank
from .oracle import (
    SpectrumReport,
    StateSupport,
    build_ground_state,
    generic_disk_check,
    isospectral_check,
    reduced_spectrum,
    two_spin_concurrence,
    verify_ground_state,
)
from .regions import (
    Region,
    RegionStats,
    chain_region,
    links_region,
    orientation_region,
    rect_region,
    region_stats,
)
from .surface import (
    LadderPair,
    Surface,
    build_torus,
    genus_and_degeneracy,
    ladder_operators,
    load_surface,
)

__version__ = "0.1.0"
