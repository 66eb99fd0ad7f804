"""Freezing sets of finite digital images.

Analyze subsets of Z^n under c_u adjacency, decide whether a set of points
freezes every continuous self-map, search for small freezing sets and
certify freezing by fixed-point propagation.
"""

from freezeset.errors import (
    BudgetExhaustedError,
    CapExceededError,
    DisconnectedImageError,
    FreezeSetError,
    ImageError,
    NotContinuousError,
)
from freezeset.lattice import (
    DigitalImage,
    Isometry,
    PathInfo,
    adjacent,
    apply_isometry,
    articulation_points,
    boundary,
    components,
    is_connected,
    neighborhood,
    shortest_path_info,
)
from freezeset.selfmaps import (
    SelfMap,
    check_pulling_consistency,
    fixed_points,
    is_continuous,
    is_continuous_by_definition,
)
from freezeset.analysis import (
    AnalysisReport,
    ExtremumRecord,
    analyze,
    degree_one_points,
    local_extrema,
    segment_type,
)
from freezeset.oracle import (
    SearchBudget,
    Verdict,
    enumerate_continuous_maps,
    is_excludable_bruteforce,
    is_minimal_freezing,
    minimum_freezing_sets,
    search_nonidentity_map,
    verify_freezing,
)
from freezeset.certifier import (
    Certificate,
    PropagationTrace,
    certify_freezing,
    propagate_fixed,
    recheck_trace,
)

__version__ = "0.1.0"

__all__ = [
    "AnalysisReport",
    "BudgetExhaustedError",
    "CapExceededError",
    "Certificate",
    "DigitalImage",
    "DisconnectedImageError",
    "ExtremumRecord",
    "FreezeSetError",
    "ImageError",
    "Isometry",
    "NotContinuousError",
    "PathInfo",
    "PropagationTrace",
    "SearchBudget",
    "SelfMap",
    "Verdict",
    "adjacent",
    "analyze",
    "apply_isometry",
    "articulation_points",
    "boundary",
    "certify_freezing",
    "check_pulling_consistency",
    "components",
    "degree_one_points",
    "enumerate_continuous_maps",
    "fixed_points",
    "is_connected",
    "is_continuous",
    "is_continuous_by_definition",
    "is_excludable_bruteforce",
    "is_minimal_freezing",
    "local_extrema",
    "minimum_freezing_sets",
    "neighborhood",
    "propagate_fixed",
    "recheck_trace",
    "search_nonidentity_map",
    "segment_type",
    "shortest_path_info",
    "verify_freezing",
]
