"""qmet: finite quasi-metric spaces, their hulls, and coarse invariants."""

from .coarse import (
    BallFamily,
    DeltaEstimate,
    distance_to_embedding,
    estimate_delta,
    family_from_hull_point,
    family_violation,
    find_center,
    fixed_point_gap,
    min_delta,
    random_nonexpansive,
)
from .demos import demo_names, demo_space
from .gh import (
    Correspondence,
    GHResult,
    RoughInverse,
    RoughIsometryWitness,
    correspondence_from_rough_isometry,
    distortion,
    gh_exact,
    glue_space,
    rough_inverse,
    rough_isometry_from_correspondence,
    verify_rough_isometry,
)
from .hull import (
    DiagonalReport,
    HullSample,
    hull_as_qspace,
    metric_diag_check,
    net_gh_upper,
    sample_hull,
)
from .io import parse_space, space_to_csv, space_to_json
from .pairs import (
    AmplePair,
    ample_completion,
    double_conjugate,
    embed_point,
    extend_from_subspace,
    in_hull,
    is_ample,
    pair_dist,
    project_to_hull,
)
from .space import (
    AxiomReport,
    QSpace,
    SubsetRef,
    Violation,
    asym_defect,
    conjugate,
    dualize,
    hausdorff,
    is_isometric,
    largeness_constant,
    metric_convexity_defect,
    product_sup,
    random_qspace,
    restrict,
    symmetrize,
    triangle_closure,
    validate,
)

__version__ = "0.1.0"

__all__ = [
    "AmplePair",
    "AxiomReport",
    "BallFamily",
    "Correspondence",
    "DeltaEstimate",
    "DiagonalReport",
    "GHResult",
    "HullSample",
    "QSpace",
    "RoughInverse",
    "RoughIsometryWitness",
    "SubsetRef",
    "Violation",
    "ample_completion",
    "asym_defect",
    "conjugate",
    "correspondence_from_rough_isometry",
    "demo_names",
    "demo_space",
    "distance_to_embedding",
    "distortion",
    "double_conjugate",
    "dualize",
    "embed_point",
    "estimate_delta",
    "extend_from_subspace",
    "family_from_hull_point",
    "family_violation",
    "find_center",
    "fixed_point_gap",
    "gh_exact",
    "glue_space",
    "hausdorff",
    "hull_as_qspace",
    "in_hull",
    "is_ample",
    "is_isometric",
    "largeness_constant",
    "metric_convexity_defect",
    "metric_diag_check",
    "min_delta",
    "net_gh_upper",
    "pair_dist",
    "parse_space",
    "product_sup",
    "project_to_hull",
    "random_nonexpansive",
    "random_qspace",
    "restrict",
    "rough_inverse",
    "rough_isometry_from_correspondence",
    "sample_hull",
    "space_to_csv",
    "space_to_json",
    "symmetrize",
    "triangle_closure",
    "validate",
    "verify_rough_isometry",
]
