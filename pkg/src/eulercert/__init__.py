"""Exact Euler calculus on PL constructible functions, dimensions 1 to 3.

Builds and independently verifies mass-concentration certificates: chains of
decomposable sheaves with equal local Euler characteristics at matched chain
points and certified convolution-distance upper bounds per step.
"""

from .certify import (
    Certificate,
    CertificateStep,
    MetricKind,
    Report,
    concentrate_basepoints,
    concentrate_to_point,
    link,
    metric_eval,
    probe_metric,
    verify,
)
from .cellcomplex import Cell, CellComplex, arrangement
from .constructible import (
    ConstructibleFunction,
    EvalReport,
    Term,
    Verdict,
    equals,
    euler_integral,
    evaluate,
    from_terms,
    indicator,
    normalize,
    oracle_integral,
    oracle_pushforward_at,
    pushforward,
    zero_function,
)
from .distance import Bound, Matching, pair_bound, sum_bound
from .flags import Flag, build_flag, graded_sheaf
from .geometry import (
    AffineMap,
    Norm,
    Point,
    Polytope,
    RoundedReal,
    TOL_DIST,
    affine_image,
    affine_map,
    contains,
    directed_hausdorff,
    distance_point_to_polytope,
    from_vertices,
    hausdorff,
    homothet,
    reach,
    translate,
    vertex_centroid,
    volume,
)
from .sheafsum import (
    GlobalSections,
    SheafSum,
    Summand,
    Support,
    difference,
    global_sections,
    local_euler,
    plain,
    sheaf_sum,
)

__all__ = [
    "AffineMap",
    "Bound",
    "Cell",
    "CellComplex",
    "Certificate",
    "CertificateStep",
    "ConstructibleFunction",
    "EvalReport",
    "Flag",
    "GlobalSections",
    "Matching",
    "MetricKind",
    "Norm",
    "Point",
    "Polytope",
    "Report",
    "RoundedReal",
    "SheafSum",
    "Summand",
    "Support",
    "TOL_DIST",
    "Term",
    "Verdict",
    "affine_image",
    "affine_map",
    "arrangement",
    "build_flag",
    "concentrate_basepoints",
    "concentrate_to_point",
    "contains",
    "difference",
    "directed_hausdorff",
    "distance_point_to_polytope",
    "equals",
    "euler_integral",
    "evaluate",
    "from_terms",
    "from_vertices",
    "global_sections",
    "graded_sheaf",
    "hausdorff",
    "homothet",
    "indicator",
    "link",
    "local_euler",
    "metric_eval",
    "normalize",
    "oracle_integral",
    "oracle_pushforward_at",
    "pair_bound",
    "plain",
    "probe_metric",
    "pushforward",
    "reach",
    "sheaf_sum",
    "sum_bound",
    "translate",
    "verify",
    "vertex_centroid",
    "volume",
    "zero_function",
]
