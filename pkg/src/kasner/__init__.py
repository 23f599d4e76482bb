"""m-Kasner descendants of convex polygons and their area ratios."""

from .analysis import (
    empirical_extremize,
    hexagon_double_ear_inequality,
    lemma_four_sides_index,
    pentagon_aggregates,
    pentagon_identity_residuals,
    plucker_residual,
    remove_vertex_check,
)
from .descent import (
    BoundInterval,
    KasnerParams,
    RatioReport,
    affine_regularity_defect,
    area_ratio,
    bound_interval,
    closed_form_ratio,
    descendant,
    ear_decomposition_ratio,
    measured_ratio,
    pentagon_recurrence_coeffs,
    recurrence_residual,
    sequence,
)
from .errors import (
    BudgetExhaustedError,
    ConstructionError,
    ConvexityError,
    DegenerateError,
    KasnerError,
    LemmaViolationError,
    RetryExhaustedError,
    UnsupportedError,
    WrongArityError,
)
from .geom_core import (
    DEFAULT_TOL,
    Polygon,
    Tolerance,
    Vec2,
    centroid,
    ear_areas,
    edge_vectors,
    is_convex_ccw,
    polygon_area,
    regular_polygon,
    signed_area,
    wedge,
)
from .parametric import (
    HexagonParams,
    PentagonParams,
    build_hexagon,
    build_pentagon,
    hexagon_lower_family,
    hexagon_ratio_closed,
    hexagon_upper_family,
    ngon_lower_construction,
    ngon_upper_chain,
    ngon_upper_construction,
    pentagon_lower_family,
    pentagon_ratio_closed,
    pentagon_upper_family,
)
from .sampler import SamplerConfig, random_convex_polygon, sample_polygons

__version__ = "0.1.0"
