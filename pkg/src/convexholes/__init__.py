"""Exact computational geometry and Monte Carlo experiments on convex holes
in random point sets: grid-exact primitives, an O(n^3) largest-hole search,
closed-form convex-position probabilities, lattice-quadrilateral
approximation of convex sets, and a reproducible experiment harness."""

from .geometry import (
    CCW,
    COLLINEAR,
    CW,
    DEFAULT_SCALE,
    Containment,
    ConvexPolygon,
    DegeneratePolygon,
    GeometryError,
    Point,
    RationalPoint,
    clip_to_region,
    contains_point,
    convex_hull,
    diameter_pair,
    fan_triangulate,
    is_convex_position,
    orient,
    polygon_area,
    supporting_extremes,
)
from .sampler import (
    PointSet,
    RegionSpec,
    SamplingError,
    SeedSpec,
    sample_uniform,
    strip_partition,
)
from .holes import (
    HoleResult,
    HoleSearchError,
    TooLargeForOracle,
    count_holes_of_size,
    largest_hole_bruteforce,
    largest_hole_dp,
)
from .convpos import (
    ChernoffParams,
    ExactProbability,
    LowerBoundPlan,
    ProbabilityError,
    chernoff_tail,
    check_square_lower_bound,
    check_triangle_upper_bound,
    empirical_p_convex,
    lower_bound_failure_prob,
    p_convex_parallelogram,
    p_convex_triangle,
    triangle_bound_threshold,
)
from .lattice import (
    ApproxError,
    ApproxTrace,
    HoleTooSmall,
    Lattice,
    LatticeQuadrilateral,
    SandwichReport,
    circumscribe,
    inscribe,
    verify_sandwich,
)

__version__ = "0.1.0"
