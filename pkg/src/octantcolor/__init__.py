"""octantcolor: polychromatic coloring of 3D point sets against octant ranges.

Core pipeline: k-color a finite point set so that every translate of the
negative octant containing enough points contains all k colors, with the
threshold certified exactly by a brute-force verifier. Around it: the
self-covering octant construction with its validators, exact reductions
from homothetic triangles / bottomless rectangles / timed intervals, and
the adversary game engine that defeats every semi-online interval
colorer. Estimator-style wrappers (`OctantColorer`, `DualFamilyColorer`)
expose the pipeline to the scikit-learn ecosystem.
"""

from .adversary import (
    EagerBalanced,
    Exhausted,
    GameTranscript,
    LazyThreshold,
    RandomColorer,
    StrategyOutcome,
    ViolationFound,
    interval_count_bound,
    replay_transcript,
    run_duel,
    run_strategy,
    sample_algorithms,
    verify_exhausted_invariants,
)
from .coloring import (
    BaseColorerConfig,
    BaseColorResult,
    Coloring,
    LayeredResult,
    PipelineResult,
    SplitResult,
    base_two_color,
    color_point_set,
    layered_coloring,
    layered_threshold_bound,
    smooth_split_bound,
    split_coloring,
    split_threshold_bound,
)
from .cover import (
    CoverReport,
    OctantCover,
    build_octant_cover,
    find_small_cover,
    validate_cover,
)
from .errors import (
    DegenerateInput,
    EmptyHomothet,
    IllegalAssignment,
    InfiniteApex,
    InternalError,
    NotIndependent,
    OctantColorError,
    StrategyInternalError,
    TargetNotMet,
)
from .estimators import DualFamilyColorer, DualPointLift, OctantColorer
from .generators import generate_points
from .geometry import (
    INF,
    Octant,
    Point3,
    PointSet,
    compute_layers,
    dominates,
    enforce_general_position,
    is_independent,
    octant_contains,
)
from .reductions import (
    BottomlessRect,
    FamilyColoringResult,
    NormalizedTriangle,
    TimedInterval,
    color_dual_family,
    dual_query_lift,
    dualize_octants,
    plane_point_lift,
    rect_point_lift,
    rect_to_octant,
    timed_interval_to_rect,
    triangle_from_vertices,
    triangle_to_octant,
)
from .verify import (
    ColorfulnessReport,
    ColorfulWitness,
    IntervalViolation,
    canonical_apices,
    colorfulness_report,
    interval_properness_violation,
    octant_pattern,
    octant_patterns,
    realizable_subsets,
)

__version__ = "0.1.0"
