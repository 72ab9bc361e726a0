"""Information geometry of repeated quantum measurements.

Build small entangled photon states, compute exact or sampled detector
statistics, and turn the Shannon entropies of the resulting bit streams
into geometric quantities: pairwise information distances, triangle areas,
tetrahedron volumes, Euclidean comparisons, and inequality-violation
searches over detector angles.
"""

__version__ = "0.1.0"

from .bitstream import (
    BitRecord,
    convergence_report,
    empirical_distribution,
    format_bit_record,
    parse_bit_record,
    sample_runs,
    total_variation,
    write_bit_record,
)
from .born import (
    ConditionalTable,
    OutcomeDistribution,
    conditional,
    joint_distribution,
    marginalize,
    post_measurement_state,
    sequential_distribution,
)
from .entropy import (
    EntropyTable,
    build_entropy_table,
    conditional_entropy,
    entropy_bits,
    joint_entropy,
    shannon,
)
from .geometry import (
    EmbeddabilityReport,
    FaceGeometry,
    HeronResult,
    OctahedronReport,
    PathCheck,
    SimplexGeometry,
    area,
    cayley_menger_embeddable,
    distance,
    heron_area,
    k_volume,
    octahedron_report,
    quad_path_check,
    simplex_report,
    volume,
)
from .scenarios import (
    PRESETS,
    CriticalPoint,
    QuadrilateralReport,
    ScanResult,
    SearchResult,
    SweepRow,
    ViolationScanRow,
    area_surface_fn,
    critical_points,
    quadrilateral_report,
    scan_delta,
    schumacher_scenario,
    search_violation,
    surface_point,
    sweep_surface,
)
from .states import (
    DetectorSetting,
    Projector,
    StateVector,
    detector_projectors,
    load_state,
    make_named_state,
)

__all__ = [
    "__version__",
    "BitRecord",
    "ConditionalTable",
    "CriticalPoint",
    "DetectorSetting",
    "EmbeddabilityReport",
    "EntropyTable",
    "FaceGeometry",
    "HeronResult",
    "OctahedronReport",
    "OutcomeDistribution",
    "PathCheck",
    "PRESETS",
    "Projector",
    "QuadrilateralReport",
    "ScanResult",
    "SearchResult",
    "SimplexGeometry",
    "StateVector",
    "SweepRow",
    "ViolationScanRow",
    "area",
    "area_surface_fn",
    "build_entropy_table",
    "cayley_menger_embeddable",
    "conditional",
    "conditional_entropy",
    "convergence_report",
    "critical_points",
    "detector_projectors",
    "distance",
    "empirical_distribution",
    "entropy_bits",
    "format_bit_record",
    "heron_area",
    "joint_distribution",
    "joint_entropy",
    "k_volume",
    "load_state",
    "make_named_state",
    "marginalize",
    "octahedron_report",
    "parse_bit_record",
    "post_measurement_state",
    "quad_path_check",
    "quadrilateral_report",
    "sample_runs",
    "scan_delta",
    "schumacher_scenario",
    "search_violation",
    "sequential_distribution",
    "shannon",
    "simplex_report",
    "surface_point",
    "sweep_surface",
    "total_variation",
    "volume",
    "write_bit_record",
]
