"""circumseq: iterated circumcenter sequences in R^d.

Construction, analysis, and synthesis of sequences where each point is the
circumcenter of the preceding d+1 points: characteristic sequences and their
(d+2)-periodic cycle algebra, the similarity law with its scale factor and
shift vector, extremal cycle products, and exactly periodic orbits of period
2d+4.
"""

from ._kernels import BACKEND
from .engine import (
    GROWTH_STOP_REL,
    PERIOD_TOL_REL,
    SHRINK_STOP_REL,
    IcsAnalysis,
    IcsSequence,
    SeedSimplex,
    analyze_sequence,
    characteristic_sequence,
    detect_period,
    diameter,
    empirical_scale_factor,
    generate,
    period_residual,
    shift_vector,
    special_offset,
    step,
    verify_ics,
)
from .errors import (
    CircumseqError,
    ConstraintViolationError,
    DegenerateGeometryError,
    DimensionMismatchError,
    InputFormatError,
    InvalidArgumentError,
    NumericalInstabilityError,
)
from .geometry import (
    CircumsphereResult,
    affine_rank,
    circumcenter,
    circumcenter_same_side,
    circumradius_sq_from_lengths,
    circumsphere_in_hull,
    is_general_position,
    is_good_position,
)
from .lyness import (
    CharCycle,
    MaxProductResult,
    complete_cycle,
    continuant,
    continuant_prefixes,
    cross_ratio,
    cross_ratio_cycle,
    cycle_product_sqrt,
    in_param_domain,
    is_critical_in_last,
    lyness_orbit,
    max_product,
    maximize_product_numeric,
    sample_param_domain,
    solve_periodic,
)
from .synthesis import build_from_params, build_periodic, construct_seed
from .tolerance import DEFAULT_TOL, Tolerance

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "DEFAULT_TOL",
    "GROWTH_STOP_REL",
    "PERIOD_TOL_REL",
    "SHRINK_STOP_REL",
    "CharCycle",
    "CircumseqError",
    "CircumsphereResult",
    "ConstraintViolationError",
    "DegenerateGeometryError",
    "DimensionMismatchError",
    "IcsAnalysis",
    "IcsSequence",
    "InputFormatError",
    "InvalidArgumentError",
    "MaxProductResult",
    "NumericalInstabilityError",
    "SeedSimplex",
    "Tolerance",
    "affine_rank",
    "analyze_sequence",
    "build_from_params",
    "build_periodic",
    "characteristic_sequence",
    "circumcenter",
    "circumcenter_same_side",
    "circumradius_sq_from_lengths",
    "circumsphere_in_hull",
    "complete_cycle",
    "construct_seed",
    "continuant",
    "continuant_prefixes",
    "cross_ratio",
    "cross_ratio_cycle",
    "cycle_product_sqrt",
    "detect_period",
    "diameter",
    "empirical_scale_factor",
    "generate",
    "in_param_domain",
    "is_critical_in_last",
    "is_general_position",
    "is_good_position",
    "lyness_orbit",
    "max_product",
    "maximize_product_numeric",
    "period_residual",
    "sample_param_domain",
    "shift_vector",
    "solve_periodic",
    "special_offset",
    "step",
    "verify_ics",
]
