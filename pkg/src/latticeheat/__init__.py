"""Discrete semilinear heat dynamics on a box lattice.

Simulates the nonlinear neighbor-average dynamics with finite-time blow-up
detection, solves the linear companion problem directly and by sine-mode
decomposition, builds the majorant super-solution, and evaluates the
small-data global-existence bounds.
"""

from .domain import BoxDomain, Field, neighbor_average
from .evolution import (
    BlewUpAt,
    BlowupReport,
    BlowupSignal,
    Params,
    Survived,
    normalize_scaling,
    simulate,
    step_nonlinear,
)
from .majorant import (
    BoundReport,
    ComparisonVerdict,
    MajorantTrace,
    ThresholdResult,
    bound_alpha_gt_1,
    bound_alpha_le_1,
    compute_trace,
    find_threshold,
    majorant_field,
    tail_start,
    verify_comparison,
)
from .spectral import (
    ModeTable,
    SpectralCoeffs,
    analyze,
    apply_M,
    eigenvalue,
    mode_table,
    step_linear_direct,
    synthesize,
)

__all__ = [
    "BoxDomain",
    "Field",
    "neighbor_average",
    "Params",
    "BlowupReport",
    "BlowupSignal",
    "BlewUpAt",
    "Survived",
    "step_nonlinear",
    "simulate",
    "normalize_scaling",
    "ModeTable",
    "SpectralCoeffs",
    "mode_table",
    "apply_M",
    "eigenvalue",
    "analyze",
    "synthesize",
    "step_linear_direct",
    "MajorantTrace",
    "BoundReport",
    "ComparisonVerdict",
    "ThresholdResult",
    "compute_trace",
    "majorant_field",
    "verify_comparison",
    "bound_alpha_le_1",
    "bound_alpha_gt_1",
    "tail_start",
    "find_threshold",
]

__version__ = "0.1.0"
