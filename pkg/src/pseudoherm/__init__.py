"""Pseudo-hermitian random matrices phi = A B with an indefinite metric B.

A is a GUE matrix, B = diag(1, ..., 1, t, ..., t) with k leading ones.
The package samples spectra, evaluates the matching large-n eigenvalue
laws (real-axis density, complex-domain boundary, phase diagram), and
compares the two with explicit tolerances.
"""

from .linalg import (
    ClassificationError,
    EigensolverError,
    MetricSpec,
    Spectrum,
    build_metric,
    build_phi,
    carlson_bound,
    classify_spectrum,
    eigenvalues,
    metric_diagonal,
    sample_gue,
)
from .analytic import (
    BoundaryCurve,
    BranchCollisionError,
    CriticalCurves,
    GreenBranch,
    PhaseLabel,
    PhasePoint,
    RealDensityCurve,
    SupportIntervals,
    boundary_curve,
    boundary_t_minus1,
    critical_curves,
    distance_to_axis,
    domain_area,
    fraction_real,
    gap_cubic_coeffs,
    green_branch,
    phase_classify,
    real_density_curve,
    rho_complex_uniform,
    rho_real_closed_form,
    rho_real_general,
    solve_cubic,
    support_endpoint_a,
    support_intervals,
)
from .ensemble import (
    FractionEstimate,
    Histogram1D,
    Histogram2D,
    ModelParams,
    RunArtifact,
    RunConfig,
    UniformityReport,
    boundary_violation_rate,
    compare_density,
    detect_intervals,
    estimate_fraction_real,
    run_ensemble,
    save_artifact,
    uniformity_check,
)
from .mech import (
    IllConditionedError,
    MechParams,
    generalized_spectrum,
    mech_spectrum,
    sample_mech_pair,
)

__version__ = "0.1.0"

__all__ = [
    "BoundaryCurve",
    "BranchCollisionError",
    "ClassificationError",
    "CriticalCurves",
    "EigensolverError",
    "FractionEstimate",
    "GreenBranch",
    "Histogram1D",
    "Histogram2D",
    "IllConditionedError",
    "MechParams",
    "MetricSpec",
    "ModelParams",
    "PhaseLabel",
    "PhasePoint",
    "RealDensityCurve",
    "RunArtifact",
    "RunConfig",
    "Spectrum",
    "SupportIntervals",
    "UniformityReport",
    "boundary_curve",
    "boundary_t_minus1",
    "boundary_violation_rate",
    "build_metric",
    "build_phi",
    "carlson_bound",
    "classify_spectrum",
    "compare_density",
    "critical_curves",
    "detect_intervals",
    "distance_to_axis",
    "domain_area",
    "eigenvalues",
    "estimate_fraction_real",
    "fraction_real",
    "gap_cubic_coeffs",
    "generalized_spectrum",
    "green_branch",
    "mech_spectrum",
    "metric_diagonal",
    "phase_classify",
    "real_density_curve",
    "rho_complex_uniform",
    "rho_real_closed_form",
    "rho_real_general",
    "run_ensemble",
    "sample_gue",
    "sample_mech_pair",
    "save_artifact",
    "solve_cubic",
    "support_endpoint_a",
    "support_intervals",
    "uniformity_check",
]
