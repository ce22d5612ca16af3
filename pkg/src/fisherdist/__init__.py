"""Statistical divergences and Hilbert-space distances between neighbouring
parameterized states, compared against Fisher information."""

from .cramer_rao import (
    EstimationConfig,
    EstimationReport,
    biased_estimator_comparison,
    simulate_estimation,
)
from .divergences import (
    WeightPair,
    j0,
    j1,
    j1_entropy_form,
    jsd_metric,
    jsd_weighted,
    kl_divergence,
    shannon_entropy,
    symmetrized_kl,
)
from .exceptions import (
    DegenerateFitError,
    DegenerateInputError,
    DomainCoverageError,
    FisherDistError,
    InsufficientDataError,
    InvalidArgumentError,
    InvalidStateError,
    SupportError,
)
from .expansion import (
    MEASURES,
    CoefficientFit,
    DistanceRecord,
    DistanceSweep,
    LadderSpec,
    ProportionalityRegressor,
    coefficient_report,
    fit_coefficient,
    first_order_stability,
    sweep_distances,
)
from .families import (
    FamilySpec,
    FisherValue,
    alpha_derivative_density,
    analytic_fisher,
    evaluate_density,
    evaluate_wavefunction,
    fisher_information,
)
from .grid import (
    DensityVector,
    Grid,
    WaveVector,
    default_grid,
    density_from_wavefunction,
    integrate,
    make_grid,
    renormalize,
)
from .hilbert import euclidean_sq, fubini_study, overlap, wootters

__version__ = "0.1.0"
