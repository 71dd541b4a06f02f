"""Perturbative master-equation coefficients for a charged oscillator in a
Drude-cutoff blackbody bath, with independent numerical oracles and Gaussian
moment dynamics."""

from .coeffs import (
    MasterCoeffs,
    OrderCoeffs,
    TIntegralSet,
    aggregate,
    bath_integral_I,
    delta_compact,
    fourth_order,
    high_T_limits,
    lambda_compact,
    low_T_limits,
    second_order,
    t2_closed,
    t3_closed,
    t4_closed,
    third_order,
)
from .dynamics import (
    FockResidualReport,
    GaussianState,
    MomentTrajectory,
    evolve,
    fock_generator,
    fock_moment_check,
    moment_rhs,
    steady_state,
)
from .errors import (
    ConvergenceError,
    DimensionError,
    DomainError,
    EmbathError,
    NoSteadyStateError,
    OrderError,
    PoleError,
    StiffnessError,
    TailBoundError,
    TruncationError,
    ValidationError,
)
from .model import (
    BathSpec,
    CoeffConventions,
    OscillatorSpec,
    ReducedParams,
    cutoff_factor,
    reconstruct,
    reduce,
    spectral_density,
    thermal_occupation,
)
from .oracle import (
    CorrelationKernel,
    OracleResult,
    QuadratureSpec,
    coefficient_oracle,
    pair_correlation,
    t2_oracle,
    t3_oracle,
    t4_oracle,
)
from .special import coth_partial_sum, csch_sq, polygamma

__version__ = "1.0.0"
