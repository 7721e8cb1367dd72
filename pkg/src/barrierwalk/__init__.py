"""Coined quantum walks on the line through tunneling barriers."""

from .classical import ClassicalDistribution, classical_distribution, spread
from .ctqw import (
    CtqwConfig,
    CtqwState,
    Graph,
    barrier_adjacency,
    complete,
    ctqw_evolve,
    cycle,
    global_phase,
    global_phase_distance,
    localized,
)
from .errors import (
    BoundaryOverflow,
    BudgetExceeded,
    DegenerateEigenvectors,
    DimensionMismatch,
    InsufficientData,
    NotNormalized,
    QuadratureNodeSingular,
    SingularParameterization,
    SlopeOutOfRange,
    WalkError,
)
from .momentum import (
    DispersionPoint,
    MomentumKernel,
    QuadratureSpec,
    closed_form_distribution,
    closed_form_wavefunctions,
    kernel,
    momentum_wavefunction,
    omega,
    position_wavefunction,
)
from .transport import (
    PeakTrace,
    estimate_alpha,
    fit_slope,
    fit_trace,
    phase,
    phase_derivatives,
    predicted_peak,
    track_peaks,
)
from .walk import (
    BarrierParams,
    CoinState,
    InitialState,
    ShiftKind,
    SpinorField,
    apply_coin,
    apply_shift,
    evolve,
    new_field,
    probabilities,
    step,
)

__version__ = "0.1.0"
