"""Quantum state transfer through uniform spin chains with tunable end couplings.

The library models a row of n spins with unit nearest-neighbour coupling,
plus a source and a destination qubit attached to its ends with coupling a,
restricted to the single-excitation sector. It provides two mutually
checking eigensolvers (a closed-form transcendental route and a numerical
tridiagonal oracle), spectral time propagation, transfer/entanglement
observables, and the sweep/fit machinery that reproduces the reference
spectra, dynamics and small-coupling scaling laws.
"""

from .asymptotics import (
    AsymptoticPrediction,
    ThreeLevelSignReport,
    dominant_populations,
    predict,
    smallest_positive_eigenvalue,
    three_level_signs,
)
from .dynamics import (
    ProbabilitySnapshot,
    TimeSeries,
    average_fidelity,
    bell_fidelity,
    evolve,
    site_probabilities,
    transfer_series,
)
from .errors import (
    ConfigError,
    ConvergenceError,
    DegenerateFitError,
    DimensionMismatchError,
    DomainError,
    InsufficientPointsError,
    InvalidParamsError,
    NoPositiveEigenvalueError,
    NormalizationError,
    NoTransferError,
    NotApplicableError,
    PoleEvaluationError,
    RegimeError,
    RootCountError,
    SingularCouplingError,
    SpinWireError,
    UnknownFigureError,
)
from .experiments import (
    PmaxResult,
    ScalingFit,
    SweepResult,
    SweepRow,
    Table,
    coarse_step,
    figure_data,
    fit_fidelity_scaling,
    fit_gap_scaling,
    max_transfer,
    sweep,
    transfer_time,
)
from .spectral import (
    EigenDecomposition,
    Eigenpair,
    SpectralRoot,
    analytic_eigendecomposition,
    characteristic_function,
    compare_decompositions,
    default_decomposition,
    eigenvector_from_root,
    oracle_eigendecomposition,
    rhs_constant,
    solve_gammas,
    zero_mode_parity,
)
from .wire import (
    TridiagonalHamiltonian,
    WaveFunction,
    WireParams,
    build_hamiltonian,
    initial_excitation_state,
)

__version__ = "0.1.0"

__all__ = [
    "AsymptoticPrediction",
    "ConfigError",
    "ConvergenceError",
    "DegenerateFitError",
    "DimensionMismatchError",
    "DomainError",
    "EigenDecomposition",
    "Eigenpair",
    "InsufficientPointsError",
    "InvalidParamsError",
    "NoPositiveEigenvalueError",
    "NormalizationError",
    "NoTransferError",
    "NotApplicableError",
    "PmaxResult",
    "PoleEvaluationError",
    "ProbabilitySnapshot",
    "RegimeError",
    "RootCountError",
    "ScalingFit",
    "SingularCouplingError",
    "SpectralRoot",
    "SpinWireError",
    "SweepResult",
    "SweepRow",
    "Table",
    "ThreeLevelSignReport",
    "TimeSeries",
    "TridiagonalHamiltonian",
    "UnknownFigureError",
    "WaveFunction",
    "WireParams",
    "analytic_eigendecomposition",
    "average_fidelity",
    "bell_fidelity",
    "build_hamiltonian",
    "characteristic_function",
    "coarse_step",
    "compare_decompositions",
    "default_decomposition",
    "dominant_populations",
    "eigenvector_from_root",
    "evolve",
    "figure_data",
    "fit_fidelity_scaling",
    "fit_gap_scaling",
    "initial_excitation_state",
    "max_transfer",
    "oracle_eigendecomposition",
    "predict",
    "rhs_constant",
    "site_probabilities",
    "smallest_positive_eigenvalue",
    "solve_gammas",
    "sweep",
    "three_level_signs",
    "transfer_series",
    "transfer_time",
    "zero_mode_parity",
]
