"""Simulator for single-photon Fock-state production in an atom-cavity
system, driven by adiabatic-passage and shortcut pulse schedules."""

from .dynamics import (
    TimeGrid,
    Trajectory,
    elimination_residual,
    propagate_lindblad,
    propagate_schrodinger,
)
from .errors import (
    CavityFockError,
    ConfigError,
    DegenerateSpectrumError,
    IntegrationError,
    ModelMismatchError,
    ParameterDomainError,
)
from .hamiltonians import (
    Dissipation,
    ModelConfig,
    bound_hamiltonian,
    dissipative_hamiltonian,
    effective_hamiltonian,
    effective_raman_coupling,
    full_hamiltonian,
)
from .hilbert import (
    EigenSystem,
    ProductBasis,
    analytic_eigensystem,
    atomic_raising,
    build_basis,
    ladder_operators,
    level_projector,
    number_operator,
    single_excitation_matrix,
    transition_operator,
)
from .observables import (
    ObservablesRecord,
    dark_state_overlap,
    mandel_q,
    mean_photon_number,
    norm_or_trace,
    populations,
)
from .pulses import (
    ControlSchedule,
    ControlValues,
    PulseParameters,
    counterdiabatic_amplitude,
    gaussian_pulse,
    generic_counterdiabatic,
    physical_pulse_pair,
    stirap_pair,
)
from .scenarios import (
    PRESETS,
    RunSummary,
    SimulationConfig,
    resolve_preset,
    run,
    simulate,
    sweep,
    write_trajectory_csv,
)

__version__ = "0.1.0"

__all__ = [
    "CavityFockError",
    "ConfigError",
    "ControlSchedule",
    "ControlValues",
    "DegenerateSpectrumError",
    "Dissipation",
    "EigenSystem",
    "IntegrationError",
    "ModelConfig",
    "ModelMismatchError",
    "ObservablesRecord",
    "ParameterDomainError",
    "PRESETS",
    "ProductBasis",
    "PulseParameters",
    "RunSummary",
    "SimulationConfig",
    "TimeGrid",
    "Trajectory",
    "analytic_eigensystem",
    "atomic_raising",
    "bound_hamiltonian",
    "build_basis",
    "counterdiabatic_amplitude",
    "dark_state_overlap",
    "dissipative_hamiltonian",
    "effective_hamiltonian",
    "effective_raman_coupling",
    "elimination_residual",
    "full_hamiltonian",
    "gaussian_pulse",
    "generic_counterdiabatic",
    "ladder_operators",
    "level_projector",
    "mandel_q",
    "mean_photon_number",
    "norm_or_trace",
    "number_operator",
    "physical_pulse_pair",
    "populations",
    "propagate_lindblad",
    "propagate_schrodinger",
    "resolve_preset",
    "run",
    "simulate",
    "single_excitation_matrix",
    "stirap_pair",
    "sweep",
    "transition_operator",
    "write_trajectory_csv",
]
