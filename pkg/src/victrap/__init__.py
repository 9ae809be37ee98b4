"""Four-level master-equation simulator: population trapping in an excited
doublet through interference of its spontaneous-emission channels, driven by
a delayed Gaussian pulse pair with optional tanh-chirped detunings."""

from .drive import DriveSample, chirped_detunings, drive_sample, pulse_envelopes
from .errors import (
    ConfigError,
    ContractViolationError,
    InsufficientDataError,
    IntegrationError,
    InvalidParameterError,
    PhysicalityError,
    SimulationError,
)
from .experiments import (
    PRESET_NAMES,
    SweepAxis,
    SweepRow,
    SweepSpec,
    SweepTable,
    preset,
    run_with_steady,
    sweep,
)
from .integrator import (
    IntegrationStats,
    SteadySummary,
    Trajectory,
    TrajectorySample,
    detect_steady_state,
    integrate,
    integrate_fixed_step,
)
from .liouvillian import coherent_only, dissipator_only, effective_hamiltonian, master_rhs
from .model import (
    ChirpProfile,
    DensityMatrix,
    DriveConfig,
    ObservableRecord,
    PhysicalityReport,
    Scenario,
    SystemParams,
    coherence_decay_rate,
    cross_damping,
    ground_state,
    initial_metastable,
    maximally_mixed,
    validate_physicality,
)
from .observables import (
    bright_state_overlap,
    coherence,
    dark_state_overlap,
    dark_state_vector,
    doublet_purity,
    doublet_purity_normalized,
    populations,
)
from .config import OutputOptions, parse_config, parse_config_full, serialize_config
from .output import (
    TRAJECTORY_CSV_HEADER,
    emit_summary_json,
    emit_sweep_csv,
    emit_sweep_json,
    emit_trajectory_csv,
)

__version__ = "0.1.0"

__all__ = [
    "ChirpProfile",
    "ConfigError",
    "ContractViolationError",
    "DensityMatrix",
    "DriveConfig",
    "DriveSample",
    "InsufficientDataError",
    "IntegrationError",
    "IntegrationStats",
    "InvalidParameterError",
    "ObservableRecord",
    "OutputOptions",
    "PRESET_NAMES",
    "PhysicalityError",
    "PhysicalityReport",
    "Scenario",
    "SimulationError",
    "SteadySummary",
    "SweepAxis",
    "SweepRow",
    "SweepSpec",
    "SweepTable",
    "TRAJECTORY_CSV_HEADER",
    "Trajectory",
    "TrajectorySample",
    "SystemParams",
    "bright_state_overlap",
    "coherence",
    "coherence_decay_rate",
    "coherent_only",
    "cross_damping",
    "chirped_detunings",
    "dark_state_overlap",
    "dark_state_vector",
    "detect_steady_state",
    "dissipator_only",
    "doublet_purity",
    "doublet_purity_normalized",
    "drive_sample",
    "effective_hamiltonian",
    "emit_summary_json",
    "emit_sweep_csv",
    "emit_sweep_json",
    "emit_trajectory_csv",
    "ground_state",
    "initial_metastable",
    "integrate",
    "integrate_fixed_step",
    "master_rhs",
    "maximally_mixed",
    "parse_config",
    "parse_config_full",
    "populations",
    "preset",
    "pulse_envelopes",
    "run_with_steady",
    "serialize_config",
    "sweep",
    "validate_physicality",
    "__version__",
]
