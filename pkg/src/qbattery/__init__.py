"""Quantum-battery charging simulator.

Two- and three-level batteries driven by truncated Gaussian pulses:
closed-form charging dynamics, a general Schroedinger integrator,
charging-time and power observables, and a simulated dispersive-readout
pipeline.
"""

from .device import (
    HBAR_UEV_NS,
    LevelSpectrum,
    TransmonParams,
    energy_to_physical,
    physical_to_energy,
    spectrum_from_frequencies,
    transmon_spectrum,
)
from .errors import (
    ConfigError,
    IntegrationError,
    NormalizationError,
    NotChargedError,
    ParameterError,
    ProtocolError,
    QBatteryError,
    ReadoutError,
    ResolutionError,
    TransmonRegimeError,
    UndersampledWarning,
)
from .hamiltonian import (
    DriveTerm,
    ProtocolKind,
    ProtocolSpec,
    adiabatic_protocol,
    qubit_protocol,
    sequential_protocol,
    simultaneous_protocol,
)
from .integrator import Trajectory, evolve, self_convergence
from .kernels import BACKEND as KERNEL_BACKEND
from .observables import (
    EnergyCurve,
    SweepResult,
    average_power,
    build_protocol,
    charging_time,
    charging_time_analytic,
    energy_curve,
    stored_energy,
    sweep_final_energy,
    table1,
)
from .pulses import GaussianPulse, accumulated_phase, discretize, make_gaussian
from .readout import (
    Classifier,
    ClusterModel,
    IQPoint,
    ShotRecord,
    end_to_end_sweep,
    estimate_energy,
    measure_populations,
    noiseless_model,
    realistic_model,
    sample_shots,
    synthesize_iq,
    train_classifier,
)
from .state import StateVector

__version__ = "1.0.0"

__all__ = [
    "HBAR_UEV_NS",
    "KERNEL_BACKEND",
    "LevelSpectrum",
    "TransmonParams",
    "energy_to_physical",
    "physical_to_energy",
    "spectrum_from_frequencies",
    "transmon_spectrum",
    "QBatteryError",
    "ParameterError",
    "TransmonRegimeError",
    "ProtocolError",
    "ResolutionError",
    "IntegrationError",
    "NormalizationError",
    "NotChargedError",
    "ReadoutError",
    "ConfigError",
    "UndersampledWarning",
    "DriveTerm",
    "ProtocolKind",
    "ProtocolSpec",
    "qubit_protocol",
    "sequential_protocol",
    "simultaneous_protocol",
    "adiabatic_protocol",
    "Trajectory",
    "evolve",
    "self_convergence",
    "EnergyCurve",
    "SweepResult",
    "stored_energy",
    "average_power",
    "charging_time",
    "charging_time_analytic",
    "energy_curve",
    "sweep_final_energy",
    "build_protocol",
    "table1",
    "GaussianPulse",
    "make_gaussian",
    "accumulated_phase",
    "discretize",
    "StateVector",
    "IQPoint",
    "ClusterModel",
    "Classifier",
    "ShotRecord",
    "measure_populations",
    "sample_shots",
    "synthesize_iq",
    "train_classifier",
    "estimate_energy",
    "end_to_end_sweep",
    "noiseless_model",
    "realistic_model",
]
