"""
Torus Entropy

Classical analogs of purity, linear entropy and von Neumann entropy for
integrable systems, computed from angle averages on invariant tori.
"""

from .classes import (
    AnalogConfig,
    CovarianceMatrix,
    EntanglementReport,
    HBar,
    ModelConfig,
    NormalModeSystem,
    OracleConfig,
    PerturbationSeries,
    QuadratureConfig,
    QuadratureMethod,
    QuantizationRules,
    QuarticOscillator,
    ResultRecord,
    Side,
    SubsystemSelector,
    SweepConfig,
    SymplecticForm,
    SymplecticSpectrum,
    ThreeOscillatorParams,
    TorusFunction,
    TorusSpec,
    TwoOscillatorParams,
)
from .errors import NumericalFailure, TorusEntropyError, ValidationFailure
from .quadrature import classical_average, classical_average_batch, monte_carlo_estimate
from .covariance import covariance_by_quadrature, covariance_normal_form, subsystem_covariance
from .symplectic import scaled_spectrum, symplectic_form, williamson_eigenvalues
from .analogs import (
    classical_purity,
    classical_purity_tilde,
    entropy_kernel,
    linear_entropy_tilde,
    report,
    von_neumann_tilde,
)
from .quantum import (
    berry_curvature_phase_space,
    metric_from_covariance,
    quantum_entropy,
    quantum_gaussian_covariance,
    quantum_purity,
)
from .anharmonic import (
    apply_quantization,
    classical_covariance_series,
    quantum_covariance_series,
    time_average_oracle,
    variance_product_series,
)
from .models import three_oscillator_system, two_oscillator_system
from .session import SweepSession, run_sweep, sweep_session


__all__ = [
    # classes
    "AnalogConfig", "CovarianceMatrix", "EntanglementReport", "HBar", "ModelConfig",
    "NormalModeSystem", "OracleConfig", "PerturbationSeries", "QuadratureConfig",
    "QuadratureMethod", "QuantizationRules", "QuarticOscillator", "ResultRecord", "Side",
    "SubsystemSelector", "SweepConfig", "SymplecticForm", "SymplecticSpectrum",
    "ThreeOscillatorParams", "TorusFunction", "TorusSpec", "TwoOscillatorParams",

    # errors
    "TorusEntropyError", "ValidationFailure", "NumericalFailure",

    # averages and covariances
    "classical_average", "classical_average_batch", "monte_carlo_estimate",
    "covariance_normal_form", "covariance_by_quadrature", "subsystem_covariance",
    "symplectic_form", "williamson_eigenvalues", "scaled_spectrum",

    # analogs and quantum references
    "classical_purity", "classical_purity_tilde", "linear_entropy_tilde", "entropy_kernel",
    "von_neumann_tilde", "report",
    "quantum_gaussian_covariance", "quantum_purity", "quantum_entropy",
    "metric_from_covariance", "berry_curvature_phase_space",

    # anharmonic oscillator
    "classical_covariance_series", "quantum_covariance_series", "apply_quantization",
    "variance_product_series", "time_average_oracle",

    # models
    "three_oscillator_system", "two_oscillator_system",

    # Session
    "SweepSession", "run_sweep", "sweep_session",
    ]
