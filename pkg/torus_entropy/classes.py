"""
Pydantic models for the torus entropy toolkit.

This module contains all data models used throughout the application:
the shared domain types, the model parameter sets, run-time configuration
and the records emitted by the command line.

Index convention: phase-space vectors and matrices are ordered in blocks,
all positions first and then all momenta, (q1..qN, p1..pN).
"""

import math
import os
from enum import Enum
from itertools import combinations
from fractions import Fraction
from typing import Any, Callable, Optional, Union

import numpy as np
from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    computed_field,
    field_validator,
    model_validator,
)

from .errors import (
    ConfigParseError,
    DimensionMismatch,
    IndexOutOfRange,
    InvalidSelector,
    NegativeAction,
    NegativeCoupling,
    NonOrthogonalTransform,
    NonPositiveFrequency,
    NonUniformActions,
    NotPSD,
    NotSymmetric,
    OddDimension,
    ParameterRegionViolation,
    SingularCovariance,
    SpectralIdentityViolation,
    UnsupportedPower,
)

ORTHOGONALITY_TOLERANCE = 1e-12
SYMMETRY_TOLERANCE = 1e-12
PSD_TOLERANCE = 1e-10
CLAMP_THRESHOLD = 1e-12
SPECTRAL_IDENTITY_TOLERANCE = 1e-10
DEFAULT_THREADS = 4


def _vector(value: Any) -> tuple[float, ...]:
    arr = np.asarray(value, dtype=float)
    if arr.ndim != 1:
        raise DimensionMismatch(f"expected a vector, got shape {arr.shape}")
    return tuple(float(x) for x in arr)


def _matrix(value: Any) -> tuple[tuple[float, ...], ...]:
    arr = np.asarray(value, dtype=float)
    if arr.ndim != 2:
        raise DimensionMismatch(f"expected a matrix, got shape {arr.shape}")
    return tuple(tuple(float(x) for x in row) for row in arr)


class QuadratureMethod(str, Enum):
    """Rules available for torus averages."""
    TENSOR_TRAPEZOID = "tensor-trapezoid"
    MONTE_CARLO = "monte-carlo"


class ModelKind(str, Enum):
    """Model families accepted in configuration files."""
    THREE_OSCILLATOR = "three_oscillator"
    TWO_OSCILLATOR = "two_oscillator"
    CUSTOM_NORMAL_MODE = "custom_normal_mode"


class Side(str, Enum):
    CLASSICAL = "classical"
    QUANTUM = "quantum"


# ---------------------------------------------------------------------------
# Core domain types
# ---------------------------------------------------------------------------

def check_system_invariants(
    n_dof: int,
    frequencies: tuple[float, ...],
    mode_to_physical: tuple[tuple[float, ...], ...],
) -> None:
    """Raise the matching domain error if a normal-mode description is invalid."""
    transform = np.asarray(mode_to_physical, dtype=float)
    if len(frequencies) != n_dof or transform.shape != (n_dof, n_dof):
        raise DimensionMismatch(
            f"n_dof={n_dof} but {len(frequencies)} frequencies and a "
            f"{transform.shape} transform"
        )
    omega = np.asarray(frequencies, dtype=float)
    if not np.all(np.isfinite(omega)) or np.any(omega <= 0.0):
        raise NonPositiveFrequency(f"frequencies must be positive, got {frequencies}")
    if not np.all(np.isfinite(transform)):
        raise NonOrthogonalTransform("transform has non-finite entries")
    defect = np.max(np.abs(transform @ transform.T - np.eye(n_dof)))
    if defect >= ORTHOGONALITY_TOLERANCE:
        raise NonOrthogonalTransform(f"|S S^T - 1|_max = {defect:.3e}")


class NormalModeSystem(BaseModel):
    """Linear integrable model with unit masses in normal-mode form.

    Normal and physical coordinates are related by Q = S q and P = S p.
    """
    model_config = ConfigDict(frozen=True)

    n_dof: int = Field(gt=0, description="Number of degrees of freedom N")
    frequencies: tuple[float, ...] = Field(description="Normal-mode angular frequencies")
    mode_to_physical: tuple[tuple[float, ...], ...] = Field(
        description="Orthogonal matrix S mapping physical to normal coordinates"
    )
    label: str = Field(default="", description="Human readable model name")

    @field_validator("frequencies", mode="before")
    @classmethod
    def _coerce_frequencies(cls, value):
        return _vector(value)

    @field_validator("mode_to_physical", mode="before")
    @classmethod
    def _coerce_transform(cls, value):
        return _matrix(value)

    @model_validator(mode="after")
    def _check(self):
        check_system_invariants(self.n_dof, self.frequencies, self.mode_to_physical)
        return self

    @property
    def omega(self) -> np.ndarray:
        return np.asarray(self.frequencies, dtype=float)

    @property
    def transform(self) -> np.ndarray:
        return np.asarray(self.mode_to_physical, dtype=float)


class SubsystemSelector(BaseModel):
    """Particles a1 < ... < an (1-based) forming a subsystem."""
    model_config = ConfigDict(frozen=True)

    indices: tuple[int, ...] = Field(description="Strictly increasing 1-based particle labels")

    @model_validator(mode="after")
    def _check(self):
        if not self.indices:
            raise InvalidSelector("a subsystem needs at least one particle")
        if self.indices[0] < 1:
            raise InvalidSelector(f"particle labels start at 1, got {self.indices}")
        if any(b <= a for a, b in zip(self.indices, self.indices[1:])):
            raise InvalidSelector(f"labels must be strictly increasing, got {self.indices}")
        return self

    @classmethod
    def of(cls, *indices: int) -> "SubsystemSelector":
        return cls(indices=tuple(indices))

    @classmethod
    def full(cls, n: int) -> "SubsystemSelector":
        return cls(indices=tuple(range(1, n + 1)))

    @classmethod
    def all_subsets(cls, n: int) -> list["SubsystemSelector"]:
        """Every nonempty subset, by size then lexicographically."""
        return [
            cls(indices=combo)
            for size in range(1, n + 1)
            for combo in combinations(range(1, n + 1), size)
        ]

    @property
    def n(self) -> int:
        return len(self.indices)

    @property
    def label(self) -> str:
        return "(" + ",".join(str(i) for i in self.indices) + ")"

    @property
    def zero_based(self) -> np.ndarray:
        return np.asarray(self.indices, dtype=int) - 1

    def check_within(self, n_dof: int) -> None:
        if self.indices[-1] > n_dof:
            raise IndexOutOfRange(f"{self.label} does not fit a system of {n_dof} particles")

    def complement(self, n_dof: int) -> "SubsystemSelector":
        self.check_within(n_dof)
        rest = tuple(i for i in range(1, n_dof + 1) if i not in self.indices)
        return SubsystemSelector(indices=rest)


class TorusSpec(BaseModel):
    """A point in action space: one action per degree of freedom."""
    model_config = ConfigDict(frozen=True)

    actions: tuple[float, ...] = Field(description="Actions I_a, one per degree of freedom")

    @field_validator("actions", mode="before")
    @classmethod
    def _coerce_actions(cls, value):
        return _vector(value)

    @model_validator(mode="after")
    def _check(self):
        if not self.actions:
            raise DimensionMismatch("a torus needs at least one action")
        values = np.asarray(self.actions)
        if not np.all(np.isfinite(values)) or np.any(values < 0.0):
            raise NegativeAction(f"actions must be nonnegative, got {self.actions}")
        return self

    @classmethod
    def uniform(cls, beta: float, n: int) -> "TorusSpec":
        return cls(actions=(float(beta),) * n)

    @property
    def n_dof(self) -> int:
        return len(self.actions)

    @property
    def values(self) -> np.ndarray:
        return np.asarray(self.actions, dtype=float)

    @property
    def is_uniform(self) -> bool:
        return len(set(self.actions)) == 1

    @property
    def beta(self) -> float:
        """The common action of a uniform torus."""
        if not self.is_uniform:
            raise NonUniformActions(f"actions are not uniform: {self.actions}")
        return self.actions[0]

    def restrict(self, selector: SubsystemSelector) -> "TorusSpec":
        selector.check_within(self.n_dof)
        return TorusSpec(actions=tuple(self.actions[i] for i in selector.zero_based))


class CovarianceMatrix(BaseModel):
    """Symmetric positive-semidefinite second-moment matrix in (q..., p...) order."""
    model_config = ConfigDict(frozen=True)

    entries: tuple[tuple[float, ...], ...] = Field(description="2N x 2N matrix, row major")

    @field_validator("entries", mode="before")
    @classmethod
    def _coerce_entries(cls, value):
        return _matrix(value)

    @model_validator(mode="after")
    def _check(self):
        arr = self.matrix
        rows, cols = arr.shape
        if rows != cols:
            raise DimensionMismatch(f"covariance must be square, got {arr.shape}")
        if rows % 2:
            raise OddDimension(f"covariance dimension must be even, got {rows}")
        if not np.all(np.isfinite(arr)):
            raise NotPSD("covariance has non-finite entries")
        scale = max(1.0, float(np.max(np.abs(arr)))) if arr.size else 1.0
        if np.max(np.abs(arr - arr.T)) > SYMMETRY_TOLERANCE * scale:
            raise NotSymmetric("covariance is not symmetric")
        norm = float(np.linalg.norm(arr, 2))
        if np.min(np.linalg.eigvalsh(arr)) < -PSD_TOLERANCE * norm:
            raise NotPSD("covariance is not positive semidefinite")
        return self

    @classmethod
    def from_array(cls, arr: np.ndarray) -> "CovarianceMatrix":
        return cls(entries=arr)

    @property
    def matrix(self) -> np.ndarray:
        return np.asarray(self.entries, dtype=float)

    @property
    def dim(self) -> int:
        return len(self.entries)

    @property
    def n_modes(self) -> int:
        return self.dim // 2

    @property
    def qq(self) -> np.ndarray:
        n = self.n_modes
        return self.matrix[:n, :n]

    @property
    def pp(self) -> np.ndarray:
        n = self.n_modes
        return self.matrix[n:, n:]

    @property
    def qp(self) -> np.ndarray:
        n = self.n_modes
        return self.matrix[:n, n:]

    def scaled(self, factor: float) -> "CovarianceMatrix":
        return CovarianceMatrix(entries=self.matrix * factor)


class SymplecticSpectrum(BaseModel):
    """Ascending Williamson eigenvalues."""
    model_config = ConfigDict(frozen=True)

    values: tuple[float, ...] = Field(description="Symplectic eigenvalues, ascending")
    clamp_threshold: float = Field(
        default=CLAMP_THRESHOLD,
        description="Absolute threshold below which round-off was clamped",
    )

    @field_validator("values")
    @classmethod
    def _ascending_nonnegative(cls, values):
        if any(v < 0.0 for v in values):
            raise ValueError(f"symplectic eigenvalues must be nonnegative, got {values}")
        if any(b < a for a, b in zip(values, values[1:])):
            raise ValueError(f"symplectic eigenvalues must be ascending, got {values}")
        return values

    @property
    def n(self) -> int:
        return len(self.values)

    @property
    def array(self) -> np.ndarray:
        return np.asarray(self.values, dtype=float)


class SymplecticForm(BaseModel):
    """Omega = [[0, 1], [-1, 0]] in blocks of size n."""
    model_config = ConfigDict(frozen=True)

    n: int = Field(gt=0, description="Number of modes")

    @property
    def dim(self) -> int:
        return 2 * self.n

    @property
    def matrix(self) -> np.ndarray:
        eye = np.eye(self.n)
        zero = np.zeros((self.n, self.n))
        return np.block([[zero, eye], [-eye, zero]])


class TorusFunction(BaseModel):
    """A phase-space function on the angle torus at fixed actions.

    `evaluate(phi, actions)` is vectorized: phi has shape (K, N), actions
    shape (N,), and the result has shape (K,). Implementations must be
    pure so the same function can be evaluated from several workers.
    """
    model_config = ConfigDict(frozen=True)

    arity: int = Field(gt=0, description="Number of angles N")
    evaluate: Callable[[np.ndarray, np.ndarray], np.ndarray] = Field(
        description="Vectorized map (angles, actions) -> values"
    )
    label: str = Field(default="", description="Name used in logs")

    def __call__(self, phi: np.ndarray, actions: np.ndarray) -> np.ndarray:
        phi = np.atleast_2d(np.asarray(phi, dtype=float))
        values = np.asarray(self.evaluate(phi, np.asarray(actions, dtype=float)), dtype=float)
        return np.broadcast_to(values, (phi.shape[0],))


class QuadratureConfig(BaseModel):
    """Configuration for torus averages."""
    model_config = ConfigDict(frozen=True)

    nodes_per_angle: int = Field(default=16, ge=3, description="Trapezoid nodes M per angle")
    method: QuadratureMethod = Field(
        default=QuadratureMethod.TENSOR_TRAPEZOID, description="Averaging rule"
    )
    mc_samples: int = Field(default=100_000, ge=1, description="Monte Carlo sample count")
    rng_seed: int = Field(default=0, ge=0, lt=2**64, description="Seed of the Philox generator")


class MonteCarloEstimate(BaseModel):
    model_config = ConfigDict(frozen=True)

    mean: float
    standard_error: float
    samples: int


class PerturbationSeries(BaseModel):
    """Truncated power series c0 + c1 x + ... + c_order x^order in the coupling.

    Coefficients are exact rationals. When `action_powers` is set the
    coefficient of order k still has to be multiplied by I**action_powers[k].
    """
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    order: int = Field(ge=0, description="Highest retained power of the coupling")
    coefficients: tuple[Fraction, ...] = Field(description="Exact coefficients c0..c_order")
    action_powers: Optional[tuple[int, ...]] = Field(
        default=None, description="Power of the action multiplying each coefficient"
    )

    @field_validator("coefficients", mode="before")
    @classmethod
    def _to_fractions(cls, values):
        return tuple(v if isinstance(v, Fraction) else Fraction(v) for v in values)

    @model_validator(mode="after")
    def _check(self):
        if len(self.coefficients) != self.order + 1:
            raise DimensionMismatch(
                f"order {self.order} needs {self.order + 1} coefficients, "
                f"got {len(self.coefficients)}"
            )
        if self.action_powers is not None and len(self.action_powers) != self.order + 1:
            raise DimensionMismatch("one action power per coefficient is required")
        return self

    def as_floats(self) -> tuple[float, ...]:
        return tuple(float(c) for c in self.coefficients)

    def evaluate(self, coupling: float) -> float:
        if self.action_powers is not None:
            raise UnsupportedPower("substitute the action before evaluating")
        total = 0.0
        for c in reversed(self.coefficients):
            total = total * coupling + float(c)
        return total

    def at_action(self, action: float) -> "PerturbationSeries":
        if self.action_powers is None:
            return self
        action = Fraction(action)
        return PerturbationSeries(
            order=self.order,
            coefficients=tuple(
                c * action**p for c, p in zip(self.coefficients, self.action_powers)
            ),
        )

    def multiply(self, other: "PerturbationSeries", order: Optional[int] = None) -> "PerturbationSeries":
        """Cauchy product truncated at `order` (default: the lower of both orders)."""
        if self.action_powers is not None or other.action_powers is not None:
            raise UnsupportedPower("substitute the action before multiplying")
        order = min(self.order, other.order) if order is None else order
        coefficients = []
        for k in range(order + 1):
            coefficients.append(sum(
                (self.coefficients[i] * other.coefficients[k - i]
                 for i in range(k + 1)
                 if i <= self.order and k - i <= other.order),
                Fraction(0),
            ))
        return PerturbationSeries(order=order, coefficients=tuple(coefficients))


class CovarianceSeries(BaseModel):
    """Second moments <q^2>, <qp>, <p^2> as series in the coupling."""
    model_config = ConfigDict(frozen=True)

    qq: PerturbationSeries
    qp: PerturbationSeries
    pp: PerturbationSeries


class HBar(BaseModel):
    model_config = ConfigDict(frozen=True)

    value: float = Field(default=1.0, gt=0, description="Reduced Planck constant, action units")

    @classmethod
    def coerce(cls, hbar: Union["HBar", float]) -> "HBar":
        return hbar if isinstance(hbar, HBar) else cls(value=hbar)


class EntanglementReport(BaseModel):
    """Classical analogs of purity and entropies for one subsystem."""
    model_config = ConfigDict(frozen=True)

    selector: SubsystemSelector
    purity: float = Field(description="Classical purity analog at uniform actions")
    linear_entropy: float = Field(description="1 - purity")
    von_neumann: float = Field(ge=0.0, description="Classical von Neumann analog, nats")
    spectrum: SymplecticSpectrum = Field(description="Scaled symplectic eigenvalues")
    beta_used: float = Field(gt=0.0, description="Uniform action used for the evaluation")

    @model_validator(mode="after")
    def _check(self):
        product = float(np.prod(self.spectrum.array))
        if not (math.isfinite(product) and product > 0.0):
            raise SingularCovariance(
                f"{self.selector.label}: symplectic eigenvalue product {product!r}"
            )
        expected = 2.0 ** (-self.spectrum.n) / product
        if abs(expected - self.purity) > SPECTRAL_IDENTITY_TOLERANCE:
            raise SpectralIdentityViolation(
                f"{self.selector.label}: purity {self.purity!r} vs spectral form {expected!r}"
            )
        return self


# ---------------------------------------------------------------------------
# Anharmonic oscillator
# ---------------------------------------------------------------------------

class QuarticOscillator(BaseModel):
    """H = p^2/(2m) + m w0^2 q^2 / 2 + lambda q^4 / 4!"""
    model_config = ConfigDict(frozen=True)

    mass: float = Field(default=1.0, gt=0, description="Mass m")
    omega0: float = Field(default=1.0, gt=0, description="Base angular frequency")
    coupling: float = Field(default=0.0, description="Quartic coupling lambda >= 0")

    @model_validator(mode="after")
    def _check(self):
        if not math.isfinite(self.coupling) or self.coupling < 0.0:
            raise NegativeCoupling(f"coupling must be >= 0, got {self.coupling}")
        return self

    def potential(self, q):
        return 0.5 * self.mass * self.omega0**2 * q**2 + self.coupling * q**4 / 24.0

    def energy(self, q, p):
        return p**2 / (2.0 * self.mass) + self.potential(q)


class QuantizationRules(BaseModel):
    """I**k -> factor_k * hbar**k for k = 1, 2, 3."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    factors: dict[int, Fraction] = Field(
        default_factory=lambda: {1: Fraction(1, 2), 2: Fraction(1, 2), 3: Fraction(21, 34)},
        description="Rational prefactor of hbar**k replacing I**k",
    )

    @field_validator("factors", mode="before")
    @classmethod
    def _to_fractions(cls, factors):
        return {int(k): Fraction(v) for k, v in dict(factors).items()}

    @model_validator(mode="after")
    def _check(self):
        if set(self.factors) != {1, 2, 3}:
            raise UnsupportedPower(f"rules must cover I, I^2, I^3, got {sorted(self.factors)}")
        return self

    @classmethod
    def naive(cls) -> "QuantizationRules":
        """The harmonic ground-state rule I = hbar/2 applied to every power."""
        return cls(factors={k: Fraction(1, 2) ** k for k in (1, 2, 3)})

    def substitute(self, power: int, hbar: float) -> Fraction:
        if power not in self.factors:
            raise UnsupportedPower(f"no quantization rule for I^{power}")
        return self.factors[power] * Fraction(hbar) ** power


class OracleAverages(BaseModel):
    """Time averages over one closed orbit of the quartic oscillator."""
    model_config = ConfigDict(frozen=True)

    q2: float
    p2: float
    qp: float
    energy: float
    period: float
    energy_drift: float


class OracleConfig(BaseModel):
    """Numerical settings of the anharmonic oracles."""
    model_config = ConfigDict(frozen=True)

    gauss_legendre_nodes: int = Field(default=96, ge=8, description="Nodes of the action integral")
    rtol: float = Field(default=1e-13, gt=0, description="Relative tolerance of DOP853")
    atol: float = Field(default=1e-15, gt=0, description="Absolute tolerance of DOP853")
    energy_drift_tolerance: float = Field(default=1e-10, gt=0)
    closure_tolerance: float = Field(default=1e-8, gt=0, description="Orbit return distance")
    action_tolerance: float = Field(default=1e-12, gt=0, description="|I(E) - I| after root finding")
    max_bracket_expansions: int = Field(default=60, ge=1)


# ---------------------------------------------------------------------------
# Example models
# ---------------------------------------------------------------------------

class ThreeOscillatorParams(BaseModel):
    """Spring constants of three coupled oscillators."""
    model_config = ConfigDict(frozen=True, extra="forbid")

    k: float = Field(description="On-site spring constant")
    k12: float = Field(description="Nearest-neighbour coupling")
    k13: float = Field(description="Coupling between particles 1 and 3")

    @model_validator(mode="after")
    def _check(self):
        if not (self.k > 0 and self.k + 3 * self.k12 > 0 and self.k + self.k12 + 2 * self.k13 > 0):
            raise ParameterRegionViolation(
                f"need k > 0, k + 3 k12 > 0, k + k12 + 2 k13 > 0; got {self}"
            )
        return self


class TwoOscillatorParams(BaseModel):
    """H = (p1^2 + p2^2 + A q1^2 + B q2^2 + C q1 q2) / 2"""
    model_config = ConfigDict(frozen=True, extra="forbid")

    A: float
    B: float
    C: float

    @model_validator(mode="after")
    def _check(self):
        if not (self.A > 0 and self.B > 0):
            raise ParameterRegionViolation(f"need A, B > 0; got {self}")
        if self.A == self.B:
            raise ParameterRegionViolation("A = B leaves the mixing angle undefined")
        if 4 * self.A * self.B - self.C**2 < 0:
            raise ParameterRegionViolation(f"need 4AB - C^2 >= 0; got {self}")
        return self


class CustomModeParams(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    frequencies: list[float] = Field(description="Normal-mode frequencies")
    matrix: list[list[float]] = Field(description="Orthogonal matrix S, Q = S q")


# ---------------------------------------------------------------------------
# Run-time configuration
# ---------------------------------------------------------------------------

class AnalogConfig(BaseModel):
    """Configuration for the classical analogs."""
    model_config = ConfigDict(frozen=True)

    beta: float = Field(default=1.0, gt=0, description="Uniform action used for tilde quantities")
    verify: bool = Field(default=False, description="Re-evaluate at verify_beta and compare")
    verify_beta: float = Field(default=2.5, gt=0)
    beta_tolerance: float = Field(default=1e-12, gt=0)


def _threads_from_env() -> int:
    raw = os.environ.get("TORUS_ENTROPY_THREADS", "")
    try:
        return max(1, int(raw))
    except ValueError:
        return DEFAULT_THREADS


class SweepConfig(BaseModel):
    """Configuration for parameter sweeps."""
    model_config = ConfigDict(frozen=True)

    max_workers: int = Field(
        default_factory=_threads_from_env, ge=1,
        description="Worker cap, from TORUS_ENTROPY_THREADS",
    )


class ModelConfig(BaseModel):
    """JSON configuration accepted by the command line."""
    model_config = ConfigDict(frozen=True, extra="forbid")

    model: ModelKind = Field(description="Model family")
    parameters: Union[ThreeOscillatorParams, TwoOscillatorParams, CustomModeParams] = Field(
        description="k, k12, k13 | A, B, C | frequencies + matrix"
    )
    actions: Optional[Union[float, list[float]]] = Field(
        default=None, description="Action vector, or one number for uniform actions"
    )
    hbar: float = Field(default=1.0, gt=0, description="Reduced Planck constant")

    @model_validator(mode="after")
    def _check(self):
        expected = {
            ModelKind.THREE_OSCILLATOR: ThreeOscillatorParams,
            ModelKind.TWO_OSCILLATOR: TwoOscillatorParams,
            ModelKind.CUSTOM_NORMAL_MODE: CustomModeParams,
        }[self.model]
        if not isinstance(self.parameters, expected):
            raise ConfigParseError(
                f"model {self.model.value!r} expects parameters of {expected.__name__}"
            )
        return self


# ---------------------------------------------------------------------------
# Records
# ---------------------------------------------------------------------------

class ResultRecord(BaseModel):
    """One subsystem row of the report command."""
    model_config = ConfigDict(frozen=True)

    subsystem: str = Field(description='Label such as "(1,3)"')
    purity: float
    linear_entropy: float
    von_neumann: float
    spectrum: tuple[float, ...]
    quantum_purity: float
    quantum_linear_entropy: float
    quantum_entropy: float
    classical_purity_at_actions: Optional[float] = Field(
        default=None, description="mu^cl at the configured action vector, if any"
    )

    @computed_field
    @property
    def purity_difference(self) -> float:
        return abs(self.purity - self.quantum_purity)

    @computed_field
    @property
    def entropy_difference(self) -> float:
        return abs(self.von_neumann - self.quantum_entropy)


class OracleRow(BaseModel):
    """Series-versus-oracle comparison at one coupling."""
    model_config = ConfigDict(frozen=True)

    coupling: float
    success: bool = Field(description="Whether the oracle run completed")
    series_q2: Optional[float] = None
    oracle_q2: Optional[float] = None
    residual: Optional[float] = None
    details: Optional[str] = Field(default=None, description="Error text for failed rows")
