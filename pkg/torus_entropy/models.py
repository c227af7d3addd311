"""
Example systems and their closed-form reference values.

Three coupled oscillators (unit masses):

    H = sum p_i^2/2 + k/2 sum q_i^2 + k12/2 [(q1-q2)^2 + (q2-q3)^2] + k13/2 (q1-q3)^2

Two coupled oscillators:

    H = (p1^2 + p2^2 + A q1^2 + B q2^2 + C q1 q2) / 2
"""

import logging
import math
from typing import Optional, Sequence, Union

import numpy as np

from .analogs import entropy_kernel
from .classes import (
    CustomModeParams,
    ModelConfig,
    ModelKind,
    NormalModeSystem,
    SubsystemSelector,
    ThreeOscillatorParams,
    TwoOscillatorParams,
)
from .errors import (
    DimensionMismatch,
    InvalidSelector,
    NonPositiveFrequency,
    ParameterRegionViolation,
)

logger = logging.getLogger(__name__)

THREE_OSCILLATOR_MODES = np.array([
    [1.0 / math.sqrt(3.0), 1.0 / math.sqrt(3.0), 1.0 / math.sqrt(3.0)],
    [1.0 / math.sqrt(6.0), -2.0 / math.sqrt(6.0), 1.0 / math.sqrt(6.0)],
    [-1.0 / math.sqrt(2.0), 0.0, 1.0 / math.sqrt(2.0)],
])

# subsystems sharing the middle-particle closed form; the rest share the edge one
_CENTER_LIKE = {(2,), (1, 3)}

SelectorLike = Union[SubsystemSelector, Sequence[int]]


def _selector(sel: SelectorLike, n_dof: int) -> SubsystemSelector:
    if not isinstance(sel, SubsystemSelector):
        sel = SubsystemSelector(indices=tuple(sel))
    sel.check_within(n_dof)
    return sel


def _three_frequencies(omega: Sequence[float]) -> tuple[float, float, float]:
    if len(omega) != 3:
        raise DimensionMismatch(f"three frequencies required, got {len(omega)}")
    w1, w2, w3 = (float(w) for w in omega)
    if not all(math.isfinite(w) and w > 0.0 for w in (w1, w2, w3)):
        raise NonPositiveFrequency(f"frequencies must be positive, got {tuple(omega)}")
    return w1, w2, w3


# ---------------------------------------------------------------------------
# Builders
# ---------------------------------------------------------------------------

def three_oscillator_frequencies(params: ThreeOscillatorParams) -> tuple[float, float, float]:
    return (
        math.sqrt(params.k),
        math.sqrt(params.k + 3.0 * params.k12),
        math.sqrt(params.k + params.k12 + 2.0 * params.k13),
    )


def three_oscillator_from_frequencies(omega: Sequence[float]) -> NormalModeSystem:
    """Three-oscillator mode shapes with arbitrary positive frequencies."""
    return NormalModeSystem(
        n_dof=3,
        frequencies=_three_frequencies(omega),
        mode_to_physical=THREE_OSCILLATOR_MODES,
        label="three_oscillator",
    )


def three_oscillator_system(params: ThreeOscillatorParams) -> NormalModeSystem:
    return three_oscillator_from_frequencies(three_oscillator_frequencies(params))


def two_oscillator_angle(params: TwoOscillatorParams) -> float:
    """alpha in (-pi/4, pi/4) with tan(2 alpha) = C / (B - A)."""
    return 0.5 * math.atan(params.C / (params.B - params.A))


def two_oscillator_system(params: TwoOscillatorParams) -> NormalModeSystem:
    """Normal modes Q = R(alpha) q of the two-oscillator model."""
    alpha = two_oscillator_angle(params)
    c, s = math.cos(alpha), math.sin(alpha)
    half_c_tan = 0.5 * params.C * math.tan(alpha)
    w1_sq = params.A - half_c_tan
    w2_sq = params.B + half_c_tan
    if w1_sq <= 0.0 or w2_sq <= 0.0:
        raise NonPositiveFrequency(f"4AB - C^2 = 0 leaves a zero mode: w^2 = ({w1_sq}, {w2_sq})")
    return NormalModeSystem(
        n_dof=2,
        frequencies=(math.sqrt(w1_sq), math.sqrt(w2_sq)),
        mode_to_physical=((c, -s), (s, c)),
        label="two_oscillator",
    )


def custom_normal_mode_system(
    frequencies: Sequence[float],
    matrix: Sequence[Sequence[float]],
    label: str = "custom_normal_mode",
) -> NormalModeSystem:
    return NormalModeSystem(
        n_dof=len(frequencies),
        frequencies=frequencies,
        mode_to_physical=matrix,
        label=label,
    )


def build_system(config: ModelConfig) -> NormalModeSystem:
    """NormalModeSystem described by a parsed configuration."""
    params = config.parameters
    if config.model == ModelKind.THREE_OSCILLATOR:
        return three_oscillator_system(params)
    if config.model == ModelKind.TWO_OSCILLATOR:
        return two_oscillator_system(params)
    assert isinstance(params, CustomModeParams)
    return custom_normal_mode_system(params.frequencies, params.matrix)


def relabel_particles(system: NormalModeSystem, order: Sequence[int]) -> NormalModeSystem:
    """Same system where new particle j is old particle order[j - 1]."""
    order = tuple(int(i) for i in order)
    if sorted(order) != list(range(1, system.n_dof + 1)):
        raise InvalidSelector(f"{order} is not a permutation of 1..{system.n_dof}")
    columns = np.asarray(order) - 1
    return NormalModeSystem(
        n_dof=system.n_dof,
        frequencies=system.frequencies,
        mode_to_physical=system.transform[:, columns],
        label=system.label,
    )


# ---------------------------------------------------------------------------
# Three-oscillator closed forms
# ---------------------------------------------------------------------------

def _edge_root(w1: float, w2: float, w3: float) -> float:
    return math.sqrt((2.0 / w1 + 1.0 / w2 + 3.0 / w3) * (2.0 * w1 + w2 + 3.0 * w3))


def _center_root(w1: float, w2: float) -> float:
    return math.sqrt(5.0 + 2.0 * w1 / w2 + 2.0 * w2 / w1)


def reference_spectrum_3osc(sel: SelectorLike, omega: Sequence[float]) -> tuple[float, ...]:
    """Scaled symplectic eigenvalues, ascending."""
    sel = _selector(sel, 3)
    w1, w2, w3 = _three_frequencies(omega)
    if sel.n == 3:
        return (0.5, 0.5, 0.5)
    if sel.indices in _CENTER_LIKE:
        sigma = _center_root(w1, w2) / 6.0
    else:
        sigma = _edge_root(w1, w2, w3) / 12.0
    return (sigma,) if sel.n == 1 else (0.5, sigma)


def reference_purity_3osc(sel: SelectorLike, omega: Sequence[float]) -> float:
    sel = _selector(sel, 3)
    w1, w2, w3 = _three_frequencies(omega)
    if sel.n == 3:
        return 1.0
    if sel.indices in _CENTER_LIKE:
        return 3.0 * math.sqrt(w1 * w2 / ((w2 + 2.0 * w1) * (w1 + 2.0 * w2)))
    return 6.0 * math.sqrt(
        w1 * w2 * w3 / ((2.0 * w1 + w2 + 3.0 * w3) * (w1 * (3.0 * w2 + w3) + 2.0 * w2 * w3))
    )


def reference_entropy_3osc(sel: SelectorLike, omega: Sequence[float]) -> float:
    return math.fsum(entropy_kernel(s) for s in reference_spectrum_3osc(sel, omega))


def printed_entropy_3osc(sel: SelectorLike, omega: Sequence[float]) -> Optional[float]:
    """Entropy in its log/artanh form; None where that form is 0 * inf."""
    sel = _selector(sel, 3)
    w1, w2, w3 = _three_frequencies(omega)
    if sel.n == 3:
        return 0.0
    if sel.indices in _CENTER_LIKE:
        if w1 == w2:
            return None
        x = _center_root(w1, w2)
        return (2.0 * x * math.atanh(3.0 / x) - 3.0 * math.log(18.0 * w1 * w2 / (w1 - w2) ** 2)) / 6.0

    poly = (
        2.0 * w3 * (w1 * w1 - 11.0 * w1 * w2 + w2 * w2)
        + 3.0 * w3 * w3 * (w1 + 2.0 * w2)
        + 3.0 * w1 * w2 * (2.0 * w1 + w2)
    )
    if poly <= 0.0:
        return None
    y = _edge_root(w1, w2, w3)
    return (math.log(poly**6 / (144.0**6 * (w1 * w2 * w3) ** 6)) + 2.0 * y * math.atanh(6.0 / y)) / 12.0


# ---------------------------------------------------------------------------
# Two-oscillator closed forms
# ---------------------------------------------------------------------------

def reference_purity_2osc(sel: SelectorLike, params: TwoOscillatorParams) -> float:
    """mu(1) = mu(2) = sqrt(s (A + B + 2 s) / ((A + s)(B + s))), s = sqrt(AB - C^2/4)."""
    sel = _selector(sel, 2)
    if sel.n == 2:
        return 1.0
    a, b = params.A, params.B
    s = math.sqrt(a * b - 0.25 * params.C**2)
    return math.sqrt(s * (a + b + 2.0 * s) / ((a + s) * (b + s)))


def reference_spectrum_2osc(sel: SelectorLike, params: TwoOscillatorParams) -> tuple[float, ...]:
    sel = _selector(sel, 2)
    if sel.n == 2:
        return (0.5, 0.5)
    return (0.5 / reference_purity_2osc(sel, params),)


def reference_entropy_2osc(sel: SelectorLike, params: TwoOscillatorParams) -> float:
    return math.fsum(entropy_kernel(s) for s in reference_spectrum_2osc(sel, params))


# ---------------------------------------------------------------------------
# Parameter sampling
# ---------------------------------------------------------------------------

def sample_three_oscillator_params(rng: np.random.Generator, max_tries: int = 1000) -> ThreeOscillatorParams:
    """k in [0.5, 3], k12 and k13 in [-0.1, 2], rejected outside the valid region."""
    for _ in range(max_tries):
        k = rng.uniform(0.5, 3.0)
        k12, k13 = rng.uniform(-0.1, 2.0, size=2)
        if k + 3.0 * k12 > 0.0 and k + k12 + 2.0 * k13 > 0.0:
            return ThreeOscillatorParams(k=float(k), k12=float(k12), k13=float(k13))
    raise ParameterRegionViolation(f"no valid three-oscillator draw in {max_tries} tries")


def sample_two_oscillator_params(rng: np.random.Generator, max_tries: int = 1000) -> TwoOscillatorParams:
    """A, B in [0.5, 3] with |A - B| > 0.05 and C^2 <= 0.95 * 4AB."""
    for _ in range(max_tries):
        a, b = rng.uniform(0.5, 3.0, size=2)
        if abs(a - b) <= 0.05:
            continue
        c_max = math.sqrt(0.95 * 4.0 * a * b)
        c = rng.uniform(-c_max, c_max)
        return TwoOscillatorParams(A=float(a), B=float(b), C=float(c))
    raise ParameterRegionViolation(f"no valid two-oscillator draw in {max_tries} tries")
