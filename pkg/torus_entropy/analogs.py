"""
Classical analogs of purity, linear entropy and von Neumann entropy.

For a subsystem (a1..an) with covariance sigma_(n) on the torus I:

    mu_cl   = prod_k I_ak / sqrt(det sigma_(n))
    S_cl    = sum_k S(sigma_k),   S(s) = (s + 1/2) ln(s + 1/2) - (s - 1/2) ln(s - 1/2)

The tilde quantities evaluate both at uniform actions I_a = beta, where
beta cancels. Entropies are in nats.
"""

import logging
import math
import warnings
from typing import Callable, Optional, Union

import numpy as np
from scipy.linalg import ldl
from scipy.special import xlogy

from .classes import (
    AnalogConfig,
    CovarianceMatrix,
    EntanglementReport,
    NormalModeSystem,
    SubsystemSelector,
    SymplecticSpectrum,
    TorusSpec,
)
from .covariance import covariance_normal_form, subsystem_covariance
from .errors import (
    BetaDependenceError,
    DimensionMismatch,
    EigenvalueBelowHalf,
    NonPositiveBeta,
    PurityAboveOneWarning,
    SingularCovariance,
    UnresolvedPairing,
)
from .symplectic import scaled_spectrum

logger = logging.getLogger(__name__)

DETERMINANT_FLOOR = 1e-300
HALF_CLAMP = 1e-12
HALF_TOLERANCE = 1e-8
PURITY_SLACK = 1e-10


def covariance_determinant(cov: CovarianceMatrix) -> float:
    """det sigma from a Bunch-Kaufman LDL^T factorization.

    L is a permuted unit lower triangle, so det sigma = det D, and D is
    block diagonal with 1x1 and 2x2 blocks.
    """
    _, d, _ = ldl(cov.matrix, lower=True)
    det = float(np.linalg.det(d))
    if not math.isfinite(det) or det < DETERMINANT_FLOOR:
        raise SingularCovariance(f"det sigma = {det!r} for a {cov.dim}x{cov.dim} covariance")
    return det


def entropy_kernel(sigma: float) -> float:
    """S(sigma) for one scaled symplectic eigenvalue, with S(1/2) = 0."""
    sigma = float(sigma)
    if not sigma >= 0.5 - HALF_TOLERANCE:
        raise EigenvalueBelowHalf(f"scaled symplectic eigenvalue {sigma!r} < 1/2")
    if sigma < 0.5:
        if sigma < 0.5 - HALF_CLAMP:
            logger.warning("clamping eigenvalue %.15g to 1/2", sigma)
        sigma = 0.5
    return float(xlogy(sigma + 0.5, sigma + 0.5) - xlogy(sigma - 0.5, sigma - 0.5))


def spectrum_entropy(spectrum: SymplecticSpectrum) -> float:
    return math.fsum(entropy_kernel(s) for s in spectrum.values)


def classical_purity(cov_sub: CovarianceMatrix, actions: TorusSpec) -> float:
    """mu_cl = prod(I) / sqrt(det sigma) for a subsystem covariance.

    Values above one are returned with a PurityAboveOneWarning.
    """
    if actions.n_dof != cov_sub.n_modes:
        raise DimensionMismatch(
            f"{actions.n_dof} actions for a covariance of {cov_sub.n_modes} modes"
        )
    det = covariance_determinant(cov_sub)
    purity = math.prod(actions.actions) / math.sqrt(det)
    if purity > 1.0 + PURITY_SLACK:
        warnings.warn(
            f"classical purity {purity:.12g} exceeds 1 at actions {actions.actions}",
            PurityAboveOneWarning,
            stacklevel=2,
        )
    return purity


def classical_linear_entropy(cov_sub: CovarianceMatrix, actions: TorusSpec) -> float:
    return 1.0 - classical_purity(cov_sub, actions)


def classical_von_neumann(cov_sub: CovarianceMatrix, actions: TorusSpec) -> float:
    """S_cl with sigma_k = nu_k / (2 I_ak).

    Only defined when the eigenvalue-to-particle pairing is unambiguous:
    a single particle, or equal actions on every selected particle.
    """
    if actions.n_dof != cov_sub.n_modes:
        raise DimensionMismatch(
            f"{actions.n_dof} actions for a covariance of {cov_sub.n_modes} modes"
        )
    if actions.n_dof > 1 and not actions.is_uniform:
        raise UnresolvedPairing(
            f"cannot pair {actions.n_dof} symplectic eigenvalues with actions {actions.actions}"
        )
    return spectrum_entropy(scaled_spectrum(cov_sub, actions.actions[0]))


def classical_purity_at(
    system: NormalModeSystem,
    selector: SubsystemSelector,
    torus: TorusSpec,
) -> float:
    """mu_cl of a subsystem on an arbitrary (possibly non-uniform) torus."""
    cov = covariance_normal_form(system, torus)
    return classical_purity(subsystem_covariance(cov, selector), torus.restrict(selector))


def _uniform_subsystem(
    system: NormalModeSystem,
    selector: SubsystemSelector,
    beta: float,
) -> tuple[CovarianceMatrix, TorusSpec]:
    if not beta > 0.0:
        raise NonPositiveBeta(f"uniform action must be positive, got {beta}")
    selector.check_within(system.n_dof)
    torus = TorusSpec.uniform(beta, system.n_dof)
    cov = covariance_normal_form(system, torus)
    return subsystem_covariance(cov, selector), torus.restrict(selector)


def _purity_at_beta(system, selector, beta) -> float:
    cov_sub, actions = _uniform_subsystem(system, selector, beta)
    return classical_purity(cov_sub, actions)


def _spectrum_at_beta(system, selector, beta) -> SymplecticSpectrum:
    cov_sub, _ = _uniform_subsystem(system, selector, beta)
    return scaled_spectrum(cov_sub, beta)


def _entropy_at_beta(system, selector, beta) -> float:
    return spectrum_entropy(_spectrum_at_beta(system, selector, beta))


def _resolve(beta: Optional[float], cfg: Optional[AnalogConfig]) -> tuple[float, AnalogConfig]:
    cfg = cfg or AnalogConfig()
    return (cfg.beta if beta is None else float(beta)), cfg


def _evaluate(
    name: str,
    compute: Callable[[NormalModeSystem, SubsystemSelector, float], float],
    system: NormalModeSystem,
    selector: SubsystemSelector,
    beta: Optional[float],
    cfg: Optional[AnalogConfig],
) -> float:
    beta, cfg = _resolve(beta, cfg)
    value = compute(system, selector, beta)
    if cfg.verify:
        _verify(name, value, compute(system, selector, cfg.verify_beta), selector, beta, cfg)
    return value


def _verify(
    name: str,
    value: float,
    check: float,
    selector: SubsystemSelector,
    beta: float,
    cfg: AnalogConfig,
) -> None:
    gap = abs(value - check)
    if gap > cfg.beta_tolerance * max(1.0, abs(value)):
        raise BetaDependenceError(
            f"{name}{selector.label}: {value!r} at beta={beta} but {check!r} "
            f"at beta={cfg.verify_beta}"
        )
    logger.debug("%s%s verified at beta=%g (gap %.2e)", name, selector.label, cfg.verify_beta, gap)


def classical_purity_tilde(
    system: NormalModeSystem,
    selector: SubsystemSelector,
    beta: Optional[float] = None,
    cfg: Optional[AnalogConfig] = None,
) -> float:
    return _evaluate("purity", _purity_at_beta, system, selector, beta, cfg)


def linear_entropy_tilde(
    system: NormalModeSystem,
    selector: SubsystemSelector,
    beta: Optional[float] = None,
    cfg: Optional[AnalogConfig] = None,
) -> float:
    return 1.0 - classical_purity_tilde(system, selector, beta, cfg)


def von_neumann_tilde(
    system: NormalModeSystem,
    selector: SubsystemSelector,
    beta: Optional[float] = None,
    cfg: Optional[AnalogConfig] = None,
) -> float:
    return _evaluate("entropy", _entropy_at_beta, system, selector, beta, cfg)


def report(
    system: NormalModeSystem,
    selector: Union[SubsystemSelector, tuple[int, ...]],
    beta: Optional[float] = None,
    cfg: Optional[AnalogConfig] = None,
) -> EntanglementReport:
    """Purity, linear entropy, entropy and scaled spectrum of one subsystem."""
    if not isinstance(selector, SubsystemSelector):
        selector = SubsystemSelector(indices=tuple(selector))
    beta, cfg = _resolve(beta, cfg)

    cov_sub, actions = _uniform_subsystem(system, selector, beta)
    purity = classical_purity(cov_sub, actions)
    spectrum = scaled_spectrum(cov_sub, beta)
    entropy = spectrum_entropy(spectrum)
    if cfg.verify:
        _verify("purity", purity, _purity_at_beta(system, selector, cfg.verify_beta), selector, beta, cfg)
        _verify("entropy", entropy, _entropy_at_beta(system, selector, cfg.verify_beta), selector, beta, cfg)

    return EntanglementReport(
        selector=selector,
        purity=purity,
        linear_entropy=1.0 - purity,
        von_neumann=entropy,
        spectrum=spectrum,
        beta_used=beta,
    )
