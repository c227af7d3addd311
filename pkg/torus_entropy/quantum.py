"""
Quantum Gaussian reference values.

The ground-state covariance is the classical normal form with every
action replaced by hbar/2. Purities and entropies then follow from the
usual Gaussian-state formulas

    mu = (hbar/2)^n / sqrt(det sigma),   S = sum_k S(nu_k),  nu = spec(sigma / hbar)

and the phase-space blocks of the quantum geometric tensor are fixed by
the covariance and the symplectic form.
"""

import logging
import math
from typing import Union

import numpy as np

from .analogs import covariance_determinant, spectrum_entropy
from .classes import CovarianceMatrix, HBar, NormalModeSystem, SymplecticSpectrum, TorusSpec
from .covariance import covariance_normal_form
from .symplectic import symplectic_form, williamson_eigenvalues

logger = logging.getLogger(__name__)

HBarLike = Union[HBar, float]


def quantum_gaussian_covariance(system: NormalModeSystem, hbar: HBarLike = 1.0) -> CovarianceMatrix:
    """Ground-state covariance: the classical one at I_a = hbar/2."""
    h = HBar.coerce(hbar)
    return covariance_normal_form(system, TorusSpec.uniform(h.value / 2.0, system.n_dof))


def quantum_purity(cov_sub: CovarianceMatrix, hbar: HBarLike = 1.0) -> float:
    h = HBar.coerce(hbar)
    return (h.value / 2.0) ** cov_sub.n_modes / math.sqrt(covariance_determinant(cov_sub))


def quantum_linear_entropy(cov_sub: CovarianceMatrix, hbar: HBarLike = 1.0) -> float:
    return 1.0 - quantum_purity(cov_sub, hbar)


def quantum_spectrum(cov_sub: CovarianceMatrix, hbar: HBarLike = 1.0) -> SymplecticSpectrum:
    """Symplectic eigenvalues of sigma / hbar."""
    h = HBar.coerce(hbar)
    return williamson_eigenvalues(cov_sub.scaled(1.0 / h.value))


def quantum_entropy(cov_sub: CovarianceMatrix, hbar: HBarLike = 1.0) -> float:
    spectrum = quantum_spectrum(cov_sub, hbar)
    logger.debug("quantum spectrum %s", spectrum.values)
    return spectrum_entropy(spectrum)


def metric_from_covariance(cov: CovarianceMatrix, hbar: HBarLike = 1.0) -> CovarianceMatrix:
    """Phase-space metric g = Omega sigma Omega^T / hbar^2.

    In blocks: g_qq = sigma_pp, g_pp = sigma_qq, g_qp = -sigma_pq, all over hbar^2.
    """
    h = HBar.coerce(hbar)
    omega = symplectic_form(cov.n_modes).matrix
    g = omega @ cov.matrix @ omega.T / h.value**2
    return CovarianceMatrix(entries=0.5 * (g + g.T))


def berry_curvature_phase_space(n: int, hbar: HBarLike = 1.0) -> np.ndarray:
    """F = -Omega / hbar^2."""
    h = HBar.coerce(hbar)
    return -symplectic_form(n).matrix / h.value**2
