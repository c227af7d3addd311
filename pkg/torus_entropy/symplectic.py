"""
Williamson symplectic eigenvalues.

For a symmetric positive-semidefinite 2n x 2n matrix sigma in (q..., p...)
order, the eigenvalues of K = Omega sigma are +-i nu_k. We take the
eigenvalues of -K^2 (each nu_k^2 appears twice), pair them after sorting
and return the square roots. No symplectic transformation is formed.
"""

import logging
from typing import Union

import numpy as np

from .classes import (
    CLAMP_THRESHOLD,
    CovarianceMatrix,
    SymplecticForm,
    SymplecticSpectrum,
    TorusSpec,
)
from .errors import (
    DimensionMismatch,
    NonPositiveBeta,
    NotPSD,
    NotSymmetric,
    OddDimension,
)

logger = logging.getLogger(__name__)

SYMMETRY_TOLERANCE = 1e-12
PSD_TOLERANCE = 1e-8
IMAGINARY_TOLERANCE = 1e-9


def symplectic_form(n: int) -> SymplecticForm:
    return SymplecticForm(n=n)


def _checked_array(cov: Union[CovarianceMatrix, np.ndarray]) -> np.ndarray:
    if isinstance(cov, CovarianceMatrix):
        return cov.matrix
    arr = np.asarray(cov, dtype=float)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {arr.shape}")
    if arr.shape[0] % 2:
        raise OddDimension(f"dimension must be even, got {arr.shape[0]}")
    if not np.all(np.isfinite(arr)):
        raise NotPSD("matrix has non-finite entries")
    scale = max(1.0, float(np.max(np.abs(arr))))
    if np.max(np.abs(arr - arr.T)) > SYMMETRY_TOLERANCE * scale:
        raise NotSymmetric("matrix is not symmetric")
    norm = float(np.linalg.norm(arr, 2))
    if np.min(np.linalg.eigvalsh(arr)) < -PSD_TOLERANCE * norm:
        raise NotPSD("matrix is not positive semidefinite")
    return arr


def williamson_eigenvalues(cov: Union[CovarianceMatrix, np.ndarray]) -> SymplecticSpectrum:
    """Ascending symplectic eigenvalues nu_1 <= ... <= nu_n."""
    arr = _checked_array(cov)
    n = arr.shape[0] // 2
    k = symplectic_form(n).matrix @ arr
    squares = np.linalg.eigvals(-(k @ k))

    scale = max(float(np.linalg.norm(arr, 2)) ** 2, np.finfo(float).tiny)
    largest_imag = float(np.max(np.abs(squares.imag)))
    if largest_imag > IMAGINARY_TOLERANCE * scale:
        logger.warning("discarding imaginary parts up to %.3e in symplectic spectrum", largest_imag)

    real = np.sort(squares.real)
    if real[0] < -CLAMP_THRESHOLD * max(1.0, scale):
        raise NotPSD(f"negative squared symplectic eigenvalue {real[0]:.3e}")
    paired = 0.5 * (real[0::2] + real[1::2])
    if np.any(paired < 0.0):
        logger.debug("clamped %d round-off eigenvalues to zero", int(np.sum(paired < 0.0)))
    values = np.sqrt(np.maximum(paired, 0.0))
    return SymplecticSpectrum(values=tuple(float(v) for v in values))


def scaled_spectrum(
    cov: Union[CovarianceMatrix, np.ndarray],
    actions: Union[TorusSpec, float],
) -> SymplecticSpectrum:
    """sigma~_k = nu_k / (2 beta) for a covariance built at uniform action beta.

    `actions` is either the (uniform) torus the covariance was built on or
    beta itself. The result does not depend on beta.
    """
    beta = actions.beta if isinstance(actions, TorusSpec) else float(actions)
    if not beta > 0.0:
        raise NonPositiveBeta(f"uniform action must be positive, got {beta}")
    raw = williamson_eigenvalues(cov)
    return SymplecticSpectrum(values=tuple(v / (2.0 * beta) for v in raw.values))
