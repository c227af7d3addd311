"""
Classical covariance matrices of linear normal-mode systems.

On the torus I the normal coordinates are
    Q_a = sqrt(2 I_a / w_a) sin(phi_a),   P_a = sqrt(2 w_a I_a) cos(phi_a)
and the physical ones follow from q = S^T Q, p = S^T P. The closed form
is the default; the quadrature path is an independent cross-check that
also accepts arbitrary torus functions.
"""

import logging
from typing import Optional

import numpy as np

from .classes import (
    CovarianceMatrix,
    NormalModeSystem,
    QuadratureConfig,
    SubsystemSelector,
    TorusFunction,
    TorusSpec,
)
from .errors import DimensionMismatch
from .quadrature import classical_average_batch

logger = logging.getLogger(__name__)


def coordinate_labels(n_dof: int) -> list[str]:
    return [f"q{a}" for a in range(1, n_dof + 1)] + [f"p{a}" for a in range(1, n_dof + 1)]


def phase_space_points(system: NormalModeSystem, phi: np.ndarray, actions: np.ndarray) -> np.ndarray:
    """Physical phase-space points r = (q, p) for a (K, N) array of angles."""
    omega = system.omega
    big_q = np.sqrt(2.0 * actions / omega) * np.sin(phi)
    big_p = np.sqrt(2.0 * omega * actions) * np.cos(phi)
    # row form of q = S^T Q
    return np.hstack([big_q @ system.transform, big_p @ system.transform])


def phase_space_map(system: NormalModeSystem) -> list[TorusFunction]:
    """The 2N component functions of r(phi, I) = (q1..qN, p1..pN)."""
    labels = coordinate_labels(system.n_dof)

    def component(index: int) -> TorusFunction:
        return TorusFunction(
            arity=system.n_dof,
            evaluate=lambda phi, actions: phase_space_points(system, phi, actions)[:, index],
            label=labels[index],
        )

    return [component(i) for i in range(2 * system.n_dof)]


def second_moment_functions(
    system: NormalModeSystem,
) -> tuple[list[TorusFunction], list[TorusFunction], list[tuple[int, int]]]:
    """First moments, products r_i r_j for i <= j, and the (i, j) of each product."""
    firsts = phase_space_map(system)
    labels = coordinate_labels(system.n_dof)
    pairs = [(i, j) for i in range(2 * system.n_dof) for j in range(i, 2 * system.n_dof)]

    def product(i: int, j: int) -> TorusFunction:
        def evaluate(phi, actions):
            r = phase_space_points(system, phi, actions)
            return r[:, i] * r[:, j]

        return TorusFunction(arity=system.n_dof, evaluate=evaluate, label=f"{labels[i]}*{labels[j]}")

    return firsts, [product(i, j) for i, j in pairs], pairs


def _check_torus(system: NormalModeSystem, torus: TorusSpec) -> None:
    if torus.n_dof != system.n_dof:
        raise DimensionMismatch(
            f"torus has {torus.n_dof} actions, system {system.label!r} has {system.n_dof} modes"
        )


def covariance_normal_form(system: NormalModeSystem, torus: TorusSpec) -> CovarianceMatrix:
    """sigma_qq = S^T diag(I/w) S, sigma_pp = S^T diag(I w) S, sigma_qp = 0."""
    _check_torus(system, torus)
    s = system.transform
    omega = system.omega
    actions = torus.values

    qq = (s.T * (actions / omega)) @ s
    pp = (s.T * (actions * omega)) @ s
    zero = np.zeros_like(qq)
    full = np.block([[0.5 * (qq + qq.T), zero], [zero, 0.5 * (pp + pp.T)]])
    return CovarianceMatrix(entries=full)


def covariance_by_quadrature(
    system: NormalModeSystem,
    torus: TorusSpec,
    cfg: Optional[QuadratureConfig] = None,
) -> CovarianceMatrix:
    """<r_a r_b>_cl - <r_a>_cl <r_b>_cl from torus averages."""
    firsts, products, pairs = second_moment_functions(system)
    averages = classical_average_batch(firsts + products, torus, cfg)
    means = np.asarray(averages[: len(firsts)])
    seconds = averages[len(firsts):]

    dim = 2 * system.n_dof
    matrix = np.empty((dim, dim))
    for (i, j), value in zip(pairs, seconds):
        matrix[i, j] = matrix[j, i] = value - means[i] * means[j]
    logger.debug("quadrature covariance for %r, max |<r>| = %.3e", system.label, np.max(np.abs(means)))
    return CovarianceMatrix(entries=matrix)


def subsystem_covariance(cov: CovarianceMatrix, selector: SubsystemSelector) -> CovarianceMatrix:
    """Rows and columns of the selected particles, in both blocks, block order kept."""
    selector.check_within(cov.n_modes)
    idx = np.concatenate([selector.zero_based, selector.zero_based + cov.n_modes])
    return CovarianceMatrix(entries=cov.matrix[np.ix_(idx, idx)])
