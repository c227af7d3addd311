"""
Classical averages over the angle torus.

<f>_cl = (2 pi)^-N  int d^N phi  f(phi, I)

The angles of an integrable system are uniformly distributed on each
invariant torus, so the measure is flat. Two rules are available: the
tensor trapezoid on the uniform grid, which is exact for trigonometric
polynomials of per-angle degree below M - 1, and a seeded Monte Carlo
sampler built on the counter-based Philox generator.
"""

import logging
import math
from typing import Optional, Sequence

import numpy as np

from .classes import (
    MonteCarloEstimate,
    QuadratureConfig,
    QuadratureMethod,
    TorusFunction,
    TorusSpec,
)
from .errors import ArityMismatch

logger = logging.getLogger(__name__)

PERIODICITY_TOLERANCE = 1e-12


def angle_grid(n_angles: int, nodes_per_angle: int) -> np.ndarray:
    """Uniform grid phi_a = 2 pi j / M as a (M**N, N) array.

    Points are in lexicographic order of the angle indices, last angle
    fastest, so summation order (and therefore round-off) is fixed.
    """
    axis = 2.0 * np.pi * np.arange(nodes_per_angle) / nodes_per_angle
    mesh = np.meshgrid(*([axis] * n_angles), indexing="ij")
    return np.stack([m.ravel() for m in mesh], axis=1)


def monte_carlo_angles(n_angles: int, cfg: QuadratureConfig) -> np.ndarray:
    """Uniform angles from a Philox stream; identical for identical seeds."""
    rng = np.random.Generator(np.random.Philox(cfg.rng_seed))
    return rng.uniform(0.0, 2.0 * np.pi, size=(cfg.mc_samples, n_angles))


def _check_arity(fs: Sequence[TorusFunction], torus: TorusSpec) -> None:
    for f in fs:
        if f.arity != torus.n_dof:
            raise ArityMismatch(
                f"function {f.label or '<anonymous>'} has arity {f.arity}, "
                f"torus has {torus.n_dof} actions"
            )


def _sample_points(torus: TorusSpec, cfg: QuadratureConfig) -> np.ndarray:
    if cfg.method == QuadratureMethod.MONTE_CARLO:
        return monte_carlo_angles(torus.n_dof, cfg)
    return angle_grid(torus.n_dof, cfg.nodes_per_angle)


def _mean(values: np.ndarray) -> float:
    # fsum is exactly rounded, so the result does not depend on chunking
    return math.fsum(values.tolist()) / values.size


def classical_average_batch(
    fs: Sequence[TorusFunction],
    torus: TorusSpec,
    cfg: Optional[QuadratureConfig] = None,
) -> list[float]:
    """Average several functions over the same set of angle points."""
    cfg = cfg or QuadratureConfig()
    fs = list(fs)
    if not fs:
        return []
    _check_arity(fs, torus)

    points = _sample_points(torus, cfg)
    actions = torus.values
    logger.debug(
        "averaging %d functions over %d points (%s)", len(fs), len(points), cfg.method.value
    )
    return [_mean(f(points, actions)) for f in fs]


def classical_average(
    f: TorusFunction,
    torus: TorusSpec,
    cfg: Optional[QuadratureConfig] = None,
) -> float:
    """Classical average of one function at fixed actions."""
    return classical_average_batch([f], torus, cfg)[0]


def monte_carlo_estimate(
    f: TorusFunction,
    torus: TorusSpec,
    cfg: Optional[QuadratureConfig] = None,
) -> MonteCarloEstimate:
    """Monte Carlo average together with its standard error."""
    cfg = (cfg or QuadratureConfig()).model_copy(update={"method": QuadratureMethod.MONTE_CARLO})
    _check_arity([f], torus)
    values = f(monte_carlo_angles(torus.n_dof, cfg), torus.values)
    samples = values.size
    if samples > 1:
        standard_error = float(np.std(values, ddof=1)) / math.sqrt(samples)
    else:
        standard_error = math.inf
    return MonteCarloEstimate(mean=_mean(values), standard_error=standard_error, samples=samples)


def check_periodic(
    f: TorusFunction,
    torus: TorusSpec,
    seed: int = 0,
    points: int = 8,
    tolerance: float = PERIODICITY_TOLERANCE,
) -> bool:
    """Spot-check 2 pi periodicity of `f` in every angle at random points."""
    _check_arity([f], torus)
    rng = np.random.Generator(np.random.Philox(seed))
    phi = rng.uniform(0.0, 2.0 * np.pi, size=(points, f.arity))
    base = f(phi, torus.values)
    for a in range(f.arity):
        shifted = phi.copy()
        shifted[:, a] += 2.0 * np.pi
        if np.max(np.abs(f(shifted, torus.values) - base)) >= tolerance:
            logger.debug("%s is not periodic in angle %d", f.label, a + 1)
            return False
    return True
