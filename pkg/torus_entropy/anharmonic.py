"""
Quartic anharmonic oscillator.

H = p^2/(2m) + m w0^2 q^2/2 + lambda q^4/4!

Second moments to order lambda^2 on the classical torus I and in the
quantum ground state, the quantization rules that map one onto the
other, and two numerical references: a quadrature average over the
orbit and a trajectory time average from an adaptive integrator.

Orbit integrals use q = q_max sin(theta), which removes the square-root
singularity at the turning points:

    E - V(q) = q_max^2 cos^2(theta) g(theta),
    g(theta) = m w0^2/2 + lambda q_max^2 (1 + sin^2(theta)) / 24
"""

import logging
import math
from fractions import Fraction
from typing import Optional, Union

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.integrate import solve_ivp
from scipy.optimize import brentq

from .classes import (
    CovarianceSeries,
    HBar,
    OracleAverages,
    OracleConfig,
    PerturbationSeries,
    QuantizationRules,
    QuarticOscillator,
    Side,
)
from .errors import (
    EnergyDriftExceeded,
    NegativeAction,
    NoTurningPoint,
    OrbitNotClosed,
    QuadratureFailure,
    RootBracketFailure,
    UnsupportedPower,
)

logger = logging.getLogger(__name__)

SERIES_ORDER = 2


# ---------------------------------------------------------------------------
# Perturbation series
# ---------------------------------------------------------------------------

def _constants(osc: QuarticOscillator) -> tuple[Fraction, Fraction]:
    return Fraction(osc.mass), Fraction(osc.omega0)


def classical_covariance_prefactors(osc: QuarticOscillator) -> CovarianceSeries:
    """Classical series with the action factored out: order k carries I**(k+1)."""
    m, w = _constants(osc)
    powers = (1, 2, 3)
    return CovarianceSeries(
        qq=PerturbationSeries(
            order=SERIES_ORDER,
            coefficients=(1 / (m * w), Fraction(-1, 8) / (m**3 * w**4), Fraction(85, 2304) / (m**5 * w**7)),
            action_powers=powers,
        ),
        qp=PerturbationSeries(order=SERIES_ORDER, coefficients=(0, 0, 0), action_powers=powers),
        pp=PerturbationSeries(
            order=SERIES_ORDER,
            coefficients=(m * w, Fraction(1, 8) / (m * w**2), Fraction(-17, 768) / (m**3 * w**5)),
            action_powers=powers,
        ),
    )


def classical_covariance_series(osc: QuarticOscillator, action: float) -> CovarianceSeries:
    """<q^2>, <qp>, <p^2> on the torus I, to order lambda^2."""
    if action < 0:
        raise NegativeAction(f"action must be nonnegative, got {action}")
    prefactors = classical_covariance_prefactors(osc)
    return CovarianceSeries(
        qq=prefactors.qq.at_action(action),
        qp=prefactors.qp.at_action(action),
        pp=prefactors.pp.at_action(action),
    )


def quantum_covariance_series(osc: QuarticOscillator, hbar: Union[HBar, float] = 1.0) -> CovarianceSeries:
    """Ground-state <q^2>, <(qp + pq)/2>, <p^2> to order lambda^2."""
    m, w = _constants(osc)
    h = Fraction(HBar.coerce(hbar).value)
    return CovarianceSeries(
        qq=PerturbationSeries(
            order=SERIES_ORDER,
            coefficients=(
                h / (2 * m * w),
                -h**2 / (16 * m**3 * w**4),
                35 * h**3 / (1536 * m**5 * w**7),
            ),
        ),
        qp=PerturbationSeries(order=SERIES_ORDER, coefficients=(0, 0, 0)),
        pp=PerturbationSeries(
            order=SERIES_ORDER,
            coefficients=(
                m * w * h / 2,
                h**2 / (16 * m * w**2),
                -7 * h**3 / (512 * m**3 * w**5),
            ),
        ),
    )


def _quantize(series: PerturbationSeries, rules: QuantizationRules, hbar: float) -> PerturbationSeries:
    if series.action_powers is None:
        raise UnsupportedPower("series has no action powers to substitute")
    coefficients = []
    for k, (c, power) in enumerate(zip(series.coefficients, series.action_powers)):
        if c == 0:
            coefficients.append(Fraction(0))
            continue
        if power != k + 1:
            raise UnsupportedPower(f"order {k} carries I^{power}, expected I^{k + 1}")
        coefficients.append(c * rules.substitute(power, hbar))
    return PerturbationSeries(order=series.order, coefficients=tuple(coefficients))


def apply_quantization(
    series: Union[PerturbationSeries, CovarianceSeries],
    rules: Optional[QuantizationRules] = None,
    hbar: Union[HBar, float] = 1.0,
) -> Union[PerturbationSeries, CovarianceSeries]:
    """Replace I**k by the rule for k, term by term, in exact arithmetic."""
    rules = rules or QuantizationRules()
    h = HBar.coerce(hbar).value
    if isinstance(series, CovarianceSeries):
        return CovarianceSeries(
            qq=_quantize(series.qq, rules, h),
            qp=_quantize(series.qp, rules, h),
            pp=_quantize(series.pp, rules, h),
        )
    return _quantize(series, rules, h)


def variance_product_series(
    side: Side,
    osc: QuarticOscillator,
    value: float,
) -> PerturbationSeries:
    """(dq)^2 (dp)^2 - <qp>^2 to order lambda^2.

    `value` is the action I on the classical side and hbar on the quantum side.
    """
    side = Side(side)
    if side == Side.CLASSICAL:
        series = classical_covariance_series(osc, value)
    else:
        series = quantum_covariance_series(osc, value)
    product = series.qq.multiply(series.pp, order=SERIES_ORDER)
    cross = series.qp.multiply(series.qp, order=SERIES_ORDER)
    return PerturbationSeries(
        order=SERIES_ORDER,
        coefficients=tuple(a - b for a, b in zip(product.coefficients, cross.coefficients)),
    )


# ---------------------------------------------------------------------------
# Orbit quadrature
# ---------------------------------------------------------------------------

def turning_point(osc: QuarticOscillator, energy: float) -> float:
    """q_max > 0 with V(q_max) = E."""
    if not (math.isfinite(energy) and energy > 0.0):
        raise NoTurningPoint(f"energy must be positive, got {energy}")
    b = 0.5 * osc.mass * osc.omega0**2
    # rationalized root of lambda x^2/24 + b x - E = 0, stable as lambda -> 0
    q_max_sq = 2.0 * energy / (b + math.sqrt(b * b + osc.coupling * energy / 6.0))
    return math.sqrt(q_max_sq)


def _nodes(cfg: OracleConfig) -> tuple[np.ndarray, np.ndarray]:
    x, w = leggauss(cfg.gauss_legendre_nodes)
    return 0.25 * np.pi * (x + 1.0), 0.25 * np.pi * w


def _orbit_root(osc: QuarticOscillator, q_max: float, theta: np.ndarray) -> np.ndarray:
    """sqrt(2 m g(theta))."""
    g = 0.5 * osc.mass * osc.omega0**2 + osc.coupling * q_max**2 * (1.0 + np.sin(theta) ** 2) / 24.0
    return np.sqrt(2.0 * osc.mass * g)


def _checked(value: float, what: str) -> float:
    if not math.isfinite(value):
        raise QuadratureFailure(f"{what} evaluated to {value!r}")
    return value


def action_from_energy(osc: QuarticOscillator, energy: float, cfg: Optional[OracleConfig] = None) -> float:
    """I(E) = (1/pi) int p dq between the turning points."""
    cfg = cfg or OracleConfig()
    q_max = turning_point(osc, energy)
    theta, weights = _nodes(cfg)
    integrand = q_max**2 * np.cos(theta) ** 2 * _orbit_root(osc, q_max, theta)
    return _checked(2.0 / np.pi * float(weights @ integrand), "action integral")


def orbit_period(osc: QuarticOscillator, energy: float, cfg: Optional[OracleConfig] = None) -> float:
    """T(E) = 4 m int_0^q_max dq / p."""
    cfg = cfg or OracleConfig()
    q_max = turning_point(osc, energy)
    theta, weights = _nodes(cfg)
    return _checked(4.0 * osc.mass * float(weights @ (1.0 / _orbit_root(osc, q_max, theta))), "period")


def energy_from_action(osc: QuarticOscillator, action: float, cfg: Optional[OracleConfig] = None) -> float:
    """Invert I(E) by Brent's method on a geometrically expanded bracket."""
    cfg = cfg or OracleConfig()
    if not (math.isfinite(action) and action > 0.0):
        raise NoTurningPoint(f"action must be positive, got {action}")

    def residual(energy: float) -> float:
        if energy == 0.0:
            return -action
        return action_from_energy(osc, energy, cfg) - action

    upper = 2.0 * osc.omega0 * action * (1.0 + osc.coupling)
    expansions = 0
    while residual(upper) < 0.0:
        expansions += 1
        if expansions > cfg.max_bracket_expansions:
            raise RootBracketFailure(f"no bracket for I={action} below E={upper:.3e}")
        upper *= 2.0
    logger.debug("energy bracket [0, %.6g] after %d expansions", upper, expansions)

    try:
        energy = brentq(residual, 0.0, upper, xtol=1e-300, rtol=4.0 * np.finfo(float).eps, maxiter=500)
    except (RuntimeError, ValueError) as e:
        raise RootBracketFailure(str(e)) from e

    gap = abs(residual(energy))
    if gap >= cfg.action_tolerance * max(1.0, action):
        raise RootBracketFailure(f"|I(E) - I| = {gap:.3e} at E={energy!r}")
    return energy


def orbit_average(osc: QuarticOscillator, action: float, cfg: Optional[OracleConfig] = None) -> OracleAverages:
    """Time averages over one period by quadrature in the orbit angle."""
    cfg = cfg or OracleConfig()
    energy = energy_from_action(osc, action, cfg)
    q_max = turning_point(osc, energy)
    theta, weights = _nodes(cfg)
    root = _orbit_root(osc, q_max, theta)
    period = 4.0 * osc.mass * float(weights @ (1.0 / root))

    q2 = 4.0 * osc.mass / period * float(weights @ (q_max**2 * np.sin(theta) ** 2 / root))
    p2 = 4.0 * osc.mass / period * float(weights @ (q_max**2 * np.cos(theta) ** 2 * root))
    return OracleAverages(
        q2=_checked(q2, "<q^2>"),
        p2=_checked(p2, "<p^2>"),
        qp=0.0,
        energy=energy,
        period=_checked(period, "period"),
        energy_drift=0.0,
    )


# ---------------------------------------------------------------------------
# Trajectory oracle
# ---------------------------------------------------------------------------

def _equations(osc: QuarticOscillator):
    m = osc.mass
    k = m * osc.omega0**2
    lam = osc.coupling

    def rhs(t, y):
        q, p = y[0], y[1]
        return [p / m, -k * q - lam * q**3 / 6.0, q * q, p * p, q * p]

    return rhs


def _momentum_falls_through_zero(t, y):
    return y[1]


_momentum_falls_through_zero.direction = -1.0


def _integrate(osc: QuarticOscillator, energy: float, q_max: float, t_end: float, cfg: OracleConfig, events=None):
    """DOP853 from the turning point (q_max, 0) with the running integrals of q^2, p^2, qp."""
    sol = solve_ivp(
        _equations(osc),
        (0.0, t_end),
        [q_max, 0.0, 0.0, 0.0, 0.0],
        method="DOP853",
        rtol=cfg.rtol,
        atol=cfg.atol,
        events=events,
    )
    if not sol.success:
        raise QuadratureFailure(f"trajectory integration failed: {sol.message}")

    drift = float(np.max(np.abs(osc.energy(sol.y[0], sol.y[1]) - energy))) / energy
    if drift >= cfg.energy_drift_tolerance:
        raise EnergyDriftExceeded(f"relative energy drift {drift:.3e} at lambda={osc.coupling}")
    return sol, drift


def closing_time(osc: QuarticOscillator, energy: float, cfg: Optional[OracleConfig] = None) -> float:
    """Time of the first return to the turning point, read off the trajectory.

    The quadrature period only sets the search window: the orbit is
    followed for 1.5 periods and the first downward zero of p after half
    a period is the closing time.
    """
    cfg = cfg or OracleConfig()
    q_max = turning_point(osc, energy)
    window = orbit_period(osc, energy, cfg)
    sol, _ = _integrate(osc, energy, q_max, 1.5 * window, cfg, events=_momentum_falls_through_zero)

    returns = [float(t) for t in sol.t_events[0] if t > 0.5 * window]
    if not returns:
        raise OrbitNotClosed(f"trajectory never returned to its turning point within t={1.5 * window!r}")
    return returns[0]


def time_average_oracle(osc: QuarticOscillator, action: float, cfg: Optional[OracleConfig] = None) -> OracleAverages:
    """<q^2>, <p^2>, <qp> as time averages along one integrated period.

    The period is the closing time found on the trajectory itself and must
    agree with the quadrature period. The averages come from a second run
    that ends exactly there, which also has to land back on its start.
    """
    cfg = cfg or OracleConfig()
    energy = energy_from_action(osc, action, cfg)
    q_max = turning_point(osc, energy)
    expected = orbit_period(osc, energy, cfg)

    period = closing_time(osc, energy, cfg)
    if abs(period - expected) >= cfg.closure_tolerance * expected:
        raise OrbitNotClosed(f"trajectory closes at t={period!r}, quadrature period is {expected!r}")

    sol, drift = _integrate(osc, energy, q_max, period, cfg)
    q, p = sol.y[0], sol.y[1]
    p_max = math.sqrt(2.0 * osc.mass * energy)
    miss = math.hypot(q[-1] - q_max, p[-1]) / max(1.0, q_max, p_max)
    if miss >= cfg.closure_tolerance:
        raise OrbitNotClosed(f"orbit misses its start by {miss:.3e} after T={period!r}")

    logger.debug(
        "oracle lambda=%g I=%g: E=%.15g T=%.15g (quadrature %.15g), %d steps, drift %.2e",
        osc.coupling, action, energy, period, expected, sol.t.size, drift,
    )
    q2, p2, qp = (float(v) / period for v in sol.y[2:, -1])
    return OracleAverages(q2=q2, p2=p2, qp=qp, energy=energy, period=period, energy_drift=drift)


def residual_slope(couplings, residuals) -> float:
    """Least-squares slope of log|residual| against log(lambda)."""
    lam = np.asarray(couplings, dtype=float)
    res = np.abs(np.asarray(residuals, dtype=float))
    keep = (lam > 0.0) & (res > 0.0) & np.isfinite(res)
    if np.count_nonzero(keep) < 2:
        raise QuadratureFailure("need two nonzero residuals at positive couplings for a slope")
    slope, _ = np.polyfit(np.log(lam[keep]), np.log(res[keep]), 1)
    return float(slope)
