"""Desk-scale moment integrals of zeta powers along vertical lines.

The central quantity is the hybrid moment

    I(T) = integral_0^T |zeta(1/2+it)|^4 |zeta(sigma+it)|^{2j} dt,

for j in {0, 1, 2}: j = 0 is the plain fourth moment, j = 1 weights it
by a second-power factor off the critical line, j = 2 by a fourth
power.  Everything here is numerical evidence, not proof: the growth
exponents these moments carry are asymptotic statements, and a scan up
to T ~ 2000 can only illustrate them.  Growth fits are therefore
reported with deliberately wide acceptance bands and no hard claims.

Also provided: the split of the hybrid moment into the two integrals
I1 (smoothed-polynomial weight) and I2 (short-average weight) that
arise from replacing |zeta(sigma+it)| by its Mellin-smoothed series
plus a short integral of |zeta(1/2+it+iv)| over |v| <= log^2 T; the
ratio harness for the weighted fourth-moment mean-value bound

    integral_0^T |sum_m a_m m^{it}|^2 |zeta(1/2+it)|^4 dt
        <= C T^{1+eps} M (1 + M^2 T^{-1/2}) max|a_m|^2,

with eps fixed at 0.01 to make the right side a number; and a sixth
moment probe normalized by T^{5/4}.  Suppressed constants are unknown,
so all three report values or ratios and never pass/fail.

Error estimates come from panel refinement: the value is the half-width
integral, the estimate is |half - base| floored at rounding level.
Integration is deterministic for a fixed spec, threaded or not (see the
quadrature module).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy.integrate import cumulative_trapezoid

from .errors import (
    DegenerateFitError,
    DomainError,
    PrecisionError,
    ResourceLimitError,
)
from .quadrature import QuadratureSettings, integrate
from .zeta import DEFAULT_SETTINGS, EvalSettings, zeta_grid_multi

_MAX_T_MOMENT = 1.0e4
_MAX_T_SPLIT = 2000.0
_ERROR_FLOOR = 1e-12
_STALL_TOL = 1e-6
_PROFILE_STEP = 0.005  # fine-grid step for the short-average profile


@dataclass(frozen=True)
class MomentSpec:
    """One moment integral: exponent data and the quadrature scheme."""

    sigma: float
    j: int
    t_min: float
    t_max: float
    quadrature: QuadratureSettings = field(default_factory=QuadratureSettings)

    def __post_init__(self):
        if not (0.5 <= self.sigma <= 1):
            raise DomainError(f"sigma must lie in [1/2, 1], got {self.sigma}")
        if self.j not in (0, 1, 2):
            raise DomainError(f"j must be 0, 1 or 2, got {self.j}")
        if not (0 <= self.t_min <= self.t_max):
            raise DomainError(f"need 0 <= t_min <= t_max, got {self}")


@dataclass(frozen=True)
class MomentResult:
    value: float
    error_estimate: float
    panel_count: int
    spec: MomentSpec

    def __post_init__(self):
        if self.value < 0 or self.error_estimate < 0:
            raise DomainError("moment value and error estimate must be >= 0")


@dataclass(frozen=True)
class GrowthFit:
    """Least-squares fit of log(value) against log(T); illustrative only."""

    samples: tuple[tuple[float, float], ...]
    exponent: float
    intercept: float
    residual_rms: float

    def __post_init__(self):
        if len(self.samples) < 3:
            raise DomainError("growth fit needs >= 3 samples")
        if any(v <= 0 for _, v in self.samples):
            raise DegenerateFitError("growth fit needs positive values")


def _hybrid_integrand(sigma: float, j: int, eval_settings: EvalSettings):
    """|zeta(1/2+it)|^4 |zeta(sigma+it)|^{2j} as a vectorized callable.

    For j = 0 the sigma factor is never evaluated, so the result is
    exactly independent of sigma, bit for bit.
    """
    if j == 0:

        def f(ts: np.ndarray) -> np.ndarray:
            rows = zeta_grid_multi([0.5], ts, eval_settings)
            return np.abs(rows[0]) ** 4

    else:

        def f(ts: np.ndarray) -> np.ndarray:
            rows = zeta_grid_multi([0.5, sigma], ts, eval_settings)
            return np.abs(rows[0]) ** 4 * np.abs(rows[1]) ** (2 * j)

    return f


def integrate_moment(
    spec: MomentSpec, eval_settings: EvalSettings = DEFAULT_SETTINGS
) -> MomentResult:
    """Evaluate the moment with a refinement-based error estimate.

    The base partition is integrated once, then again at half panel
    width; the half-width value is returned and |half - base|, floored
    at rounding level, is the error estimate.  If the two disagree
    beyond all plausibility for a spectrally convergent rule, the
    refinement has stalled and a precision error is raised.
    """
    if spec.t_max > _MAX_T_MOMENT:
        raise ResourceLimitError(
            f"t_max {spec.t_max:g} beyond the desk-scale limit {_MAX_T_MOMENT:g}"
        )
    if spec.t_max == spec.t_min:
        return MomentResult(0.0, 0.0, 0, spec)
    f = _hybrid_integrand(spec.sigma, spec.j, eval_settings)
    base, _ = integrate(f, spec.t_min, spec.t_max, spec.quadrature)
    value, panels = integrate(f, spec.t_min, spec.t_max, spec.quadrature.halved())
    diff = abs(value - base)
    scale = 1 + abs(value)
    if diff > _STALL_TOL * scale:
        raise PrecisionError(
            f"quadrature refinement stalled on {spec}: base {base!r}, half {value!r}"
        )
    return MomentResult(value, max(diff, _ERROR_FLOOR * scale), panels, spec)


def fit_growth(samples: Sequence[tuple[float, float]]) -> GrowthFit:
    """Fit log(value) = exponent * log(T) + intercept by least squares."""
    if len(samples) < 3:
        raise DomainError(f"growth fit needs >= 3 samples, got {len(samples)}")
    for big_t, value in samples:
        if big_t <= 0:
            raise DomainError(f"sample T must be > 0, got {big_t}")
        if value <= 0:
            raise DegenerateFitError(f"sample value must be > 0, got {value} at T = {big_t}")
    log_t = np.log([big_t for big_t, _ in samples])
    log_v = np.log([value for _, value in samples])
    exponent, intercept = np.polyfit(log_t, log_v, 1)
    resid = log_v - (exponent * log_t + intercept)
    rms = float(np.sqrt(np.mean(resid**2)))
    return GrowthFit(tuple(samples), float(exponent), float(intercept), rms)


def dyadic_scan(
    sigma: float,
    j: int,
    t_list: Sequence[float],
    quadrature: QuadratureSettings = QuadratureSettings(),
    eval_settings: EvalSettings = DEFAULT_SETTINGS,
) -> GrowthFit:
    """Integrate [0, T] for each T and fit the growth exponent.

    T^{1+eps} is the asymptotic target; at desk scale the fitted
    exponent is recorded as illustrative, nothing more.
    """
    if len(t_list) < 3:
        raise DomainError("dyadic scan needs >= 3 values of T")
    if any(b <= a for a, b in zip(t_list, t_list[1:])):
        raise DomainError("T list must be strictly ascending")
    samples = []
    for big_t in t_list:
        spec = MomentSpec(sigma, j, 0.0, float(big_t), quadrature)
        samples.append((float(big_t), integrate_moment(spec, eval_settings).value))
    return fit_growth(samples)


def _critical_profile(t_hi: float, eval_settings: EvalSettings):
    """Cumulative G(u) = integral_0^u |zeta(1/2+iv)| dv on a fine grid,
    returned as an interpolant valid for |u| <= t_hi (odd extension,
    since |zeta(1/2+iv)| is even in v)."""
    npts = int(round(t_hi / _PROFILE_STEP)) + 1
    grid = np.linspace(0.0, t_hi, npts)
    vals = np.abs(zeta_grid_multi([0.5], grid, eval_settings)[0])
    cum = cumulative_trapezoid(vals, grid, initial=0.0)

    def profile(u: np.ndarray) -> np.ndarray:
        return np.sign(u) * np.interp(np.abs(u), grid, cum)

    return profile


def split_i1_i2(
    big_t: float,
    sigma: float,
    smoothing: float,
    quadrature: QuadratureSettings = QuadratureSettings(),
    eval_settings: EvalSettings = DEFAULT_SETTINGS,
) -> tuple[float, float]:
    """The two pieces the smoothed series splits the hybrid moment into:

        I1 = integral_0^T |zeta(1/2+it)|^4
                 |sum_{n <= Y log^2 T} e^{-n/Y} n^{-sigma-it}|^2 dt
        I2 = Y^{1-2 sigma} integral_0^T |zeta(1/2+it)|^4
                 (integral_{-log^2 T}^{log^2 T} |zeta(1/2+it+iv)| dv)^2 dt

    with Y = smoothing.  The inner v-integral is read off a cumulative
    fine-grid profile of |zeta(1/2+iv)|, so the outer quadrature costs
    one subtraction per node.
    """
    if big_t > _MAX_T_SPLIT:
        raise ResourceLimitError(
            f"T {big_t:g} beyond the desk-scale limit {_MAX_T_SPLIT:g}"
        )
    if big_t <= 1:
        raise DomainError(f"T must be > 1, got {big_t}")
    if smoothing < 1:
        raise DomainError(f"smoothing scale Y must be >= 1, got {smoothing}")
    if not (0.5 < sigma < 1):
        raise DomainError(f"sigma must lie in (1/2, 1), got {sigma}")
    log_sq = math.log(big_t) ** 2
    m = int(math.floor(smoothing * log_sq))
    n = np.arange(1, m + 1, dtype=np.float64)
    coeffs = np.exp(-n / smoothing) * n ** (-sigma)
    log_n = np.log(n)

    def integrand_1(ts: np.ndarray) -> np.ndarray:
        crit = np.abs(zeta_grid_multi([0.5], ts, eval_settings)[0]) ** 4
        poly = np.exp(-1j * np.outer(ts, log_n)) @ coeffs
        return crit * np.abs(poly) ** 2

    profile = _critical_profile(big_t + log_sq, eval_settings)

    def integrand_2(ts: np.ndarray) -> np.ndarray:
        crit = np.abs(zeta_grid_multi([0.5], ts, eval_settings)[0]) ** 4
        short_avg = profile(ts + log_sq) - profile(ts - log_sq)
        return crit * short_avg**2

    i1, _ = integrate(integrand_1, 0.0, big_t, quadrature)
    i2, _ = integrate(integrand_2, 0.0, big_t, quadrature)
    return i1, smoothing ** (1 - 2 * sigma) * i2


def watt_ratio(
    big_t: float,
    m_length: int,
    coefficients: Sequence[complex],
    quadrature: QuadratureSettings = QuadratureSettings(),
    eval_settings: EvalSettings = DEFAULT_SETTINGS,
) -> tuple[float, float, float]:
    """Weighted fourth moment against its mean-value comparator.

    lhs = integral_0^T |sum_{m <= M} a_m m^{it}|^2 |zeta(1/2+it)|^4 dt,
    rhs = T^{1.01} M (1 + M^2 T^{-1/2}) max|a_m|^2, ratio = lhs/rhs
    (0 when both vanish).  The 0.01 stands in for an arbitrarily small
    epsilon; the suppressed constant is unknown, so the ratio is
    recorded, never asserted.
    """
    if big_t > _MAX_T_SPLIT:
        raise ResourceLimitError(
            f"T {big_t:g} beyond the desk-scale limit {_MAX_T_SPLIT:g}"
        )
    if big_t < 0:
        raise DomainError(f"T must be >= 0, got {big_t}")
    a = np.asarray(list(coefficients), dtype=np.complex128)
    if a.size != m_length:
        raise DomainError(f"expected {m_length} coefficients, got {a.size}")
    if m_length < 1:
        raise DomainError("need at least one coefficient")
    peak = float(np.max(np.abs(a)) ** 2)
    if big_t == 0:
        return 0.0, 0.0, 0.0
    rhs = big_t**1.01 * m_length * (1 + m_length**2 / math.sqrt(big_t)) * peak
    if peak == 0:
        return 0.0, rhs, 0.0
    log_m = np.log(np.arange(1, m_length + 1, dtype=np.float64))

    def integrand(ts: np.ndarray) -> np.ndarray:
        crit = np.abs(zeta_grid_multi([0.5], ts, eval_settings)[0]) ** 4
        poly = np.exp(1j * np.outer(ts, log_m)) @ a
        return np.abs(poly) ** 2 * crit

    lhs, _ = integrate(integrand, 0.0, big_t, quadrature)
    return lhs, rhs, lhs / rhs


def sixth_moment_probe(
    big_t: float,
    quadrature: QuadratureSettings = QuadratureSettings(),
    eval_settings: EvalSettings = DEFAULT_SETTINGS,
) -> float:
    """integral_0^T |zeta(1/2+it)|^6 dt normalized by T^{5/4}, the shape
    of the sharpest known sixth-moment bound; a trend probe only."""
    if big_t > _MAX_T_SPLIT:
        raise ResourceLimitError(
            f"T {big_t:g} beyond the desk-scale limit {_MAX_T_SPLIT:g}"
        )
    if big_t < 0:
        raise DomainError(f"T must be >= 0, got {big_t}")
    if big_t == 0:
        return 0.0

    def integrand(ts: np.ndarray) -> np.ndarray:
        return np.abs(zeta_grid_multi([0.5], ts, eval_settings)[0]) ** 6

    value, _ = integrate(integrand, 0.0, big_t, quadrature)
    return value / big_t**1.25
