"""
Brute-force validation path: the unreduced differential rate d^3N_perp/d^3k
integrated numerically over signal photon energy and emission angles.

No small-angle expansion and no k -> omega replacement is made here. The
counter-propagating (omega + k) contribution is left out, as in the reduced
formulas, so the comparison isolates the reduction steps.
"""
import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import cubature
from scipy.optimize import brentq, minimize_scalar

from .beams import Scenario, duration_stretch, effective_waist, peak_field_squared, to_ellipse_frame
from .config import (
    ORACLE_K_SPAN,
    ORACLE_MAX_SUBDIVISIONS,
    ORACLE_RULE,
    ORACLE_THETA_CAP,
    ORACLE_THETA_SPAN,
    ORACLE_TOL,
)
from .errors import AccuracyError, ValidationError
from .ffactor import overlap_sum
from .signal import spectrum_width
from .units import CONSTANTS
from .utils import setup_logging

logger = setup_logging()


@dataclass(frozen=True)
class FullRatePoint:
    k: float
    theta: float
    phi: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.k) and self.k > 0):
            raise ValidationError(f"must be finite and > 0, got {self.k}", "k")
        if not (0.0 <= self.theta <= math.pi):
            raise ValidationError(f"must lie in [0, pi], got {self.theta}", "theta")
        if not (0.0 <= self.phi < 2.0 * math.pi):
            raise ValidationError(f"must lie in [0, 2 pi), got {self.phi}", "phi")


@dataclass(frozen=True)
class OracleResult:
    value: float
    error: float
    subdivisions: int


def _rate(scenario: Scenario, k, theta, phi):
    """
    Vectorized d^3N_perp / d^3k. `scenario` must already be in the ellipse frame.
    """
    k = np.asarray(k, dtype=float)
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)

    pump, probe, offsets = scenario.pump, scenario.probe, scenario.offsets
    m = CONSTANTS.electron_mass
    e_sq = CONSTANTS.elementary_charge_sq
    alpha = CONSTANTS.fine_structure
    w = effective_waist(pump)
    w1, w2 = probe.waist_1, probe.waist_2
    z_r, tau, t_probe = pump.rayleigh_range, pump.duration, probe.duration
    stretch = duration_stretch(scenario)

    overlap = w ** 4 + 2.0 * w ** 2 * (w1 ** 2 + w2 ** 2) + 4.0 * (w1 * w2) ** 2
    prefactor = (
        m ** 4 / (2.0 * math.pi) ** 3
        * (w ** 2 * z_r * tau) ** 2
        * alpha * (math.pi / 120.0) ** 2
        * e_sq * peak_field_squared("probe", scenario) / (4.0 * m ** 4)
        * (e_sq * peak_field_squared("pump", scenario)) ** 2 / (16.0 * m ** 8)
        * (w1 * w2) ** 2 / overlap
        / stretch ** 2
    )

    cos_t = np.cos(theta)
    sin_t = np.sin(theta)
    ellipse = w ** 2 * (w1 ** 2 * np.cos(phi) ** 2 + w2 ** 2 * np.sin(phi) ** 2) + 2.0 * (w1 * w2) ** 2
    angular = -0.5 * (w * k * sin_t) ** 2 * ellipse / overlap
    # a-hat . x0 = -x0 and b-hat . x0 = y0 in the ellipse frame
    transverse = -4.0 * ((w ** 2 + 2.0 * w2 ** 2) * offsets.x0 ** 2 + (w ** 2 + 2.0 * w1 ** 2) * offsets.y0 ** 2) / overlap

    detuning = (probe.photon_energy - k) / 4.0
    recoil = k * (1.0 - cos_t)
    kappa = tau * detuning / stretch
    chi = 4.0 * z_r / t_probe / stretch
    chi0 = 2.0 * (offsets.z0 + offsets.t0) / t_probe / stretch
    p = t_probe * detuning / stretch + t_probe * recoil / 8.0 * stretch
    # exp(8/T^2 ((2 z_R)^2 - (z0 + t0)^2) / stretch^2) is folded into overlap_sum
    modulus = np.abs(overlap_sum(chi, chi0, p)) ** 2

    return prefactor * k * (1.0 + cos_t) ** 2 * np.exp(angular + transverse - kappa ** 2) * modulus


def d3n_full(scenario: Scenario, point: FullRatePoint) -> float:
    """d^3N_perp / d^3k at one momentum; d^3k = k^2 dk sin(theta) dtheta dphi."""
    scenario = to_ellipse_frame(scenario)
    return float(_rate(scenario, point.k, point.theta, point.phi))


def _theta_max(scenario: Scenario) -> float:
    probe = scenario.probe
    smallest = min(probe.waist_1, probe.waist_2, effective_waist(scenario.pump))
    return min(ORACLE_THETA_SPAN / (probe.photon_energy * smallest), ORACLE_THETA_CAP)


def _k_bounds(scenario: Scenario):
    omega = scenario.probe.photon_energy
    span = ORACLE_K_SPAN * spectrum_width(scenario.pump.duration, scenario.probe.duration)
    return max(omega - span, 1e-12 * omega), omega + span


def _cubature(integrand, lower, upper, tol, what):
    result = cubature(
        integrand,
        np.asarray(lower, dtype=float),
        np.asarray(upper, dtype=float),
        rule=ORACLE_RULE,
        rtol=tol,
        atol=0.0,
        max_subdivisions=ORACLE_MAX_SUBDIVISIONS,
    )
    estimate = float(np.squeeze(result.estimate))
    error = float(np.squeeze(result.error))
    if result.status != "converged":
        raise AccuracyError(f"{what} did not converge within {ORACLE_MAX_SUBDIVISIONS} subdivisions", estimate, error)
    return OracleResult(estimate, error, int(result.subdivisions))


def integrate_full(scenario: Scenario, tol: float = ORACLE_TOL) -> OracleResult:
    """
    Total N_perp from the unreduced rate by adaptive 3D cubature over
    k in omega +- 6 dk, theta up to min(12/(omega w_min), pi/4), phi in [0, 2 pi).
    """
    scenario = to_ellipse_frame(scenario)
    k_lo, k_hi = _k_bounds(scenario)
    theta_max = _theta_max(scenario)

    def integrand(x):
        k, theta, phi = x[:, 0], x[:, 1], x[:, 2]
        return k ** 2 * np.sin(theta) * _rate(scenario, k, theta, phi)

    result = _cubature(integrand, [k_lo, 0.0, 0.0], [k_hi, theta_max, 2.0 * math.pi], tol, "oracle cubature")
    logger.info(
        f"oracle N_perp = {result.value:.6e} +- {result.error:.2e} ({result.subdivisions} subdivisions)"
    )
    return result


def spectrum(scenario: Scenario, k: float, tol: float = ORACLE_TOL) -> float:
    """dN_perp/dk: the unreduced rate integrated over emission angles."""
    scenario = to_ellipse_frame(scenario)
    theta_max = _theta_max(scenario)

    def integrand(x):
        theta, phi = x[:, 0], x[:, 1]
        return k ** 2 * np.sin(theta) * _rate(scenario, k, theta, phi)

    return _cubature(integrand, [0.0, 0.0], [theta_max, 2.0 * math.pi], tol, "spectrum cubature").value


def _peak(scenario: Scenario, tol: float):
    omega = scenario.probe.photon_energy
    reference = spectrum_width(scenario.pump.duration, scenario.probe.duration)
    peak = minimize_scalar(
        lambda k: -spectrum(scenario, k, tol),
        bounds=(omega - reference, omega + reference),
        method="bounded",
        options={"xatol": 1e-4 * reference},
    )
    return float(peak.x), float(-peak.fun)


def spectral_peak(scenario: Scenario, tol: float = ORACLE_TOL) -> float:
    """Photon energy at which the oracle's k-marginal peaks."""
    return _peak(to_ellipse_frame(scenario), tol)[0]


def spectral_width(scenario: Scenario, tol: float = ORACLE_TOL) -> float:
    """Full 1/e^2 width of the oracle's k-marginal."""
    scenario = to_ellipse_frame(scenario)
    reference = spectrum_width(scenario.pump.duration, scenario.probe.duration)
    k_peak, height = _peak(scenario, tol)
    level = height * math.exp(-2.0)

    def excess(k):
        return spectrum(scenario, k, tol) - level

    k_lo, k_hi = _k_bounds(scenario)
    left = brentq(excess, k_lo, k_peak, xtol=1e-6 * reference)
    right = brentq(excess, k_peak, k_hi, xtol=1e-6 * reference)
    logger.info(f"oracle spectral width {right - left:.4g} eV (reduced estimate {reference:.4g} eV)")
    return right - left
