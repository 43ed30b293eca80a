"""
Reduced observables of the polarization-flipped signal: differential and
total photon numbers, divergences, the purity-limited discernible signal,
the background two-crossing model, spectral width, omega-scaling exponents
and the comparison with the conventional constant-field estimate.

All n_* functions return absolute photon numbers; n_perp_over_n returns the
ratio. Transverse geometry is evaluated in the probe ellipse frame.
"""
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from scipy.integrate import quad

from .beams import (
    Scenario,
    effective_waist,
    f_args,
    scenario_warnings,
    to_ellipse_frame,
)
from .config import (
    F_TOL,
    OVERLAP_GAP_WARN,
    PHI_QUAD_LIMIT,
    SINGULAR_LOCUS_RTOL,
    THETA_QUAD_LIMIT,
)
from .errors import (
    NoDiscernibleWindowError,
    PhysicsDomainError,
    PurityFloorError,
    ThetaEqualDomainError,
    ValidationError,
)
from .ffactor import FArgs, f
from .units import CONSTANTS
from .utils import setup_logging

logger = setup_logging()

COUPLING = 4.0 * CONSTANTS.fine_structure ** 4 / (25.0 * (3.0 * math.pi) ** 1.5)
HEINZL_COUPLING = 2048.0 * CONSTANTS.fine_structure ** 4 / (225.0 * math.pi)

# log(R0/P) below this magnitude counts as the forward crossing itself
_LOG_RATIO_ATOL = 1e-12


@dataclass(frozen=True)
class AngularPoint:
    """Polar angle theta (>= 0) and azimuth phi, both in radians."""

    theta: float
    phi: float = 0.0

    def __post_init__(self):
        if not math.isfinite(self.theta) or self.theta < 0:
            raise ValidationError(f"must be finite and >= 0, got {self.theta}", "theta")
        if not math.isfinite(self.phi):
            raise ValidationError(f"must be finite, got {self.phi}", "phi")

    @classmethod
    def from_cartesian(cls, x: float, y: float) -> "AngularPoint":
        return cls(math.hypot(x, y), math.atan2(y, x) % (2.0 * math.pi))

    @property
    def cartesian(self) -> Tuple[float, float]:
        return self.theta * math.cos(self.phi), self.theta * math.sin(self.phi)


@dataclass
class SignalReport:
    n_perp: float
    n_perp_over_n: float
    f_value: float
    f_args: FArgs
    divergence_by_phi: Dict[float, float]
    probe_divergence_by_phi: Dict[float, float]
    theta_equal_by_phi: Dict[float, float] = field(default_factory=dict)
    discernible_n_perp: Optional[float] = None
    warnings: List[str] = field(default_factory=list)

    def __post_init__(self):
        if self.n_perp_over_n < 0:
            raise ValidationError("must be >= 0", "n_perp_over_n")
        if self.discernible_n_perp is not None and self.discernible_n_perp > self.n_perp * (1.0 + 1e-9):
            raise ValidationError("discernible count exceeds the total", "discernible_n_perp")


# ---------------------------------------------------------------------------
# Geometry shared by every reduced formula
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class _Geometry:
    w: float            # effective pump waist
    a: float            # w1 / w
    b: float            # w2 / w
    omega: float
    denominator: float  # 1 + 2 (a + b)^2
    offset: float       # (1 + 2 b^2)(x0/w)^2 + (1 + 2 a^2)(y0/w)^2

    def ellipse(self, phi: float) -> float:
        return (self.a * math.cos(phi)) ** 2 + (self.b * math.sin(phi)) ** 2

    def spread(self, phi: float) -> float:
        return self.ellipse(phi) + 2.0 * (self.a * self.b) ** 2

    def crossing_denominator(self, phi: float) -> float:
        """a^2 b^2 - S (a + b)^2; negative for all positive waists."""
        return (self.a * self.b) ** 2 - self.ellipse(phi) * (self.a + self.b) ** 2


def _geometry(scenario: Scenario) -> _Geometry:
    w = effective_waist(scenario.pump)
    a = scenario.probe.waist_1 / w
    b = scenario.probe.waist_2 / w
    offsets = scenario.offsets
    return _Geometry(
        w=w,
        a=a,
        b=b,
        omega=scenario.probe.photon_energy,
        denominator=1.0 + 2.0 * (a + b) ** 2,
        offset=(1.0 + 2.0 * b * b) * (offsets.x0 / w) ** 2 + (1.0 + 2.0 * a * a) * (offsets.y0 / w) ** 2,
    )


def _f_value(scenario: Scenario, tol: float = F_TOL) -> float:
    return f(f_args(scenario), tol)


def _require_purity(scenario: Scenario) -> float:
    if scenario.purity is None:
        raise ValidationError("polarization purity is required for discernibility", "purity")
    return scenario.purity


def coupling_prefactor(scenario: Scenario) -> float:
    """
    4 alpha^4 / (25 (3 pi)^(3/2)) * (W/m * omega/m)^2 * (lambda_C / w0)^4
    """
    m = CONSTANTS.electron_mass
    pump = scenario.pump
    return COUPLING * (pump.pulse_energy * scenario.probe.photon_energy / m ** 2) ** 2 / (m * pump.waist) ** 4


def offset_factor(scenario: Scenario) -> float:
    geometry = _geometry(to_ellipse_frame(scenario))
    return math.exp(-4.0 * geometry.offset / geometry.denominator)


# ---------------------------------------------------------------------------
# Differential and total numbers
# ---------------------------------------------------------------------------

def d2n_perp(scenario: Scenario, point: AngularPoint, tol: float = F_TOL) -> float:
    """
    dN_perp / (dphi dtheta theta) in the small-angle, k ~ omega reduction.
    """
    scenario = to_ellipse_frame(scenario)
    g = _geometry(scenario)
    n = scenario.probe.photon_count
    forward = (
        n / (2.0 * math.pi)
        * coupling_prefactor(scenario)
        * (g.omega * g.w) ** 2
        * g.a * g.b / g.denominator
        * math.exp(-4.0 * g.offset / g.denominator)
        * _f_value(scenario, tol)
    )
    angular = 0.5 * (g.omega * g.w * point.theta) ** 2 * g.spread(point.phi) / g.denominator
    return forward * math.exp(-angular)


def n_perp_over_n(scenario: Scenario, tol: float = F_TOL) -> float:
    scenario = to_ellipse_frame(scenario)
    g = _geometry(scenario)
    return (
        coupling_prefactor(scenario)
        / math.sqrt((1.0 + 2.0 * g.a ** 2) * (1.0 + 2.0 * g.b ** 2))
        * math.exp(-4.0 * g.offset / g.denominator)
        * _f_value(scenario, tol)
    )


def n_perp_total(scenario: Scenario, tol: float = F_TOL) -> float:
    return scenario.probe.photon_count * n_perp_over_n(scenario, tol)


def n_perp_point(scenario: Scenario, tol: float = F_TOL) -> float:
    """Point-like probe (w1, w2 -> 0)."""
    scenario = to_ellipse_frame(scenario)
    w = effective_waist(scenario.pump)
    offsets = scenario.offsets
    return (
        scenario.probe.photon_count
        * coupling_prefactor(scenario)
        * math.exp(-4.0 * (offsets.x0 ** 2 + offsets.y0 ** 2) / w ** 2)
        * _f_value(scenario, tol)
    )


def n_perp_point_nooffset(scenario: Scenario, tol: float = F_TOL) -> float:
    """Point-like probe with every spatio-temporal offset set to zero."""
    args = f_args(scenario)
    aligned = FArgs(args.chi, 0.0, args.rho)
    return scenario.probe.photon_count * coupling_prefactor(scenario) * f(aligned, tol)


# ---------------------------------------------------------------------------
# Probe far field and divergences
# ---------------------------------------------------------------------------

def _probe_ellipse(probe, phi: float) -> float:
    return (probe.waist_1 * math.cos(phi)) ** 2 + (probe.waist_2 * math.sin(phi)) ** 2


def probe_d2n(probe, point: AngularPoint) -> float:
    """dN / (dphi dtheta theta) of the Gaussian probe far field."""
    omega = probe.photon_energy
    forward = probe.photon_count / (2.0 * math.pi) * omega ** 2 * probe.waist_1 * probe.waist_2
    return forward * math.exp(-0.5 * (omega * point.theta) ** 2 * _probe_ellipse(probe, point.phi))


def probe_divergence(probe, phi: float) -> float:
    """Radial 1/e^2 divergence theta(phi) of the probe."""
    return 2.0 / (probe.photon_energy * math.sqrt(_probe_ellipse(probe, phi)))


def signal_divergence(scenario: Scenario, phi: float) -> float:
    """Radial 1/e^2 divergence of the signal photons; never below the probe's."""
    scenario = to_ellipse_frame(scenario)
    g = _geometry(scenario)
    s = g.ellipse(phi)
    return probe_divergence(scenario.probe, phi) * math.sqrt(
        g.denominator / (1.0 + 2.0 * (g.a * g.b) ** 2 / s)
    )


# ---------------------------------------------------------------------------
# Purity-limited discernible signal
# ---------------------------------------------------------------------------

def forward_ratio(scenario: Scenario, tol: float = F_TOL) -> float:
    """d2n_perp / probe_d2n at theta = 0."""
    scenario = to_ellipse_frame(scenario)
    g = _geometry(scenario)
    return (
        coupling_prefactor(scenario)
        * _f_value(scenario, tol)
        * math.exp(-4.0 * g.offset / g.denominator)
        / g.denominator
    )


def _crossing_sq(log_ratio: float, denominator: float, g: _Geometry) -> float:
    return g.denominator * log_ratio / ((g.omega * g.w) ** 2 * denominator)


def _check_locus(g: _Geometry, phi: float) -> float:
    den = g.crossing_denominator(phi)
    scale = g.ellipse(phi) * (g.a + g.b) ** 2
    if abs(den) <= SINGULAR_LOCUS_RTOL * scale:
        raise ThetaEqualDomainError(
            "crossing angle undefined on the singular locus", "a^2 b^2 - S (a+b)^2", den
        )
    return den


def _theta_equal_sq(scenario: Scenario, phi: float, ratio: float) -> float:
    purity = _require_purity(scenario)
    g = _geometry(scenario)
    if not (ratio > 0.0) or not (purity > 0.0):
        raise PurityFloorError(f"signal nowhere exceeds purity floor (R0 = {ratio:.6g}, P = {purity:.6g})")
    log_ratio = math.log(ratio / purity)
    if abs(log_ratio) <= _LOG_RATIO_ATOL:
        return 0.0
    den = _check_locus(g, phi)
    theta_sq = _crossing_sq(log_ratio, den, g)
    if theta_sq < 0.0:
        raise ThetaEqualDomainError(
            "signal exceeds the purity floor already in forward direction", "ln(R0/P)", log_ratio
        )
    return theta_sq


def theta_equal(scenario: Scenario, phi: float, tol: float = F_TOL) -> float:
    """
    Polar angle at which d2n_perp / probe_d2n equals the purity P.
    """
    scenario = to_ellipse_frame(scenario)
    return math.sqrt(_theta_equal_sq(scenario, phi, forward_ratio(scenario, tol)))


def dn_perp_dphi(scenario: Scenario, phi: float, tol: float = F_TOL) -> float:
    """d2n_perp integrated over all theta."""
    scenario = to_ellipse_frame(scenario)
    g = _geometry(scenario)
    return (
        scenario.probe.photon_count / (2.0 * math.pi)
        * coupling_prefactor(scenario)
        * _f_value(scenario, tol)
        * math.exp(-4.0 * g.offset / g.denominator)
        * g.a * g.b / g.spread(phi)
    )


def integrate_theta(
    scenario: Scenario,
    phi: float,
    lower: float,
    upper: float = math.inf,
    tol: float = F_TOL,
) -> float:
    """
    Numerical integral of theta * d2n_perp over [lower, upper] at fixed phi.
    """
    scenario = to_ellipse_frame(scenario)
    g = _geometry(scenario)
    if upper <= lower:
        return 0.0
    # u = theta / width maps the Gaussian decay onto O(1)
    width = 1.0 / (g.omega * g.w * math.sqrt(0.5 * g.spread(phi) / g.denominator))
    forward = d2n_perp(scenario, AngularPoint(0.0, phi), tol)
    u_lo = lower / width
    u_hi = min(upper / width, u_lo + 40.0)

    def integrand(u):
        return u * math.exp(-u * u)

    value, error = quad(integrand, u_lo, u_hi, epsabs=0.0, epsrel=1e-10, limit=THETA_QUAD_LIMIT)
    return forward * width ** 2 * value


def _gt_log_closed_form(scenario: Scenario, phi: float, g: _Geometry, f_value: float) -> float:
    purity = scenario.purity
    n = scenario.probe.photon_count
    s = g.ellipse(phi)
    pair = (g.a + g.b) ** 2 - (g.a * g.b) ** 2 / s
    exponent = g.denominator / pair
    m = CONSTANTS.electron_mass
    pump = scenario.pump
    amplitude = (
        2.0 * CONSTANTS.fine_structure ** 2 / (5.0 * (3.0 * math.pi) ** 0.75)
        * (pump.pulse_energy / m) * (g.omega / m) / (m * pump.waist) ** 2
        * math.sqrt(f_value / purity) / math.sqrt(g.denominator)
    )
    return (
        math.log(purity * n / (2.0 * math.pi) * g.a * g.b * g.denominator / g.spread(phi))
        + exponent * math.log(amplitude)
        - 2.0 * g.offset / pair
    )


def dn_perp_gt_dphi(scenario: Scenario, phi: float, tol: float = F_TOL) -> float:
    """
    Signal photons per azimuth emitted at theta >= theta_equal(phi).
    """
    scenario = to_ellipse_frame(scenario)
    g = _geometry(scenario)
    try:
        theta_sq = _theta_equal_sq(scenario, phi, forward_ratio(scenario, tol))
    except ThetaEqualDomainError as exc:
        if exc.factor != "a^2 b^2 - S (a+b)^2":
            raise
        # the closed form reorganizes a removable singularity; integrate directly
        logger.warning(f"phi={phi:.6g} on the singular locus, integrating theta numerically")
        return _gt_on_locus(scenario, phi, tol)
    if theta_sq == 0.0:
        return dn_perp_dphi(scenario, phi, tol)
    return math.exp(_gt_log_closed_form(scenario, phi, g, _f_value(scenario, tol)))


def _gt_on_locus(scenario: Scenario, phi: float, tol: float) -> float:
    # signal and probe fall off at the same rate: above the floor everywhere or nowhere
    ratio = forward_ratio(scenario, tol)
    if ratio >= scenario.purity:
        return integrate_theta(scenario, phi, 0.0, math.inf, tol)
    return 0.0


def n_perp_gt_circular(scenario: Scenario, tol: float = F_TOL) -> float:
    """
    Discernible signal for a circular probe, azimuth integrated in closed form.
    """
    scenario = to_ellipse_frame(scenario)
    if not scenario.probe.is_circular:
        raise ValidationError(
            "closed form needs w1 == w2; use n_perp_gt for elliptical probes", "probe.waist_2"
        )
    purity = _require_purity(scenario)
    _theta_equal_sq(scenario, 0.0, forward_ratio(scenario, tol))

    g = _geometry(scenario)
    a2 = g.a ** 2
    d = 1.0 + 8.0 * a2
    m = CONSTANTS.electron_mass
    pump = scenario.pump
    f_value = _f_value(scenario, tol)
    amplitude = (
        2.0 * CONSTANTS.fine_structure ** 2 / (5.0 * (3.0 * math.pi) ** 0.75)
        * (pump.pulse_energy / m) * (g.omega / m) / (m * pump.waist) ** 2
        * math.sqrt(f_value / purity) / math.sqrt(d)
    )
    spread = (1.0 + 2.0 * a2) / (3.0 * a2)
    radial = (scenario.offsets.x0 / g.w) ** 2 + (scenario.offsets.y0 / g.w) ** 2
    log_value = (
        math.log(scenario.probe.photon_count * purity * d / (1.0 + 2.0 * a2))
        + (2.0 + spread) * math.log(amplitude)
        - 2.0 * spread * radial
    )
    return math.exp(log_value)


def n_perp_gt(scenario: Scenario, tol: float = F_TOL) -> float:
    """Discernible signal for any probe ellipse."""
    scenario = to_ellipse_frame(scenario)
    if scenario.probe.is_circular:
        return n_perp_gt_circular(scenario, tol)
    # cos^2 / sin^2 dependence: one quadrant suffices
    value, error = quad(
        lambda phi: dn_perp_gt_dphi(scenario, phi, tol),
        0.0,
        0.5 * math.pi,
        epsabs=0.0,
        epsrel=1e-10,
        limit=PHI_QUAD_LIMIT,
    )
    return 4.0 * value


# ---------------------------------------------------------------------------
# Background of wider divergence
# ---------------------------------------------------------------------------

def background_crossings(scenario: Scenario, phi: float, tol: float = F_TOL) -> Tuple[float, float]:
    """
    Lower and upper polar angles delimiting the window in which the signal
    exceeds P times both the probe and its wide background.
    """
    scenario = to_ellipse_frame(scenario)
    purity = _require_purity(scenario)
    if scenario.background is None:
        raise ValidationError("background model is required", "background")
    level, eps = scenario.background.b, scenario.background.epsilon
    g = _geometry(scenario)
    ratio = forward_ratio(scenario, tol)
    if not ratio > 0.0:
        raise PurityFloorError(f"signal nowhere exceeds purity floor (R0 = {ratio:.6g})")

    # against the narrow part of the probe
    lower_sq = _crossing_sq(math.log(ratio * (1.0 + level / eps ** 2) / purity), _check_locus(g, phi), g)
    lower_sq = max(lower_sq, 0.0)

    # against the wide background
    s = g.ellipse(phi)
    den_wide = (g.a * g.b) ** 2 - s * (eps ** 2 * (g.a + g.b) ** 2 + 0.5 * (eps ** 2 - 1.0))
    log_wide = math.log(ratio * (1.0 / eps ** 2 + 1.0 / level) / purity)
    if den_wide > 0.0:
        upper_sq = _crossing_sq(log_wide, den_wide, g)
    else:
        # background narrower than the signal: no upper bound
        upper_sq = math.inf
        if log_wide < 0.0:
            lower_sq = max(lower_sq, _crossing_sq(log_wide, den_wide, g))

    if upper_sq <= 0.0 or lower_sq >= upper_sq:
        raise NoDiscernibleWindowError(
            "no discernible window between probe and background", lower_sq, upper_sq
        )
    return math.sqrt(lower_sq), math.sqrt(upper_sq)


def n_perp_gt_background(scenario: Scenario, tol: float = F_TOL) -> float:
    """
    Discernible signal in the presence of the background. Azimuths without a
    window contribute nothing; if no azimuth has one the error of the
    phi = 0 crossing is raised.
    """
    scenario = to_ellipse_frame(scenario)
    closed = []

    def per_phi(phi):
        try:
            lower, upper = background_crossings(scenario, phi, tol)
        except NoDiscernibleWindowError as exc:
            closed.append(exc)
            return 0.0
        return integrate_theta(scenario, phi, lower, upper, tol)

    value, error = quad(per_phi, 0.0, 0.5 * math.pi, epsabs=0.0, epsrel=1e-8, limit=PHI_QUAD_LIMIT)
    if value == 0.0:
        background_crossings(scenario, 0.0, tol)
        raise closed[0]
    if closed:
        logger.info(f"no discernible window for part of the azimuth range ({len(closed)} quadrature nodes)")
    return 4.0 * value


# ---------------------------------------------------------------------------
# Spectrum, scaling and comparison
# ---------------------------------------------------------------------------

def spectrum_width(pump_duration: float, probe_duration: float) -> float:
    """Full 1/e^2 width of the signal spectrum around omega."""
    return 8.0 / pump_duration * math.sqrt(2.0 + (pump_duration / probe_duration) ** 2)


def scaling_exponents(scenario: Scenario) -> Tuple[float, float]:
    """Exponents beta_i of the discernible signal ~ omega^beta_i along phi = 0, pi/2."""
    g = _geometry(to_ellipse_frame(scenario))
    a, b = g.a, g.b
    beta_1 = 2.0 + (1.0 + 2.0 * b * b) / (a * a + 2.0 * a * b)
    beta_2 = 2.0 + (1.0 + 2.0 * a * a) / (b * b + 2.0 * a * b)
    return beta_1, beta_2


def heinzl_estimate(scenario: Scenario) -> float:
    """
    Constant-field estimate (2048 alpha^4 / 225 pi)(W/m omega/m)^2 (lambda_C/w0)^4 (z_R/tau)^2,
    as an absolute count.
    """
    m = CONSTANTS.electron_mass
    pump = scenario.pump
    return (
        scenario.probe.photon_count
        * HEINZL_COUPLING
        * (pump.pulse_energy * scenario.probe.photon_energy / m ** 2) ** 2
        / (m * pump.waist) ** 4
        * (pump.rayleigh_range / pump.duration) ** 2
    )


def heinzl_ratio(scenario: Scenario, f_value: Optional[float] = None, tol: float = F_TOL) -> float:
    """
    heinzl_estimate / n_perp_point_nooffset. A limiting F may be substituted.
    """
    if f_value is None:
        return heinzl_estimate(scenario) / n_perp_point_nooffset(scenario, tol)
    if not f_value > 0.0:
        raise ValidationError(f"must be > 0, got {f_value}", "f_value")
    return heinzl_estimate(scenario) / (scenario.probe.photon_count * coupling_prefactor(scenario) * f_value)


def overlap_denominator_gap(scenario: Scenario) -> float:
    """
    Relative gap between 1 + 2(a + b)^2 used by the reduced formulas and the
    factorized (1 + 2a^2)(1 + 2b^2) of the unreduced rate.
    """
    g = _geometry(scenario)
    factorized = (1.0 + 2.0 * g.a ** 2) * (1.0 + 2.0 * g.b ** 2)
    return abs(g.denominator - factorized) / g.denominator


# ---------------------------------------------------------------------------
# Report
# ---------------------------------------------------------------------------

REPORT_PHIS = (0.0, 0.5 * math.pi)


def build_report(scenario: Scenario, tol: float = F_TOL, strict: bool = True) -> SignalReport:
    """
    Collect the headline numbers for one scenario.

    With strict=False physics-domain failures of the discernibility part are
    recorded as warnings and the discernible count stays None.
    """
    scenario = to_ellipse_frame(scenario)
    args = f_args(scenario)
    f_value = f(args, tol)
    total = n_perp_total(scenario, tol)

    warnings = scenario_warnings(scenario)
    gap = overlap_denominator_gap(scenario)
    if gap > OVERLAP_GAP_WARN:
        warnings.append(
            f"overlap denominator: 1+2(a+b)^2 differs from (1+2a^2)(1+2b^2) by {gap:.1%}"
        )

    report = SignalReport(
        n_perp=total,
        n_perp_over_n=total / scenario.probe.photon_count,
        f_value=f_value,
        f_args=args,
        divergence_by_phi={phi: signal_divergence(scenario, phi) for phi in REPORT_PHIS},
        probe_divergence_by_phi={phi: probe_divergence(scenario.probe, phi) for phi in REPORT_PHIS},
        warnings=warnings,
    )

    if scenario.purity is not None:
        try:
            report.theta_equal_by_phi = {phi: theta_equal(scenario, phi, tol) for phi in REPORT_PHIS}
            if scenario.background is not None:
                report.discernible_n_perp = n_perp_gt_background(scenario, tol)
            else:
                report.discernible_n_perp = n_perp_gt(scenario, tol)
        except PhysicsDomainError as exc:
            if strict:
                raise
            report.warnings.append(f"discernible count undefined: {exc}")
            report.discernible_n_perp = None

    for message in report.warnings:
        logger.warning(message)
    logger.info(f"N_perp/N = {report.n_perp_over_n:.4e}, F = {f_value:.6g}")
    return report
