import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.integrate import quad

from .config import F_GAUSS_HERMITE_NODES, F_QUAD_LIMIT, F_TOL, F_TOL_MAX
from .errors import AccuracyError, ValidationError
from .special import erfcx_real, exp_times_erfc
from .utils import setup_logging

logger = setup_logging()


@dataclass(frozen=True)
class FArgs:
    """
    Dimensionless arguments of the overlap factor:
    chi  - scaled Rayleigh range (>= 0)
    chi0 - scaled longitudinal offset
    rho  - duration ratio T/tau (> 0)
    """

    chi: float
    chi0: float
    rho: float

    def __post_init__(self):
        if not math.isfinite(self.chi) or self.chi < 0:
            raise ValidationError(f"must be finite and >= 0, got {self.chi}", "chi")
        if not math.isfinite(self.chi0):
            raise ValidationError(f"must be finite, got {self.chi0}", "chi0")
        if not math.isfinite(self.rho) or self.rho <= 0:
            raise ValidationError(f"must be finite and > 0, got {self.rho}", "rho")


def overlap_sum(chi: float, chi0: float, p):
    """
    Sum over l = +-1 of exp(chi^2 - chi0^2 + 2 l (p - i chi0) chi) erfc(l (p - i chi0) + chi).

    The exp(2(chi^2 - chi0^2)) prefactor of F is folded into the terms as
    exp(chi^2 - chi0^2) per term, so |overlap_sum|^2 carries it in full.
    Vectorized in p.
    """
    p = np.asarray(p, dtype=float)
    shifted = p - 1j * chi0
    base = chi * chi - chi0 * chi0
    total = 0.0
    for sign in (1.0, -1.0):
        total = total + exp_times_erfc(base + 2.0 * sign * shifted * chi, sign * shifted + chi)
    return total


def _prefactor(args: FArgs) -> float:
    return math.sqrt((1.0 + 2.0 * args.rho ** 2) / 3.0) * args.chi ** 2


def _integrand(kappa: float, chi: float, chi0: float, rho: float) -> float:
    s = overlap_sum(chi, chi0, rho * kappa)
    return math.exp(-kappa * kappa) * float(abs(s) ** 2)


@lru_cache(maxsize=4096)
def _integrate(chi: float, chi0: float, rho: float, tol: float):
    cutoff = math.sqrt(math.log(1.0 / tol)) + 6.0
    # the integrand changes character where l*rho*kappa + chi changes sign
    points = sorted({x for x in (0.0, chi / rho, -chi / rho) if abs(x) < cutoff})

    limit = F_QUAD_LIMIT
    value = error = float("nan")
    for _ in range(2):
        result = quad(
            _integrand,
            -cutoff,
            cutoff,
            args=(chi, chi0, rho),
            points=points,
            epsabs=0.0,
            epsrel=tol,
            limit=limit,
            full_output=1,
        )
        value, error = result[0], result[1]
        converged = len(result) == 3 and error <= tol * abs(value)
        if converged:
            return value, error
        logger.info(f"F quadrature not converged with limit={limit}, refining")
        limit *= 2
    raise AccuracyError("overlap factor quadrature did not converge", value, error)


def f_with_error(args: FArgs, tol: float = F_TOL):
    """
    Overlap factor F(chi, chi0, rho) and its absolute quadrature error estimate.
    """
    if not (0.0 < tol <= F_TOL_MAX):
        raise ValidationError(f"tolerance must lie in (0, {F_TOL_MAX}], got {tol}", "tol")
    if args.chi == 0.0:
        return 0.0, 0.0

    try:
        value, error = _integrate(args.chi, args.chi0, args.rho, tol)
    except AccuracyError as exc:
        scale = _prefactor(args)
        raise AccuracyError(
            f"overlap factor did not reach tol={tol} for {args}",
            exc.estimate * scale,
            exc.error * scale,
        ) from exc

    scale = _prefactor(args)
    logger.debug(f"F{(args.chi, args.chi0, args.rho)} = {value * scale:.10g} +- {error * scale:.2g}")
    return value * scale, error * scale


def f(args: FArgs, tol: float = F_TOL) -> float:
    return f_with_error(args, tol)[0]


def f_gauss_hermite(args: FArgs, nodes: int = F_GAUSS_HERMITE_NODES) -> float:
    """
    Gauss-Hermite cross-check of F: the exp(-kappa^2) weight is absorbed by the
    rule. Accurate only while 2*rho*chi stays moderate.
    """
    if args.chi == 0.0:
        return 0.0
    x, w = np.polynomial.hermite.hermgauss(nodes)
    s = overlap_sum(args.chi, args.chi0, args.rho * x)
    return _prefactor(args) * float(np.sum(w * np.abs(s) ** 2))


# ---------------------------------------------------------------------------
# Closed-form limits
# ---------------------------------------------------------------------------

def f_limit_large_T(rayleigh_range: float, pump_duration: float) -> float:
    """
    T-independent coefficient of F for T >> tau; F ~ (tau/T) * coefficient.
    """
    u = 8.0 * rayleigh_range / pump_duration
    return math.sqrt(2.0 * math.pi / 3.0) * u * u * float(erfcx_real(u))


def f_limit_large_zR() -> float:
    return 4.0 / math.sqrt(3.0 * math.pi)


def f_limit_equal_durations_small_zR(rayleigh_range: float, pump_duration: float) -> float:
    return 128.0 / 3.0 * math.sqrt(math.pi) * (rayleigh_range / pump_duration) ** 2
