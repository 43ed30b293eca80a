"""
Error function of complex argument, the scaled complementary error function
erfcx(z) = exp(z^2) erfc(z), and the overflow-safe product exp(a) erfc(z).

scipy.special evaluates erf/erfcx for complex arguments through the Faddeeva
package (series near the origin, continued fraction / asymptotic expansion
beyond |z| ~ 8), which is accurate to ~1e-13 relative.
"""
import numpy as np
from scipy import special as sp

from .config import ERF_ARGUMENT_LIMIT
from .errors import ArgumentDomainError, ExponentOverflowError

# log of the largest finite double
_LOG_MAX = np.log(np.finfo(float).max)


def _require_finite(*values):
    for value in values:
        if not np.all(np.isfinite(value)):
            raise ArgumentDomainError("non-finite argument")


def erf_complex(z):
    """
    erf(z) for complex z with |Re z|, |Im z| <= ERF_ARGUMENT_LIMIT.

    Evaluated on the first quadrant and reflected, so erf(conj z) = conj(erf z)
    and erf(-z) = -erf(z) hold exactly.
    """
    z = np.asarray(z, dtype=complex)
    _require_finite(z)
    if np.any(np.abs(z.real) > ERF_ARGUMENT_LIMIT) or np.any(np.abs(z.imag) > ERF_ARGUMENT_LIMIT):
        raise ArgumentDomainError(
            f"|Re z|, |Im z| must not exceed {ERF_ARGUMENT_LIMIT}; use exp_times_erfc"
        )

    first_quadrant = sp.erf(np.abs(z.real) + 1j * np.abs(z.imag))
    re = np.sign(z.real) * first_quadrant.real
    im = np.sign(z.imag) * first_quadrant.imag
    # erf(0) = 0 and the sign of a zero component carries no information
    re = np.where(z.real == 0, 0.0, re)
    im = np.where(z.imag == 0, 0.0, im)
    result = re + 1j * im
    return result[()] if result.ndim == 0 else result


def erfcx_real(x):
    x = np.asarray(x, dtype=float)
    _require_finite(x)
    result = sp.erfcx(x)
    return result[()] if result.ndim == 0 else result


def erfcx_complex(z):
    z = np.asarray(z, dtype=complex)
    _require_finite(z)
    result = sp.erfcx(z)
    return result[()] if result.ndim == 0 else result


def exp_times_erfc(a, z):
    """
    exp(a) * erfc(z) for complex a, z (broadcast), without forming exp(a) or
    erfc(z) alone.

    Re z >= 0:  exp(a - z^2) erfcx(z)
    Re z <  0:  2 exp(a) - exp(a - z^2) erfcx(-z)

    Raises ExponentOverflowError when the result itself is not representable.
    """
    a = np.asarray(a, dtype=complex)
    z = np.asarray(z, dtype=complex)
    _require_finite(a, z)
    a, z = np.broadcast_arrays(a, z)

    shifted = a - z * z
    positive = z.real >= 0
    # erfcx(w) only for Re w >= 0
    w = np.where(positive, z, -z)
    scaled = sp.erfcx(w)

    # magnitude check before exponentiation
    log_scaled = np.log(np.abs(scaled), where=scaled != 0, out=np.full(scaled.shape, -np.inf))
    exponent = np.where(positive, shifted.real + log_scaled, np.maximum(a.real + np.log(2.0), shifted.real + log_scaled))
    if np.any(exponent > _LOG_MAX):
        raise ExponentOverflowError(float(np.max(exponent)))

    nonzero = scaled != 0
    log_tail = shifted + np.log(np.where(nonzero, scaled, 1.0))
    tail = np.where(nonzero, np.exp(np.where(nonzero, log_tail, 0.0)), 0.0)
    result = tail.copy()
    negative = ~positive
    result[negative] = 2.0 * np.exp(a[negative]) - tail[negative]
    if not np.all(np.isfinite(result)):
        raise ExponentOverflowError(float(np.max(exponent)))
    return result[()] if result.ndim == 0 else result
