# tests/test_special.py
import math

import numpy as np
import pytest

from src.errors import ArgumentDomainError, ExponentOverflowError
from src.special import erf_complex, erfcx_complex, erfcx_real, exp_times_erfc
from tests.golden_table import golden_arguments, load_golden_table

# -----------------------------
# Helpers
# -----------------------------

def relative_error(value, reference):
    return abs(value - reference) / max(abs(reference), 1e-300)


# -----------------------------
# erf of complex argument
# -----------------------------

def test_erf_known_values():
    assert erf_complex(0) == 0
    assert erf_complex(1.0).real == pytest.approx(0.842700792949715, rel=1e-13)
    z = erf_complex(1 + 1j)
    assert z.real == pytest.approx(1.316151281697947, rel=1e-13)
    assert z.imag == pytest.approx(0.190453469237835, rel=1e-13)


def test_erf_symmetries_are_exact():
    """erf(conj z) == conj(erf z) and erf(-z) == -erf(z) bit for bit."""
    rng = np.random.default_rng(7)
    z = rng.uniform(-6, 6, 10_000) + 1j * rng.uniform(-6, 6, 10_000)
    values = erf_complex(z)
    assert np.array_equal(erf_complex(np.conj(z)), np.conj(values))
    assert np.array_equal(erf_complex(-z), -values)


def test_erf_rejects_large_and_non_finite():
    with pytest.raises(ArgumentDomainError):
        erf_complex(31.0 + 0j)
    with pytest.raises(ArgumentDomainError):
        erf_complex(complex(float("nan"), 0.0))


# -----------------------------
# erfcx
# -----------------------------

def test_erfcx_known_values():
    assert erfcx_real(0.0) == 1.0
    assert erfcx_real(1.0) == pytest.approx(0.427583576155807, rel=1e-13)
    assert erfcx_real(100.0) == pytest.approx(5.641613700127822e-3, rel=1e-13)


def test_erfcx_asymptotics():
    x = 1e6
    assert erfcx_real(x) == pytest.approx(1.0 / (x * math.sqrt(math.pi)), rel=1e-11)


def test_erfcx_complements_erf():
    """erfcx(x) exp(-x^2) + erf(x) == 1 on [0, 5]."""
    for x in np.linspace(0.0, 5.0, 51):
        total = erfcx_real(x) * math.exp(-x * x) + math.erf(x)
        assert total == pytest.approx(1.0, abs=1e-12)


def test_erfcx_complex_matches_real_axis():
    x = np.linspace(-3, 8, 23)
    assert np.allclose(erfcx_complex(x + 0j).real, erfcx_real(x), rtol=1e-14, atol=0)


def test_golden_table():
    """200 arbitrary-precision references agree to 1e-12 relative."""
    table = load_golden_table()
    assert len(table) == 200
    for row in table.itertuples():
        if row.function == "erf":
            value = erf_complex(complex(row.re, row.im))
            reference = complex(row.ref_re, row.ref_im)
        else:
            value = erfcx_real(row.re)
            reference = row.ref_re
        assert relative_error(value, reference) <= 1e-12, row


def test_golden_table_covers_argument_grid():
    """The committed file holds exactly the arguments the generator lays out."""
    table = load_golden_table()
    erf_points, erfcx_points = golden_arguments()
    erf_rows = table[table["function"] == "erf"]
    erfcx_rows = table[table["function"] == "erfcx"]
    assert list(zip(erf_rows["re"], erf_rows["im"])) == erf_points
    assert erfcx_rows["re"].tolist() == erfcx_points
    assert (erfcx_rows["im"] == 0.0).all()


def test_golden_table_matches_mpmath_sample():
    mpmath = pytest.importorskip("mpmath")
    mpmath.mp.dps = 40
    table = load_golden_table()
    for row in table.iloc[::17].itertuples():
        if row.function == "erf":
            reference = complex(mpmath.erf(mpmath.mpc(row.re, row.im)))
            assert relative_error(complex(row.ref_re, row.ref_im), reference) <= 1e-15, row
        else:
            reference = float(mpmath.exp(mpmath.mpf(row.re) ** 2) * mpmath.erfc(mpmath.mpf(row.re)))
            assert relative_error(row.ref_re, reference) <= 1e-15, row


# -----------------------------
# exp(a) * erfc(z)
# -----------------------------

def test_exp_times_erfc_origin():
    assert exp_times_erfc(0, 0) == pytest.approx(1.0, rel=1e-15)


def test_exp_times_erfc_cancels_large_exponents():
    """e^25 erfc(5) and e^400 erfc(20) come out as plain erfcx values."""
    assert exp_times_erfc(25.0, 5.0).real == pytest.approx(0.1107046377330686, rel=1e-12)
    assert exp_times_erfc(400.0, 20.0).real == pytest.approx(erfcx_real(20.0), rel=1e-12)
    assert exp_times_erfc(400.0, 20.0).real == pytest.approx(0.028174, rel=1e-4)


def test_exp_times_erfc_negative_branch():
    """Re z < 0 recombines as 2 exp(a) - exp(a - z^2) erfcx(-z)."""
    value = exp_times_erfc(1.0, -2.0 + 0.5j)
    reference = math.e * complex(2.0 - erfcx_complex(2.0 - 0.5j) * np.exp(-(2.0 - 0.5j) ** 2))
    assert relative_error(value, reference) < 1e-13


def test_exp_times_erfc_against_mpmath():
    mpmath = pytest.importorskip("mpmath")
    mpmath.mp.dps = 40
    rng = np.random.default_rng(3)
    for _ in range(200):
        a = complex(rng.uniform(-30, 30), rng.uniform(-30, 30))
        z = complex(rng.uniform(-5, 5), rng.uniform(-5, 5))
        reference = complex(mpmath.exp(a) * mpmath.erfc(z))
        assert relative_error(exp_times_erfc(a, z), reference) < 1e-10


def test_exp_times_erfc_broadcasts():
    a = np.zeros((3, 1))
    z = np.array([0.0, 1.0, 2.0])
    assert exp_times_erfc(a, z).shape == (3, 3)


def test_exp_times_erfc_overflow():
    with pytest.raises(ExponentOverflowError) as info:
        exp_times_erfc(800.0, -1.0)
    assert info.value.exponent > 709


@pytest.mark.filterwarnings("error")
def test_exp_times_erfc_large_exponent_stays_silent():
    """exp(a) is only formed for Re z < 0, so a > 709 with Re z >= 0 raises no overflow warning."""
    value = exp_times_erfc(np.array([800.0, 1.0]), np.array([30.0, -2.0]))
    assert value[0].real == pytest.approx(np.exp(-100.0) * erfcx_real(30.0), rel=1e-12)
    assert value[1].real == pytest.approx(math.e * math.erfc(-2.0), rel=1e-13)


def test_exp_times_erfc_rejects_non_finite():
    with pytest.raises(ArgumentDomainError):
        exp_times_erfc(float("inf"), 0.0)
