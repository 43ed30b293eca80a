# tests/test_oracle.py
import math

import pytest

import src.oracle as oracle
from src.errors import AccuracyError, ValidationError
from src.oracle import FullRatePoint, d3n_full, integrate_full, spectral_peak, spectral_width, spectrum
from src.signal import n_perp_total, spectrum_width
from tests.helpers import make_scenario

OMEGA = 12914.0

# -----------------------------
# Helpers
# -----------------------------

def reduced_width(scenario):
    return spectrum_width(scenario.pump.duration, scenario.probe.duration)


# -----------------------------
# Unreduced rate
# -----------------------------

def test_forward_rate_is_positive():
    scenario = make_scenario()
    forward = d3n_full(scenario, FullRatePoint(OMEGA, 0.0, 0.0))
    assert forward > 0.0
    assert d3n_full(scenario, FullRatePoint(OMEGA, 1e-4, 0.0)) < forward


def test_rate_drops_away_from_probe_energy():
    scenario = make_scenario()
    dk = reduced_width(scenario)
    forward = d3n_full(scenario, FullRatePoint(OMEGA, 0.0))
    assert d3n_full(scenario, FullRatePoint(OMEGA + 3 * dk, 0.0)) < 1e-3 * forward
    assert d3n_full(scenario, FullRatePoint(OMEGA - 3 * dk, 0.0)) < 1e-3 * forward


def test_longitudinal_offset_parity():
    """z0 + t0 -> -(z0 + t0) conjugates the l-sum and leaves the rate unchanged."""
    ahead = make_scenario(z0_um=2.0, t0_fs=3.0)
    behind = make_scenario(z0_um=-2.0, t0_fs=-3.0)
    for point in (FullRatePoint(OMEGA, 0.0), FullRatePoint(OMEGA + 0.05, 2e-5, 1.0)):
        assert d3n_full(ahead, point) == pytest.approx(d3n_full(behind, point), rel=1e-10)


@pytest.mark.parametrize(
    "k, theta, phi, field",
    [(0.0, 0.0, 0.0, "k"), (OMEGA, -0.1, 0.0, "theta"), (OMEGA, 4.0, 0.0, "theta"), (OMEGA, 0.0, 7.0, "phi")],
)
def test_point_validation(k, theta, phi, field):
    with pytest.raises(ValidationError) as info:
        FullRatePoint(k, theta, phi)
    assert info.value.field == field


# -----------------------------
# Totals
# -----------------------------

@pytest.mark.parametrize("waist", [1 / 3, 1.0, 3.0])
def test_oracle_matches_reduced_total(waist):
    scenario = make_scenario(w1=waist, w2=waist)
    result = integrate_full(scenario)
    assert result.value == pytest.approx(n_perp_total(scenario), rel=0.05)
    assert result.error <= 1e-3 * result.value


def test_oracle_quarters_with_half_energy():
    full = integrate_full(make_scenario()).value
    half = integrate_full(make_scenario(energy_j=15.0)).value
    assert half / full == pytest.approx(0.25, rel=1e-9)


def test_oracle_stable_under_tighter_tolerance():
    scenario = make_scenario(w1=3.0, w2=0.5)
    coarse = integrate_full(scenario, tol=1e-3)
    fine = integrate_full(scenario, tol=5e-4)
    assert fine.value == pytest.approx(coarse.value, rel=5e-3)


def test_oracle_budget_exhaustion(monkeypatch):
    monkeypatch.setattr(oracle, "ORACLE_MAX_SUBDIVISIONS", 1)
    with pytest.raises(AccuracyError) as info:
        integrate_full(make_scenario(), tol=1e-12)
    assert info.value.estimate > 0


# -----------------------------
# Spectrum
# -----------------------------

def test_spectrum_peaks_at_probe_energy():
    scenario = make_scenario()
    assert spectral_peak(scenario) == pytest.approx(OMEGA, abs=reduced_width(scenario) / 10)


@pytest.mark.parametrize("w1, w2", [(1 / 10, 1 / 10), (3.0, 1 / 3)])
def test_spectrum_peak_for_other_waists(w1, w2):
    scenario = make_scenario(w1=w1, w2=w2)
    assert abs(spectral_peak(scenario) - OMEGA) < reduced_width(scenario) / 10


def test_spectrum_is_positive_and_localized():
    scenario = make_scenario()
    dk = reduced_width(scenario)
    center = spectrum(scenario, OMEGA)
    assert center > 0.0
    assert spectrum(scenario, OMEGA + 4 * dk) < 1e-2 * center


def test_spectral_width_standard():
    """The overlap sum narrows the line at finite Rayleigh range, so the width stays below the estimate."""
    scenario = make_scenario()
    width = spectral_width(scenario)
    assert 0.5 * reduced_width(scenario) <= width <= 0.8 * reduced_width(scenario)


def test_spectral_width_small_rayleigh_range():
    scenario = make_scenario(w0_um=0.1)
    assert spectral_width(scenario) == pytest.approx(reduced_width(scenario), rel=0.1)
