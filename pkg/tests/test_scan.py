# tests/test_scan.py
import math

import numpy as np
import pytest

from src.errors import ValidationError
from src.scan import ANGULAR_COLUMNS, SCAN_COLUMNS, ScanSpec, angular_table, run_scan
from src.scenario_loader import scenario_from_dict
from src.signal import offset_factor
from tests.helpers import STANDARD_PURITY, make_scenario, standard_config

# -----------------------------
# Scan grids
# -----------------------------

def test_linear_grid_in_canonical_unit():
    spec = ScanSpec("offsets.x0", "0 um", "1 um", 3)
    assert list(spec.values()) == pytest.approx([0.0, 500.0, 1000.0])
    assert spec.config_value(500.0) == "500.0 nm"


def test_log_grid():
    spec = ScanSpec("probe.photon_count", 1e10, 1e12, 3, "log")
    assert list(spec.values()) == pytest.approx([1e10, 1e11, 1e12], rel=1e-12)
    assert spec.config_value(1e11) == 1e11


@pytest.mark.parametrize(
    "kwargs, field",
    [
        ({"param": "pump.colour", "start": "1 um", "stop": "2 um", "steps": 3}, "param"),
        ({"param": "offsets.x0", "start": "0 um", "stop": "1 um", "steps": 1}, "steps"),
        ({"param": "offsets.x0", "start": "0 um", "stop": "1 um", "steps": 3, "scale": "cubic"}, "scale"),
        ({"param": "offsets.x0", "start": "0 um", "stop": "1 um", "steps": 3, "scale": "log"}, "from"),
    ],
)
def test_scan_spec_validation(kwargs, field):
    with pytest.raises(ValidationError) as info:
        ScanSpec(**kwargs)
    assert info.value.field == field


def test_scan_bounds_need_matching_dimension():
    with pytest.raises(ValidationError):
        ScanSpec("offsets.x0", "0 fs", "1 fs", 3).values()


# -----------------------------
# Scans
# -----------------------------

def test_offset_scan_follows_offset_factor():
    raw = standard_config()
    table = run_scan(raw, ScanSpec("offsets.x0", "0 um", "1 um", 3), workers=2)
    assert list(table.columns) == SCAN_COLUMNS
    shifted = scenario_from_dict(standard_config(offsets={"x0": "1 um"}))
    ratio = table["n_perp"].iloc[-1] / table["n_perp"].iloc[0]
    assert ratio == pytest.approx(offset_factor(shifted), rel=1e-12)
    assert table["n_perp_discernible"].isna().all()


def test_photon_energy_scan_scales_quadratically():
    table = run_scan(standard_config(), ScanSpec("probe.photon_energy", "6000 eV", "12000 eV", 2))
    assert table["n_perp"].iloc[1] / table["n_perp"].iloc[0] == pytest.approx(4.0, rel=1e-12)


def test_scan_rows_keep_grid_order():
    spec = ScanSpec("probe.waist_1", "0.5 um", "3 um", 6)
    one = run_scan(standard_config(), spec, workers=1)
    many = run_scan(standard_config(), spec, workers=4)
    assert one.equals(many)
    assert np.all(np.diff(one["param_value"]) > 0)


def test_scan_with_purity_fills_discernible_column():
    raw = standard_config(purity=STANDARD_PURITY)
    table = run_scan(raw, ScanSpec("offsets.z0", "0 um", "4 um", 3))
    assert (table["n_perp_discernible"] < table["n_perp"]).all()


# -----------------------------
# Angular tables
# -----------------------------

def test_angular_table_layout():
    scenario = make_scenario(w1=2.0, w2=0.5)
    table = angular_table(scenario, grid=8)
    assert list(table.columns) == ANGULAR_COLUMNS
    assert len(table) == 64
    assert table["theta_equal"].isna().all()


def test_angular_table_phi_mirror():
    table = angular_table(make_scenario(w1=2.0, w2=0.5), grid=8)
    phis = np.sort(table["phi"].unique())
    for k in range(1, 4):
        a = table[np.isclose(table["phi"], phis[k])]["d2n_perp"].to_numpy()
        b = table[np.isclose(table["phi"], phis[8 - k])]["d2n_perp"].to_numpy()
        assert a == pytest.approx(b, rel=1e-12)


def test_angular_table_forward_probe_value():
    scenario = make_scenario()
    table = angular_table(scenario, grid=4)
    probe = scenario.probe
    forward = probe.photon_count / (2 * math.pi) * probe.photon_energy ** 2 * probe.waist_1 * probe.waist_2
    assert table[table["theta"] == 0.0]["d2n_probe"].to_numpy() == pytest.approx(forward, rel=1e-14)


def test_angular_table_crossing_within_grid_cell():
    scenario = make_scenario(purity=STANDARD_PURITY)
    table = angular_table(scenario, grid=32)
    row = table[table["phi"] == 0.0]
    thetas = row["theta"].to_numpy()
    above = row["ratio"].to_numpy() >= STANDARD_PURITY
    first = thetas[np.argmax(above)]
    marker = row["theta_equal"].iloc[0]
    assert abs(first - marker) <= thetas[1] - thetas[0]


def test_angular_table_validation():
    with pytest.raises(ValidationError, match="grid"):
        angular_table(make_scenario(), grid=1)
    with pytest.raises(ValidationError, match="theta_max"):
        angular_table(make_scenario(), theta_max=0.0)
