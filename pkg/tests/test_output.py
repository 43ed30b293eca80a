# tests/test_output.py
import json
import math

import pandas as pd

from src import __version__
from src.output import RunManifest, build_timestamp, read_table, report_payload, write_summary, write_table
from src.signal import build_report
from tests.helpers import STANDARD_PURITY, make_scenario, standard_config


def test_timestamp_from_source_date_epoch(monkeypatch):
    monkeypatch.setenv("SOURCE_DATE_EPOCH", "86400")
    assert build_timestamp() == "1970-01-02T00:00:00Z"
    monkeypatch.setenv("SOURCE_DATE_EPOCH", "yesterday")
    assert build_timestamp() == "1970-01-01T00:00:00Z"
    monkeypatch.delenv("SOURCE_DATE_EPOCH")
    assert build_timestamp() == "1970-01-01T00:00:00Z"


def test_manifest_digest_tracks_config():
    one = RunManifest.for_config(standard_config())
    two = RunManifest.for_config(standard_config(purity=STANDARD_PURITY))
    assert one.tool_version == __version__
    assert one.config_digest != two.config_digest
    assert one.constants_digest == two.constants_digest


def test_manifest_warnings_sorted_and_unique():
    manifest = RunManifest.for_config({}, ["b", "a", "b"])
    assert manifest.warnings == ["a", "b"]
    assert manifest.header_lines()[-2:] == ["# warning: a", "# warning: b"]


def test_table_round_trip(tmp_path):
    path = tmp_path / "nested" / "table.csv"
    df = pd.DataFrame({"x": [1.0, 2.5], "y": [0.125, float("nan")]})
    write_table(df, str(path), RunManifest.for_config({"x": 1}))
    text = path.read_text(encoding="utf-8")
    assert text.startswith("# tool_version: ")
    assert "\r" not in text
    back = read_table(str(path))
    assert list(back.columns) == ["x", "y"]
    assert back["x"].tolist() == [1.0, 2.5]
    assert math.isnan(back["y"].iloc[1])


def test_summary_document(tmp_path):
    report = build_report(make_scenario(purity=STANDARD_PURITY))
    path = tmp_path / "summary.json"
    write_summary(report, str(path), RunManifest.for_config(standard_config()), {"oracle_n_perp": math.inf})
    document = json.loads(path.read_text(encoding="utf-8"))
    assert document["manifest"]["tool_version"] == __version__
    assert document["report"]["n_perp"] == report.n_perp
    assert document["report"]["oracle_n_perp"] is None
    assert set(document["report"]["divergence_by_phi"]) == {"0.000000", "1.570796"}


def test_payload_without_discernible_count():
    payload = report_payload(build_report(make_scenario()))
    assert payload["discernible_n_perp"] is None
    assert payload["theta_equal_by_phi"] == {}
    assert payload["f_args"]["rho"] == 1.0
