"""
Run manifests, `#`-headed CSV tables and JSON summaries.

Identical config and tool version give byte-identical files: the timestamp
comes from SOURCE_DATE_EPOCH (Unix epoch when unset) and floats are written
with a fixed format.
"""
import json
import math
import os
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from typing import List

import pandas as pd

from . import __version__
from .units import constants_digest
from .utils import digest, setup_logging

logger = setup_logging()

FLOAT_FORMAT = "%.10e"


def build_timestamp() -> str:
    raw = os.environ.get("SOURCE_DATE_EPOCH", "0")
    try:
        seconds = int(raw)
    except ValueError:
        seconds = 0
    return datetime.fromtimestamp(seconds, tz=timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


@dataclass
class RunManifest:
    tool_version: str
    config_digest: str
    constants_digest: str
    timestamp: str
    warnings: List[str] = field(default_factory=list)

    @classmethod
    def for_config(cls, raw_config: dict, warnings: List[str] = None) -> "RunManifest":
        return cls(
            tool_version=__version__,
            config_digest=digest(raw_config),
            constants_digest=constants_digest(),
            timestamp=build_timestamp(),
            warnings=sorted(set(warnings or [])),
        )

    def header_lines(self) -> List[str]:
        lines = [
            f"# tool_version: {self.tool_version}",
            f"# config_digest: {self.config_digest}",
            f"# constants_digest: {self.constants_digest}",
            f"# timestamp: {self.timestamp}",
        ]
        lines.extend(f"# warning: {message}" for message in self.warnings)
        return lines


def _ensure_parent(path: str):
    parent = os.path.dirname(os.path.abspath(path))
    os.makedirs(parent, exist_ok=True)


def write_table(df: pd.DataFrame, path: str, manifest: RunManifest):
    _ensure_parent(path)
    body = df.to_csv(index=False, float_format=FLOAT_FORMAT, na_rep="", lineterminator="\n")
    with open(path, "w", encoding="utf-8", newline="") as handle:
        handle.write("\n".join(manifest.header_lines()) + "\n")
        handle.write(body)
    logger.info(f"Wrote {len(df)} rows to {path}")


def read_table(path: str) -> pd.DataFrame:
    return pd.read_csv(path, comment="#")


def _clean(value):
    """JSON-safe floats: non-finite values become None."""
    if isinstance(value, float) and not math.isfinite(value):
        return None
    if isinstance(value, dict):
        return {str(k): _clean(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_clean(v) for v in value]
    return value


def report_payload(report, extra: dict = None) -> dict:
    payload = {
        "n_perp": report.n_perp,
        "n_perp_over_n": report.n_perp_over_n,
        "f_value": report.f_value,
        "f_args": asdict(report.f_args),
        "divergence_by_phi": {f"{phi:.6f}": value for phi, value in report.divergence_by_phi.items()},
        "probe_divergence_by_phi": {
            f"{phi:.6f}": value for phi, value in report.probe_divergence_by_phi.items()
        },
        "theta_equal_by_phi": {f"{phi:.6f}": value for phi, value in report.theta_equal_by_phi.items()},
        "discernible_n_perp": report.discernible_n_perp,
        "warnings": list(report.warnings),
    }
    if extra:
        payload.update(extra)
    return _clean(payload)


def write_summary(report, path: str, manifest: RunManifest, extra: dict = None):
    _ensure_parent(path)
    document = {"manifest": asdict(manifest), "report": report_payload(report, extra)}
    with open(path, "w", encoding="utf-8", newline="") as handle:
        handle.write(json.dumps(document, indent=2, sort_keys=True) + "\n")
    logger.info(f"Wrote summary to {path}")
