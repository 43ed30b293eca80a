"""
Parameter scans over one scalar scenario field and angular profile tables.
"""
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np
import pandas as pd

from .config import ANGULAR_GRID, ANGULAR_THETA_MAX_FACTOR, F_TOL
from .errors import PhysicsDomainError, ValidationError
from .scenario_loader import FIELD_DIMENSIONS, scenario_from_dict, with_field
from .signal import (
    AngularPoint,
    build_report,
    d2n_perp,
    probe_d2n,
    signal_divergence,
    theta_equal,
)
from .units import CANONICAL_UNIT, Dimension, parse_quantity
from .utils import setup_logging, thread_count

logger = setup_logging()

SCAN_COLUMNS = [
    "param_value",
    "n_perp",
    "n_perp_over_n",
    "f_value",
    "theta_perp_phi0",
    "theta_perp_phi90",
    "n_perp_discernible",
]

ANGULAR_COLUMNS = ["theta", "phi", "d2n_perp", "d2n_probe", "ratio", "theta_equal"]


@dataclass(frozen=True)
class ScanSpec:
    param: str
    start: Union[str, float]
    stop: Union[str, float]
    steps: int
    scale: str = "linear"

    def __post_init__(self):
        if self.param not in FIELD_DIMENSIONS:
            raise ValidationError(f"unknown parameter path {self.param!r}", "param")
        if not isinstance(self.steps, int) or self.steps < 2:
            raise ValidationError(f"must be an integer >= 2, got {self.steps!r}", "steps")
        if self.scale not in ("linear", "log"):
            raise ValidationError(f"must be 'linear' or 'log', got {self.scale!r}", "scale")
        if self.scale == "log" and not (self.bounds[0] > 0 and self.bounds[1] > 0):
            raise ValidationError("log scale needs positive bounds", "from")

    @property
    def dimension(self) -> Dimension:
        return FIELD_DIMENSIONS[self.param]

    @property
    def bounds(self):
        dimension = FIELD_DIMENSIONS[self.param]
        lo = parse_quantity(self.start, dimension, "from").value
        hi = parse_quantity(self.stop, dimension, "to").value
        return lo, hi

    def values(self) -> np.ndarray:
        """Grid in the canonical lab unit of the field (nm, fs, eV, ...)."""
        lo, hi = self.bounds
        if self.scale == "log":
            return np.geomspace(lo, hi, self.steps)
        return np.linspace(lo, hi, self.steps)

    def config_value(self, value: float):
        unit = CANONICAL_UNIT[self.dimension]
        if not unit:
            return float(value)
        return f"{float(value)!r} {unit}"


def _scan_row(raw: dict, spec: ScanSpec, value: float, tol: float) -> dict:
    scenario = scenario_from_dict(with_field(raw, spec.param, spec.config_value(value)))
    report = build_report(scenario, tol, strict=False)
    if scenario.purity is not None and report.discernible_n_perp is None:
        logger.warning(f"{spec.param} = {value:.6g}: discernible count undefined")
    return {
        "param_value": float(value),
        "n_perp": report.n_perp,
        "n_perp_over_n": report.n_perp_over_n,
        "f_value": report.f_value,
        "theta_perp_phi0": report.divergence_by_phi[0.0],
        "theta_perp_phi90": report.divergence_by_phi[0.5 * math.pi],
        "n_perp_discernible": report.discernible_n_perp,
    }


def run_scan(raw: dict, spec: ScanSpec, tol: float = F_TOL, workers: Optional[int] = None) -> pd.DataFrame:
    """
    Evaluate one row per grid value. Rows are computed concurrently and
    returned in grid order.
    """
    values = spec.values()
    workers = workers or thread_count()
    logger.info(f"Scanning {spec.param} over {len(values)} values ({spec.scale}) with {workers} workers")

    with ThreadPoolExecutor(max_workers=workers) as pool:
        rows = list(pool.map(lambda v: _scan_row(raw, spec, v, tol), values))

    return pd.DataFrame(rows, columns=SCAN_COLUMNS)


def angular_table(
    scenario,
    theta_max: Optional[float] = None,
    grid: int = ANGULAR_GRID,
    tol: float = F_TOL,
) -> pd.DataFrame:
    """
    d2n_perp, probe far field and their ratio on a (theta, phi) grid. The
    theta_equal column marks the crossing angle of each azimuth when a
    purity is configured.
    """
    if grid < 2:
        raise ValidationError(f"must be >= 2, got {grid}", "grid")
    phis = np.linspace(0.0, 2.0 * math.pi, grid, endpoint=False)
    if theta_max is None:
        theta_max = ANGULAR_THETA_MAX_FACTOR * max(signal_divergence(scenario, phi) for phi in phis)
    if not theta_max > 0:
        raise ValidationError(f"must be > 0, got {theta_max}", "theta_max")
    thetas = np.linspace(0.0, theta_max, grid)

    markers = {}
    for phi in phis:
        markers[phi] = float("nan")
        if scenario.purity is not None:
            try:
                markers[phi] = theta_equal(scenario, phi, tol)
            except PhysicsDomainError as exc:
                logger.warning(f"phi = {phi:.4f}: no crossing angle ({exc})")

    rows = []
    for phi in phis:
        for theta in thetas:
            point = AngularPoint(float(theta), float(phi))
            signal = d2n_perp(scenario, point, tol)
            probe = probe_d2n(scenario.probe, point)
            rows.append(
                {
                    "theta": float(theta),
                    "phi": float(phi),
                    "d2n_perp": signal,
                    "d2n_probe": probe,
                    "ratio": signal / probe if probe > 0 else float("inf"),
                    "theta_equal": markers[phi],
                }
            )
    return pd.DataFrame(rows, columns=ANGULAR_COLUMNS)
