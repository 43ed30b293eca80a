"""
YAML scenario ingestion: schema validation, unit parsing and conversion into
a natural-unit Scenario expressed in the probe ellipse frame.
"""
import copy
import os
from typing import Literal, Optional, Union

import yaml
from pydantic import BaseModel, ConfigDict
from pydantic import ValidationError as SchemaError

from .beams import (
    Background,
    CollisionOffsets,
    DurationConvention,
    EffectiveWaistMode,
    ProbePulse,
    PumpPulse,
    Scenario,
    convert_duration,
    to_ellipse_frame,
)
from .config import STANDARD_SCENARIO_PATH
from .errors import ValidationError
from .units import Dimension, parse_quantity, to_natural
from .utils import digest, setup_logging

logger = setup_logging()

Number = Union[float, str]


class PumpConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    wavelength: str
    pulse_energy: str
    duration: str
    waist: str
    effective_waist: str = "average"


class ProbeConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    photon_energy: str
    photon_count: Number
    duration: str
    waist_1: str
    waist_2: str
    ellipse_angle: Number = 0.0


class OffsetsConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    x0: str = "0 nm"
    y0: str = "0 nm"
    z0: str = "0 nm"
    t0: str = "0 fs"


class BackgroundConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    epsilon: float
    b: float


class ScenarioConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    pump: PumpConfig
    probe: ProbeConfig
    offsets: OffsetsConfig = OffsetsConfig()
    purity: Optional[float] = None
    background: Optional[BackgroundConfig] = None
    duration_convention: Literal["paper", "envelope", "fwhm"] = "paper"


# every scalar a scan may vary, with its physical dimension
FIELD_DIMENSIONS = {
    "pump.wavelength": Dimension.LENGTH,
    "pump.pulse_energy": Dimension.ENERGY,
    "pump.duration": Dimension.TIME,
    "pump.waist": Dimension.LENGTH,
    "probe.photon_energy": Dimension.ENERGY,
    "probe.photon_count": Dimension.PHOTON_COUNT,
    "probe.duration": Dimension.TIME,
    "probe.waist_1": Dimension.LENGTH,
    "probe.waist_2": Dimension.LENGTH,
    "probe.ellipse_angle": Dimension.DIMENSIONLESS,
    "offsets.x0": Dimension.LENGTH,
    "offsets.y0": Dimension.LENGTH,
    "offsets.z0": Dimension.LENGTH,
    "offsets.t0": Dimension.TIME,
    "purity": Dimension.DIMENSIONLESS,
    "background.epsilon": Dimension.DIMENSIONLESS,
    "background.b": Dimension.DIMENSIONLESS,
}


def load_config(path: str = STANDARD_SCENARIO_PATH) -> dict:
    if not os.path.exists(path):
        raise ValidationError(f"config file not found: {path}", "config")
    with open(path, "r", encoding="utf-8") as handle:
        try:
            raw = yaml.safe_load(handle)
        except yaml.YAMLError as exc:
            raise ValidationError(f"malformed YAML: {exc}", "config")
    if not isinstance(raw, dict):
        raise ValidationError("top level must be a mapping", "config")
    return raw


def parse_config(raw: dict) -> ScenarioConfig:
    try:
        return ScenarioConfig.model_validate(raw)
    except SchemaError as exc:
        first = exc.errors()[0]
        path = ".".join(str(part) for part in first["loc"])
        raise ValidationError(first["msg"], path)


def _natural(text, dimension: Dimension, field: str) -> float:
    return to_natural(parse_quantity(text, dimension, field))


def build_scenario(config: ScenarioConfig) -> Scenario:
    convention = DurationConvention(config.duration_convention)

    pump_cfg = config.pump
    mode = pump_cfg.effective_waist.strip()
    explicit = None
    if mode not in (EffectiveWaistMode.AVERAGE.value, EffectiveWaistMode.NAIVE.value):
        explicit = _natural(mode, Dimension.LENGTH, "pump.effective_waist")
        mode = EffectiveWaistMode.EXPLICIT
    pump = PumpPulse(
        wavelength=_natural(pump_cfg.wavelength, Dimension.LENGTH, "pump.wavelength"),
        pulse_energy=_natural(pump_cfg.pulse_energy, Dimension.ENERGY, "pump.pulse_energy"),
        duration=convert_duration(_natural(pump_cfg.duration, Dimension.TIME, "pump.duration"), convention),
        waist=_natural(pump_cfg.waist, Dimension.LENGTH, "pump.waist"),
        effective_waist_mode=EffectiveWaistMode(mode),
        explicit_waist=explicit,
    )

    probe_cfg = config.probe
    probe = ProbePulse(
        photon_energy=_natural(probe_cfg.photon_energy, Dimension.ENERGY, "probe.photon_energy"),
        photon_count=_natural(probe_cfg.photon_count, Dimension.PHOTON_COUNT, "probe.photon_count"),
        duration=convert_duration(_natural(probe_cfg.duration, Dimension.TIME, "probe.duration"), convention),
        waist_1=_natural(probe_cfg.waist_1, Dimension.LENGTH, "probe.waist_1"),
        waist_2=_natural(probe_cfg.waist_2, Dimension.LENGTH, "probe.waist_2"),
        ellipse_angle=_natural(probe_cfg.ellipse_angle, Dimension.DIMENSIONLESS, "probe.ellipse_angle"),
    )

    off = config.offsets
    offsets = CollisionOffsets(
        x0=_natural(off.x0, Dimension.LENGTH, "offsets.x0"),
        y0=_natural(off.y0, Dimension.LENGTH, "offsets.y0"),
        z0=_natural(off.z0, Dimension.LENGTH, "offsets.z0"),
        t0=_natural(off.t0, Dimension.TIME, "offsets.t0"),
    )

    background = None
    if config.background is not None:
        background = Background(b=config.background.b, epsilon=config.background.epsilon)

    scenario = Scenario(
        pump=pump,
        probe=probe,
        offsets=offsets,
        purity=config.purity,
        background=background,
    )
    return to_ellipse_frame(scenario)


def scenario_from_dict(raw: dict) -> Scenario:
    return build_scenario(parse_config(raw))


def load_scenario(path: str = STANDARD_SCENARIO_PATH) -> Scenario:
    raw = load_config(path)
    scenario = scenario_from_dict(raw)
    logger.info(f"Loaded scenario {path} (config digest {digest(raw)})")
    return scenario


def with_field(raw: dict, path: str, value) -> dict:
    """
    Copy of a raw config with one scalar replaced. `path` must be one of
    FIELD_DIMENSIONS.
    """
    if path not in FIELD_DIMENSIONS:
        raise ValidationError(
            f"unknown parameter path {path!r}; expected one of {sorted(FIELD_DIMENSIONS)}", "param"
        )
    updated = copy.deepcopy(raw)
    node = updated
    *parents, leaf = path.split(".")
    for part in parents:
        if node.get(part) is None:
            node[part] = {}
        node = node[part]
    node[leaf] = value
    return updated
