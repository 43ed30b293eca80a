"""
Pulse parameter types, derived beam quantities and the collision scenario.

Every field is stored in natural units (lengths and times in 1/eV, energies
in eV); src.scenario_loader converts laboratory input once at the boundary.
"""
import math
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import List, Optional

from .config import CIRCULAR_RTOL, PARAXIAL_MIN, RAYLEIGH_RATIO_MIN
from .errors import ValidationError
from .ffactor import FArgs

AVERAGE_WAIST_FACTOR = (math.sqrt(2.0) + math.asinh(1.0)) / 2.0
FWHM_TO_ENVELOPE = 1.0 / math.sqrt(2.0 * math.log(2.0))


class EffectiveWaistMode(str, Enum):
    AVERAGE = "average"
    NAIVE = "naive"
    EXPLICIT = "explicit"


class DurationConvention(str, Enum):
    ENVELOPE = "paper"
    FWHM = "fwhm"

    @classmethod
    def _missing_(cls, value):
        if value == "envelope":
            return cls.ENVELOPE
        return None


def convert_duration(value: float, convention: DurationConvention) -> float:
    """
    Map a user-supplied duration onto the symbol used by the field model.
    `fwhm` treats the input as an intensity FWHM.
    """
    if DurationConvention(convention) == DurationConvention.FWHM:
        return value * FWHM_TO_ENVELOPE
    return value


def _positive(value: float, name: str):
    if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
        raise ValidationError(f"must be a finite positive number, got {value!r}", name)


def _finite(value: float, name: str):
    if not (isinstance(value, (int, float)) and math.isfinite(value)):
        raise ValidationError(f"must be finite, got {value!r}", name)


@dataclass(frozen=True)
class PumpPulse:
    wavelength: float
    pulse_energy: float
    duration: float
    waist: float
    effective_waist_mode: EffectiveWaistMode = EffectiveWaistMode.AVERAGE
    explicit_waist: Optional[float] = None

    def __post_init__(self):
        _positive(self.wavelength, "pump.wavelength")
        _positive(self.pulse_energy, "pump.pulse_energy")
        _positive(self.duration, "pump.duration")
        _positive(self.waist, "pump.waist")
        object.__setattr__(self, "effective_waist_mode", EffectiveWaistMode(self.effective_waist_mode))
        if self.effective_waist_mode == EffectiveWaistMode.EXPLICIT:
            if self.explicit_waist is None:
                raise ValidationError("explicit mode needs a waist value", "pump.effective_waist")
            _positive(self.explicit_waist, "pump.effective_waist")
            if self.explicit_waist < self.waist:
                raise ValidationError(
                    "effective waist must not be smaller than the focal waist w0",
                    "pump.effective_waist",
                )

    @property
    def rayleigh_range(self) -> float:
        return math.pi * self.waist ** 2 / self.wavelength


@dataclass(frozen=True)
class ProbePulse:
    photon_energy: float
    photon_count: float
    duration: float
    waist_1: float
    waist_2: float
    ellipse_angle: float = 0.0

    def __post_init__(self):
        _positive(self.photon_energy, "probe.photon_energy")
        _positive(self.photon_count, "probe.photon_count")
        _positive(self.duration, "probe.duration")
        _positive(self.waist_1, "probe.waist_1")
        _positive(self.waist_2, "probe.waist_2")
        _finite(self.ellipse_angle, "probe.ellipse_angle")

    @property
    def is_circular(self) -> bool:
        return abs(self.waist_1 - self.waist_2) <= CIRCULAR_RTOL * max(self.waist_1, self.waist_2)


@dataclass(frozen=True)
class CollisionOffsets:
    x0: float = 0.0
    y0: float = 0.0
    z0: float = 0.0
    t0: float = 0.0

    def __post_init__(self):
        for name in ("x0", "y0", "z0", "t0"):
            _finite(getattr(self, name), f"offsets.{name}")


@dataclass(frozen=True)
class Background:
    """Probe background of divergence theta(phi)/epsilon at relative level b."""

    b: float
    epsilon: float

    def __post_init__(self):
        _positive(self.epsilon, "background.epsilon")
        _positive(self.b, "background.b")
        if self.epsilon >= 0.5:
            raise ValidationError(f"must be < 0.5, got {self.epsilon}", "background.epsilon")
        if self.b >= self.epsilon ** 2:
            raise ValidationError(
                f"must be smaller than epsilon^2 = {self.epsilon ** 2:.6g}, got {self.b}",
                "background.b",
            )


@dataclass(frozen=True)
class Scenario:
    pump: PumpPulse
    probe: ProbePulse
    offsets: CollisionOffsets = field(default_factory=CollisionOffsets)
    purity: Optional[float] = None
    background: Optional[Background] = None

    def __post_init__(self):
        if self.purity is not None:
            _finite(self.purity, "purity")
            if not (0.0 < self.purity < 1.0):
                raise ValidationError(f"must lie in (0, 1), got {self.purity}", "purity")

    def with_purity(self, purity: Optional[float]) -> "Scenario":
        return replace(self, purity=purity)


# ---------------------------------------------------------------------------
# Derived quantities
# ---------------------------------------------------------------------------

def effective_waist(pump: PumpPulse) -> float:
    """
    z-independent surrogate of the pump waist inside the interaction volume.
    `average` is w(z) averaged over |z| <= z_R: (w0/2)(sqrt 2 + arsinh 1).
    """
    if pump.effective_waist_mode == EffectiveWaistMode.AVERAGE:
        return AVERAGE_WAIST_FACTOR * pump.waist
    if pump.effective_waist_mode == EffectiveWaistMode.NAIVE:
        return pump.waist
    return pump.explicit_waist


def peak_field_squared(role: str, scenario: Scenario) -> float:
    """
    Squared peak field amplitude in natural units.
    pump:  8 sqrt(2/pi) W / (pi w0^2 tau)
    probe: 8 sqrt(2/pi) N omega / (pi w1 w2 T)
    """
    norm = 8.0 * math.sqrt(2.0 / math.pi) / math.pi
    if role == "pump":
        pump = scenario.pump
        return norm * pump.pulse_energy / (pump.waist ** 2 * pump.duration)
    if role == "probe":
        probe = scenario.probe
        return norm * probe.photon_count * probe.photon_energy / (
            probe.waist_1 * probe.waist_2 * probe.duration
        )
    raise ValidationError(f"unknown pulse role {role!r}, expected 'pump' or 'probe'", "role")


def duration_stretch(scenario: Scenario) -> float:
    """sqrt(1 + (tau/T)^2 / 2)"""
    ratio = scenario.pump.duration / scenario.probe.duration
    return math.sqrt(1.0 + 0.5 * ratio * ratio)


def f_args(scenario: Scenario) -> FArgs:
    stretch = duration_stretch(scenario)
    probe_duration = scenario.probe.duration
    return FArgs(
        chi=4.0 * scenario.pump.rayleigh_range / probe_duration / stretch,
        chi0=2.0 * (scenario.offsets.z0 + scenario.offsets.t0) / probe_duration / stretch,
        rho=probe_duration / scenario.pump.duration,
    )


def probe_wavelength(probe: ProbePulse) -> float:
    return 2.0 * math.pi / probe.photon_energy


def scenario_warnings(scenario: Scenario) -> List[str]:
    """
    Validity flags of the reduced formulas. These annotate results and never
    abort a computation.
    """
    warnings = []
    probe = scenario.probe
    for name, waist in (("waist_1", probe.waist_1), ("waist_2", probe.waist_2)):
        paraxial = probe.photon_energy * waist
        if paraxial < PARAXIAL_MIN:
            warnings.append(
                f"paraxial: omega*{name} = {paraxial:.3g} < {PARAXIAL_MIN:g}"
            )
        rayleigh = (waist / scenario.pump.waist) ** 2 * scenario.pump.wavelength / probe_wavelength(probe)
        if rayleigh < RAYLEIGH_RATIO_MIN:
            warnings.append(
                f"infinite Rayleigh range: ({name}/w0)^2 * lambda/lambda_p = {rayleigh:.3g} < {RAYLEIGH_RATIO_MIN:g}"
            )
    return warnings


def to_ellipse_frame(scenario: Scenario) -> Scenario:
    """
    Express the transverse offsets along the probe ellipse axes and set the
    ellipse angle to zero. The reduced formulas assume this frame.
    """
    delta = scenario.probe.ellipse_angle
    if delta == 0.0:
        return scenario
    x0, y0 = scenario.offsets.x0, scenario.offsets.y0
    c, s = math.cos(delta), math.sin(delta)
    offsets = replace(scenario.offsets, x0=x0 * c - y0 * s, y0=x0 * s + y0 * c)
    probe = replace(scenario.probe, ellipse_angle=0.0)
    return replace(scenario, probe=probe, offsets=offsets)
