"""
Laboratory units <-> natural units (hbar = c = 1, energies in eV, lengths and
times in 1/eV) and the frozen table of physical constants.

Lab-side canonical units: nm for lengths, fs for times, eV for energies.
"""
import math
import re
from dataclasses import asdict, dataclass
from enum import Enum

from .errors import DimensionError
from .utils import digest


@dataclass(frozen=True)
class Constants:
    electron_mass: float = 510_998.95          # eV
    hbar_c: float = 197.326_980                # eV nm
    hbar: float = 0.658_212_196                # eV fs
    fine_structure: float = 1.0 / 137.035_999
    joule_in_ev: float = 6.241_509_074e18      # eV per J

    @property
    def compton_wavelength_reduced(self) -> float:
        """Reduced Compton wavelength in nm."""
        return self.hbar_c / self.electron_mass

    @property
    def elementary_charge_sq(self) -> float:
        """e^2 in Heaviside-Lorentz natural units, e^2 = 4 pi alpha."""
        return 4.0 * math.pi * self.fine_structure


CONSTANTS = Constants()


def constants_digest() -> str:
    return digest(asdict(CONSTANTS))


class Dimension(str, Enum):
    LENGTH = "length"
    TIME = "time"
    ENERGY = "energy"
    DIMENSIONLESS = "dimensionless"
    PHOTON_COUNT = "photon-count"
    FIELD_SQUARED = "field-squared"


# unit symbol -> (dimension, factor to the canonical lab unit)
UNITS = {
    "nm": (Dimension.LENGTH, 1.0),
    "um": (Dimension.LENGTH, 1e3),
    "µm": (Dimension.LENGTH, 1e3),
    "mm": (Dimension.LENGTH, 1e6),
    "m": (Dimension.LENGTH, 1e9),
    "as": (Dimension.TIME, 1e-3),
    "fs": (Dimension.TIME, 1.0),
    "ps": (Dimension.TIME, 1e3),
    "ns": (Dimension.TIME, 1e6),
    "s": (Dimension.TIME, 1e15),
    "meV": (Dimension.ENERGY, 1e-3),
    "eV": (Dimension.ENERGY, 1.0),
    "keV": (Dimension.ENERGY, 1e3),
    "MeV": (Dimension.ENERGY, 1e6),
    "mJ": (Dimension.ENERGY, 1e-3 * CONSTANTS.joule_in_ev),
    "J": (Dimension.ENERGY, CONSTANTS.joule_in_ev),
    "rad": (Dimension.DIMENSIONLESS, 1.0),
    "mrad": (Dimension.DIMENSIONLESS, 1e-3),
    "urad": (Dimension.DIMENSIONLESS, 1e-6),
    "µrad": (Dimension.DIMENSIONLESS, 1e-6),
    "deg": (Dimension.DIMENSIONLESS, math.pi / 180.0),
}

CANONICAL_UNIT = {
    Dimension.LENGTH: "nm",
    Dimension.TIME: "fs",
    Dimension.ENERGY: "eV",
    Dimension.DIMENSIONLESS: "",
    Dimension.PHOTON_COUNT: "",
    Dimension.FIELD_SQUARED: "",
}

_QUANTITY_RE = re.compile(r"^\s*([-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)\s*([^\s\d].*)?\s*$")


@dataclass(frozen=True)
class Quantity:
    """A value in the canonical lab unit of its dimension."""

    value: float
    dimension: Dimension

    def _check(self, other: "Quantity", op: str):
        if not isinstance(other, Quantity):
            raise DimensionError(f"cannot {op} Quantity and {type(other).__name__}")
        if other.dimension != self.dimension:
            raise DimensionError(
                f"cannot {op} {self.dimension.value} and {other.dimension.value}"
            )

    def __add__(self, other: "Quantity") -> "Quantity":
        self._check(other, "add")
        return Quantity(self.value + other.value, self.dimension)

    def __sub__(self, other: "Quantity") -> "Quantity":
        self._check(other, "subtract")
        return Quantity(self.value - other.value, self.dimension)

    def __mul__(self, factor: float) -> "Quantity":
        if isinstance(factor, Quantity):
            raise DimensionError("products of quantities are not supported")
        return Quantity(self.value * factor, self.dimension)

    __rmul__ = __mul__

    def __truediv__(self, divisor: float) -> "Quantity":
        if isinstance(divisor, Quantity):
            raise DimensionError("ratios of quantities are not supported")
        return Quantity(self.value / divisor, self.dimension)

    def __lt__(self, other: "Quantity") -> bool:
        self._check(other, "compare")
        return self.value < other.value

    def __le__(self, other: "Quantity") -> bool:
        self._check(other, "compare")
        return self.value <= other.value

    def __str__(self) -> str:
        unit = CANONICAL_UNIT[self.dimension]
        return f"{self.value:.12g} {unit}".strip()


def parse_quantity(text, expected: Dimension, field: str = None) -> Quantity:
    """
    Parse "1 um", "30 fs", "30 J", "12914 eV" into a Quantity of the expected
    dimension. Bare numbers are accepted for dimensionless quantities and
    photon counts only.
    """
    if isinstance(text, Quantity):
        if text.dimension != expected:
            raise DimensionError(
                f"expected {expected.value}, got {text.dimension.value}", field
            )
        return text
    if isinstance(text, (int, float)) and not isinstance(text, bool):
        if expected in (Dimension.DIMENSIONLESS, Dimension.PHOTON_COUNT):
            return Quantity(float(text), expected)
        raise DimensionError(f"missing unit for {expected.value} quantity {text!r}", field)

    match = _QUANTITY_RE.match(str(text))
    if not match:
        raise DimensionError(f"cannot parse quantity {text!r}", field)
    number, unit = float(match.group(1)), (match.group(2) or "").strip()

    if not unit:
        if expected in (Dimension.DIMENSIONLESS, Dimension.PHOTON_COUNT):
            return Quantity(number, expected)
        raise DimensionError(f"missing unit for {expected.value} quantity {text!r}", field)
    if unit not in UNITS:
        raise DimensionError(f"unknown unit {unit!r}", field)

    dimension, factor = UNITS[unit]
    if dimension != expected:
        raise DimensionError(
            f"unit {unit!r} is a {dimension.value}, expected {expected.value}", field
        )
    return Quantity(number * factor, dimension)


def to_natural(q: Quantity) -> float:
    """
    Lengths and times become 1/eV (length_nm / hbar_c, time_fs / hbar);
    energies stay in eV; dimensionless values pass through.
    """
    if q.dimension == Dimension.LENGTH:
        return q.value / CONSTANTS.hbar_c
    if q.dimension == Dimension.TIME:
        return q.value / CONSTANTS.hbar
    if q.dimension in (
        Dimension.ENERGY,
        Dimension.DIMENSIONLESS,
        Dimension.PHOTON_COUNT,
        Dimension.FIELD_SQUARED,
    ):
        return q.value
    raise DimensionError(f"unknown dimension {q.dimension!r}")


def from_natural(value: float, target: Dimension) -> Quantity:
    try:
        target = Dimension(target)
    except ValueError:
        raise DimensionError(f"unknown dimension {target!r}")
    if target == Dimension.LENGTH:
        return Quantity(value * CONSTANTS.hbar_c, target)
    if target == Dimension.TIME:
        return Quantity(value * CONSTANTS.hbar, target)
    return Quantity(value, target)


def length(value_nm: float) -> float:
    return to_natural(Quantity(value_nm, Dimension.LENGTH))


def duration(value_fs: float) -> float:
    return to_natural(Quantity(value_fs, Dimension.TIME))


def joules(value_j: float) -> float:
    return value_j * CONSTANTS.joule_in_ev
