"""Geometry, carrier and unit-conversion primitives.

All library-internal quantities are strict SI: meters, hertz, watts,
radians, linear gains. Decibels, gigahertz and degrees exist only at the
configuration boundary (see `irscap.scenario`).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError

# Exact SI speed of light, not the 3e8 shorthand. The difference is < 0.07%
# in wavelength and is absorbed by every downstream tolerance.
SPEED_OF_LIGHT = 299_792_458.0


@dataclass(frozen=True)
class Point3:
    """A position in meters. All coordinates must be finite."""

    x: float
    y: float
    z: float

    def __post_init__(self):
        for name in ("x", "y", "z"):
            v = getattr(self, name)
            if not math.isfinite(v):
                raise DomainError(f"Point3.{name} must be finite, got {v!r}")


@dataclass(frozen=True)
class Carrier:
    """A carrier frequency in Hz with its derived free-space wavelength."""

    frequency_hz: float

    def __post_init__(self):
        if not (math.isfinite(self.frequency_hz) and self.frequency_hz > 0):
            raise DomainError(
                f"Carrier.frequency_hz must be finite and > 0, got {self.frequency_hz!r}"
            )

    @property
    def wavelength_m(self) -> float:
        return SPEED_OF_LIGHT / self.frequency_hz

    @classmethod
    def from_ghz(cls, frequency_ghz: float) -> "Carrier":
        return cls(frequency_ghz * 1e9)


@dataclass(frozen=True)
class Decibel:
    """A dimensionless ratio expressed in dB."""

    value_db: float

    def __post_init__(self):
        if not math.isfinite(self.value_db):
            raise DomainError(f"Decibel.value_db must be finite, got {self.value_db!r}")

    def linear(self) -> float:
        return 10.0 ** (self.value_db / 10.0)


def wavelength(frequency_hz: float) -> float:
    """Free-space wavelength in meters for a carrier frequency in Hz."""
    if not (math.isfinite(frequency_hz) and frequency_hz > 0):
        raise DomainError(f"frequency_hz must be finite and > 0, got {frequency_hz!r}")
    return SPEED_OF_LIGHT / frequency_hz


def distance3(a: Point3, b: Point3) -> float:
    """Euclidean distance between two points, in meters."""
    return math.sqrt((a.x - b.x) ** 2 + (a.y - b.y) ** 2 + (a.z - b.z) ** 2)


def db_to_linear(gain: "Decibel | float") -> float:
    """Convert a dB power ratio to its linear equivalent, 10^(dB/10)."""
    value = gain.value_db if isinstance(gain, Decibel) else float(gain)
    if not math.isfinite(value):
        raise DomainError(f"dB value must be finite, got {value!r}")
    return 10.0 ** (value / 10.0)


def watts_to_dbm(power_w: float) -> float:
    """Express a strictly positive power in dBm."""
    if not (power_w > 0):
        raise DomainError(f"power_w must be > 0 to express in dBm, got {power_w!r}")
    return 10.0 * math.log10(power_w * 1e3)
