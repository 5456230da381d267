"""Physical constants and unit conversions.

All quantities are SI. Angular frequency (rad/s) is the canonical frequency
unit; everything else is converted at the boundary.

Constant values are CODATA 2022, frozen here so that downstream numbers are
bit-stable regardless of which scipy (if any) is installed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

CONSTANTS_VERSION = "CODATA-2022"

HBAR = 1.0545718176461565e-34  # J s (exact: h / 2pi)
EPS0 = 8.8541878188e-12  # F/m
C = 299792458.0  # m/s (exact)
E_CHARGE = 1.602176634e-19  # C (exact)
M_ELECTRON = 9.1093837139e-31  # kg
DEBYE = 3.3356409519815204e-30  # C m per D (1e-21 / c)
AVOGADRO = 6.02214076e23  # 1/mol (exact)


@dataclass(frozen=True)
class PhysicalConstants:
    hbar: float = HBAR
    eps0: float = EPS0
    c: float = C
    e_charge: float = E_CHARGE
    m_electron: float = M_ELECTRON
    debye: float = DEBYE
    avogadro: float = AVOGADRO


CONSTANTS = PhysicalConstants()

FREQUENCY_UNITS = ("Hz", "rad_s", "cm-1", "eV", "m")

_UNIT_ALIASES = {
    "hz": "Hz",
    "rad_s": "rad_s",
    "rad/s": "rad_s",
    "cm-1": "cm-1",
    "cm^-1": "cm-1",
    "cm⁻¹": "cm-1",
    "ev": "eV",
    "m": "m",
}


def _canonical_unit(unit: str) -> str:
    try:
        return _UNIT_ALIASES[unit.strip().lower()]
    except KeyError:
        raise DomainError(
            f"unknown frequency unit {unit!r}; expected one of {FREQUENCY_UNITS}"
        ) from None


def _to_omega(value: float, unit: str) -> float:
    if unit == "Hz":
        return 2.0 * math.pi * value
    if unit == "rad_s":
        return value
    if unit == "cm-1":
        return 2.0 * math.pi * C * (value * 100.0)
    if unit == "eV":
        return value * E_CHARGE / HBAR
    # wavelength in m
    return 2.0 * math.pi * C / value


def _from_omega(omega: float, unit: str) -> float:
    if unit == "Hz":
        return omega / (2.0 * math.pi)
    if unit == "rad_s":
        return omega
    if unit == "cm-1":
        return omega / (2.0 * math.pi * C) / 100.0
    if unit == "eV":
        return omega * HBAR / E_CHARGE
    return 2.0 * math.pi * C / omega


@dataclass(frozen=True)
class FrequencyValue:
    """A frequency stored as angular frequency, remembering how it was given."""

    omega: float
    source_unit: str = "rad_s"
    source_value: float | None = None

    def __post_init__(self):
        if not self.omega > 0:
            raise DomainError(f"angular frequency must be positive, got {self.omega}")

    @property
    def hz(self) -> float:
        return self.omega / (2.0 * math.pi)

    def to(self, unit: str) -> float:
        return _from_omega(self.omega, _canonical_unit(unit))


def convert_frequency(value: float, unit: str) -> FrequencyValue:
    """Convert ``value`` given in ``unit`` to a :class:`FrequencyValue`.

    Supported units: ``Hz``, ``rad_s``, ``cm-1`` (wavenumber), ``eV`` (photon
    energy) and ``m`` (vacuum wavelength).
    """
    unit = _canonical_unit(unit)
    if not value > 0:
        raise DomainError(f"frequency value must be positive, got {value} {unit}")
    return FrequencyValue(_to_omega(float(value), unit), unit, float(value))


@dataclass(frozen=True)
class DipoleMoment:
    """Transition dipole magnitude in C m, with optional cartesian components."""

    magnitude: float
    components: tuple[float, float, float] | None = None

    def __post_init__(self):
        if not self.magnitude >= 0:
            raise DomainError(f"dipole magnitude must be >= 0, got {self.magnitude}")
        if self.components is not None:
            comps = tuple(float(x) for x in self.components)
            if len(comps) != 3:
                raise DomainError("dipole components must be a 3-vector")
            norm = math.sqrt(sum(x * x for x in comps))
            if abs(norm - self.magnitude) > 1e-12 * max(norm, self.magnitude):
                raise DomainError(
                    f"dipole components norm {norm} != magnitude {self.magnitude}"
                )
            object.__setattr__(self, "components", comps)

    @classmethod
    def from_vector(cls, vector) -> "DipoleMoment":
        vec = np.asarray(vector, dtype=float)
        return cls(float(np.linalg.norm(vec)), tuple(vec))

    @property
    def debye(self) -> float:
        return self.magnitude / DEBYE


def debye_to_si(d: float) -> DipoleMoment:
    if not d >= 0:
        raise DomainError(f"dipole in debye must be >= 0, got {d}")
    return DipoleMoment(d * DEBYE)


def oscillator_strength_to_dipole(f: float, omega: float) -> DipoleMoment:
    """Transition dipole from an absorption oscillator strength.

    Uses |d|^2 = 3 hbar e^2 f / (2 m_e omega), the isotropic (orientation
    averaged) definition of ``f``.
    """
    if not f > 0:
        raise DomainError(f"oscillator strength must be positive, got {f}")
    if not omega > 0:
        raise DomainError(f"angular frequency must be positive, got {omega}")
    d_sq = 3.0 * HBAR * E_CHARGE**2 * f / (2.0 * M_ELECTRON * omega)
    return DipoleMoment(math.sqrt(d_sq))


def minimal_mode_volume(omega: float) -> float:
    """Smallest cavity mode volume, (lambda/2)^3."""
    if not omega > 0:
        raise DomainError(f"angular frequency must be positive, got {omega}")
    return (math.pi * C / omega) ** 3
