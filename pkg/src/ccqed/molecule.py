"""Chiral two-level molecule."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .constants import C, DipoleMoment, debye_to_si
from .errors import DomainError, ValidationError

ORIENTATIONS = ("rotational_average", "fixed_x")


def chirality_parameter(rotatory_strength: float, dipole: DipoleMoment | float) -> float:
    """chi = R / (c |d|^2); must lie in [-1, 1]."""
    d = dipole.magnitude if isinstance(dipole, DipoleMoment) else float(dipole)
    if not abs(d) > 0:
        raise DomainError("chirality parameter undefined for a zero dipole")
    chi = rotatory_strength / (C * d * d)
    if not -1.0 <= chi <= 1.0:
        raise ValidationError(f"chirality parameter {chi} outside [-1, 1]")
    return chi


@dataclass(frozen=True)
class ChiralMolecule:
    """Two-level molecule with transition frequency ``omega_m`` (rad/s).

    The magnetic transition dipole is tied to the electric one by
    m/c = -i chi d, so ``chi`` is the only chirality datum stored.
    """

    omega_m: float
    dipole: DipoleMoment
    chi: float = 0.0
    name: str = ""
    orientation: str = "rotational_average"

    def __post_init__(self):
        if not self.omega_m > 0:
            raise DomainError(f"transition frequency must be positive, got {self.omega_m}")
        if isinstance(self.dipole, (int, float)):
            object.__setattr__(self, "dipole", DipoleMoment(float(self.dipole)))
        if not -1.0 <= self.chi <= 1.0:
            raise ValidationError(f"chi = {self.chi} outside [-1, 1] for molecule {self.name!r}")
        if self.orientation not in ORIENTATIONS:
            raise ValidationError(f"orientation must be one of {ORIENTATIONS}")

    @classmethod
    def from_debye(cls, omega_m: float, d_debye: float, chi: float = 0.0, **kw) -> "ChiralMolecule":
        return cls(omega_m, debye_to_si(d_debye), chi, **kw)

    @property
    def rotatory_strength(self) -> float:
        return self.chi * C * self.dipole.magnitude**2

    @property
    def dipole_vector(self) -> tuple[float, float, float] | None:
        """Cartesian dipole, or None when only an orientation average is meaningful."""
        if self.dipole.components is not None:
            return self.dipole.components
        if self.orientation == "fixed_x":
            return (self.dipole.magnitude, 0.0, 0.0)
        return None

    def enantiomer(self) -> "ChiralMolecule":
        return replace(self, chi=-self.chi)

    def oriented(self, orientation: str = "fixed_x") -> "ChiralMolecule":
        return replace(self, orientation=orientation)


def magnetic_dipole_magnitude(molecule: ChiralMolecule) -> float:
    """|m|/c = |chi| |d| in C m."""
    return abs(molecule.chi) * molecule.dipole.magnitude


def rotatory_strength_from_chi(chi: float, dipole: DipoleMoment) -> float:
    return chi * C * dipole.magnitude**2


def is_matched(chi: float, sign: int) -> bool:
    """True when molecule and mode handedness agree (coupling enhanced)."""
    return chi * sign > 0 and not math.isclose(chi, 0.0)
