"""Molecule-mode coupling constant g (rad/s).

Convention: g = i (w A0 / hbar) (1 + s chi) (d . v), with s = +1 for a
right-handed mode. The coupling energy is hbar g.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .constants import HBAR
from .errors import UsageError
from .mode_field import CavityMode, mode_profile
from .molecule import ChiralMolecule


@dataclass(frozen=True)
class CouplingConstant:
    value: complex

    @property
    def magnitude_sq(self) -> float:
        return abs(self.value) ** 2

    def __abs__(self) -> float:
        return abs(self.value)

    def __complex__(self) -> complex:
        return complex(self.value)


def chiral_factor(chi: float, sign: int) -> float:
    return 1.0 + sign * chi


def _field_prefactor(mode: CavityMode, amplitude: float | None = None) -> float:
    a0 = mode.amplitude if amplitude is None else amplitude
    return mode.omega * a0 / HBAR


def coupling_value(molecule: ChiralMolecule, mode: CavityMode, z=0.0, amplitude=None, sign=None):
    """Complex g at position(s) ``z``; vectorised.

    ``amplitude`` and ``sign`` override the mode's A0 and handedness. Both
    are needed by the two-mode scenarios, where the profile of the primary
    mode is shared.
    """
    d = molecule.dipole_vector
    if d is None:
        raise UsageError(
            "position-resolved coupling needs a fixed dipole orientation; "
            "use coupling_avg_sq for a rotationally averaged molecule"
        )
    s = mode.sign if sign is None else sign
    v = mode_profile(z, mode.k, mode.handedness)
    dv = v @ np.asarray(d, dtype=float)
    return 1j * _field_prefactor(mode, amplitude) * chiral_factor(molecule.chi, s) * dv


def coupling_at(molecule: ChiralMolecule, mode: CavityMode, z: float = 0.0) -> CouplingConstant:
    return CouplingConstant(complex(coupling_value(molecule, mode, z)))


def coupling_avg_sq(molecule: ChiralMolecule, mode: CavityMode, amplitude=None, sign=None) -> float:
    """Orientation-averaged |g|^2 = (w A0 / hbar)^2 |d|^2 (1 + s chi)^2 / 3."""
    s = mode.sign if sign is None else sign
    pref = _field_prefactor(mode, amplitude)
    return (pref * molecule.dipole.magnitude * chiral_factor(molecule.chi, s)) ** 2 / 3.0


def coupling_oriented_sq(molecule: ChiralMolecule, mode: CavityMode, z=0.0):
    """|g|^2(z) for dipoles along x: (w A0 d_x (1 + s chi) / hbar)^2 cos^2(kz)."""
    d_x = molecule.dipole.magnitude if molecule.dipole_vector is None else molecule.dipole_vector[0]
    g0 = _field_prefactor(mode) * d_x * chiral_factor(molecule.chi, mode.sign)
    return g0**2 * np.cos(mode.k * np.asarray(z, dtype=float)) ** 2


def coupling_magnitude(molecule: ChiralMolecule, mode: CavityMode, z=0.0) -> float:
    """|g| using whichever form matches the molecule's orientation model."""
    if molecule.orientation == "rotational_average" and molecule.dipole.components is None:
        return float(np.sqrt(coupling_avg_sq(molecule, mode)))
    return float(abs(coupling_value(molecule, mode, z)))
