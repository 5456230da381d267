"""Jaynes-Cummings excitation block for one circularly polarised mode.

Energies are in joules; frequencies (omega, detuning, g, Rabi) in rad/s.
The block basis is {|e, n>, |g, n+1>}.

Mixing angle: theta is read off the numerically computed upper eigenvector,
|E1> = cos(theta)|e,n> + sin(theta) e^{i arg g}|g,n+1>, which corresponds to
tan(2 theta) = 2 sqrt(n+1)|g| / Delta. (A |g|^2 / Delta form of this relation
is not dimensionally consistent and is not used.)
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from . import linalg
from .constants import HBAR
from .coupling import CouplingConstant, coupling_oriented_sq, coupling_value
from .errors import UsageError, ValidationError
from .mode_field import CavityMode
from .molecule import ChiralMolecule


@dataclass(frozen=True)
class JCBlock:
    n: int
    omega: float
    omega_m: float
    g: complex

    def __post_init__(self):
        if isinstance(self.g, CouplingConstant):
            object.__setattr__(self, "g", self.g.value)
        object.__setattr__(self, "g", complex(self.g))
        if int(self.n) != self.n or self.n < 0:
            raise ValidationError(f"photon number must be a non-negative integer, got {self.n}")
        object.__setattr__(self, "n", int(self.n))

    @property
    def detuning(self) -> float:
        return self.omega_m - self.omega

    @classmethod
    def at(cls, molecule: ChiralMolecule, mode: CavityMode, z: float = 0.0, n: int = 0) -> "JCBlock":
        return cls(n, mode.omega, molecule.omega_m, complex(coupling_value(molecule, mode, z)))


@dataclass(frozen=True)
class Eigensystem:
    """Dressed-state energies (J), Rabi frequency, mixing angle and eigenvectors.

    ``eigenvectors[:, i]`` belongs to ``energies[i]``. For the two-mode
    spectra ``energies`` is (E1, E2, E3) with E1 > E2 the coupled pair and E3
    the decoupled branch.
    """

    energies: np.ndarray
    rabi: float
    theta: float
    eigenvectors: np.ndarray


def jc_matrix(block: JCBlock) -> np.ndarray:
    n, w, wm = block.n, block.omega, block.omega_m
    root = math.sqrt(n + 1)
    return HBAR * np.array(
        [
            [n * w + 0.5 * wm, root * block.g.conjugate()],
            [root * block.g, (n + 1) * w - 0.5 * wm],
        ],
        dtype=complex,
    )


def rabi_frequency(block: JCBlock) -> float:
    """Omega = sqrt(Delta^2 + 4 (n+1) |g|^2)."""
    return math.sqrt(block.detuning**2 + 4.0 * (block.n + 1) * abs(block.g) ** 2)


def dressed_energies(block: JCBlock) -> np.ndarray:
    """Closed-form (E1, E2) = (n + 1/2) hbar w +/- hbar Omega / 2."""
    centre = (block.n + 0.5) * HBAR * block.omega
    half = 0.5 * HBAR * rabi_frequency(block)
    return np.array([centre + half, centre - half])


def _align(vec: np.ndarray, ref: np.ndarray) -> np.ndarray:
    overlap = np.vdot(ref, vec)
    if abs(overlap) == 0.0:
        return vec
    return vec * (abs(overlap) / overlap)


def eigensystem(block: JCBlock) -> Eigensystem:
    energies = dressed_energies(block)
    phi = cmath.phase(block.g) if block.g != 0 else 0.0
    rot = cmath.exp(1j * phi)

    scale = abs(block.n * block.omega) + abs(block.omega) + abs(block.omega_m)
    if rabi_frequency(block) <= 1e-12 * scale:
        # (numerically) degenerate bare states: fixed tie-break onto the basis
        theta = 0.0
        vecs = np.eye(2, dtype=complex)
        return Eigensystem(energies, rabi_frequency(block), theta, vecs)

    _, v = linalg.eigh(jc_matrix(block), method="jacobi")
    upper, lower = v[:, 1], v[:, 0]
    theta = math.atan2(abs(upper[1]), abs(upper[0]))
    ref_upper = np.array([math.cos(theta), math.sin(theta) * rot])
    ref_lower = np.array([-math.sin(theta), math.cos(theta) * rot])
    vecs = np.column_stack([_align(upper, ref_upper), _align(lower, ref_lower)])
    return Eigensystem(energies, rabi_frequency(block), theta, vecs)


def mixing_angle(block: JCBlock) -> float:
    """Closed-form theta in [0, pi/2] from tan(2 theta) = 2 sqrt(n+1)|g| / Delta."""
    return 0.5 * math.atan2(2.0 * math.sqrt(block.n + 1) * abs(block.g), block.detuning)


def _state_sign(state: int) -> int:
    if state not in (1, 2):
        raise UsageError(f"state index must be 1 or 2, got {state!r}")
    return 1 if state == 1 else -1


def _oriented(molecule: ChiralMolecule) -> ChiralMolecule:
    if molecule.orientation != "fixed_x" and molecule.dipole.components is None:
        return molecule.oriented("fixed_x")
    return molecule


def rabi_profile(molecule: ChiralMolecule, mode: CavityMode, z, n: int = 0) -> np.ndarray:
    """Omega(z) for an x-oriented molecule."""
    g_sq = coupling_oriented_sq(_oriented(molecule), mode, z)
    delta = molecule.omega_m - mode.omega
    return np.sqrt(delta**2 + 4.0 * (n + 1) * g_sq)


def cp_force(molecule: ChiralMolecule, mode: CavityMode, z, n: int = 0, state: int = 1):
    """Casimir-Polder force F_z = -dE_state/dz (N) for an x-oriented molecule.

    F_z = +/- hbar 2(n+1) k G^2 cos(kz) sin(kz) / Omega(z) with
    G = w A0 d_x (1 + s chi) / hbar; the upper sign is for state 1. At
    points where Omega vanishes (zero detuning at a node of cos kz) the
    energy has a cusp and the symmetric value 0 is returned.
    """
    sign = _state_sign(state)
    mol = _oriented(molecule)
    z = np.asarray(z, dtype=float)
    kz = mode.k * z
    cos = np.cos(kz)
    # cos(pi/2) evaluates to ~6e-17; snap so that nodes are exact
    cos = np.where(np.abs(cos) < 4.0 * np.finfo(float).eps, 0.0, cos)
    sin = np.sin(kz)
    g0_sq = coupling_oriented_sq(mol, mode, 0.0)
    delta = molecule.omega_m - mode.omega
    omega_r = np.sqrt(delta**2 + 4.0 * (n + 1) * g0_sq * cos**2)
    num = 2.0 * (n + 1) * mode.k * g0_sq * cos * sin
    safe = np.where(omega_r > 0, omega_r, 1.0)
    force = np.where(omega_r > 0, sign * HBAR * num / safe, 0.0)
    return force if force.ndim else float(force)


def zero_detuning_force(molecule: ChiralMolecule, mode: CavityMode, z, n: int = 0):
    """Resonant force sqrt(n+1) k w A0 |d_x| |1 + s chi| sin(kz), valid where cos kz > 0."""
    mol = _oriented(molecule)
    d_x = mol.dipole_vector[0]
    factor = abs(1.0 + mode.sign * molecule.chi)
    kz = mode.k * np.asarray(z, dtype=float)
    return math.sqrt(n + 1) * mode.k * mode.omega * mode.amplitude * abs(d_x) * factor * np.sin(kz)


def interaction_energy(molecule: ChiralMolecule, mode: CavityMode, z: float, n: int = 0,
                       state: int = 1, method: str = "jacobi") -> float:
    """E_state(z) - (n + 1/2) hbar w from a numerical eigensolve (J).

    Removing the constant centre before diagonalising keeps the z-dependent
    part at full relative precision, which a finite difference needs.
    """
    sign = _state_sign(state)
    block = JCBlock.at(_oriented(molecule), mode, z, n)
    h = jc_matrix(block)
    h = h - 0.5 * np.trace(h).real * np.eye(2)
    w, _ = linalg.eigh(h, method=method)
    return float(w[1] if sign > 0 else w[0])


def cp_force_fd(molecule: ChiralMolecule, mode: CavityMode, z, n: int = 0, state: int = 1,
                h: float | None = None):
    """Finite-difference force -dE/dz with step h = 1e-6 / k by default."""
    step = 1e-6 / mode.k if h is None else h

    def energy(zz):
        return np.array([interaction_energy(molecule, mode, x, n, state) for x in np.atleast_1d(zz)])

    z_arr = np.atleast_1d(np.asarray(z, dtype=float))
    out = -linalg.central_diff(energy, z_arr, step)
    return out if np.ndim(z) else float(out[0])
