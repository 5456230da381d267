"""Two cavity modes of opposite handedness coupled to one molecule.

Basis of the excitation block: {|e,n1,n2>, |g,n1+1,n2>, |g,n1,n2+1>}.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import linalg
from .constants import HBAR
from .coupling import coupling_avg_sq, coupling_value
from .errors import UsageError, ValidationError
from .mode_field import CavityMode
from .molecule import ChiralMolecule
from .single_mode import Eigensystem, _align

SQRT_HALF = math.sqrt(0.5)

COLLECTIVE_T = np.array(
    [
        [1.0, 0.0, 0.0],
        [0.0, SQRT_HALF, -SQRT_HALF],
        [0.0, SQRT_HALF, SQRT_HALF],
    ]
)
COLLECTIVE_LABELS = ("|e,n,n>", "|g,F+>", "|g,F->")


@dataclass(frozen=True)
class TwoModeBlock:
    n1: int
    n2: int
    omega1: float
    omega2: float
    g1: complex
    g2: complex
    omega_m: float

    def __post_init__(self):
        for name in ("n1", "n2"):
            val = getattr(self, name)
            if int(val) != val or val < 0:
                raise ValidationError(f"{name} must be a non-negative integer, got {val}")
            object.__setattr__(self, name, int(val))
        object.__setattr__(self, "g1", complex(self.g1))
        object.__setattr__(self, "g2", complex(self.g2))

    @classmethod
    def symmetric(cls, n: int, omega: float, omega_m: float, g1: complex, g2: complex) -> "TwoModeBlock":
        return cls(n, n, omega, omega, g1, g2, omega_m)

    @property
    def detuning(self) -> float:
        return self.omega_m - self.omega1

    def is_symmetric(self) -> bool:
        return self.n1 == self.n2 and math.isclose(self.omega1, self.omega2, rel_tol=1e-12, abs_tol=0.0)

    def is_degenerate(self) -> bool:
        return self.is_symmetric() and abs(self.g1 - self.g2) <= 1e-12 * max(abs(self.g1), abs(self.g2))


@dataclass(frozen=True)
class CollectiveBasis:
    transformation: np.ndarray
    labels: tuple[str, str, str] = COLLECTIVE_LABELS


def two_mode_matrix(block: TwoModeBlock) -> np.ndarray:
    n1, n2, w1, w2, wm = block.n1, block.n2, block.omega1, block.omega2, block.omega_m
    c1 = math.sqrt(n1 + 1) * block.g1
    c2 = math.sqrt(n2 + 1) * block.g2
    return HBAR * np.array(
        [
            [n1 * w1 + n2 * w2 + 0.5 * wm, c1.conjugate(), c2.conjugate()],
            [c1, (n1 + 1) * w1 + n2 * w2 - 0.5 * wm, 0.0],
            [c2, 0.0, n1 * w1 + (n2 + 1) * w2 - 0.5 * wm],
        ],
        dtype=complex,
    )


def collective_transform(block: TwoModeBlock):
    """Rotate the degenerate block into the {|e,n,n>, |g,F+>, |g,F->} basis.

    Returns ``(CollectiveBasis, T^-1 H T)``. Only |g,F+> couples to the
    molecule, with strength sqrt(2(n+1)) hbar g.
    """
    if not block.is_degenerate():
        raise UsageError("collective transform requires omega1 = omega2, n1 = n2 and g1 = g2")
    t = COLLECTIVE_T
    h = two_mode_matrix(block)
    return CollectiveBasis(t.copy()), t.T @ h @ t


def closed_form_energies(block: TwoModeBlock, rabi: float | None = None) -> np.ndarray:
    """(E1, E2, E3) in J for a symmetric block (omega1 = omega2, n1 = n2)."""
    if rabi is None:
        rabi = rabi_two_mode(block)
    n, w, wm = block.n1, block.omega1, block.omega_m
    centre = (2 * n + 0.5) * HBAR * w
    e3 = (2 * n + 1) * HBAR * w - 0.5 * HBAR * wm
    return np.array([centre + 0.5 * HBAR * rabi, centre - 0.5 * HBAR * rabi, e3])


def _spectrum(block: TwoModeBlock, rabi: float, dark: np.ndarray) -> Eigensystem:
    energies = closed_form_energies(block, rabi)
    vecs = _labelled_vectors(block, dark)
    bright_part = vecs[1:, 0]
    theta = math.atan2(float(np.linalg.norm(bright_part)), abs(vecs[0, 0]))
    return Eigensystem(energies, rabi, theta, vecs)


def _dark_vector(block: TwoModeBlock) -> np.ndarray:
    c1 = math.sqrt(block.n1 + 1) * block.g1
    c2 = math.sqrt(block.n2 + 1) * block.g2
    big = max(abs(c1), abs(c2))
    if big == 0.0:
        return np.array([0.0, SQRT_HALF, -SQRT_HALF], dtype=complex)
    # rescale first so subnormal couplings still normalise
    c1, c2 = c1 / big, c2 / big
    vec = np.array([0.0, c2.conjugate(), -c1.conjugate()])
    return vec / np.linalg.norm(vec)


def _labelled_vectors(block: TwoModeBlock, dark: np.ndarray) -> np.ndarray:
    """Numerical eigenvectors ordered as (E1, E2, E3).

    E3 is the eigenvector with the largest overlap with the dark (decoupled)
    state. Inside a degenerate cluster the dark state itself is used and the
    remaining vectors are orthogonalised against it, which fixes the labels
    deterministically.
    """
    h = two_mode_matrix(block)
    w, v = linalg.eigh(h, method="jacobi")
    scale = max(float(np.max(np.abs(h))), np.finfo(float).tiny)
    tol = 1e-12 * scale
    overlaps = np.abs(dark.conj() @ v)
    k = int(np.argmax(overlaps))
    cluster = [i for i in range(3) if abs(w[i] - w[k]) <= tol]
    if len(cluster) == 3:
        # g = 0 at resonance: everything degenerate, use the bare/collective basis
        e = np.array([1.0, 0.0, 0.0], dtype=complex)
        bright = np.array([0.0, -dark[2].conjugate(), dark[1].conjugate()])
        return np.column_stack([e, bright, dark])
    if len(cluster) == 2:
        other = cluster[0] if cluster[1] == k else cluster[1]
        rest = v[:, other] - dark * np.vdot(dark, v[:, other])
        if np.linalg.norm(rest) < 1e-8:
            rest = v[:, k] - dark * np.vdot(dark, v[:, k])
        v = v.copy()
        v[:, other] = rest / np.linalg.norm(rest)
        v[:, k] = dark
    others = [i for i in range(3) if i != k]
    hi, lo = (others[1], others[0]) if w[others[1]] >= w[others[0]] else (others[0], others[1])
    out = np.column_stack([v[:, hi], v[:, lo], _align(v[:, k], dark)])
    return out


def degenerate_spectrum(block: TwoModeBlock) -> Eigensystem:
    """Closed-form spectrum for g1 = g2 = g: Omega = sqrt(Delta^2 + 8(n+1)|g|^2)."""
    if not block.is_degenerate():
        raise UsageError("degenerate_spectrum requires omega1 = omega2, n1 = n2 and g1 = g2")
    rabi = math.sqrt(block.detuning**2 + 8.0 * (block.n1 + 1) * abs(block.g1) ** 2)
    return _spectrum(block, rabi, _dark_vector(block))


def nondegenerate_spectrum(block: TwoModeBlock) -> Eigensystem:
    """Closed-form spectrum for equal frequencies and photon numbers, any g1, g2."""
    if not block.is_symmetric():
        raise UsageError("nondegenerate_spectrum requires omega1 = omega2 and n1 = n2")
    rabi = math.sqrt(
        block.detuning**2 + 4.0 * (block.n1 + 1) * (abs(block.g1) ** 2 + abs(block.g2) ** 2)
    )
    return _spectrum(block, rabi, _dark_vector(block))


def rabi_two_mode(block: TwoModeBlock) -> float:
    if not block.is_symmetric():
        raise UsageError("closed-form two-mode Rabi frequency requires omega1 = omega2 and n1 = n2")
    return math.sqrt(
        block.detuning**2 + 4.0 * (block.n1 + 1) * (abs(block.g1) ** 2 + abs(block.g2) ** 2)
    )


SCENARIOS = ("degenerate", "imperfect", "near_degenerate")


@dataclass(frozen=True)
class Scenario:
    """Which pair of couplings the two modes produce.

    ``delta_ratio`` is dA0/A0 for the imperfect cavity and is ignored
    otherwise.
    """

    kind: str
    delta_ratio: float = 0.0

    def __post_init__(self):
        if self.kind not in SCENARIOS:
            raise UsageError(f"scenario must be one of {SCENARIOS}, got {self.kind!r}")
        if self.kind == "imperfect" and not 0.0 <= self.delta_ratio < 1.0:
            raise ValidationError(f"imperfect cavity needs 0 <= dA0/A0 < 1, got {self.delta_ratio}")


def _base_coupling(molecule: ChiralMolecule, mode: CavityMode, z, amplitude, sign) -> complex:
    # the primary mode's profile is shared by both couplings
    if molecule.dipole_vector is None:
        return 1j * math.sqrt(coupling_avg_sq(molecule, mode, amplitude=amplitude, sign=sign))
    return complex(coupling_value(molecule, mode, z, amplitude=amplitude, sign=sign))


def scenario_couplings(scenario: Scenario, molecule: ChiralMolecule, mode: CavityMode, z: float = 0.0):
    """(g1, g2) for a molecule in a cavity whose primary mode is ``mode``.

    Mode 2 has the opposite handedness of ``mode``.

    * degenerate: achiral molecule, g1 = g2.
    * imperfect: g1 = g(A0, 1 + s chi), g2 = g(dA0, 1 - s chi).
    * near_degenerate: equal-amplitude modes, g1,2 = g +/- dg with dg = chi g.
    """
    s = mode.sign
    if scenario.kind == "degenerate":
        if molecule.chi != 0.0:
            raise ValidationError("degenerate scenario applies to an achiral molecule (chi = 0)")
        g = _base_coupling(molecule, mode, z, None, s)
        return g, g
    if scenario.kind == "imperfect":
        g1 = _base_coupling(molecule, mode, z, None, s)
        g2 = _base_coupling(molecule, mode, z, scenario.delta_ratio * mode.amplitude, -s)
        return g1, g2
    achiral = _base_coupling(molecule, mode, z, None, 0)
    dg = molecule.chi * s * achiral
    return achiral + dg, achiral - dg


def scenario_block(scenario: Scenario, molecule: ChiralMolecule, mode: CavityMode,
                   z: float = 0.0, n: int = 0) -> TwoModeBlock:
    g1, g2 = scenario_couplings(scenario, molecule, mode, z)
    return TwoModeBlock.symmetric(n, mode.omega, molecule.omega_m, g1, g2)


def scenario_spectrum(scenario: Scenario, molecule: ChiralMolecule, mode: CavityMode,
                      z: float = 0.0, n: int = 0) -> Eigensystem:
    block = scenario_block(scenario, molecule, mode, z, n)
    if scenario.kind == "degenerate":
        return degenerate_spectrum(block)
    return nondegenerate_spectrum(block)
