"""Circularly polarised standing-wave cavity mode."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .constants import C, EPS0, HBAR
from .errors import DomainError, UsageError


class Handedness(enum.IntEnum):
    """Mode handedness; the value is the sign used in every (1 +/- chi) factor."""

    RIGHT = 1
    LEFT = -1

    @classmethod
    def parse(cls, value) -> "Handedness":
        if isinstance(value, Handedness):
            return value
        if isinstance(value, str):
            key = value.strip().lower()
            if key in ("right", "r", "+", "+1"):
                return cls.RIGHT
            if key in ("left", "l", "-", "-1"):
                return cls.LEFT
        elif value in (1, -1):
            return cls(int(value))
        raise DomainError(f"handedness must be right/left or +1/-1, got {value!r}")

    def flipped(self) -> "Handedness":
        return Handedness(-int(self))


def mode_amplitude(omega: float, volume: float) -> float:
    """Vacuum vector-potential amplitude sqrt(hbar / (2 eps0 omega V)) in V s/m."""
    if not omega > 0:
        raise DomainError(f"mode frequency must be positive, got {omega}")
    if not volume > 0:
        raise DomainError(f"mode volume must be positive, got {volume}")
    return math.sqrt(HBAR / (2.0 * EPS0 * omega * volume))


def mode_profile(z, k: float, handedness) -> np.ndarray:
    """Unit helical profile (cos kz, -s sin kz, 0), s = +1 for right-handed.

    Vectorised over ``z``; the last axis holds the cartesian components.
    """
    sign = int(Handedness.parse(handedness))
    kz = k * np.asarray(z, dtype=float)
    return np.stack([np.cos(kz), -sign * np.sin(kz), np.zeros_like(kz)], axis=-1)


@dataclass(frozen=True)
class CavityMode:
    omega: float
    handedness: Handedness = Handedness.RIGHT
    volume: float = 1.0

    def __post_init__(self):
        if not self.omega > 0:
            raise DomainError(f"mode frequency must be positive, got {self.omega}")
        if not self.volume > 0:
            raise DomainError(f"mode volume must be positive, got {self.volume}")
        object.__setattr__(self, "handedness", Handedness.parse(self.handedness))

    @property
    def sign(self) -> int:
        return int(self.handedness)

    @property
    def k(self) -> float:
        return self.omega / C

    @property
    def amplitude(self) -> float:
        return mode_amplitude(self.omega, self.volume)

    @property
    def period(self) -> float:
        """Spatial period 2 pi / k of the helical profile."""
        return 2.0 * math.pi / self.k

    def profile(self, z) -> np.ndarray:
        return mode_profile(z, self.k, self.handedness)

    def with_handedness(self, handedness) -> "CavityMode":
        return CavityMode(self.omega, Handedness.parse(handedness), self.volume)


@dataclass(frozen=True)
class FieldSnapshot:
    z_values: np.ndarray
    t: float
    e_field: np.ndarray
    b_field: np.ndarray
    e_amplitude: float
    b_amplitude: float


NORMALISATIONS = ("unit", "single_photon")


def _snapped_sincos(phase: float) -> tuple[float, float]:
    # cos(pi/2) evaluates to ~6e-17; quarter-period zeros should be exact
    tol = 8.0 * np.finfo(float).eps * max(1.0, abs(phase))
    sin_p, cos_p = math.sin(phase), math.cos(phase)
    return (0.0 if abs(sin_p) < tol else sin_p), (0.0 if abs(cos_p) < tol else cos_p)


def field_snapshot(mode: CavityMode, z_values, t: float, normalisation: str = "unit") -> FieldSnapshot:
    """Classical E and B profiles of the mode at time ``t``.

    Phase convention: E = E0 v(z) sin(wt), B = s B0 v(z) cos(wt). With
    ``normalisation="unit"`` E0 = 1 and B0 = 1/c; with ``"single_photon"``
    E0 = w A0 and B0 = k A0.
    """
    z = np.atleast_1d(np.asarray(z_values, dtype=float))
    if z.size == 0:
        raise UsageError("z_values must be non-empty")
    if not math.isfinite(t):
        raise DomainError(f"time must be finite, got {t}")
    if normalisation == "unit":
        e_amp, b_amp = 1.0, 1.0 / C
    elif normalisation == "single_photon":
        a0 = mode.amplitude
        e_amp, b_amp = mode.omega * a0, mode.k * a0
    else:
        raise UsageError(f"normalisation must be one of {NORMALISATIONS}, got {normalisation!r}")
    v = mode.profile(z)
    sin_p, cos_p = _snapped_sincos(mode.omega * t)
    e = e_amp * sin_p * v
    b = mode.sign * b_amp * cos_p * v
    return FieldSnapshot(z, t, e, b, e_amp, b_amp)
