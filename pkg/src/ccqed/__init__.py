"""Cavity QED of chiral molecules in circularly polarised standing-wave modes."""

from .constants import CONSTANTS, CONSTANTS_VERSION, convert_frequency, oscillator_strength_to_dipole
from .coupling import coupling_at, coupling_avg_sq, coupling_value
from .errors import CCQEDError, DomainError, NumericError, UsageError, ValidationError
from .estimates import estimate_table, load_database
from .linalg import eigh, jacobi_eigh
from .mode_field import CavityMode, Handedness, field_snapshot
from .molecule import ChiralMolecule
from .single_mode import JCBlock, cp_force, eigensystem, rabi_frequency
from .two_mode import Scenario, TwoModeBlock, degenerate_spectrum, nondegenerate_spectrum, scenario_spectrum

__all__ = [
    "CONSTANTS", "CONSTANTS_VERSION", "convert_frequency", "oscillator_strength_to_dipole",
    "coupling_at", "coupling_avg_sq", "coupling_value",
    "CCQEDError", "DomainError", "NumericError", "UsageError", "ValidationError",
    "estimate_table", "load_database", "eigh", "jacobi_eigh",
    "CavityMode", "Handedness", "field_snapshot", "ChiralMolecule",
    "JCBlock", "cp_force", "eigensystem", "rabi_frequency",
    "Scenario", "TwoModeBlock", "degenerate_spectrum", "nondegenerate_spectrum", "scenario_spectrum",
]
