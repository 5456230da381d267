"""Order-of-magnitude estimates of Rabi splittings and chiral shifts.

Reproduces the per-molecule table: resonant vacuum Rabi frequency,
its enantio-discriminatory part and the spectral resolving power needed to
see it.

Unit convention: Rabi frequencies and shifts are angular (rad/s) while the
transition frequency ``nu`` is in Hz. The resolving power is ``nu / dOmega``
with both taken as plain numbers, the usual way these estimates are quoted;
``EstimateRow`` also carries the shifts in cycles per second.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import asdict, dataclass, field
from importlib import resources
from pathlib import Path

import jsonschema

from .constants import DEBYE, EPS0, HBAR, minimal_mode_volume
from .errors import DomainError, ValidationError

DEFAULT_CHI = 0.01
DB_ENV_VAR = "CCQED_DB"

RECORD_SCHEMA = {
    "type": "object",
    "properties": {
        "name": {"type": "string", "minLength": 1},
        "nu": {"type": "number", "exclusiveMinimum": 0},
        "d": {"type": "number", "minimum": 0},
        "chi": {"type": "number", "minimum": -1, "maximum": 1},
        "volume": {"type": "number", "exclusiveMinimum": 0},
        "notes": {"type": "string"},
    },
    "required": ["name", "nu", "d"],
    "additionalProperties": False,
}

DB_SCHEMA = {"type": "array", "items": RECORD_SCHEMA}


@dataclass(frozen=True)
class MoleculeRecord:
    name: str
    nu: float
    d: float
    chi: float = DEFAULT_CHI
    volume: float | None = None
    notes: str = ""

    def __post_init__(self):
        if not self.nu > 0:
            raise ValidationError(f"{self.name}: nu must be positive")
        if not self.d >= 0:
            raise ValidationError(f"{self.name}: d must be >= 0")
        if not -1 <= self.chi <= 1:
            raise ValidationError(f"{self.name}: chi must lie in [-1, 1]")
        if self.volume is not None and not self.volume > 0:
            raise ValidationError(f"{self.name}: volume must be positive")

    @property
    def omega(self) -> float:
        return 2.0 * math.pi * self.nu

    @property
    def resolved_volume(self) -> float:
        return self.volume if self.volume is not None else minimal_mode_volume(self.omega)


@dataclass(frozen=True)
class EstimateRow:
    name: str
    nu: float
    d: float
    volume: float
    chi: float
    omega_rabi: float
    chiral_shift: float
    resolving_power: float
    omega_rabi_hz: float = field(init=False)
    chiral_shift_hz: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "omega_rabi_hz", self.omega_rabi / (2.0 * math.pi))
        object.__setattr__(self, "chiral_shift_hz", self.chiral_shift / (2.0 * math.pi))

    def as_dict(self) -> dict:
        return asdict(self)


def vacuum_rabi(nu: float, d: float, volume: float) -> float:
    """Resonant, achiral vacuum Rabi frequency sqrt(2 w d^2 / (3 eps0 hbar V)).

    ``nu`` in Hz, ``d`` in C m, ``volume`` in m^3; result in rad/s.
    """
    if not (nu > 0 and d >= 0 and volume > 0):
        raise DomainError("vacuum_rabi needs nu > 0, d >= 0, volume > 0")
    omega = 2.0 * math.pi * nu
    return math.sqrt(2.0 * omega * d * d / (3.0 * EPS0 * HBAR * volume))


def chiral_shift(nu: float, d: float, chi: float, volume: float) -> float:
    """Discriminatory part sqrt(2 w R / (3 eps0 hbar c V)) with R = |chi| c d^2.

    Returns the magnitude; the sign follows ``chi``.
    """
    if not (nu > 0 and d >= 0 and volume > 0):
        raise DomainError("chiral_shift needs nu > 0, d >= 0, volume > 0")
    # c cancels; factoring out sqrt|chi| avoids underflow of chi c d^2
    return vacuum_rabi(nu, d, volume) * math.sqrt(abs(chi))


def resolving_power(nu: float, shift: float) -> float:
    if not shift > 0:
        raise DomainError("chiral shift is zero: not resolvable at any resolving power")
    return nu / shift


def estimate(record: MoleculeRecord) -> EstimateRow:
    d_si = record.d * DEBYE
    volume = record.resolved_volume
    rabi = vacuum_rabi(record.nu, d_si, volume)
    shift = chiral_shift(record.nu, d_si, record.chi, volume)
    try:
        power = resolving_power(record.nu, shift)
    except DomainError:
        power = math.inf
    return EstimateRow(record.name, record.nu, record.d, volume, record.chi, rabi, shift, power)


def default_db_path() -> Path:
    env = os.environ.get(DB_ENV_VAR)
    if env:
        return Path(env)
    return Path(str(resources.files("ccqed") / "data" / "molecules.json"))


def parse_database(text: str, source: str = "<string>") -> list[MoleculeRecord]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(
            f"{source}: JSON parse error at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from None
    validator = jsonschema.Draft202012Validator(DB_SCHEMA)
    errors = sorted(validator.iter_errors(data), key=lambda e: list(e.path))
    if errors:
        err = errors[0]
        where = "/".join(str(p) for p in err.path) or "<root>"
        label = ""
        if err.path and isinstance(data, list):
            idx = err.path[0]
            if isinstance(data[idx], dict) and "name" in data[idx]:
                label = f" (record {data[idx]['name']!r})"
        raise ValidationError(f"{source}: invalid entry at {where}{label}: {err.message}")
    return [MoleculeRecord(**rec) for rec in data]


def load_database(path=None) -> list[MoleculeRecord]:
    """Read a molecule database (JSON array of records).

    Without ``path`` the ``CCQED_DB`` environment variable is consulted, then
    the bundled three-molecule table.
    """
    p = Path(path) if path is not None else default_db_path()
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise ValidationError(f"cannot read molecule database {p}: {exc}") from None
    return parse_database(text, str(p))


def find_record(records, name: str) -> MoleculeRecord:
    for rec in records:
        if rec.name == name:
            return rec
    raise ValidationError(f"molecule {name!r} not in database ({[r.name for r in records]})")


def estimate_table(records) -> list[EstimateRow]:
    return [estimate(r) for r in records]
