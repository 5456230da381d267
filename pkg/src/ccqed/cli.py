"""ccqed command-line interface.

Subcommands emit CSV (or JSON for ``table``) with a ``#`` header block that
records the resolved configuration. Output is byte-reproducible: floats are
printed in scientific notation with 12 significant digits.

Exit codes: 0 success, 2 usage/config error, 3 data/validation error,
4 numeric failure.
"""

from __future__ import annotations

import argparse
import io
import json
import math
import sys
from importlib.metadata import PackageNotFoundError, version

import numpy as np

from .constants import CONSTANTS_VERSION, DEBYE, HBAR
from .errors import DomainError, NumericError, UsageError, ValidationError
from .estimates import (
    DEFAULT_CHI,
    MoleculeRecord,
    default_db_path,
    estimate_table,
    find_record,
    load_database,
)
from .mode_field import NORMALISATIONS, CavityMode, Handedness, field_snapshot
from .molecule import ChiralMolecule
from .single_mode import JCBlock, cp_force, cp_force_fd, dressed_energies
from .two_mode import TwoModeBlock, closed_form_energies

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_NUMERIC = 0, 2, 3, 4

SPECTRUM_SCENARIOS = ("single", "degenerate", "imperfect", "near_degenerate")

TABLE_COLUMNS = (
    "name", "nu_hz", "d_debye", "volume_m3", "omega_rabi", "chiral_shift",
    "resolving_power", "chi", "omega_rabi_cycles_hz", "chiral_shift_cycles_hz",
)


def fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, str):
        return x
    x = float(x)
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    if x == 0.0:
        x = 0.0  # drop the sign of -0.0
    return f"{x:.11e}"


def _package_version() -> str:
    try:
        return version("artifact")
    except PackageNotFoundError:
        return "unknown"


def _header(command: str, config: dict, notes=()) -> str:
    lines = [f"# ccqed {command}", f"# version = {_package_version()}", f"# constants = {CONSTANTS_VERSION}"]
    for key in sorted(config):
        lines.append(f"# {key} = {config[key]}")
    lines.extend(f"# {note}" for note in notes)
    return "\n".join(lines) + "\n"


def _csv(columns, rows) -> str:
    buf = io.StringIO()
    buf.write(",".join(columns) + "\n")
    for row in rows:
        buf.write(",".join(fmt(v) for v in row) + "\n")
    return buf.getvalue()


def _emit(text: str, output: str | None) -> None:
    if output in (None, "-"):
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        with open(output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _grid(lo: float, hi: float, points: int) -> np.ndarray:
    if points < 2:
        raise UsageError(f"--points must be >= 2, got {points}")
    if not lo < hi:
        raise UsageError(f"grid minimum {lo} must be below maximum {hi}")
    return np.linspace(lo, hi, points)


# -- table -------------------------------------------------------------------

def cmd_table(db_path=None, fmt_name: str = "csv") -> str:
    path = db_path if db_path is not None else default_db_path()
    rows = estimate_table(load_database(path))
    config = {"db": path, "format": fmt_name}
    if fmt_name == "json":
        payload = {
            "command": "table",
            "constants": CONSTANTS_VERSION,
            "config": {k: str(v) for k, v in config.items()},
            "rows": [
                {
                    "name": r.name,
                    "nu_hz": r.nu,
                    "d_debye": r.d,
                    "volume_m3": r.volume,
                    "omega_rabi": r.omega_rabi,
                    "chiral_shift": r.chiral_shift,
                    "resolving_power": None if math.isinf(r.resolving_power) else r.resolving_power,
                    "chi": r.chi,
                    "omega_rabi_cycles_hz": r.omega_rabi_hz,
                    "chiral_shift_cycles_hz": r.chiral_shift_hz,
                }
                for r in rows
            ],
        }
        return json.dumps(payload, indent=2, sort_keys=False) + "\n"
    if fmt_name != "csv":
        raise UsageError(f"format must be csv or json, got {fmt_name!r}")
    notes = (
        "omega_rabi and chiral_shift in rad/s; *_cycles_hz columns are the same divided by 2 pi",
        "resolving_power = nu_hz / chiral_shift (plain numbers)",
    )
    body = _csv(
        TABLE_COLUMNS,
        (
            (r.name, r.nu, r.d, r.volume, r.omega_rabi, r.chiral_shift, r.resolving_power,
             r.chi, r.omega_rabi_hz, r.chiral_shift_hz)
            for r in rows
        ),
    )
    return _header("table", config, notes) + body


# -- spectrum ----------------------------------------------------------------

def _scenario_couplings(scenario: str, g: float, chi: float, sign: int, ratio: float):
    if scenario == "single":
        return g * (1.0 + sign * chi), None
    if scenario == "degenerate":
        if chi != 0.0:
            raise ValidationError("degenerate scenario applies to an achiral molecule (use --chi 0)")
        return g, g
    if scenario == "imperfect":
        return g * (1.0 + sign * chi), ratio * g * (1.0 - sign * chi)
    return g * (1.0 + sign * chi), g * (1.0 - sign * chi)


def cmd_spectrum(scenario: str, n: int = 0, detuning: float = 0.0, g_max: float = 1.0,
                 points: int = 201, g_min: float = 0.0, chi: float = 0.0,
                 delta_ratio: float = 0.4, omega: float = 0.0, handedness: str = "right") -> str:
    if scenario not in SPECTRUM_SCENARIOS:
        raise UsageError(f"scenario must be one of {', '.join(SPECTRUM_SCENARIOS)}; got {scenario!r}")
    if n < 0:
        raise UsageError(f"--n must be >= 0, got {n}")
    if not -1.0 <= chi <= 1.0:
        raise ValidationError(f"chi must lie in [-1, 1], got {chi}")
    if scenario == "imperfect" and not 0.0 <= delta_ratio < 1.0:
        raise ValidationError(f"--delta-ratio must lie in [0, 1), got {delta_ratio}")
    sign = int(Handedness.parse(handedness))
    grid = _grid(g_min, g_max, points)
    omega_m = omega + detuning

    rows = []
    for g in grid:
        g1, g2 = _scenario_couplings(scenario, float(g), chi, sign, delta_ratio)
        if g2 is None:
            e1, e2 = dressed_energies(JCBlock(n, omega, omega_m, g1)) / HBAR
            rows.append((g, e1, e2, None))
        else:
            e1, e2, e3 = closed_form_energies(TwoModeBlock.symmetric(n, omega, omega_m, g1, g2)) / HBAR
            rows.append((g, e1, e2, e3))

    config = {
        "scenario": scenario, "n": n, "detuning_rads": fmt(detuning), "omega_rads": fmt(omega),
        "g_min_rads": fmt(g_min), "g_max_rads": fmt(g_max), "points": points,
        "chi": fmt(chi), "delta_ratio": fmt(delta_ratio), "handedness": Handedness.parse(handedness).name.lower(),
    }
    notes = (
        "energies are E/hbar in rad/s; E1 > E2 is the coupled pair, E3 the decoupled branch",
        "couplings: single g(1+s chi); imperfect g(1+s chi), r g(1-s chi); near_degenerate g(1 +/- chi)",
    )
    columns = ("g_rads", "E1_over_hbar_rads", "E2_over_hbar_rads", "E3_over_hbar_rads")
    return _header("spectrum", config, notes) + _csv(columns, rows)


# -- force -------------------------------------------------------------------

def parse_inline_molecule(text: str) -> MoleculeRecord:
    """Parse ``nu=1e11,d=1.72[,chi=0.01][,volume=3.4e-9]``."""
    fields = {}
    for part in text.split(","):
        if "=" not in part:
            raise UsageError(f"inline molecule entries must be key=value, got {part!r}")
        key, val = (s.strip() for s in part.split("=", 1))
        if key not in ("nu", "d", "chi", "volume"):
            raise UsageError(f"unknown inline molecule key {key!r}")
        try:
            fields[key] = float(val)
        except ValueError:
            raise UsageError(f"inline molecule value for {key!r} is not a number: {val!r}") from None
    if "nu" not in fields or "d" not in fields:
        raise UsageError("inline molecule needs at least nu and d")
    return MoleculeRecord(name="inline", chi=fields.pop("chi", DEFAULT_CHI), **fields)


def _resolve_molecule(selector: str, db_path) -> MoleculeRecord:
    if "=" in selector:
        return parse_inline_molecule(selector)
    return find_record(load_database(db_path), selector)


def cmd_force(molecule: str = "PO", n: int = 0, detuning: float = 0.0, z_min=None, z_max=None,
              points: int = 200, state: int = 1, handedness: str = "right", db_path=None) -> str:
    if state not in (1, 2):
        raise UsageError(f"--state must be 1 or 2, got {state}")
    if n < 0:
        raise UsageError(f"--n must be >= 0, got {n}")
    rec = _resolve_molecule(molecule, db_path)
    omega_m = rec.omega
    omega = omega_m - detuning
    if not omega > 0:
        raise ValidationError(f"detuning {detuning} leaves a non-positive mode frequency")
    mol = ChiralMolecule(omega_m, rec.d * DEBYE, rec.chi, name=rec.name, orientation="fixed_x")
    mode = CavityMode(omega, Handedness.parse(handedness), rec.resolved_volume)
    lo = 0.0 if z_min is None else z_min
    hi = mode.period if z_max is None else z_max
    z = _grid(lo, hi, points)
    force = cp_force(mol, mode, z, n, state)
    force_fd = cp_force_fd(mol, mode, z, n, state)
    config = {
        "molecule": rec.name, "nu_hz": fmt(rec.nu), "d_debye": fmt(rec.d), "chi": fmt(rec.chi),
        "volume_m3": fmt(rec.resolved_volume), "n": n, "detuning_rads": fmt(detuning),
        "handedness": mode.handedness.name.lower(), "state": state, "points": points,
        "z_min_m": fmt(lo), "z_max_m": fmt(hi),
    }
    notes = (
        "dipole fixed along x; F_z = -dE_state/dz",
        "F_z_fd_newton: central difference of the numerically diagonalised energy, h = 1e-6/k",
    )
    rows = zip(z, mode.k * z, force, force_fd)
    return _header("force", config, notes) + _csv(("z_m", "kz_rad", "F_z_newton", "F_z_fd_newton"), rows)


# -- fields ------------------------------------------------------------------

def cmd_fields(nu: float, volume: float, handedness: str = "right", times=(0.0, 0.25, 0.5, 0.75),
               points: int = 101, normalisation: str = "unit") -> str:
    if not nu > 0:
        raise ValidationError(f"--nu must be positive, got {nu}")
    if normalisation not in NORMALISATIONS:
        raise UsageError(f"normalisation must be one of {NORMALISATIONS}")
    if not times:
        raise UsageError("at least one time is required")
    mode = CavityMode(2.0 * math.pi * nu, Handedness.parse(handedness), volume)
    z = _grid(0.0, mode.period, points)
    period = 2.0 * math.pi / mode.omega
    rows = []
    for frac in times:
        snap = field_snapshot(mode, z, frac * period, normalisation)
        e, b = snap.e_field, snap.b_field
        for i, zz in enumerate(z):
            rows.append((frac, zz, e[i, 0], e[i, 1], b[i, 0], b[i, 1]))
    config = {
        "nu_hz": fmt(nu), "volume_m3": fmt(volume), "handedness": mode.handedness.name.lower(),
        "times_frac": " ".join(fmt(t) for t in times), "points": points, "normalisation": normalisation,
        "e_amplitude": fmt(snap.e_amplitude), "b_amplitude": fmt(snap.b_amplitude),
    }
    notes = ("phase convention: E = E0 v(z) sin(wt), B = s B0 v(z) cos(wt); Ez = Bz = 0",)
    return _header("fields", config, notes) + _csv(("t_frac", "z_m", "Ex", "Ey", "Bx", "By"), rows)


# -- entry point ---------------------------------------------------------------

def _float_list(text: str):
    try:
        return tuple(float(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ccqed", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("table", help="Rabi frequencies and chiral shifts per molecule")
    p.add_argument("--db", default=None, help="molecule database (default: $CCQED_DB or bundled)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--output", "-o", default=None)

    p = sub.add_parser("spectrum", help="dressed energies over a coupling sweep")
    p.add_argument("--scenario", choices=SPECTRUM_SCENARIOS, required=True)
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--detuning", type=float, default=0.0, help="omega_M - omega in rad/s")
    p.add_argument("--g-min", type=float, default=0.0)
    p.add_argument("--g-max", type=float, required=True)
    p.add_argument("--points", type=int, default=201)
    p.add_argument("--chi", type=float, default=0.0)
    p.add_argument("--delta-ratio", type=float, default=0.4, help="dA0/A0 for the imperfect cavity")
    p.add_argument("--omega", type=float, default=0.0,
                   help="mode frequency in rad/s; 0 reports energies relative to the bare ladder")
    p.add_argument("--handedness", choices=("left", "right"), default="right")
    p.add_argument("--output", "-o", default=None)

    p = sub.add_parser("force", help="Casimir-Polder force profile along the cavity axis")
    p.add_argument("--molecule", default="PO", help="database name or inline nu=..,d=..[,chi=..][,volume=..]")
    p.add_argument("--db", default=None)
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--detuning", type=float, default=0.0)
    p.add_argument("--z-min", type=float, default=None)
    p.add_argument("--z-max", type=float, default=None, help="default: one spatial period 2 pi / k")
    p.add_argument("--points", type=int, default=200)
    p.add_argument("--state", type=int, choices=(1, 2), default=1)
    p.add_argument("--handedness", choices=("left", "right"), default="right")
    p.add_argument("--output", "-o", default=None)

    p = sub.add_parser("fields", help="E and B snapshots of the circularly polarised mode")
    p.add_argument("--nu", type=float, required=True)
    p.add_argument("--volume", type=float, required=True)
    p.add_argument("--handedness", choices=("left", "right"), default="right")
    p.add_argument("--times", type=_float_list, default=(0.0, 0.25, 0.5, 0.75),
                   help="comma-separated fractions of the optical period")
    p.add_argument("--points", type=int, default=101)
    p.add_argument("--normalisation", choices=NORMALISATIONS, default="unit")
    p.add_argument("--output", "-o", default=None)
    return parser


def run(args) -> str:
    if args.command == "table":
        return cmd_table(args.db, args.format)
    if args.command == "spectrum":
        return cmd_spectrum(args.scenario, args.n, args.detuning, args.g_max, args.points, args.g_min,
                            args.chi, args.delta_ratio, args.omega, args.handedness)
    if args.command == "force":
        return cmd_force(args.molecule, args.n, args.detuning, args.z_min, args.z_max, args.points,
                         args.state, args.handedness, args.db)
    return cmd_fields(args.nu, args.volume, args.handedness, args.times, args.points, args.normalisation)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        text = run(args)
        _emit(text, args.output)
    except UsageError as exc:
        print(f"ccqed: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValidationError, DomainError) as exc:
        print(f"ccqed: data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except NumericError as exc:
        print(f"ccqed: numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
