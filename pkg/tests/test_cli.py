import csv
import io
import json
import math

import numpy as np
import pytest

from ccqed import cli
from ccqed.constants import DEBYE
from ccqed.mode_field import CavityMode, Handedness
from ccqed.molecule import ChiralMolecule
from ccqed.single_mode import zero_detuning_force


def parse(text):
    lines = text.splitlines()
    header = [ln for ln in lines if ln.startswith("#")]
    body = [ln for ln in lines if not ln.startswith("#")]
    rows = list(csv.DictReader(io.StringIO("\n".join(body))))
    return header, rows


def col(rows, name):
    return np.array([float(r[name]) for r in rows])


def run(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_fmt():
    assert cli.fmt(1.0) == "1.00000000000e+00"
    assert cli.fmt(-0.0) == "0.00000000000e+00"
    assert cli.fmt(math.inf) == "inf"
    assert cli.fmt(None) == ""


def test_table_csv(capsys):
    code, out, _ = run(["table"], capsys)
    assert code == 0
    header, rows = parse(out)
    assert header[0] == "# ccqed table"
    assert any("constants" in h for h in header)
    assert [r["name"] for r in rows] == ["PO", "ME", "FN"]
    assert list(rows[0])[:7] == ["name", "nu_hz", "d_debye", "volume_m3", "omega_rabi",
                                 "chiral_shift", "resolving_power"]
    assert float(rows[0]["omega_rabi"]) == pytest.approx(2.1e3, rel=0.05)


def test_table_json(capsys):
    code, out, _ = run(["table", "--format", "json"], capsys)
    assert code == 0
    payload = json.loads(out)
    assert [r["name"] for r in payload["rows"]] == ["PO", "ME", "FN"]
    assert payload["rows"][2]["resolving_power"] == pytest.approx(6.1e4, rel=0.05)


def test_table_empty_db(tmp_path, capsys):
    db = tmp_path / "empty.json"
    db.write_text("[]")
    code, out, _ = run(["table", "--db", str(db)], capsys)
    assert code == 0
    _, rows = parse(out)
    assert rows == []
    assert out.splitlines()[-1].startswith("name,")


def test_table_zero_chi(tmp_path, capsys):
    db = tmp_path / "db.json"
    db.write_text(json.dumps([{"name": "A", "nu": 1e11, "d": 1.0, "chi": 0.0, "volume": 1e-9}]))
    code, out, _ = run(["table", "--db", str(db)], capsys)
    assert code == 0
    _, rows = parse(out)
    assert float(rows[0]["chiral_shift"]) == 0.0
    assert rows[0]["resolving_power"] == "inf"


def test_table_bad_db_exit_code(tmp_path, capsys):
    db = tmp_path / "bad.json"
    db.write_text('[{"name": "A", "nu": 1e11, "d": 1.0, "chi": 2}]')
    code, _, err = run(["table", "--db", str(db)], capsys)
    assert code == 3
    assert "A" in err


def test_spectrum_uncoupled_single(capsys):
    code, out, _ = run(["spectrum", "--scenario", "single", "--detuning", "3.0", "--g-max", "1.0",
                        "--points", "5"], capsys)
    assert code == 0
    _, rows = parse(out)
    assert len(rows) == 5
    assert float(rows[0]["E1_over_hbar_rads"]) - float(rows[0]["E2_over_hbar_rads"]) == pytest.approx(3.0)
    assert all(r["E3_over_hbar_rads"] == "" for r in rows)


def test_spectrum_degenerate_overlays_scaled_single(capsys):
    args = ["--detuning", "0.5", "--points", "11"]
    _, deg, _ = run(["spectrum", "--scenario", "degenerate", "--g-max", "1.0", *args], capsys)
    _, single, _ = run(["spectrum", "--scenario", "single", "--g-max", str(math.sqrt(2)), *args], capsys)
    _, d_rows = parse(deg)
    _, s_rows = parse(single)
    np.testing.assert_allclose(col(d_rows, "E1_over_hbar_rads"), col(s_rows, "E1_over_hbar_rads"), rtol=1e-11)
    np.testing.assert_allclose(col(d_rows, "E2_over_hbar_rads"), col(s_rows, "E2_over_hbar_rads"), rtol=1e-11)


def test_spectrum_imperfect(capsys):
    code, out, _ = run(["spectrum", "--scenario", "imperfect", "--g-max", "2.0", "--points", "3",
                        "--delta-ratio", "0.4"], capsys)
    assert code == 0
    header, rows = parse(out)
    assert "# delta_ratio = 4.00000000000e-01" in header
    g = col(rows, "g_rads")
    split = col(rows, "E1_over_hbar_rads") - col(rows, "E2_over_hbar_rads")
    np.testing.assert_allclose(split, 2 * g * math.sqrt(1 + 0.4**2), rtol=1e-11)
    np.testing.assert_allclose(col(rows, "E3_over_hbar_rads"), 0.0, atol=1e-12)


def test_spectrum_near_degenerate_parity(capsys):
    base = ["spectrum", "--scenario", "near_degenerate", "--g-max", "1.0", "--points", "4", "--detuning", "0.3"]
    _, plus, _ = run([*base, "--chi", "0.2"], capsys)
    _, minus, _ = run([*base, "--chi", "-0.2"], capsys)
    assert parse(plus)[1] == parse(minus)[1]


def test_spectrum_invalid_scenario(capsys):
    code, _, err = run(["spectrum", "--scenario", "bogus", "--g-max", "1"], capsys)
    assert code == 2
    assert "near_degenerate" in err


def test_spectrum_function_invalid_scenario():
    with pytest.raises(cli.UsageError, match="single"):
        cli.cmd_spectrum("bogus")


@pytest.mark.parametrize("argv", [
    ["spectrum", "--scenario", "single", "--g-max", "1", "--points", "1"],
    ["spectrum", "--scenario", "single", "--g-max", "-1"],
])
def test_spectrum_bad_grid(argv, capsys):
    assert run(argv, capsys)[0] == 2


def test_spectrum_degenerate_requires_achiral(capsys):
    code, _, _ = run(["spectrum", "--scenario", "degenerate", "--g-max", "1", "--chi", "0.1"], capsys)
    assert code == 3


def test_force_zeros_and_fd(capsys):
    code, out, _ = run(["force", "--molecule", "PO", "--detuning", "1e3", "--points", "201"], capsys)
    assert code == 0
    _, rows = parse(out)
    kz = col(rows, "kz_rad")
    f = col(rows, "F_z_newton")
    fd = col(rows, "F_z_fd_newton")
    assert f[0] == 0.0
    assert f[50] == 0.0  # kz = pi/2
    assert kz[50] == pytest.approx(math.pi / 2)
    assert np.max(np.abs(f - fd)) / np.max(np.abs(f)) <= 1e-6


def test_force_zero_detuning_formula(capsys):
    code, out, _ = run(["force", "--molecule", "PO", "--points", "200", "--state", "1"], capsys)
    assert code == 0
    _, rows = parse(out)
    z, kz, f = col(rows, "z_m"), col(rows, "kz_rad"), col(rows, "F_z_newton")
    omega = 2 * math.pi * 1e11
    mol = ChiralMolecule(omega, 1.72 * DEBYE, 0.01, orientation="fixed_x")
    mode = CavityMode(omega, Handedness.RIGHT, 3.4e-9)
    expected = zero_detuning_force(mol, mode, z)
    # z is re-read from 12 printed digits, so compare on the profile scale
    tol = 1e-10 * np.max(np.abs(expected))
    mask = np.cos(kz) > 1e-3
    np.testing.assert_allclose(f[mask], expected[mask], rtol=0, atol=tol)
    # on the other half the sign of the resonant force flips
    mask = np.cos(kz) < -1e-3
    np.testing.assert_allclose(f[mask], -expected[mask], rtol=0, atol=tol)


def test_force_inline_molecule(capsys):
    code, out, _ = run(["force", "--molecule", "nu=2e11,d=1.0,chi=0.0,volume=1e-9", "--points", "10"], capsys)
    assert code == 0
    header, _ = parse(out)
    assert "# molecule = inline" in header


@pytest.mark.parametrize("selector, code", [("nu=1e11", 2), ("nu=1e11,d=1,q=2", 2), ("XYZ", 3)])
def test_force_bad_molecule(selector, code, capsys):
    assert run(["force", "--molecule", selector], capsys)[0] == code


def test_fields(capsys):
    code, out, _ = run(["fields", "--nu", "1e11", "--volume", "3.4e-9", "--points", "21"], capsys)
    assert code == 0
    _, rows = parse(out)
    t = col(rows, "t_frac")
    assert len(rows) == 4 * 21
    ex, ey, bx, by = (col(rows, c) for c in ("Ex", "Ey", "Bx", "By"))
    assert np.all(ex[t == 0] == 0) and np.all(ey[t == 0] == 0)
    assert np.all(bx[t == 0.25] == 0) and np.all(by[t == 0.25] == 0)
    mag = np.hypot(ex[t == 0.25], ey[t == 0.25])
    np.testing.assert_allclose(mag, 1.0, rtol=1e-11)  # 12 printed digits


def test_fields_handedness_flip(capsys):
    base = ["fields", "--nu", "1e11", "--volume", "3.4e-9", "--points", "9", "--times", "0.25,0.6"]
    _, right, _ = run([*base, "--handedness", "right"], capsys)
    _, left, _ = run([*base, "--handedness", "left"], capsys)
    r, l_ = parse(right)[1], parse(left)[1]
    np.testing.assert_array_equal(col(r, "Ey"), -col(l_, "Ey"))
    np.testing.assert_array_equal(col(r, "Ex"), col(l_, "Ex"))


def test_output_file(tmp_path, capsys):
    path = tmp_path / "t.csv"
    assert cli.main(["table", "-o", str(path)]) == 0
    assert capsys.readouterr().out == ""
    assert path.read_bytes().startswith(b"# ccqed table\n")
