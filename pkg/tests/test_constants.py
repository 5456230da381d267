import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ccqed import constants as k
from ccqed.constants import (
    CONSTANTS,
    FREQUENCY_UNITS,
    DipoleMoment,
    convert_frequency,
    debye_to_si,
    minimal_mode_volume,
    oscillator_strength_to_dipole,
)
from ccqed.errors import DomainError


def test_constants_match_codata():
    sc = pytest.importorskip("scipy.constants")
    assert k.HBAR == pytest.approx(sc.hbar, rel=1e-9)
    assert k.EPS0 == pytest.approx(sc.epsilon_0, rel=1e-9)
    assert k.C == sc.c
    assert k.E_CHARGE == sc.e
    assert k.M_ELECTRON == pytest.approx(sc.m_e, rel=1e-9)
    assert k.AVOGADRO == sc.N_A
    assert k.DEBYE == pytest.approx(1e-21 / sc.c, rel=1e-12)


def test_constants_positive():
    for name in ("hbar", "eps0", "c", "e_charge", "m_electron", "debye", "avogadro"):
        assert getattr(CONSTANTS, name) > 0


def test_hz_to_omega():
    assert convert_frequency(1.0e11, "Hz").omega == pytest.approx(6.2832e11, rel=1e-4)


def test_ev_fenchone_transition():
    f = convert_frequency(7.32, "eV")
    assert f.omega == pytest.approx(1.112e16, rel=1e-3)
    # tabulated as 1.8e15 Hz
    assert f.hz == pytest.approx(1.77e15, rel=2e-3)


def test_wavenumber_ch_stretch():
    # nu = c * sigma, sigma = 3001 cm^-1 = 300100 m^-1
    assert convert_frequency(3001, "cm-1").hz == pytest.approx(299792458.0 * 300100, rel=1e-14)
    assert convert_frequency(3001, "cm⁻¹").hz == pytest.approx(9.0e13, rel=1e-3)


def test_wavelength():
    assert convert_frequency(1e-6, "m").omega == pytest.approx(2 * math.pi * k.C / 1e-6, rel=1e-15)


@pytest.mark.parametrize("value", [0.0, -1.0])
def test_nonpositive_frequency_rejected(value):
    with pytest.raises(DomainError):
        convert_frequency(value, "Hz")


def test_unknown_unit():
    with pytest.raises(DomainError):
        convert_frequency(1.0, "furlongs")


@given(
    st.floats(min_value=1e-3, max_value=1e20, allow_nan=False),
    st.sampled_from(FREQUENCY_UNITS),
)
def test_round_trip(value, unit):
    back = convert_frequency(value, unit).to(unit)
    assert back == pytest.approx(value, rel=1e-12)


@pytest.mark.parametrize("unit", ["Hz", "rad_s", "cm-1", "eV"])
def test_monotone_increasing(unit):
    xs = np.logspace(-2, 10, 50)
    omegas = [convert_frequency(x, unit).omega for x in xs]
    assert np.all(np.diff(omegas) > 0)


def test_wavelength_monotone_decreasing():
    xs = np.logspace(-9, -1, 50)
    omegas = [convert_frequency(x, "m").omega for x in xs]
    assert np.all(np.diff(omegas) < 0)


@pytest.mark.parametrize(
    "debye, expected",
    [(1.72, 1.72 * 3.33564095198152e-30), (0.77, 0.77 * 3.33564095198152e-30), (0.0, 0.0)],
)
def test_debye_to_si(debye, expected):
    assert debye_to_si(debye).magnitude == pytest.approx(expected, rel=1e-12, abs=0)


def test_debye_examples_rounded():
    assert debye_to_si(1.72).magnitude == pytest.approx(5.737e-30, rel=1e-4)
    assert debye_to_si(0.77).magnitude == pytest.approx(2.568e-30, rel=1e-4)


def test_negative_debye_rejected():
    with pytest.raises(DomainError):
        debye_to_si(-0.1)


def test_dipole_components_norm():
    d = DipoleMoment.from_vector([3.0, 4.0, 0.0])
    assert d.magnitude == 5.0
    with pytest.raises(DomainError):
        DipoleMoment(1.0, (1.0, 1.0, 0.0))


def test_oscillator_strength_fenchone():
    d = oscillator_strength_to_dipole(0.0164, 1.112e16)
    assert d.debye == pytest.approx(0.77, rel=0.02)


def test_oscillator_strength_sqrt_scaling():
    d1 = oscillator_strength_to_dipole(0.0164, 1.112e16)
    d4 = oscillator_strength_to_dipole(4 * 0.0164, 1.112e16)
    assert d4.magnitude == pytest.approx(2 * d1.magnitude, rel=1e-14)


def test_oscillator_strength_vanishing():
    assert oscillator_strength_to_dipole(1e-300, 1e16).magnitude < 1e-150


@pytest.mark.parametrize("f, w", [(0.0, 1e16), (-1.0, 1e16), (0.1, 0.0)])
def test_oscillator_strength_domain(f, w):
    with pytest.raises(DomainError):
        oscillator_strength_to_dipole(f, w)


@given(
    st.floats(min_value=1e-6, max_value=10.0),
    st.floats(min_value=1e10, max_value=1e17),
    st.floats(min_value=1.5, max_value=10.0),
)
def test_oscillator_strength_scaling_laws(f, w, factor):
    base = oscillator_strength_to_dipole(f, w).magnitude ** 2
    assert oscillator_strength_to_dipole(f * factor, w).magnitude ** 2 == pytest.approx(base * factor, rel=1e-12)
    assert oscillator_strength_to_dipole(f, w * factor).magnitude ** 2 == pytest.approx(base / factor, rel=1e-12)


def test_minimal_mode_volume_examples():
    assert minimal_mode_volume(2 * math.pi * 1.0e11) == pytest.approx(3.4e-9, rel=0.02)
    assert minimal_mode_volume(2 * math.pi * 1.8e15) == pytest.approx(6e-22, rel=0.05)


def test_minimal_mode_volume_cubic():
    w = 1.234e14
    assert minimal_mode_volume(2 * w) == pytest.approx(minimal_mode_volume(w) / 8, rel=1e-14)


def test_minimal_mode_volume_monotone():
    ws = np.logspace(9, 17, 40)
    assert np.all(np.diff([minimal_mode_volume(w) for w in ws]) < 0)
