import math

import pytest

from qbattery.device import (
    HBAR_UEV_NS,
    LevelSpectrum,
    TransmonParams,
    energy_to_physical,
    physical_to_energy,
    spectrum_from_frequencies,
    transmon_spectrum,
)
from qbattery.errors import ParameterError, TransmonRegimeError


def test_reference_device(spectrum):
    assert spectrum.omega == (0.0, 4.75, 9.25)
    assert spectrum.delta == 4.75
    assert spectrum.delta_prime == 4.5
    assert spectrum.delta_max == 9.25
    assert spectrum.delta_small == 0.125


def test_plasma_frequency():
    assert TransmonParams(0.25, 12.5).plasma_frequency == pytest.approx(5.0, rel=1e-15)


def test_delta_max_identity():
    # Delta_max = 2 omega_P - 3 E_C
    for e_c, e_j in [(0.25, 12.5), (0.1, 30.0), (0.5, 11.0)]:
        params = TransmonParams(e_c, e_j)
        sp = transmon_spectrum(params)
        assert sp.delta_max == pytest.approx(2.0 * params.plasma_frequency - 3.0 * e_c, rel=1e-14)


def test_delta_small_is_half_ec_exactly():
    sp = transmon_spectrum(TransmonParams(0.3, 9.0))
    assert sp.delta_small == 0.3 / 2.0  # stored directly, not via subtraction
    assert sp.delta_small == pytest.approx((sp.delta - sp.delta_prime) / 2.0, rel=1e-12)


def test_harmonic_limit():
    sp = spectrum_from_frequencies(1.0, 2.0)
    assert sp.delta == sp.delta_prime == 1.0
    assert sp.delta_small == 0.0


def test_spectrum_from_frequencies():
    sp = spectrum_from_frequencies(4.75, 9.25)
    assert sp.delta_max == 9.25
    assert sp.delta_small == pytest.approx(0.125)
    sp = spectrum_from_frequencies(1.0, 1.5)
    assert (sp.delta, sp.delta_prime, sp.delta_max) == (1.0, 0.5, 1.5)


def test_frequency_ordering_guard():
    with pytest.raises(ParameterError):
        spectrum_from_frequencies(2.0, 2.0)
    with pytest.raises(ParameterError):
        spectrum_from_frequencies(-1.0, 2.0)


def test_transmon_regime_guard():
    with pytest.raises(TransmonRegimeError):
        TransmonParams(1.0, 10.0)
    with pytest.raises(ParameterError):
        TransmonParams(-0.25, 12.5)


def test_monotone_in_ej():
    lo = transmon_spectrum(TransmonParams(0.25, 10.0))
    hi = transmon_spectrum(TransmonParams(0.25, 20.0))
    assert hi.delta > lo.delta
    assert hi.delta_prime > lo.delta_prime


def test_two_level_spectrum():
    sp = transmon_spectrum(TransmonParams(0.25, 12.5), n_levels=2)
    assert sp.n_levels == 2
    assert sp.delta_max == sp.delta
    with pytest.raises(ParameterError):
        sp.delta_prime
    with pytest.raises(ParameterError):
        transmon_spectrum(TransmonParams(0.25, 12.5), n_levels=4)


def test_unit_roundtrip():
    # rad/ns -> ueV -> rad/ns exact to 1e-12 relative
    for value in (1.0, 9.25, 59.557, 1e-3):
        back = physical_to_energy(energy_to_physical(value))
        assert abs(back - value) / value <= 1e-12


def test_uev_scale_consistency():
    # Delta_max ~ 39.2 ueV corresponds to about 2 pi * 9.48 GHz
    omega = physical_to_energy(39.2)
    assert omega / (2.0 * math.pi) == pytest.approx(9.48, rel=2e-3)
    assert energy_to_physical(1.0) == HBAR_UEV_NS


def test_negative_energy_guard():
    with pytest.raises(ParameterError):
        energy_to_physical(-1.0)
    with pytest.raises(ParameterError):
        physical_to_energy(-1.0)


def test_level_ordering_guard():
    with pytest.raises(ParameterError):
        LevelSpectrum((0.0, 2.0, 1.0))
    with pytest.raises(ParameterError):
        LevelSpectrum((0.0,))
