import math

import numpy as np
import pytest

from qbattery import analytic
from qbattery.device import LevelSpectrum, spectrum_from_frequencies
from qbattery.errors import ParameterError, ProtocolError
from qbattery.hamiltonian import adiabatic_protocol, sequential_protocol, simultaneous_protocol
from qbattery.pulses import TRUNCATED_AREA_FRACTION


def test_qubit_energy_examples(spectrum):
    d = spectrum.delta
    assert analytic.qubit_energy(1.0, 0.0, math.pi, spectrum) == pytest.approx(d, rel=1e-14)
    assert analytic.qubit_energy(1.0, 0.0, math.pi / 2, spectrum) == pytest.approx(d / 2, rel=1e-14)
    # a=1/2, phi=pi/2, theta=pi/2: 0.25 + 0.5 + 0.25
    assert analytic.qubit_energy(0.5, math.pi / 2, math.pi / 2, spectrum) == pytest.approx(
        d, rel=1e-14
    )
    with pytest.raises(ParameterError):
        analytic.qubit_energy(1.2, 0.0, math.pi, spectrum)


def test_qubit_energy_phi_symmetry_at_pure_a(spectrum):
    for a in (0.0, 1.0):
        for theta in (0.3, 1.7):
            assert analytic.qubit_energy(a, 0.4, theta, spectrum) == pytest.approx(
                analytic.qubit_energy(a, math.pi - 0.4, theta, spectrum), rel=1e-14
            )


def test_qubit_evolved_energy_matches_state(spectrum):
    # the propagated-state energy carries -sin(phi) in the cross term
    rng = np.random.default_rng(3)
    for a, phi, theta in rng.uniform(0.0, 1.0, (30, 3)) * [1.0, 2 * math.pi, 2 * math.pi]:
        state = analytic.qubit_state(a, phi, theta)
        from_state = spectrum.delta * state.population(1)
        assert analytic.qubit_energy_evolved(a, phi, theta, spectrum) == pytest.approx(
            from_state, abs=1e-12
        )


def test_sequential_energy_vs_phase(spectrum):
    d, dmax = spectrum.delta, spectrum.delta_max
    assert analytic.sequential_energy_vs_phase(math.pi, spectrum) == pytest.approx(d, rel=1e-14)
    assert analytic.sequential_energy_vs_phase(2 * math.pi, spectrum) == pytest.approx(
        dmax, rel=1e-14
    )
    assert analytic.sequential_energy_vs_phase(math.pi / 2, spectrum) == pytest.approx(
        d / 2, rel=1e-14
    )
    with pytest.raises(ParameterError):
        analytic.sequential_energy_vs_phase(-0.1, spectrum)


def test_sequential_phase_curve_monotone_halves(spectrum):
    lo = analytic.sequential_energy_vs_phase(np.linspace(0, math.pi, 101), spectrum)
    hi = analytic.sequential_energy_vs_phase(np.linspace(math.pi, 2 * math.pi, 101), spectrum)
    assert np.all(np.diff(lo) >= 0)
    assert np.all(np.diff(hi) >= 0)


def test_sequential_energy_vs_time(spectrum):
    spec = sequential_protocol(spectrum, 1.0)
    assert analytic.sequential_energy_vs_time(0.0, spec) == 0.0
    # center of pulse 1: theta_1 = (pi/2) * truncated fraction
    mid = analytic.sequential_energy_vs_time(0.25, spec)
    assert mid == pytest.approx(spectrum.delta / 2, rel=1e-4)
    end = analytic.sequential_energy_vs_time(1.0, spec)
    assert spectrum.delta_max * (1.0 - 1e-4) < end <= spectrum.delta_max


def test_sequential_state_composition(spectrum):
    spec = sequential_protocol(spectrum, 1.0)
    state = analytic.sequential_state(1.0, spec)
    # nearly full two-step transfer to |2> (truncation residue only)
    assert state.population(2) == pytest.approx(1.0, abs=1e-7)
    with pytest.raises(ProtocolError):
        analytic.sequential_state(0.5, simultaneous_protocol(spectrum, 1.0))


def test_simultaneous_state_examples():
    assert analytic.simultaneous_state(0.0).populations() == pytest.approx([1.0, 0.0, 0.0])
    assert analytic.simultaneous_state(math.pi).populations() == pytest.approx(
        [0.0, 0.0, 1.0], abs=1e-15
    )
    pops = analytic.simultaneous_state(math.pi / 2).populations()
    assert pops == pytest.approx([0.25, 0.5, 0.25], rel=1e-14)


def test_simultaneous_energy_examples(spectrum):
    assert analytic.simultaneous_energy(math.pi, spectrum) == pytest.approx(
        spectrum.delta_max, rel=1e-14
    )
    assert analytic.simultaneous_energy(math.pi / 2, spectrum) == pytest.approx(
        spectrum.delta / 2 + spectrum.delta_max / 4, rel=1e-14
    )


def test_simultaneous_energy_population_identity(spectrum):
    rng = np.random.default_rng(7)
    for theta in rng.uniform(0.0, 2 * math.pi, 100):
        state = analytic.simultaneous_state(theta)
        from_pops = spectrum.delta * state.population(1) + spectrum.delta_max * state.population(2)
        assert analytic.simultaneous_energy(theta, spectrum) == pytest.approx(from_pops, abs=1e-12)


def test_simultaneous_big_theta_scaling(spectrum):
    spec = simultaneous_protocol(spectrum, 1.0, big_theta_m=math.pi)
    assert analytic.simultaneous_big_theta(spec, 1.0) == pytest.approx(
        math.pi * TRUNCATED_AREA_FRACTION, rel=1e-12
    )


def test_adiabatic_state_initial_and_delta_zero():
    sp0 = spectrum_from_frequencies(1.0, 2.0)  # delta = 0
    spec = adiabatic_protocol(sp0, 1.0)
    assert analytic.adiabatic_state(0.0, spec).populations() == pytest.approx([1.0, 0.0, 0.0])
    for t in (0.3, 0.62, 1.0):
        theta = analytic.simultaneous_big_theta(spec, t)
        assert analytic.adiabatic_state(t, spec).amplitudes == pytest.approx(
            analytic.simultaneous_state(theta).amplitudes, abs=1e-14
        )


def test_adiabatic_full_transfer_at_two_pi_phase():
    # delta*t/2 = 2 pi restores the dressed phases; Theta = pi then gives |2>
    t_m = 1.0
    delta = 4.0 * math.pi / t_m
    d1 = 2.0 * delta + 10.0
    sp = LevelSpectrum((0.0, d1, 2 * d1 - 2 * delta), delta_small=delta)
    spec = adiabatic_protocol(sp, 1.0, big_theta_m=math.pi, t_m=t_m, calibrated=True)
    state = analytic.adiabatic_state(t_m, spec)
    assert state.population(2) == pytest.approx(1.0, abs=1e-12)


def test_adiabatic_energy_forms(spectrum):
    spec = adiabatic_protocol(spectrum, 1.0)
    # before the pulse: Theta = 0 gives (Dmax/4)(2 - 2 cos(delta t/2)) >= 0
    t0 = 1e-6
    expected = 0.25 * spectrum.delta_max * (2 - 2 * math.cos(spectrum.delta_small * t0 / 2))
    assert analytic.adiabatic_energy(t0, spec) == pytest.approx(expected, abs=1e-12)
    assert analytic.adiabatic_energy(t0, spec) >= 0.0


def test_adiabatic_requires_ground_initial(spectrum):
    spec = simultaneous_protocol(spectrum, 1.0)
    with pytest.raises(ProtocolError):
        analytic.adiabatic_state(0.5, spec)


def test_dressed_basis_unitary():
    u = analytic.DRESSED_BASIS
    assert np.max(np.abs(u @ u.conj().T - np.eye(3))) <= 1e-14


def test_eigen_frame_berry_phases():
    frame = analytic.EigenFrame(analytic.DRESSED_BASIS, delta_small=0.125, t=2.0)
    assert frame.berry_phase("B") == 0.0
    assert frame.berry_phase("+") == pytest.approx(-0.125)
    assert frame.berry_phase("-") == pytest.approx(-0.125)
    assert frame.dressed_initial == pytest.approx([0.5, 0.5, 1 / math.sqrt(2)])
    with pytest.raises(ParameterError):
        frame.berry_phase("x")


def test_analytic_states_unit_norm(spectrum):
    rng = np.random.default_rng(11)
    for theta in rng.uniform(0.0, 2 * math.pi, 20):
        assert np.linalg.norm(analytic.simultaneous_state(theta).amplitudes) == pytest.approx(1.0)
        assert np.linalg.norm(analytic.qubit_state(0.7, 0.3, theta).amplitudes) == pytest.approx(
            1.0
        )
