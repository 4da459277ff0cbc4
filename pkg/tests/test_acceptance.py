"""End-to-end acceptance suite.

Each test checks one headline property of the artifact: oracle
equivalence, regression against the published charging-time table,
figure-level curve shapes, adiabatic-limit behavior, unitarity, RWA
validity, the readout pipeline and unit conversions. Frozen reference
numbers come from independent closed-form evaluations.
"""

import functools
import math
import time

import numpy as np
import pytest

import qbattery as qb
from qbattery import analytic
from qbattery.device import (
    LevelSpectrum,
    energy_to_physical,
    physical_to_energy,
    transmon_spectrum,
    TransmonParams,
)
from qbattery.hamiltonian import (
    ProtocolKind,
    qubit_protocol,
    sequential_protocol,
    simultaneous_protocol,
    adiabatic_protocol,
)
from qbattery.integrator import evolve
from qbattery.observables import (
    REPORTED_TABLE1,
    charging_time_analytic,
    sweep_final_energy,
    table1,
)
from qbattery.readout import (
    classifier_from_model,
    end_to_end_sweep,
    noiseless_model,
    realistic_model,
)

SPECTRUM = transmon_spectrum(TransmonParams(0.25, 12.5))


@functools.lru_cache(maxsize=None)
def _oracle_runs():
    """Integrate the three pi-pulse protocols at h = sigma/32.

    Returns {name: (max pointwise population error vs closed form,
    norm drift, wall time)} for reuse by the unitarity check.
    """
    out = {}
    for name, spec in (
        ("qubit", qubit_protocol(SPECTRUM, 1.0)),
        ("sequential", sequential_protocol(SPECTRUM, 1.0)),
        ("simultaneous", simultaneous_protocol(SPECTRUM, 1.0)),
    ):
        start = time.perf_counter()
        traj = evolve(spec, h=spec.sigma_min / 32.0)
        exact = np.array(
            [analytic.analytic_state(spec, t).populations() for t in traj.times]
        )
        err = float(np.max(np.abs(traj.populations() - exact)))
        out[name] = (err, traj.norm_drift, time.perf_counter() - start)
    return out


@functools.lru_cache(maxsize=None)
def _adiabatic_limit_runs():
    """Integrate the average-frequency protocol at adiabaticity 10, 3, 1.

    The level spacing is padded so the spectrum stays ordered even when
    the half-anharmonicity equals the peak coupling. Returns a list of
    (max energy error / full scale, norm drift) per adiabaticity ratio.
    """
    g, big_theta, sigma_ratio = 1.0, math.pi, 0.25
    peak = math.sqrt(2.0) * big_theta / (g * sigma_ratio * math.sqrt(2.0 * math.pi))
    out = []
    for ratio in (10.0, 3.0, 1.0):
        delta = g * peak / ratio
        d1 = 2.0 * delta + 10.0
        sp = LevelSpectrum((0.0, d1, 2.0 * d1 - 2.0 * delta), delta_small=delta)
        spec = adiabatic_protocol(sp, g, big_theta, 1.0, sigma_ratio, calibrated=True)
        traj = evolve(spec)
        energy = traj.populations() @ np.array([0.0, sp.delta, sp.delta_max])
        err = np.max(np.abs(energy - analytic.adiabatic_energy(traj.times, spec)))
        out.append((float(err) / sp.delta_max, traj.norm_drift))
    return out


def test_integrator_matches_closed_forms():
    # pi-pulse charging curves: numeric vs analytic populations, pointwise
    runs = _oracle_runs()
    for name, (err, _, elapsed) in runs.items():
        assert err <= 1e-6, f"{name}: max population error {err:.3e}"
        assert elapsed < 1.0, f"{name}: took {elapsed:.2f} s"


def test_charging_time_table_ordering():
    rows = table1(SPECTRUM)
    tc = [r.recomputed_tc for r in rows]
    # t_c grows with the threshold at fixed initial state
    assert tc[0] < tc[1] < tc[2]
    # t_c grows as the initial state gets less pure (a: 1.0 -> 0.98 -> 0.96)
    assert tc[1] < tc[3] < tc[5]
    # a relative phase of pi/4 slows charging at fixed impurity
    assert tc[3] < tc[4]
    assert tc[5] < tc[6]


def test_charging_time_table_offsets():
    # the recomputed t_c/t_m column carries a systematic positive offset
    # of 0.03-0.07 against the published values; rows 3, 5, 6 and 7
    # exceed the 0.05 window, so this check fails and is kept as an
    # honest record of the discrepancy
    rows = table1(SPECTRUM)
    for row, (_, _, _, reported) in zip(rows, REPORTED_TABLE1):
        assert abs(row.recomputed_tc - reported) <= 0.05, (
            f"a={row.a}, phi={row.phi:.4f}, thr={row.threshold}: "
            f"recomputed {row.recomputed_tc:.4f} vs reported {reported}"
        )


def test_qubit_sweep_is_sin_squared():
    start = time.perf_counter()
    grid = np.linspace(0.0, math.pi, 65)
    expected = np.sin(grid / 2.0) ** 2
    res_a = sweep_final_energy(SPECTRUM, ProtocolKind.QUBIT_RESONANT, grid, 1.0)
    assert np.max(np.abs(res_a.energy / SPECTRUM.delta - expected)) <= 1e-9
    res_n = sweep_final_energy(
        SPECTRUM, ProtocolKind.QUBIT_RESONANT, grid, 1.0, engine="numeric"
    )
    assert np.max(np.abs(res_n.energy / SPECTRUM.delta - expected)) <= 1e-6
    # the curve depends only on the pulse area, not on its width
    curves = [
        sweep_final_energy(
            SPECTRUM, ProtocolKind.QUBIT_RESONANT, grid, 1.0,
            engine="numeric", sigma_ratio=r,
        ).energy
        for r in (1 / 8, 1 / 12, 1 / 16)
    ]
    for other in curves[1:]:
        assert np.max(np.abs(curves[0] - other)) <= 1e-4
    assert time.perf_counter() - start < 5.0


def test_sequential_sweep_piecewise_form():
    grid = np.linspace(0.0, 2.0 * math.pi, 65)
    res = sweep_final_energy(SPECTRUM, ProtocolKind.SEQUENTIAL, grid, 1.0)
    expected = analytic.sequential_energy_vs_phase(grid, SPECTRUM)
    assert np.max(np.abs(res.energy - expected)) <= 1e-12
    assert res.energy[-1] == pytest.approx(SPECTRUM.delta_max, rel=1e-12)
    # the two branches join continuously at the single-pulse boundary
    eps = 1e-13
    jump = abs(
        analytic.sequential_energy_vs_phase(math.pi + eps, SPECTRUM)
        - analytic.sequential_energy_vs_phase(math.pi - eps, SPECTRUM)
    )
    assert jump <= 1e-12


def test_simultaneous_charges_faster_than_sequential():
    tc_seq = charging_time_analytic(sequential_protocol(SPECTRUM, 1.0), 0.95)
    tc_sim = charging_time_analytic(simultaneous_protocol(SPECTRUM, 1.0), 0.95)
    assert tc_sim < tc_seq
    # reference ratio 0.633/0.82 from the published charging times
    assert tc_sim / tc_seq == pytest.approx(0.633 / 0.82, abs=0.02)


def test_adiabatic_limit_and_breakdown():
    start = time.perf_counter()
    # zero anharmonicity: the average-frequency form reduces exactly to
    # the simultaneous one
    sp0 = LevelSpectrum((0.0, 5.0, 10.0), delta_small=0.0)
    rng = np.random.default_rng(2)
    for theta_m, t in rng.uniform([0.01, 0.01], [2.0 * math.pi, 1.0], (1000, 2)):
        spec0 = adiabatic_protocol(sp0, 1.0, big_theta_m=theta_m)
        e_sim = analytic.simultaneous_energy(
            analytic.simultaneous_big_theta(spec0, t), sp0
        )
        assert abs(analytic.adiabatic_energy(t, spec0) - e_sim) <= 1e-12
    # finite anharmonicity: accurate when adiabatic, degrading monotonically
    errors = [err for err, _ in _adiabatic_limit_runs()]
    assert errors[0] <= 5e-2
    assert errors[0] < errors[1] < errors[2]
    assert time.perf_counter() - start < 10.0


def test_unitarity_of_all_integrations():
    drifts = [drift for _, drift, _ in _oracle_runs().values()]
    drifts += [drift for _, drift in _adiabatic_limit_runs()]
    assert max(drifts) <= 1e-9


def test_rwa_valid_at_weak_coupling():
    start = time.perf_counter()
    sp = LevelSpectrum((0.0, 1.0))
    # peak drive over level spacing = 0.02
    sigma = math.pi / (0.02 * math.sqrt(2.0 * math.pi))
    spec = qubit_protocol(sp, 1.0, math.pi, 8.0 * sigma, 0.125)
    rot = evolve(spec, frame="rotating")
    period = 2.0 * math.pi / spec.omega_max
    lab = evolve(spec, frame="lab", h=period / 80.0)
    diff = np.max(np.abs(rot.final_state.populations() - lab.final_state.populations()))
    assert diff < 1e-2
    assert time.perf_counter() - start < 30.0


def test_readout_pipeline_recovers_energy():
    grid = np.linspace(0.0, math.pi, 33)
    exact = np.array([analytic.simultaneous_energy(e, SPECTRUM) for e in grid])
    clean = end_to_end_sweep(
        SPECTRUM, ProtocolKind.SIMULTANEOUS, grid, 1.0, 100000, noiseless_model(), seed=0
    )
    assert np.max(np.abs(clean.energy - exact)) <= 1e-2 * SPECTRUM.delta_max
    # confusable clusters depress the recovered peak to the low 90s
    noisy = end_to_end_sweep(
        SPECTRUM, ProtocolKind.SIMULTANEOUS, grid, 1.0, 100000, realistic_model(), seed=3
    )
    peak = noisy.energy.max() / SPECTRUM.delta_max
    assert 0.90 <= peak <= 0.94
    again = end_to_end_sweep(
        SPECTRUM, ProtocolKind.SIMULTANEOUS, grid, 1.0, 100000, realistic_model(), seed=3
    )
    assert np.array_equal(noisy.energy, again.energy)


def test_energy_unit_round_trip():
    rng = np.random.default_rng(5)
    for value in np.concatenate(([SPECTRUM.delta, SPECTRUM.delta_max], rng.uniform(1e-3, 1e3, 50))):
        back = physical_to_energy(energy_to_physical(value))
        assert abs(back - value) <= 1e-12 * value
