"""Closed-form states and stored energies for the four charging protocols.

These expressions are exact for the resonant protocols with disjoint
pulses and serve as oracles for the numerical integrator. The
average-frequency protocol is solved in the adiabatic approximation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .device import LevelSpectrum
from .errors import ParameterError, ProtocolError
from .hamiltonian import ProtocolKind, ProtocolSpec
from .pulses import accumulated_phase
from .state import StateVector

SQRT2 = math.sqrt(2.0)


# ---------------------------------------------------------------------------
# two-level battery

def qubit_state(a: float, phi: float, theta: float) -> StateVector:
    """Rotating-frame state after accumulating phase theta.

    The initial state sqrt(a)|0> + sqrt(1-a) e^{i phi}|1> is rotated by
    exp(-i (theta/2) sigma_x) in the (c1, c0) spinor basis.
    """
    if not 0.0 <= a <= 1.0:
        raise ParameterError(f"a must lie in [0, 1], got {a}")
    c1_0 = math.sqrt(1.0 - a) * np.exp(1j * phi)
    c0_0 = math.sqrt(a)
    c, s = np.cos(theta / 2.0), np.sin(theta / 2.0)
    return StateVector(np.array([c * c1_0 - 1j * s * c0_0, c * c0_0 - 1j * s * c1_0]))


def qubit_energy(a: float, phi: float, theta: float, spectrum: LevelSpectrum) -> float:
    """Stored energy of the two-level battery at accumulated phase theta.

    Delta * [a sin^2(theta/2) + 2 sqrt(a(1-a)) sin(phi) sin(theta/2) cos(theta/2)
             + (1-a) cos^2(theta/2)]
    """
    if not 0.0 <= a <= 1.0:
        raise ParameterError(f"a must lie in [0, 1], got {a}")
    half = np.asarray(theta, dtype=float) / 2.0
    s, c = np.sin(half), np.cos(half)
    cross = 2.0 * math.sqrt(a * (1.0 - a)) * math.sin(phi) * s * c
    out = spectrum.delta * (a * s**2 + cross + (1.0 - a) * c**2)
    return out if np.ndim(out) else float(out)


def qubit_energy_evolved(a: float, phi: float, theta: float, spectrum: LevelSpectrum):
    """Stored energy Delta |c1(theta)|^2 of the propagated state.

    Differs from :func:`qubit_energy` only in the sign of the interference
    term: the propagated state carries -sin(phi), which is the convention
    under which the charging time grows with phi (see the charging-time
    tables). The two agree whenever a is 0 or 1 or sin(phi) = 0.
    """
    if not 0.0 <= a <= 1.0:
        raise ParameterError(f"a must lie in [0, 1], got {a}")
    half = np.asarray(theta, dtype=float) / 2.0
    s, c = np.sin(half), np.cos(half)
    cross = -2.0 * math.sqrt(a * (1.0 - a)) * math.sin(phi) * s * c
    out = spectrum.delta * (a * s**2 + cross + (1.0 - a) * c**2)
    return out if np.ndim(out) else float(out)


# ---------------------------------------------------------------------------
# sequential protocol

def sequential_energy_vs_phase(phi_m, spectrum: LevelSpectrum):
    """Final stored energy as a function of the combined pulse area phi_m.

    Delta sin^2(phi_m/2) on [0, pi], then Delta + Delta' sin^2((phi_m-pi)/2)
    on [pi, 2 pi]; continuous at pi.
    """
    phi_m = np.asarray(phi_m, dtype=float)
    if np.any(phi_m < 0.0) or np.any(phi_m > 2.0 * math.pi + 1e-12):
        raise ParameterError("phi_m must lie in [0, 2 pi]")
    first = spectrum.delta * np.sin(phi_m / 2.0) ** 2
    second = spectrum.delta + spectrum.delta_prime * np.sin((phi_m - math.pi) / 2.0) ** 2
    out = np.where(phi_m <= math.pi, first, second)
    return out if out.ndim else float(out)


def _sequential_phases(spec: ProtocolSpec, t):
    d01, d12 = spec.drive_on((0, 1)), spec.drive_on((1, 2))
    theta1 = accumulated_phase(d01.envelope, d01.g, t)
    theta2 = accumulated_phase(d12.envelope, d12.g, t)
    return theta1, theta2


def sequential_energy_vs_time(t, spec: ProtocolSpec):
    """Piecewise stored energy of the sequential protocol.

    Uses the perfect-handoff assumption: after the first pulse the system
    is taken to sit in |1>, so the second stage reads
    Delta + Delta' sin^2(theta_2(t)/2).
    """
    if spec.kind is not ProtocolKind.SEQUENTIAL:
        raise ProtocolError("sequential energy requires disjoint sequential pulses")
    theta1, theta2 = _sequential_phases(spec, t)
    first = spec.spectrum.delta * np.sin(theta1 / 2.0) ** 2
    second = spec.spectrum.delta + spec.spectrum.delta_prime * np.sin(theta2 / 2.0) ** 2
    out = np.where(np.asarray(theta2) > 0.0, second, first)
    return out if out.ndim else float(out)


def sequential_state(t, spec: ProtocolSpec) -> StateVector:
    """Exact state for disjoint sequential pulses (no handoff assumption).

    Composition of the 0-1 rotation by theta_1(t) and the 1-2 rotation by
    theta_2(t), which solves the piecewise ODE system exactly.
    """
    if spec.kind is not ProtocolKind.SEQUENTIAL:
        raise ProtocolError("sequential state requires disjoint sequential pulses")
    theta1, theta2 = _sequential_phases(spec, t)
    s1, c1 = math.sin(theta1 / 2.0), math.cos(theta1 / 2.0)
    s2, c2 = math.sin(theta2 / 2.0), math.cos(theta2 / 2.0)
    return StateVector(np.array([-s2 * s1, -1j * c2 * s1, c1], dtype=complex))


# ---------------------------------------------------------------------------
# simultaneous protocol

#: Unitary diagonalizing the equal-drive coupling pattern; columns span the
#: dressed (-, +, bright/dark) basis in the (c2, c1, c0) ordering.
DRESSED_BASIS = np.array(
    [
        [0.5, 0.5, -1.0 / SQRT2],
        [-1.0 / SQRT2, 1.0 / SQRT2, 0.0],
        [0.5, 0.5, 1.0 / SQRT2],
    ]
)


@dataclass(frozen=True)
class EigenFrame:
    """Dressed-basis picture of the equal-drive protocols at time t."""

    unitary: np.ndarray
    delta_small: float
    t: float

    @property
    def dressed_initial(self) -> np.ndarray:
        # ground state |0> expressed in the (c-, c+, c_B) basis
        return np.array([0.5, 0.5, 1.0 / SQRT2])

    def berry_phase(self, branch: str) -> float:
        """Geometric phase of the bright (B) or dressed (+/-) branches."""
        if branch == "B":
            return 0.0
        if branch in ("+", "-"):
            return -self.delta_small * self.t / 2.0
        raise ParameterError(f"unknown branch {branch!r}")


def simultaneous_state(big_theta: float) -> StateVector:
    """Qutrit state at accumulated phase Theta, starting from |0>."""
    ct, st = np.cos(big_theta), np.sin(big_theta)
    return StateVector(np.array([0.5 * (ct - 1.0), -1j * st / SQRT2, 0.5 * (ct + 1.0)]))


def simultaneous_energy(big_theta, spectrum: LevelSpectrum):
    """E = (Delta/2) sin^2(Theta) + (Delta_max/4) (1 - cos(Theta))^2."""
    big_theta = np.asarray(big_theta, dtype=float)
    out = 0.5 * spectrum.delta * np.sin(big_theta) ** 2 + 0.25 * spectrum.delta_max * (
        1.0 - np.cos(big_theta)
    ) ** 2
    return out if out.ndim else float(out)


def simultaneous_big_theta(spec: ProtocolSpec, t):
    """Theta(t) = (g / sqrt(2)) * integral of the shared envelope."""
    drive = spec.drives[0]
    return accumulated_phase(drive.envelope, drive.g, t) / SQRT2


# ---------------------------------------------------------------------------
# adiabatic (average-frequency) protocol

def adiabatic_state(t: float, spec: ProtocolSpec) -> StateVector:
    """Adiabatic-approximation state for the average-frequency drive from |0>."""
    if spec.kind is not ProtocolKind.ADIABATIC_AVERAGE:
        raise ProtocolError("adiabatic state is defined for the average-frequency protocol")
    if not np.isclose(spec.initial.population(0), 1.0, atol=1e-12):
        raise ProtocolError("the adiabatic closed form is derived for the |0> initial state only")
    big_theta = simultaneous_big_theta(spec, t)
    ph = np.exp(-0.5j * spec.spectrum.delta_small * t)
    ct, st = np.cos(big_theta), np.sin(big_theta)
    return StateVector(
        np.array([0.5 * (ct * ph - 1.0), -1j * st * np.conj(ph) / SQRT2, 0.5 * (ct * ph + 1.0)])
    )


def adiabatic_energy(t, spec: ProtocolSpec):
    """E ~ (Delta/2) sin^2(Theta) + (Delta_max/4) [1 - 2 cos(Theta) cos(delta t / 2) + cos^2(Theta)]."""
    if spec.kind is not ProtocolKind.ADIABATIC_AVERAGE:
        raise ProtocolError("adiabatic energy is defined for the average-frequency protocol")
    t = np.asarray(t, dtype=float)
    big_theta = simultaneous_big_theta(spec, t)
    ct = np.cos(big_theta)
    cd = np.cos(spec.spectrum.delta_small * t / 2.0)
    out = 0.5 * spec.spectrum.delta * np.sin(big_theta) ** 2 + 0.25 * spec.spectrum.delta_max * (
        1.0 - 2.0 * ct * cd + ct**2
    )
    return out if out.ndim else float(out)


# ---------------------------------------------------------------------------
# dispatch helpers used by the observables / sweep engines

def analytic_state(spec: ProtocolSpec, t: float) -> StateVector:
    """Closed-form rotating-frame state of the protocol at time t."""
    if spec.kind is ProtocolKind.QUBIT_RESONANT:
        drive = spec.drives[0]
        theta = accumulated_phase(drive.envelope, drive.g, t)
        return qubit_state(spec.a, spec.phi, theta)
    if spec.kind is ProtocolKind.SEQUENTIAL:
        return sequential_state(t, spec)
    if spec.kind is ProtocolKind.SIMULTANEOUS:
        return simultaneous_state(simultaneous_big_theta(spec, t))
    if spec.kind is ProtocolKind.ADIABATIC_AVERAGE:
        return adiabatic_state(t, spec)
    raise ProtocolError(f"no closed form for protocol kind {spec.kind.value!r}")


def analytic_energy(spec: ProtocolSpec, t):
    """Closed-form stored energy of the protocol at time t (vectorized)."""
    if spec.kind is ProtocolKind.QUBIT_RESONANT:
        drive = spec.drives[0]
        theta = accumulated_phase(drive.envelope, drive.g, t)
        return qubit_energy_evolved(spec.a, spec.phi, theta, spec.spectrum)
    if spec.kind is ProtocolKind.SEQUENTIAL:
        theta1, theta2 = _sequential_phases(spec, t)
        s1sq = np.sin(theta1 / 2.0) ** 2
        p2 = np.sin(theta2 / 2.0) ** 2 * s1sq
        p1 = np.cos(theta2 / 2.0) ** 2 * s1sq
        out = spec.spectrum.delta * p1 + spec.spectrum.delta_max * p2
        return out if np.ndim(out) else float(out)
    if spec.kind is ProtocolKind.SIMULTANEOUS:
        return simultaneous_energy(simultaneous_big_theta(spec, t), spec.spectrum)
    if spec.kind is ProtocolKind.ADIABATIC_AVERAGE:
        return adiabatic_energy(t, spec)
    raise ProtocolError(f"no closed form for protocol kind {spec.kind.value!r}")
