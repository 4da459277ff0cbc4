"""Charging protocols and their Hamiltonians in the lab and rotating frames.

Matrices act on spinors ordered highest level first, i.e. (c2, c1, c0)
for a qutrit and (c1, c0) for a qubit, matching :mod:`qbattery.state`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .device import LevelSpectrum
from .errors import ParameterError, ProtocolError
from .pulses import GaussianPulse, make_gaussian
from .state import LAB, ROTATING, StateVector

ALLOWED_TRANSITIONS = ((0, 1), (1, 2))

_REL_TOL = 1e-12


class ProtocolKind(Enum):
    QUBIT_RESONANT = "qubit"
    SEQUENTIAL = "sequential"
    SIMULTANEOUS = "simultaneous"
    ADIABATIC_AVERAGE = "adiabatic"
    CUSTOM = "custom"


@dataclass(frozen=True)
class DriveTerm:
    """One classical drive: g * f(t) * cos(carrier * t) on a parity-allowed transition."""

    g: float
    envelope: GaussianPulse
    carrier: float
    transition: tuple

    def __post_init__(self):
        if self.g <= 0:
            raise ParameterError(f"coupling g must be positive, got {self.g}")
        transition = tuple(self.transition)
        if transition not in ALLOWED_TRANSITIONS:
            raise ProtocolError(
                f"transition {transition} is not parity-allowed; only (0, 1) and (1, 2) couple"
            )
        object.__setattr__(self, "transition", transition)


@dataclass(frozen=True)
class ProtocolSpec:
    """A charging protocol: drives, device spectrum, duration and initial state."""

    kind: ProtocolKind
    drives: tuple
    spectrum: LevelSpectrum
    t_m: float
    initial: StateVector
    # initial-state parameters of the two-level protocol, kept for reporting
    a: float | None = None
    phi: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "drives", tuple(self.drives))
        if self.t_m <= 0:
            raise ParameterError(f"t_m must be positive, got {self.t_m}")
        self._validate_kind()

    @property
    def dim(self) -> int:
        return self.initial.dim

    @property
    def sigma_min(self) -> float:
        return min(d.envelope.sigma for d in self.drives) if self.drives else self.t_m

    @property
    def omega_max(self) -> float:
        freqs = [abs(w) for w in self.spectrum.omega[: self.dim]]
        freqs += [abs(d.carrier) for d in self.drives]
        return max(freqs) if freqs else 0.0

    @property
    def full_scale(self) -> float:
        return self.spectrum.delta if self.dim == 2 else self.spectrum.delta_max

    def drive_on(self, transition) -> DriveTerm | None:
        for d in self.drives:
            if d.transition == tuple(transition):
                return d
        return None

    def _validate_kind(self):
        kind, spectrum = self.kind, self.spectrum
        if kind is ProtocolKind.CUSTOM:
            return
        if kind is ProtocolKind.QUBIT_RESONANT:
            if len(self.drives) != 1 or self.drives[0].transition != (0, 1):
                raise ProtocolError("qubit protocol needs exactly one (0, 1) drive")
            if not math.isclose(self.drives[0].carrier, spectrum.delta, rel_tol=_REL_TOL):
                raise ProtocolError("qubit drive must be resonant: carrier == delta")
            if self.dim != 2:
                raise ProtocolError("qubit protocol acts on a two-component state")
            return
        if len(self.drives) != 2 or self.dim != 3:
            raise ProtocolError(f"{kind.value} protocol needs two drives on a qutrit")
        d01, d12 = self.drive_on((0, 1)), self.drive_on((1, 2))
        if d01 is None or d12 is None:
            raise ProtocolError(f"{kind.value} protocol needs one drive per transition")
        if kind in (ProtocolKind.SEQUENTIAL, ProtocolKind.SIMULTANEOUS):
            if not math.isclose(d01.carrier, spectrum.delta, rel_tol=_REL_TOL) or not math.isclose(
                d12.carrier, spectrum.delta_prime, rel_tol=_REL_TOL
            ):
                raise ProtocolError(f"{kind.value} drives must be resonant with their transitions")
        if kind is ProtocolKind.SEQUENTIAL and d01.envelope.overlaps(d12.envelope):
            raise ProtocolError(
                "sequential pulses must have disjoint supports; "
                "use an overlapping custom schedule with the numeric integrator instead"
            )
        if kind in (ProtocolKind.SIMULTANEOUS, ProtocolKind.ADIABATIC_AVERAGE):
            if d01.envelope != d12.envelope:
                raise ProtocolError(f"{kind.value} protocol requires identical envelopes")
        if kind is ProtocolKind.ADIABATIC_AVERAGE:
            mean = (spectrum.delta + spectrum.delta_prime) / 2.0
            if not math.isclose(d01.carrier, mean, rel_tol=_REL_TOL) or not math.isclose(
                d12.carrier, mean, rel_tol=_REL_TOL
            ):
                raise ProtocolError("adiabatic drives must both sit at the average frequency")


# ---------------------------------------------------------------------------
# matrix construction

def _index(level: int, dim: int) -> int:
    # spinor ordering: index 0 holds the highest level
    return dim - 1 - level


def lab_frame_samples(spec: ProtocolSpec, times) -> np.ndarray:
    """Lab-frame Hamiltonian H(t) for each t: diag(omega) + drive cosines."""
    times = np.atleast_1d(np.asarray(times, dtype=float))
    d = spec.dim
    out = np.zeros((times.size, d, d), dtype=complex)
    for level in range(d):
        out[:, _index(level, d), _index(level, d)] = spec.spectrum.omega[level]
    for drive in spec.drives:
        lo, hi = drive.transition
        i, j = _index(lo, d), _index(hi, d)
        coupling = drive.g * drive.envelope(times) * np.cos(drive.carrier * times)
        out[:, i, j] += coupling
        out[:, j, i] += coupling
    return out


def rwa_frame_samples(spec: ProtocolSpec, times) -> np.ndarray:
    """Rotating-frame Hamiltonian under the RWA for each t.

    Each drive contributes (g/2) f(t) exp(i (carrier - spacing) t) on its
    transition; for the resonant protocols the phase factor is unity and
    the matrix is the real tridiagonal coupling pattern, for the
    average-frequency protocol it carries the +-delta phases.
    """
    times = np.atleast_1d(np.asarray(times, dtype=float))
    d = spec.dim
    out = np.zeros((times.size, d, d), dtype=complex)
    spacings = {(0, 1): spec.spectrum.delta}
    if spec.spectrum.n_levels == 3:
        spacings[(1, 2)] = spec.spectrum.delta_prime
    for drive in spec.drives:
        spacing = spacings.get(drive.transition)
        if spacing is None:
            raise ProtocolError(f"no spacing for transition {drive.transition}")
        detuning = drive.carrier - spacing
        if spec.kind is not ProtocolKind.ADIABATIC_AVERAGE and not math.isclose(
            detuning, 0.0, abs_tol=_REL_TOL * abs(spacing)
        ):
            raise ProtocolError(
                f"drive on {drive.transition} is detuned by {detuning}; "
                "the RWA frame is only built for the resonant or average-frequency schemes"
            )
        lo, hi = drive.transition
        i, j = _index(lo, d), _index(hi, d)
        half = 0.5 * drive.g * drive.envelope(times)
        phase = np.exp(1j * detuning * times)
        # coefficient of |lo><hi| is (g/2) f exp(i (carrier - spacing) t)
        out[:, i, j] += half * phase
        out[:, j, i] += half * np.conj(phase)
    return out


def lab_frame(spec: ProtocolSpec, t: float) -> np.ndarray:
    return lab_frame_samples(spec, [t])[0]


def rwa_frame(spec: ProtocolSpec, t: float) -> np.ndarray:
    return rwa_frame_samples(spec, [t])[0]


def frame_samples(spec: ProtocolSpec, frame: str, times) -> np.ndarray:
    if frame == ROTATING:
        return rwa_frame_samples(spec, times)
    if frame == LAB:
        return lab_frame_samples(spec, times)
    raise ParameterError(f"unknown frame {frame!r}")


# ---------------------------------------------------------------------------
# protocol factories

def qubit_protocol(
    spectrum: LevelSpectrum,
    g: float,
    theta_m: float = math.pi,
    t_m: float = 1.0,
    sigma_ratio: float = 0.125,
    a: float = 1.0,
    phi: float = 0.0,
    calibrated: bool = False,
) -> ProtocolSpec:
    """Resonant two-level charging from sqrt(a)|0> + sqrt(1-a) e^{i phi}|1>."""
    if not 0.0 <= a <= 1.0:
        raise ParameterError(f"a must lie in [0, 1], got {a}")
    envelope = make_gaussian(theta_m, g, t_m, sigma_ratio, calibrated=calibrated)
    drive = DriveTerm(g, envelope, spectrum.delta, (0, 1))
    initial = StateVector.from_levels(math.sqrt(a), math.sqrt(1.0 - a) * np.exp(1j * phi))
    return ProtocolSpec(ProtocolKind.QUBIT_RESONANT, (drive,), spectrum, t_m, initial, a=a, phi=phi)


def sequential_protocol(
    spectrum: LevelSpectrum,
    g: float,
    theta1_m: float = math.pi,
    theta2_m: float = math.pi,
    t_m: float = 1.0,
    delay: float | None = None,
    calibrated: bool = False,
) -> ProtocolSpec:
    """Two delayed pulses driving 0->1 then 1->2; each uses sigma = t_m/16.

    ``delay`` is the center-to-center separation (default t_m/2, giving
    exactly disjoint supports). Smaller delays produce overlapping pulses
    and the protocol degrades to a CUSTOM schedule for the integrator.
    """
    if delay is None:
        delay = t_m / 2.0
    pulse1 = make_gaussian(theta1_m, g, t_m / 2.0, 0.125, calibrated=calibrated)
    pulse2 = make_gaussian(theta2_m, g, t_m / 2.0, 0.125, calibrated=calibrated).shifted(delay)
    drives = (
        DriveTerm(g, pulse1, spectrum.delta, (0, 1)),
        DriveTerm(g, pulse2, spectrum.delta_prime, (1, 2)),
    )
    kind = ProtocolKind.CUSTOM if pulse1.overlaps(pulse2) else ProtocolKind.SEQUENTIAL
    return ProtocolSpec(kind, drives, spectrum, t_m, StateVector.ground(3))


def simultaneous_protocol(
    spectrum: LevelSpectrum,
    g: float,
    big_theta_m: float = math.pi,
    t_m: float = 1.0,
    sigma_ratio: float = 0.125,
    calibrated: bool = False,
) -> ProtocolSpec:
    """Both resonant drives share one envelope; Theta_m = theta_m / sqrt(2)."""
    envelope = make_gaussian(math.sqrt(2.0) * big_theta_m, g, t_m, sigma_ratio, calibrated=calibrated)
    drives = (
        DriveTerm(g, envelope, spectrum.delta, (0, 1)),
        DriveTerm(g, envelope, spectrum.delta_prime, (1, 2)),
    )
    return ProtocolSpec(ProtocolKind.SIMULTANEOUS, drives, spectrum, t_m, StateVector.ground(3))


def adiabatic_protocol(
    spectrum: LevelSpectrum,
    g: float,
    big_theta_m: float = math.pi,
    t_m: float = 1.0,
    sigma_ratio: float = 0.125,
    calibrated: bool = False,
) -> ProtocolSpec:
    """Both drives at the average frequency (delta-phased rotating frame)."""
    envelope = make_gaussian(math.sqrt(2.0) * big_theta_m, g, t_m, sigma_ratio, calibrated=calibrated)
    mean = (spectrum.delta + spectrum.delta_prime) / 2.0
    drives = (
        DriveTerm(g, envelope, mean, (0, 1)),
        DriveTerm(g, envelope, mean, (1, 2)),
    )
    return ProtocolSpec(ProtocolKind.ADIABATIC_AVERAGE, drives, spectrum, t_m, StateVector.ground(3))
