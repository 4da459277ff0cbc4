"""Transmon level spectrum from circuit parameters.

The spectrum is computed from the first-order perturbative level formula
of a Duffing-type anharmonic oscillator:

    omega_n = (omega_P - E_C) n - E_C n (n - 1) / 2,   omega_P = sqrt(8 E_C E_J)

with the ground-state energy taken as the reference (omega_0 = 0).
Energies and frequencies are in rad/ns, times in ns.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ParameterError, TransmonRegimeError

# reduced Planck constant in micro-eV * ns (CODATA: hbar = 6.582119569e-16 eV s)
HBAR_UEV_NS = 6.582119569e-1

# minimum E_J / E_C for the perturbative level formula to be trusted
TRANSMON_RATIO_MIN = 20.0


@dataclass(frozen=True)
class TransmonParams:
    """Charging energy E_C and Josephson energy E_J, both in rad/ns."""

    E_C: float
    E_J: float

    def __post_init__(self):
        if self.E_C <= 0 or self.E_J <= 0:
            raise ParameterError(f"E_C and E_J must be positive, got ({self.E_C}, {self.E_J})")
        if self.E_J / self.E_C < TRANSMON_RATIO_MIN:
            raise TransmonRegimeError(
                f"E_J/E_C = {self.E_J / self.E_C:.3g} below the transmon-regime "
                f"threshold {TRANSMON_RATIO_MIN}"
            )

    @property
    def plasma_frequency(self) -> float:
        return math.sqrt(8.0 * self.E_C * self.E_J)


@dataclass(frozen=True)
class LevelSpectrum:
    """Ordered level energies (omega_0 = 0) plus derived spacings.

    ``delta_small`` is the half-anharmonicity (Delta - Delta')/2; for
    transmon-derived spectra it is stored as E_C/2 directly so that the
    identity holds exactly in floating point.
    """

    omega: tuple
    delta_small: float = 0.0

    def __post_init__(self):
        if len(self.omega) not in (2, 3):
            raise ParameterError(f"expected 2 or 3 levels, got {len(self.omega)}")
        w = tuple(float(x) for x in self.omega)
        if any(b < a for a, b in zip(w, w[1:])):
            raise ParameterError(f"level energies must be non-decreasing, got {w}")
        object.__setattr__(self, "omega", w)

    @property
    def n_levels(self) -> int:
        return len(self.omega)

    @property
    def delta(self) -> float:
        """First level spacing omega_1 - omega_0."""
        return self.omega[1] - self.omega[0]

    @property
    def delta_prime(self) -> float:
        """Second level spacing omega_2 - omega_1."""
        if self.n_levels < 3:
            raise ParameterError("delta_prime requires a three-level spectrum")
        return self.omega[2] - self.omega[1]

    @property
    def delta_max(self) -> float:
        """Total span omega_2 - omega_0 (= delta for a two-level spectrum)."""
        return self.omega[-1] - self.omega[0]

    @property
    def full_scale(self) -> float:
        return self.delta_max


def transmon_spectrum(params: TransmonParams, n_levels: int = 3) -> LevelSpectrum:
    """Perturbative transmon spectrum for the lowest 2 or 3 levels."""
    if n_levels not in (2, 3):
        raise ParameterError(f"n_levels must be 2 or 3, got {n_levels}")
    wp, ec = params.plasma_frequency, params.E_C
    omega = tuple((wp - ec) * n - 0.5 * ec * n * (n - 1) for n in range(n_levels))
    return LevelSpectrum(omega, delta_small=ec / 2.0)


def spectrum_from_frequencies(omega1: float, omega2: float) -> LevelSpectrum:
    """Spectrum from directly measured transition frequencies (no regime guard)."""
    if omega1 <= 0:
        raise ParameterError(f"omega1 must be positive, got {omega1}")
    if omega2 <= omega1:
        raise ParameterError(f"need omega2 > omega1, got ({omega1}, {omega2})")
    spec = LevelSpectrum((0.0, omega1, omega2))
    delta_small = (spec.delta - spec.delta_prime) / 2.0
    return LevelSpectrum((0.0, omega1, omega2), delta_small=delta_small)


def energy_to_physical(value: float) -> float:
    """Convert an energy in rad/ns to micro-electronvolts."""
    if value < 0:
        raise ParameterError(f"energy must be non-negative, got {value}")
    return value * HBAR_UEV_NS


def physical_to_energy(value_uev: float) -> float:
    """Convert micro-electronvolts back to rad/ns."""
    if value_uev < 0:
        raise ParameterError(f"energy must be non-negative, got {value_uev}")
    return value_uev / HBAR_UEV_NS
