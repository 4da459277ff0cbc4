"""State vectors in the spinor convention (highest level first)."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import NormalizationError

NORM_TOL = 1e-9

ROTATING = "rotating"
LAB = "lab"


@dataclass(frozen=True)
class StateVector:
    """Complex amplitudes ordered (c_{d-1}, ..., c_1, c_0), d = 2 or 3.

    The component ordering follows the spinor convention used throughout
    the analytic solutions: index 0 holds the amplitude of the *highest*
    level. Use :meth:`population` / :meth:`populations` to read occupations
    by physical level index instead.
    """

    amplitudes: np.ndarray
    frame: str = ROTATING

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex)
        if amps.ndim != 1 or amps.size not in (2, 3):
            raise NormalizationError(f"expected a 2- or 3-component state, got shape {amps.shape}")
        nrm = np.linalg.norm(amps)
        if abs(nrm - 1.0) > NORM_TOL:
            raise NormalizationError(f"state norm {nrm!r} deviates from 1 by more than {NORM_TOL}")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def amplitude(self, level: int) -> complex:
        """Amplitude c_level (level counted from the ground state up)."""
        return complex(self.amplitudes[self.dim - 1 - level])

    def population(self, level: int) -> float:
        return float(abs(self.amplitude(level)) ** 2)

    def populations(self) -> np.ndarray:
        """Occupations ordered by level: (P0, P1[, P2])."""
        return np.abs(self.amplitudes[::-1]) ** 2

    @classmethod
    def ground(cls, dim: int = 3, frame: str = ROTATING) -> "StateVector":
        amps = np.zeros(dim, dtype=complex)
        amps[-1] = 1.0
        return cls(amps, frame)

    @classmethod
    def from_levels(cls, *amplitudes_by_level: complex, frame: str = ROTATING) -> "StateVector":
        """Build from (c0, c1[, c2]) given in level order."""
        return cls(np.asarray(amplitudes_by_level, dtype=complex)[::-1], frame)
