"""Gaussian drive envelopes, accumulated phases and discretized waveforms.

All pulses are hard-truncated to a finite support so that sequential
pulses are exactly non-overlapping; the support is center +- 4 sigma
intersected with the measurement window, which loses at most ~6e-5 of
the nominal pulse area.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.special import erf

from .errors import ParameterError, UndersampledWarning

# half-width of the truncation window, in units of sigma
SUPPORT_SIGMAS = 4.0

# fraction of a Gaussian's area inside +-4 sigma
TRUNCATED_AREA_FRACTION = float(erf(SUPPORT_SIGMAS / math.sqrt(2.0)))


@dataclass(frozen=True)
class GaussianPulse:
    """Truncated Gaussian envelope f(t) = amplitude * exp(-(t-center)^2 / 2 sigma^2).

    f is identically zero outside [t_start, t_end].
    """

    amplitude: float
    center: float
    sigma: float
    t_start: float
    t_end: float

    def __post_init__(self):
        if self.sigma <= 0:
            raise ParameterError(f"sigma must be positive, got {self.sigma}")
        if not (self.t_start < self.center < self.t_end):
            raise ParameterError(
                f"support [{self.t_start}, {self.t_end}] must contain the center {self.center}"
            )
        if self.amplitude < 0:
            raise ParameterError(f"amplitude must be non-negative, got {self.amplitude}")

    def __call__(self, t):
        """Envelope value; vectorized, exactly zero outside the support."""
        t = np.asarray(t, dtype=float)
        inside = (t >= self.t_start) & (t <= self.t_end)
        val = self.amplitude * np.exp(-((t - self.center) ** 2) / (2.0 * self.sigma**2))
        out = np.where(inside, val, 0.0)
        return out if out.ndim else float(out)

    def area(self, t=None):
        """Integral of the (truncated) envelope from -inf up to t (or over all time)."""
        sq2s = math.sqrt(2.0) * self.sigma
        lo = erf((self.t_start - self.center) / sq2s)
        if t is None:
            hi = erf((self.t_end - self.center) / sq2s)
        else:
            tc = np.clip(np.asarray(t, dtype=float), self.t_start, self.t_end)
            hi = erf((tc - self.center) / sq2s)
        out = self.amplitude * self.sigma * math.sqrt(math.pi / 2.0) * (hi - lo)
        return out if np.ndim(out) else float(out)

    def shifted(self, dt: float) -> "GaussianPulse":
        """The same envelope translated by dt."""
        return GaussianPulse(
            self.amplitude, self.center + dt, self.sigma, self.t_start + dt, self.t_end + dt
        )

    def overlaps(self, other: "GaussianPulse") -> bool:
        return self.t_start < other.t_end and other.t_start < self.t_end


@dataclass(frozen=True)
class PhaseTarget:
    """Target accumulated phase theta_m for a drive of coupling strength g."""

    theta_m: float
    g: float

    def __post_init__(self):
        if self.theta_m < 0:
            raise ParameterError(f"theta_m must be non-negative, got {self.theta_m}")
        if self.g <= 0:
            raise ParameterError(f"coupling g must be positive, got {self.g}")

    def amplitude(self, sigma: float) -> float:
        """Peak envelope amplitude delivering theta_m over the full real line."""
        return self.theta_m / (self.g * sigma * math.sqrt(2.0 * math.pi))


def make_gaussian(
    theta_m: float,
    g: float,
    t_m: float,
    sigma_ratio: float = 0.125,
    calibrated: bool = False,
) -> GaussianPulse:
    """Gaussian envelope centered at t_m/2 with sigma = sigma_ratio * t_m.

    The amplitude is theta_m / (g sigma sqrt(2 pi)), so the full-line pulse
    area times g equals theta_m. With ``calibrated=True`` the amplitude is
    boosted by 1/erf(4/sqrt(2)) so that the *truncated* pulse delivers
    exactly theta_m; sweep engines use this to remove the truncation bias.
    """
    if t_m <= 0:
        raise ParameterError(f"t_m must be positive, got {t_m}")
    if not 0.0 < sigma_ratio <= 0.25:
        raise ParameterError(f"sigma_ratio must lie in (0, 1/4], got {sigma_ratio}")
    sigma = sigma_ratio * t_m
    center = t_m / 2.0
    amplitude = PhaseTarget(theta_m, g).amplitude(sigma)
    t_start = max(0.0, center - SUPPORT_SIGMAS * sigma)
    t_end = min(t_m, center + SUPPORT_SIGMAS * sigma)
    if calibrated and theta_m > 0:
        pulse = GaussianPulse(amplitude, center, sigma, t_start, t_end)
        amplitude *= theta_m / (g * pulse.area())
    if theta_m == 0:
        # degenerate but valid: an identically-zero envelope
        amplitude = 0.0
    return GaussianPulse(amplitude, center, sigma, t_start, t_end)


def accumulated_phase(envelope: GaussianPulse, g: float, t):
    """theta(t) = g * integral of the truncated envelope up to time t.

    Zero before the support starts, monotone non-decreasing, bounded by the
    total delivered phase g * envelope.area().
    """
    if g <= 0:
        raise ParameterError(f"coupling g must be positive, got {g}")
    return g * envelope.area(t)


@dataclass(frozen=True)
class DiscretizedPulse:
    """Envelope sampled at midpoints of uniform dt bins starting at t_start."""

    dt: float
    t_start: float
    samples: np.ndarray

    def __post_init__(self):
        if self.dt <= 0:
            raise ParameterError(f"dt must be positive, got {self.dt}")
        samples = np.asarray(self.samples, dtype=float)
        samples.setflags(write=False)
        object.__setattr__(self, "samples", samples)

    @property
    def times(self) -> np.ndarray:
        n = self.samples.size
        return self.t_start + (np.arange(n) + 0.5) * self.dt

    @property
    def span(self) -> float:
        return self.samples.size * self.dt

    def integral(self) -> float:
        """Midpoint-rule integral of the sample sequence over its span."""
        return float(self.samples.sum() * self.dt)


def discretize(envelope: GaussianPulse, dt: float) -> DiscretizedPulse:
    """Sample the envelope at bin midpoints over its support."""
    if dt <= 0:
        raise ParameterError(f"dt must be positive, got {dt}")
    if dt >= envelope.sigma:
        warnings.warn(
            f"dt={dt} does not resolve sigma={envelope.sigma}; waveform is undersampled",
            UndersampledWarning,
            stacklevel=2,
        )
    n = max(1, int(math.ceil((envelope.t_end - envelope.t_start) / dt)))
    t = envelope.t_start + (np.arange(n) + 0.5) * dt
    return DiscretizedPulse(dt, envelope.t_start, envelope(t))
