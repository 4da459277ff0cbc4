"""Exception hierarchy shared across the package."""


class QBatteryError(Exception):
    """Base class for all package-specific errors."""


class ParameterError(QBatteryError, ValueError):
    """A physical parameter is out of its admissible range."""


class TransmonRegimeError(ParameterError):
    """E_J / E_C is too small for the perturbative level formula."""


class ProtocolError(QBatteryError, ValueError):
    """A protocol's structural invariant (resonance, pulse layout) is violated."""


class ResolutionError(QBatteryError, ValueError):
    """Integration step too coarse for the requested frame."""


class IntegrationError(QBatteryError, RuntimeError):
    """Numerical propagation failed (norm drift beyond tolerance)."""


class NormalizationError(QBatteryError, ValueError):
    """A state vector is not unit-norm."""


class NotChargedError(QBatteryError, RuntimeError):
    """The energy curve never crossed the requested threshold.

    Carries the maximum fraction of full scale actually attained.
    """

    def __init__(self, message: str, max_fraction: float):
        super().__init__(message)
        self.max_fraction = max_fraction


class ReadoutError(QBatteryError, ValueError):
    """Invalid input to the readout pipeline (probabilities, labels, training set)."""


class ConfigError(QBatteryError, ValueError):
    """Run configuration file is malformed or inconsistent."""


class UndersampledWarning(UserWarning):
    """Discretization step is too coarse relative to the envelope width."""
