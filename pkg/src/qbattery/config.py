"""Run configuration: a sectioned INI file parsed into a validated RunConfig.

Unknown sections or keys are hard errors so that typos in physics
parameters cannot pass silently. Exactly one device parametrization
(E_C/E_J or the two transition frequencies) must be present.
"""

from __future__ import annotations

import configparser
import math
from dataclasses import dataclass, field

import numpy as np

from .device import LevelSpectrum, TransmonParams, spectrum_from_frequencies, transmon_spectrum
from .errors import ConfigError
from .hamiltonian import ProtocolKind, ProtocolSpec
from .observables import build_protocol
from .readout import ClusterModel, noiseless_model, realistic_model

_KINDS = {
    "qubit": ProtocolKind.QUBIT_RESONANT,
    "sequential": ProtocolKind.SEQUENTIAL,
    "simultaneous": ProtocolKind.SIMULTANEOUS,
    "adiabatic": ProtocolKind.ADIABATIC_AVERAGE,
}

_UNITS = ("fraction", "rad_per_ns", "uev")

_SCHEMA = {
    "device": {"e_c", "e_j", "omega1", "omega2"},
    "protocol": {"kind", "eta", "t_m", "sigma_ratio", "g", "a", "phi", "calibrated"},
    "integrator": {"frame", "h"},
    "readout": {
        "shots",
        "seed",
        "model",
        "center0",
        "center1",
        "center2",
        "spread0",
        "spread1",
        "spread2",
    },
    "output": {"units", "plot", "prefix"},
    "sweep": {"eta_min", "eta_max", "n_points", "engine"},
}


@dataclass(frozen=True)
class RunConfig:
    """Validated run parameters for the CLI commands."""

    spectrum: LevelSpectrum
    kind: ProtocolKind
    eta: float
    t_m: float
    sigma_ratio: float
    g: float
    a: float
    phi: float
    calibrated: bool
    frame: str
    h: float | None
    shots: int
    seed: int
    cluster_model: ClusterModel | None
    units: str
    plot: bool
    prefix: str
    eta_min: float
    eta_max: float
    n_points: int
    engine: str | None

    def protocol(self, eta: float | None = None) -> ProtocolSpec:
        if eta is None:
            eta = self.eta
        return build_protocol(
            self.spectrum,
            self.kind,
            eta,
            self.g,
            self.t_m,
            self.sigma_ratio,
            a=self.a,
            phi=self.phi,
            calibrated=self.calibrated,
        )

    def eta_grid(self) -> np.ndarray:
        return np.linspace(self.eta_min, self.eta_max, self.n_points)


def _get_float(section, key: str, path: str, default=None):
    if key not in section:
        if default is not None:
            return default
        raise ConfigError(f"missing required key {path}.{key}")
    try:
        return float(section[key])
    except ValueError:
        raise ConfigError(f"{path}.{key} must be a number, got {section[key]!r}") from None


def _get_int(section, key: str, path: str, default: int) -> int:
    if key not in section:
        return default
    try:
        return int(section[key])
    except ValueError:
        raise ConfigError(f"{path}.{key} must be an integer, got {section[key]!r}") from None


def _get_bool(section, key: str, path: str, default: bool) -> bool:
    if key not in section:
        return default
    value = section[key].strip().lower()
    if value in ("true", "yes", "1", "on"):
        return True
    if value in ("false", "no", "0", "off"):
        return False
    raise ConfigError(f"{path}.{key} must be a boolean, got {section[key]!r}")


def _parse_device(section) -> LevelSpectrum:
    has_ecj = "e_c" in section or "e_j" in section
    has_omega = "omega1" in section or "omega2" in section
    if has_ecj and has_omega:
        raise ConfigError(
            "device: give either e_c/e_j or omega1/omega2, not both (ambiguous parametrization)"
        )
    if has_ecj:
        e_c = _get_float(section, "e_c", "device")
        e_j = _get_float(section, "e_j", "device")
        return transmon_spectrum(TransmonParams(e_c, e_j))
    if has_omega:
        omega1 = _get_float(section, "omega1", "device")
        omega2 = _get_float(section, "omega2", "device")
        return spectrum_from_frequencies(omega1, omega2)
    raise ConfigError("missing required key device.e_c/e_j or device.omega1/omega2")


def _parse_cluster_model(section) -> ClusterModel | None:
    name = section.get("model", "").strip().lower()
    explicit = any(f"center{l}" in section for l in range(3))
    if name and explicit:
        raise ConfigError("readout: give either a named model or explicit centers, not both")
    if name:
        if name in ("noiseless", "ideal"):
            return noiseless_model()
        if name == "realistic":
            return realistic_model()
        raise ConfigError(f"readout.model must be 'noiseless' or 'realistic', got {name!r}")
    if not explicit:
        return None
    centers = np.empty((3, 2))
    spreads = np.empty(3)
    for l in range(3):
        raw = section.get(f"center{l}")
        if raw is None:
            raise ConfigError(f"missing required key readout.center{l}")
        parts = raw.replace(",", " ").split()
        if len(parts) != 2:
            raise ConfigError(f"readout.center{l} must be two numbers, got {raw!r}")
        try:
            centers[l] = [float(p) for p in parts]
        except ValueError:
            raise ConfigError(f"readout.center{l} must be two numbers, got {raw!r}") from None
        spreads[l] = _get_float(section, f"spread{l}", "readout", default=0.0)
    return ClusterModel(centers, spreads)


def load_config(path: str) -> RunConfig:
    """Parse and validate an INI run configuration."""
    parser = configparser.ConfigParser(interpolation=None)
    try:
        with open(path) as fh:
            parser.read_file(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    except configparser.Error as exc:
        raise ConfigError(f"malformed config file {path}: {exc}") from exc

    for name in parser.sections():
        if name not in _SCHEMA:
            raise ConfigError(f"unknown section [{name}]")
        for key in parser[name]:
            if key not in _SCHEMA[name]:
                raise ConfigError(f"unknown key {name}.{key}")

    if "device" not in parser:
        raise ConfigError("missing required section [device]")
    spectrum = _parse_device(parser["device"])

    proto = parser["protocol"] if "protocol" in parser else {}
    kind_name = proto.get("kind", "qubit").strip().lower() if proto else "qubit"
    if kind_name not in _KINDS:
        raise ConfigError(
            f"protocol.kind must be one of {sorted(_KINDS)}, got {kind_name!r}"
        )
    kind = _KINDS[kind_name]
    default_eta = math.pi if kind is not ProtocolKind.SEQUENTIAL else 2.0 * math.pi
    eta = _get_float(proto, "eta", "protocol", default=default_eta) if proto else default_eta
    t_m = _get_float(proto, "t_m", "protocol", default=1.0) if proto else 1.0
    sigma_ratio = _get_float(proto, "sigma_ratio", "protocol", default=0.125) if proto else 0.125
    g = _get_float(proto, "g", "protocol", default=1.0) if proto else 1.0
    a = _get_float(proto, "a", "protocol", default=1.0) if proto else 1.0
    phi = _get_float(proto, "phi", "protocol", default=0.0) if proto else 0.0
    calibrated = _get_bool(proto, "calibrated", "protocol", default=False) if proto else False

    integ = parser["integrator"] if "integrator" in parser else {}
    frame = integ.get("frame", "rotating").strip().lower() if integ else "rotating"
    if frame not in ("rotating", "lab"):
        raise ConfigError(f"integrator.frame must be 'rotating' or 'lab', got {frame!r}")
    h = float(integ["h"]) if integ and "h" in integ else None
    if h is not None and h <= 0.0:
        raise ConfigError(f"integrator.h must be positive, got {h}")

    rd = parser["readout"] if "readout" in parser else {}
    shots = _get_int(rd, "shots", "readout", default=1024) if rd else 1024
    seed = _get_int(rd, "seed", "readout", default=0) if rd else 0
    cluster_model = _parse_cluster_model(rd) if rd else None

    out = parser["output"] if "output" in parser else {}
    units = out.get("units", "fraction").strip().lower() if out else "fraction"
    if units not in _UNITS:
        raise ConfigError(f"output.units must be one of {_UNITS}, got {units!r}")
    plot = _get_bool(out, "plot", "output", default=False) if out else False
    prefix = out.get("prefix", "run").strip() if out else "run"

    sw = parser["sweep"] if "sweep" in parser else {}
    eta_max_default = 2.0 * math.pi if kind is ProtocolKind.SEQUENTIAL else math.pi
    eta_min = _get_float(sw, "eta_min", "sweep", default=0.0) if sw else 0.0
    eta_max = _get_float(sw, "eta_max", "sweep", default=eta_max_default) if sw else eta_max_default
    n_points = _get_int(sw, "n_points", "sweep", default=65) if sw else 65
    engine = sw.get("engine", "").strip().lower() or None if sw else None
    if engine not in (None, "analytic", "numeric"):
        raise ConfigError(f"sweep.engine must be 'analytic' or 'numeric', got {engine!r}")
    if n_points < 2:
        raise ConfigError(f"sweep.n_points must be >= 2, got {n_points}")
    if not eta_min < eta_max:
        raise ConfigError(f"sweep range [{eta_min}, {eta_max}] is empty")

    if shots < 1:
        raise ConfigError(f"readout.shots must be >= 1, got {shots}")
    if t_m <= 0.0:
        raise ConfigError(f"protocol.t_m must be positive, got {t_m}")

    return RunConfig(
        spectrum=spectrum,
        kind=kind,
        eta=eta,
        t_m=t_m,
        sigma_ratio=sigma_ratio,
        g=g,
        a=a,
        phi=phi,
        calibrated=calibrated,
        frame=frame,
        h=h,
        shots=shots,
        seed=seed,
        cluster_model=cluster_model,
        units=units,
        plot=plot,
        prefix=prefix,
        eta_min=eta_min,
        eta_max=eta_max,
        n_points=n_points,
        engine=engine,
    )
