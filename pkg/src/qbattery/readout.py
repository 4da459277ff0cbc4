"""Simulated dispersive-readout pipeline.

Projective shot sampling, synthetic IQ-plane points, nearest-centroid
classification and energy estimation. The resonator physics is not
modeled; the forward model starts at level labels and maps them to noisy
points in the (I, Q) plane. All randomness comes from counter-based
Philox streams keyed per sweep point, so results are reproducible and
independent of evaluation order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import analytic
from .device import LevelSpectrum
from .errors import ParameterError, ReadoutError
from .hamiltonian import ProtocolKind
from .integrator import evolve
from .observables import SweepResult, build_protocol
from .state import StateVector


@dataclass(frozen=True)
class IQPoint:
    """One transmitted-tone sample, A e^{i chi} = I + i Q."""

    i: float
    q: float

    def __post_init__(self):
        if not (math.isfinite(self.i) and math.isfinite(self.q)):
            raise ParameterError(f"IQ point must be finite, got ({self.i}, {self.q})")


@dataclass(frozen=True)
class ClusterModel:
    """Isotropic Gaussian IQ cluster per level: centers (3, 2), spreads (3,)."""

    centers: np.ndarray
    spreads: np.ndarray

    def __post_init__(self):
        centers = np.asarray(self.centers, dtype=float)
        spreads = np.asarray(self.spreads, dtype=float)
        if centers.shape != (3, 2) or spreads.shape != (3,):
            raise ParameterError("expected 3 centers of 2 coordinates and 3 spreads")
        for k in range(3):
            for l in range(k + 1, 3):
                if np.allclose(centers[k], centers[l]):
                    raise ParameterError(f"cluster centers {k} and {l} coincide")
        if np.any(spreads < 0.0):
            raise ParameterError("spreads must be non-negative")
        object.__setattr__(self, "centers", centers)
        object.__setattr__(self, "spreads", spreads)


def noiseless_model() -> ClusterModel:
    """Perfectly separable clusters (zero spread)."""
    return ClusterModel(
        np.array([[0.0, 0.0], [1.0, 0.0], [0.5, math.sqrt(3.0) / 2.0]]),
        np.zeros(3),
    )


def realistic_model() -> ClusterModel:
    """Cluster fixture tuned to typical transmon readout fidelities.

    Centers form an equilateral triangle of unit side; the spreads are
    chosen so a trained nearest-centroid classifier identifies the three
    levels with roughly 95.5%, 95.7% and 90.0% accuracy, the level-2
    cloud being the blurriest. See the regression tests for the frozen
    accuracy values.
    """
    return ClusterModel(
        np.array([[0.0, 0.0], [1.0, 0.0], [0.5, math.sqrt(3.0) / 2.0]]),
        np.array([0.254726, 0.252390, 0.316995]),
    )


@dataclass(frozen=True)
class Classifier:
    """Nearest-centroid decision rule with linear boundaries."""

    centroids: np.ndarray  # (3, 2)

    def classify(self, points) -> np.ndarray:
        """Labels of (n, 2) points; ties break toward the smaller label."""
        points = np.atleast_2d(np.asarray(points, dtype=float))
        d2 = ((points[:, None, :] - self.centroids[None, :, :]) ** 2).sum(axis=2)
        # argmin returns the first minimum, which is the smaller label on ties
        return np.argmin(d2, axis=1)

    def classify_one(self, point: IQPoint) -> int:
        return int(self.classify([[point.i, point.q]])[0])


@dataclass(frozen=True)
class ShotRecord:
    """Multinomial outcome of N projective shots."""

    counts: tuple
    seed: int

    def __post_init__(self):
        if len(self.counts) != 3 or any(c < 0 for c in self.counts):
            raise ParameterError(f"expected three non-negative counts, got {self.counts}")

    @property
    def n(self) -> int:
        return int(sum(self.counts))


def stream_rng(seed: int, index: int = 0) -> np.random.Generator:
    """Deterministic Philox stream for sweep point `index` under `seed`."""
    return np.random.Generator(np.random.Philox(key=[seed, index]))


def measure_populations(state: StateVector):
    """(P0, P1, P2) of a unit-norm qutrit state."""
    pops = state.populations()
    if abs(pops.sum() - 1.0) > 1e-12:
        raise ParameterError(f"populations sum to {pops.sum()}, not 1")
    return tuple(float(p) for p in pops)


def sample_shots(probs, n: int, seed: int, index: int = 0) -> ShotRecord:
    """Multinomial draw of n shots from (P0, P1, P2)."""
    probs = np.asarray(probs, dtype=float)
    if probs.shape != (3,) or np.any(probs < -1e-12):
        raise ReadoutError(f"invalid probability vector {probs}")
    if abs(probs.sum() - 1.0) > 1e-9:
        raise ReadoutError(f"probabilities sum to {probs.sum()}, not 1")
    if n < 1:
        raise ReadoutError(f"shot count must be >= 1, got {n}")
    probs = np.clip(probs, 0.0, None)
    probs = probs / probs.sum()
    counts = stream_rng(seed, index).multinomial(n, probs)
    return ShotRecord(tuple(int(c) for c in counts), seed)


def synthesize_iq(labels, model: ClusterModel, rng: np.random.Generator) -> np.ndarray:
    """(n, 2) IQ points: each label's center plus isotropic Gaussian noise."""
    labels = np.asarray(labels, dtype=int)
    if np.any(labels < 0) or np.any(labels > 2):
        raise ReadoutError("labels must be 0, 1 or 2")
    noise = rng.standard_normal((labels.size, 2))
    return model.centers[labels] + model.spreads[labels, None] * noise


def train_classifier(points, labels) -> Classifier:
    """Per-label centroids of labeled IQ points."""
    points = np.asarray(points, dtype=float)
    labels = np.asarray(labels, dtype=int)
    centroids = np.empty((3, 2))
    for l in range(3):
        mask = labels == l
        if not np.any(mask):
            raise ReadoutError(f"no training points for label {l}")
        centroids[l] = points[mask].mean(axis=0)
    return Classifier(centroids)


def classifier_from_model(model: ClusterModel) -> Classifier:
    """Ideal classifier whose centroids are the true cluster centers."""
    return Classifier(model.centers.copy())


def estimate_energy(record: ShotRecord, spectrum: LevelSpectrum) -> float:
    """E = Delta n1/N + Delta_max n2/N."""
    n = record.n
    return float(
        spectrum.delta * record.counts[1] / n + spectrum.delta_max * record.counts[2] / n
    )


def _energy_stderr(counts, n: int, spectrum: LevelSpectrum) -> float:
    # multinomial standard error of Delta p1 + Delta_max p2, covariance included
    p1, p2 = counts[1] / n, counts[2] / n
    w1, w2 = spectrum.delta, spectrum.delta_max
    var = w1**2 * p1 * (1.0 - p1) + w2**2 * p2 * (1.0 - p2) - 2.0 * w1 * w2 * p1 * p2
    return math.sqrt(max(var, 0.0) / n)


def run_shot(
    probs, n: int, model: ClusterModel, classifier: Classifier, seed: int, index: int = 0
):
    """One readout experiment: sample, synthesize IQ, classify, count.

    Returns (true labels, IQ points, classified counts). The true-label
    multinomial draw and the IQ noise come from the same per-index stream.
    """
    rng = stream_rng(seed, index)
    probs = np.asarray(probs, dtype=float)
    if abs(probs.sum() - 1.0) > 1e-9:
        raise ReadoutError(f"probabilities sum to {probs.sum()}, not 1")
    probs = np.clip(probs, 0.0, None)
    true_counts = rng.multinomial(n, probs / probs.sum())
    labels = np.repeat(np.arange(3), true_counts)
    points = synthesize_iq(labels, model, rng)
    assigned = classifier.classify(points)
    counts = tuple(int(np.sum(assigned == l)) for l in range(3))
    return labels, points, counts


def end_to_end_sweep(
    spectrum: LevelSpectrum,
    kind: ProtocolKind,
    eta_grid,
    g: float,
    n_shots: int,
    model: ClusterModel,
    seed: int,
    t_m: float = 1.0,
    sigma_ratio: float = 0.125,
    classifier: Classifier | None = None,
    engine: str = "analytic",
) -> SweepResult:
    """Recovered E(eta) through the full readout pipeline, with error bars.

    For each grid point: evolve, measure populations, draw n_shots
    projective outcomes, synthesize one IQ point per shot, classify and
    estimate the energy from the classified counts. Each grid point uses
    its own RNG stream keyed by (seed, index), so evaluation order and
    concurrency cannot change the result.
    """
    eta_grid = np.asarray(eta_grid, dtype=float)
    if classifier is None:
        classifier = classifier_from_model(model)
    energy = np.empty(eta_grid.size)
    stderr = np.empty(eta_grid.size)
    for i, eta in enumerate(eta_grid):
        spec = build_protocol(spectrum, kind, eta, g, t_m, sigma_ratio, calibrated=True)
        if engine == "analytic":
            state = analytic.analytic_state(spec, t_m)
        elif engine == "numeric":
            state = evolve(spec).final_state
        else:
            raise ParameterError(f"unknown engine {engine!r}")
        probs = np.array(measure_populations(state))
        if probs.size == 2:  # qubit protocol: pad the absent level 2
            probs = np.append(probs, 0.0)
        _, _, counts = run_shot(probs, n_shots, model, classifier, seed, i)
        record = ShotRecord(counts, seed)
        energy[i] = estimate_energy(record, spectrum)
        stderr[i] = _energy_stderr(counts, n_shots, spectrum)
    full_scale = spectrum.delta if kind is ProtocolKind.QUBIT_RESONANT else spectrum.delta_max
    return SweepResult(eta_grid, energy, full_scale, stderr)


def label_accuracies(
    model: ClusterModel, classifier: Classifier, n_per_label: int, seed: int
) -> np.ndarray:
    """Per-label classification accuracy on fresh synthetic clouds."""
    rng = stream_rng(seed, 0)
    acc = np.empty(3)
    for l in range(3):
        points = synthesize_iq(np.full(n_per_label, l), model, rng)
        acc[l] = float(np.mean(classifier.classify(points) == l))
    return acc
