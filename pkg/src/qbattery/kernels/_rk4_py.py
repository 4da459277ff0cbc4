"""Pure-Python (numpy) RK4 propagation kernel.

Reference implementation of the hot loop; the compiled extension in
``_rk4.pyx`` mirrors it exactly and is preferred at import time when
available.
"""

from __future__ import annotations

import numpy as np

BACKEND = "python"


def propagate_rk4(h_steps: np.ndarray, psi0: np.ndarray, dt: float, renorm_every: int = 64):
    """Propagate i dpsi/dt = H(t) psi with fixed-step RK4.

    Parameters
    ----------
    h_steps : (3n, d, d) complex array
        Hamiltonian sampled per step as (start, midpoint, end) triplets.
        The start/end samples are one-sided so that a jump of H at a step
        boundary (truncated pulse edges) is not smeared across steps.
    psi0 : (d,) complex array
        Initial state (unit norm).
    dt : float
        Full step size.
    renorm_every : int
        Renormalize the state every this many steps (0 disables).

    Returns
    -------
    states : (n+1, d) complex array
        State at every full grid point (renormalization included).
    max_drift : float
        Maximum |norm - 1| observed *before* any renormalization.
    """
    h_steps = np.ascontiguousarray(h_steps, dtype=complex)
    n = h_steps.shape[0] // 3
    psi = np.array(psi0, dtype=complex)
    out = np.empty((n + 1, psi.size), dtype=complex)
    out[0] = psi
    max_drift = 0.0
    for k in range(n):
        h1 = h_steps[3 * k]
        h2 = h_steps[3 * k + 1]
        h3 = h_steps[3 * k + 2]
        k1 = -1j * (h1 @ psi)
        k2 = -1j * (h2 @ (psi + 0.5 * dt * k1))
        k3 = -1j * (h2 @ (psi + 0.5 * dt * k2))
        k4 = -1j * (h3 @ (psi + dt * k3))
        psi = psi + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        norm = np.sqrt(np.sum(psi.real**2 + psi.imag**2))
        drift = abs(norm - 1.0)
        if drift > max_drift:
            max_drift = drift
        if renorm_every and (k + 1) % renorm_every == 0:
            psi = psi / norm
        out[k + 1] = psi
    return out, max_drift
