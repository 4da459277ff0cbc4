"""Benchmark the compiled RK4 kernel against the pure-Python fallback.

Run as: python3 benchmarks/bench_rk4.py [n_steps]
"""

import sys
import time

import numpy as np

from qbattery import TransmonParams, simultaneous_protocol, transmon_spectrum
from qbattery.hamiltonian import rwa_frame_samples
from qbattery.kernels import _rk4_py

try:
    from qbattery.kernels import _rk4
except ImportError:
    _rk4 = None


def run(kernel, h_half, psi0, dt, repeats=5):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        states, drift = kernel.propagate_rk4(h_half, psi0, dt)
        best = min(best, time.perf_counter() - t0)
    return best, states, drift


def main():
    n = int(sys.argv[1]) if len(sys.argv) > 1 else 20000
    spectrum = transmon_spectrum(TransmonParams(0.25, 12.5))
    spec = simultaneous_protocol(spectrum, g=1.0)
    dt = spec.t_m / n
    grid = np.linspace(0.0, spec.t_m, n + 1)
    sample_times = np.empty(3 * n)
    sample_times[0::3] = grid[:-1]
    sample_times[1::3] = grid[:-1] + 0.5 * dt
    sample_times[2::3] = grid[1:]
    h_steps = rwa_frame_samples(spec, sample_times)
    psi0 = spec.initial.amplitudes

    t_py, states_py, _ = run(_rk4_py, h_steps, psi0, dt)
    print(f"python kernel : {t_py * 1e3:9.2f} ms for {n} steps")
    if _rk4 is None:
        print("cython kernel : not built (pip install -e . with cython available)")
        return
    t_cy, states_cy, _ = run(_rk4, h_steps, psi0, dt)
    diff = np.max(np.abs(states_py - states_cy))
    print(f"cython kernel : {t_cy * 1e3:9.2f} ms for {n} steps")
    print(f"speedup       : {t_py / t_cy:9.1f}x")
    print(f"max |diff|    : {diff:9.2e}")


if __name__ == "__main__":
    main()
