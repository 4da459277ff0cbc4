"""Command-line interface.

Subcommands: spectrum, simulate, sweep, charging-time, readout, table1.
All state comes from the config file and flags; outputs are CSV files
with 17-significant-digit floats plus optional SVG renderings.

Exit codes: 0 success, 2 configuration error, 3 physics error (including
an unreached charging threshold), 4 I/O error.
"""

from __future__ import annotations

import argparse
import math
import os
import sys

import numpy as np

from .config import RunConfig, load_config
from .device import HBAR_UEV_NS, energy_to_physical
from .errors import ConfigError, NotChargedError, QBatteryError
from .hamiltonian import ProtocolKind
from .observables import (
    charging_time_analytic,
    energy_curve,
    sweep_final_energy,
    table1,
)
from .readout import classifier_from_model, end_to_end_sweep, run_shot, measure_populations
from . import analytic

EXIT_CONFIG = 2
EXIT_PHYSICS = 3
EXIT_IO = 4


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _write_csv(path: str, header: list, rows) -> None:
    with open(path, "w") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(x) for x in row) + "\n")


def _energy_scale(units: str, full_scale: float) -> float:
    """Multiplier taking rad/ns energies into the requested output units."""
    if units == "fraction":
        return 1.0 / full_scale
    if units == "rad_per_ns":
        return 1.0
    if units == "uev":
        return HBAR_UEV_NS
    raise ConfigError(f"unknown units {units!r}")


def _plot_curve(path: str, x, y, xlabel: str, ylabel: str) -> None:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(5, 3.2))
    ax.plot(x, y, lw=1.5)
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    fig.tight_layout()
    fig.savefig(path, format="svg")
    plt.close(fig)


def cmd_spectrum(cfg: RunConfig, out_dir: str) -> None:
    sp = cfg.spectrum
    print("level spectrum (rad/ns):")
    for n, w in enumerate(sp.omega):
        print(f"  omega_{n} = {_fmt(w)}  ({_fmt(energy_to_physical(w))} ueV)")
    print(f"  Delta     = {_fmt(sp.delta)}  ({_fmt(energy_to_physical(sp.delta))} ueV)")
    print(f"  Delta'    = {_fmt(sp.delta_prime)}  ({_fmt(energy_to_physical(sp.delta_prime))} ueV)")
    print(f"  Delta_max = {_fmt(sp.delta_max)}  ({_fmt(energy_to_physical(sp.delta_max))} ueV)")
    print(f"  delta     = {_fmt(sp.delta_small)}  ({_fmt(energy_to_physical(sp.delta_small))} ueV)")


def cmd_simulate(cfg: RunConfig, out_dir: str, engine: str | None, plot: bool) -> None:
    spec = cfg.protocol()
    if engine is None:
        engine = "analytic" if spec.kind is not ProtocolKind.CUSTOM else "numeric"
    if engine == "analytic" and spec.kind is ProtocolKind.CUSTOM:
        raise QBatteryError("overlapping pulse schedules have no closed form; use --engine numeric")
    curve = energy_curve(spec, engine=engine, frame=cfg.frame, h=cfg.h)
    scale = _energy_scale(cfg.units, curve.full_scale)
    drift = curve.norm_deviation
    if drift is None:
        drift = np.zeros_like(curve.energy)
    pops = curve.populations
    if pops.shape[1] == 2:  # qubit protocol: absent level 2
        pops = np.hstack([pops, np.zeros((pops.shape[0], 1))])
    rows = zip(
        curve.times / curve.t_m,
        curve.energy * scale,
        curve.energy / curve.full_scale,
        pops[:, 0],
        pops[:, 1],
        pops[:, 2],
        drift,
    )
    path = os.path.join(out_dir, f"{cfg.prefix}_curve.csv")
    _write_csv(path, ["t_over_tm", "E", "E_over_full_scale", "P0", "P1", "P2", "norm_drift"], rows)
    print(f"wrote {path} ({curve.times.size} points, engine={engine})")
    if plot:
        svg = os.path.join(out_dir, f"{cfg.prefix}_curve.svg")
        _plot_curve(svg, curve.times / curve.t_m, curve.energy / curve.full_scale,
                    "t / t_m", "E / full scale")
        print(f"wrote {svg}")


def cmd_sweep(cfg: RunConfig, out_dir: str, engine: str | None, seed: int | None,
              plot: bool) -> None:
    grid = cfg.eta_grid()
    if seed is None:
        seed = cfg.seed
    if cfg.cluster_model is not None:
        result = end_to_end_sweep(
            cfg.spectrum, cfg.kind, grid, cfg.g, cfg.shots, cfg.cluster_model, seed,
            t_m=cfg.t_m, sigma_ratio=cfg.sigma_ratio,
        )
    else:
        result = sweep_final_energy(
            cfg.spectrum, cfg.kind, grid, cfg.g, t_m=cfg.t_m,
            engine=engine or cfg.engine or "analytic",
            sigma_ratio=cfg.sigma_ratio, a=cfg.a, phi=cfg.phi, h=cfg.h,
        )
    scale = _energy_scale(cfg.units, result.full_scale)
    stderr = result.stderr if result.stderr is not None else np.zeros_like(result.energy)
    rows = zip(result.eta, result.energy * scale,
               result.energy / result.full_scale, stderr * scale)
    path = os.path.join(out_dir, f"{cfg.prefix}_sweep.csv")
    _write_csv(path, ["eta", "E", "E_over_full_scale", "stderr"], rows)
    print(f"wrote {path} ({grid.size} points)")
    if plot:
        svg = os.path.join(out_dir, f"{cfg.prefix}_sweep.svg")
        _plot_curve(svg, result.eta, result.energy / result.full_scale,
                    "eta", "E / full scale")
        print(f"wrote {svg}")


def cmd_charging_time(cfg: RunConfig, out_dir: str, threshold: float) -> None:
    spec = cfg.protocol()
    tc = charging_time_analytic(spec, threshold)
    energy = float(analytic.analytic_energy(spec, tc))
    print(f"threshold           : {threshold} of full scale ({_fmt(threshold * spec.full_scale)} rad/ns)")
    print(f"charging time t_c   : {_fmt(tc)} ns")
    print(f"t_c / t_m           : {_fmt(tc / spec.t_m)}")
    print(f"average power E/t_c : {_fmt(energy / tc)} rad/ns^2")


def cmd_readout(cfg: RunConfig, out_dir: str, seed: int | None) -> None:
    if cfg.cluster_model is None:
        raise ConfigError("readout command needs a [readout] cluster model in the config")
    if seed is None:
        seed = cfg.seed
    classifier = classifier_from_model(cfg.cluster_model)
    grid = cfg.eta_grid()
    rows = []
    for i, eta in enumerate(grid):
        spec = cfg.protocol(eta)
        state = analytic.analytic_state(spec, cfg.t_m)
        probs = np.array(measure_populations(state))
        if probs.size == 2:
            probs = np.append(probs, 0.0)
        labels, points, _ = run_shot(probs, cfg.shots, cfg.cluster_model, classifier, seed, i)
        assigned = classifier.classify(points)
        for s in range(cfg.shots):
            rows.append((eta, s, points[s, 0], points[s, 1], labels[s], assigned[s]))
    path = os.path.join(out_dir, f"{cfg.prefix}_shots.csv")
    _write_csv(path, ["eta", "shot", "I", "Q", "true_label", "assigned_label"], rows)
    print(f"wrote {path} ({len(rows)} shots over {grid.size} grid points)")


def cmd_table1(cfg: RunConfig, out_dir: str) -> None:
    rows = table1(cfg.spectrum, g=cfg.g, t_m=cfg.t_m, sigma_ratio=cfg.sigma_ratio)
    print(f"{'a':>5} {'phi':>8} {'E_thr':>6} {'reported':>9} {'recomputed':>11}")
    for r in rows:
        print(f"{r.a:>5.2f} {r.phi:>8.4f} {r.threshold:>6.2f} "
              f"{r.reported_tc:>9.2f} {r.recomputed_tc:>11.4f}")
    path = os.path.join(out_dir, f"{cfg.prefix}_table1.csv")
    _write_csv(
        path,
        ["a", "phi", "threshold", "reported_tc_over_tm", "recomputed_tc_over_tm"],
        ((r.a, r.phi, r.threshold, r.reported_tc, r.recomputed_tc) for r in rows),
    )
    print(f"wrote {path}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qbattery",
        description="Quantum-battery charging simulator (two- and three-level, Gaussian pulses)",
    )
    parser.add_argument("--config", required=True, help="path to the INI run configuration")
    parser.add_argument("--out", default=".", help="output directory (default: current)")
    parser.add_argument("--seed", type=int, default=None, help="override the readout RNG seed")
    parser.add_argument("--units", choices=["fraction", "rad_per_ns", "uev"], default=None,
                        help="override output energy units")
    parser.add_argument("--engine", choices=["analytic", "numeric"], default=None,
                        help="override the evaluation engine")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("spectrum", help="print the device level spectrum")
    p = sub.add_parser("simulate", help="write the stored-energy curve E(t)")
    p.add_argument("--plot", action="store_true", help="also write an SVG rendering")
    p = sub.add_parser("sweep", help="write the final-energy sweep E(eta)")
    p.add_argument("--plot", action="store_true", help="also write an SVG rendering")
    p = sub.add_parser("charging-time", help="report the charging time for a threshold")
    p.add_argument("--threshold", type=float, default=0.95,
                   help="threshold as a fraction of full scale (default 0.95)")
    sub.add_parser("readout", help="dump per-shot IQ points and labels")
    sub.add_parser("table1", help="print the charging-time table")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config)
        if args.units is not None:
            cfg = _replace(cfg, units=args.units)
        os.makedirs(args.out, exist_ok=True)
        if args.command == "spectrum":
            cmd_spectrum(cfg, args.out)
        elif args.command == "simulate":
            cmd_simulate(cfg, args.out, args.engine, args.plot or cfg.plot)
        elif args.command == "sweep":
            cmd_sweep(cfg, args.out, args.engine, args.seed, getattr(args, "plot", False) or cfg.plot)
        elif args.command == "charging-time":
            cmd_charging_time(cfg, args.out, args.threshold)
        elif args.command == "readout":
            cmd_readout(cfg, args.out, args.seed)
        elif args.command == "table1":
            cmd_table1(cfg, args.out)
        return 0
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except NotChargedError as exc:
        print(f"not charged: {exc}", file=sys.stderr)
        return EXIT_PHYSICS
    except QBatteryError as exc:
        print(f"physics error: {exc}", file=sys.stderr)
        return EXIT_PHYSICS
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


def _replace(cfg: RunConfig, **kw) -> RunConfig:
    import dataclasses

    return dataclasses.replace(cfg, **kw)


if __name__ == "__main__":
    sys.exit(main())
