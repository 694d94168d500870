#!/usr/bin/env python3
"""
Benchmark harness for channel application on stored hermitian operators

Each repetition times L layers; a layer applies the channel once at every
target position. Per-application time = interval / (L * positions).
"""

import argparse
import os
import sys
import time
from typing import List, Optional, Sequence, Tuple

from tqdm import tqdm

from bench_timing import BenchRecord, bandwidth_bytes, choose_layers, mean_and_ci95, write_csv
from channels import ChannelSpec, align, channel_from_name
from config_loader import BenchConfig, load_config
from hermitian import (
    HermitianError,
    StorageFormat,
    default_workers,
    max_workers,
    random_hermitian,
    set_default_workers,
)
from hermitian.formats import max_tile_exp
from kernels import apply
from reference_oracle import apply_embedded, embed_channel


def layer_positions(n: int, k: int) -> List[Tuple[int, ...]]:
    """k=1: every qubit; k>1: cyclic runs (q, q+1, ...) mod n, one per qubit"""
    if n < k:
        return []
    return [tuple((q + j) % n for j in range(k)) for q in range(n)]


class BenchWorkload:
    """Seeded operator evolving under repeated layers of one channel"""

    def __init__(self, channel: ChannelSpec, n: int, fmt: str, tile_exp: int = 5, seed: int = 0,
                 workers: Optional[int] = None):
        self.channel = channel
        self.n = n
        self.format = fmt
        self.workers = workers
        self.positions = layer_positions(n, channel.k)
        self.m = min(tile_exp, max_tile_exp(n))

        if fmt == "naive":
            # extended Kraus matrices are assembled outside the timed region
            self.h = random_hermitian(n, seed, StorageFormat.DENSE)
            self.extended = []
            for qubits in self.positions:
                aligned, targets = align(channel, qubits)
                self.extended.append(embed_channel(aligned.kraus, targets, n))
        else:
            self.h = random_hermitian(n, seed, fmt, self.m)

    def run_layer(self):
        if self.format == "naive":
            for extended in self.extended:
                apply_embedded(self.h, extended)
            return
        for qubits in self.positions:
            apply(self.h, self.channel, qubits, workers=self.workers)

    def run(self, layers: int) -> float:
        """Wall time of `layers` consecutive layers"""
        start = time.perf_counter()
        for _ in range(layers):
            self.run_layer()
        return time.perf_counter() - start


def config_sidecar(csv_path: str) -> str:
    """The resolved configuration is saved next to the CSV under the same stem"""
    return os.path.splitext(csv_path)[0] + ".yaml"


def calibrate_layers(workload: BenchWorkload, min_interval: float, max_layers: Optional[int] = None) -> int:
    """Grow L from 1 until one timed run of L layers takes at least min_interval"""
    layers = 1
    while True:
        elapsed = workload.run(layers)
        if elapsed >= min_interval or (max_layers is not None and layers >= max_layers):
            return layers
        grown = choose_layers(elapsed / layers, min_interval, max_layers) if elapsed > 0 else 10 * layers
        layers = max(grown, layers + 1)
        if max_layers is not None:
            layers = min(layers, max_layers)


def measure(workload: BenchWorkload, cfg: BenchConfig) -> BenchRecord:
    workload.run(1)  # warm-up

    if cfg.auto_layers:
        layers = calibrate_layers(workload, cfg.min_interval, cfg.max_layers)
    else:
        layers = cfg.layers

    per_application = layers * len(workload.positions)
    samples = [workload.run(layers) / per_application for _ in range(cfg.reps)]
    mean, ci95 = mean_and_ci95(samples)
    size = bandwidth_bytes(workload.n, workload.m, workload.format)
    bandwidth = size / mean if mean > 0 else 0.0
    return BenchRecord(cfg.op, workload.n, workload.format, mean, ci95, bandwidth, layers, cfg.reps)


def run_benchmark(cfg: BenchConfig, progress: bool = True) -> List[BenchRecord]:
    channel = channel_from_name(cfg.op, cfg.p, cfg.theta, cfg.gamma)
    previous = default_workers()
    set_default_workers(cfg.threads or max_workers())

    cases = [(n, fmt) for n in range(cfg.min_qubits, cfg.max_qubits + 1) for fmt in cfg.formats]
    records = []
    try:
        for n, fmt in tqdm(cases, desc=f"bench {cfg.op}", disable=not progress):
            workload = BenchWorkload(channel, n, fmt, cfg.tile_exp, cfg.seed)
            if not workload.positions:
                continue
            records.append(measure(workload, cfg))
    finally:
        set_default_workers(previous)
    return records


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description="Channel application benchmark on hermitian storage formats")

    # Configuration file
    parser.add_argument("--config", type=str, default=None, help="Path to YAML preset")

    # Overrides (None = keep preset/default)
    parser.add_argument("--op", type=str, help="x|y|z|s|t|rz|h|cnot|swap|toffoli|depolarising|amplitude-damping|dephasing")
    parser.add_argument("--p", type=float, help="Channel probability")
    parser.add_argument("--gamma", type=float, help="Amplitude damping rate (defaults to --p)")
    parser.add_argument("--theta", type=float, help="RZ angle")
    parser.add_argument("--min-qubits", dest="min_qubits", type=int, help="Smallest qubit count")
    parser.add_argument("--max-qubits", dest="max_qubits", type=int, help="Largest qubit count")
    parser.add_argument("--formats", type=str, help="Comma-separated subset of tiled,packed,dense,naive")
    parser.add_argument("--tile-exp", dest="tile_exp", type=int, help="Tile exponent m (M = 2^m)")
    parser.add_argument("--reps", type=int, help="Timed repetitions")
    parser.add_argument("--layers", type=str, help="'auto' or a fixed layer count")
    parser.add_argument("--min-interval", dest="min_interval", type=float, help="Auto-layer floor in seconds")
    parser.add_argument("--max-layers", dest="max_layers", type=int, help="Auto-layer cap")
    parser.add_argument("--threads", type=int, help="Worker threads (default: all cores)")
    parser.add_argument("--seed", type=int, help="Seed of the random operator")
    parser.add_argument("--out", type=str, help="Output CSV path")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)

    print("📊 Hermitian Conjugation Benchmark")
    print("=" * 60)

    try:
        config = load_config(args.config, args)

        print("📋 Final configuration:")
        for key, value in config.to_dict().items():
            print(f"   {key}: {value}")
        print()

        print(f"🚀 Running {config.op} for n = {config.min_qubits}..{config.max_qubits} "
              f"on {', '.join(config.formats)}")
        records = run_benchmark(config)

        print()
        for r in records:
            print(f"   n={r.n:2d} {r.format:6s} {r.mean_seconds * 1e6:12.3f} µs ± {r.ci95_seconds * 1e6:.3f} "
                  f"| {r.bandwidth_bytes_per_s / 1e9:7.3f} GB/s | L={r.layers}")

        write_csv(records, config.out)
        print(f"💾 Results saved to: {config.out}")
        config_path = config_sidecar(config.out)
        config.save_yaml(config_path)
        print(f"💾 Configuration saved to: {config_path}")
    except (HermitianError, OSError, ValueError) as e:
        print(f"❌ {e}", file=sys.stderr)
        return 1

    print("=" * 60)
    print(f"✅ {len(records)} measurements complete")
    return 0


if __name__ == "__main__":
    sys.exit(main())
