"""
Timing statistics and CSV output for the benchmark harness
"""

import csv
import math
import os
from dataclasses import astuple, dataclass
from typing import Iterable, List, Optional, Sequence

import numpy as np
from scipy import stats

from hermitian import StorageFormat, footprint_bytes

CSV_HEADER = ("operation", "n", "format", "mean_seconds", "ci95_seconds",
              "bandwidth_bytes_per_s", "layers", "reps")


@dataclass(frozen=True)
class BenchRecord:
    """One measurement: mean time of a single channel application"""

    operation: str
    n: int
    format: str
    mean_seconds: float
    ci95_seconds: float
    bandwidth_bytes_per_s: float
    layers: int
    reps: int

    def __post_init__(self):
        for name in ("mean_seconds", "ci95_seconds", "bandwidth_bytes_per_s"):
            value = getattr(self, name)
            if not math.isfinite(value) or value < 0:
                raise ValueError(f"{name} must be finite and non-negative, got {value}")


def mean_and_ci95(samples: Sequence[float]) -> tuple:
    """Mean and Student-t 95% half-width with len(samples) - 1 degrees of freedom"""
    samples = np.asarray(samples, dtype=np.float64)
    mean = float(samples.mean())
    if samples.size < 2:
        return mean, 0.0
    sem = samples.std(ddof=1) / math.sqrt(samples.size)
    return mean, float(stats.t.ppf(0.975, samples.size - 1) * sem)


def choose_layers(layer_seconds: float, min_interval: float, max_layers: Optional[int] = None) -> int:
    """Smallest L whose timed interval reaches min_interval, optionally capped at max_layers"""
    if layer_seconds <= 0:
        if max_layers is None:
            raise ValueError("an uncapped layer count needs a positive per-layer time")
        return max_layers
    layers = max(math.ceil(min_interval / layer_seconds), 1)
    return int(layers if max_layers is None else min(layers, max_layers))


def bandwidth_bytes(n: int, m: int, fmt: str) -> int:
    """Logical data size: N(N+M)/2 * 16 for tiled and packed, N^2 * 16 for dense"""
    if fmt in ("tiled", "packed"):
        return footprint_bytes(n, m, StorageFormat.TILED)
    return footprint_bytes(n, m, StorageFormat.DENSE)


def write_csv(records: Iterable[BenchRecord], destination):
    if hasattr(destination, "write"):
        _write_rows(records, destination)
        return
    os.makedirs(os.path.dirname(os.fspath(destination)) or ".", exist_ok=True)
    with open(destination, "w", newline="") as f:
        _write_rows(records, f)


def _write_rows(records: Iterable[BenchRecord], stream):
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for record in records:
        writer.writerow([repr(v) if isinstance(v, float) else v for v in astuple(record)])


def read_csv(source) -> List[BenchRecord]:
    if hasattr(source, "read"):
        return _read_rows(source)
    with open(source, "r", newline="") as f:
        return _read_rows(f)


def _read_rows(stream) -> List[BenchRecord]:
    reader = csv.DictReader(stream)
    if tuple(reader.fieldnames or ()) != CSV_HEADER:
        raise ValueError(f"unexpected CSV header {reader.fieldnames}")
    return [
        BenchRecord(
            operation=row["operation"],
            n=int(row["n"]),
            format=row["format"],
            mean_seconds=float(row["mean_seconds"]),
            ci95_seconds=float(row["ci95_seconds"]),
            bandwidth_bytes_per_s=float(row["bandwidth_bytes_per_s"]),
            layers=int(row["layers"]),
            reps=int(row["reps"]),
        )
        for row in reader
    ]
