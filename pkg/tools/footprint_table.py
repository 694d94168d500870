#!/usr/bin/env python3
"""
Memory footprint of the three storage formats over a qubit range
"""

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from hermitian import StorageFormat, footprint_bytes  # noqa: E402

UNITS = ("B", "KiB", "MiB", "GiB", "TiB")


def human(nbytes: int) -> str:
    value = float(nbytes)
    for unit in UNITS:
        if value < 1024 or unit == UNITS[-1]:
            return f"{value:.2f} {unit}" if unit != "B" else f"{nbytes} B"
        value /= 1024


def main():
    parser = argparse.ArgumentParser(description="Print the storage footprint comparison table")
    parser.add_argument("--qubits", type=str, default="1,2,5,10,15", help="Comma-separated qubit counts")
    parser.add_argument("--m", type=int, default=5, help="Tile exponent")
    args = parser.parse_args()

    print(f"📊 Footprint per format (m = {args.m}, M = {1 << args.m})")
    print("=" * 60)
    print(f"{'n':>3} | {'dense':>12} | {'packed':>12} | {'tiled':>12} | tiled/dense")
    print("-" * 60)
    for n in (int(q) for q in args.qubits.split(",") if q.strip()):
        dense = footprint_bytes(n, args.m, StorageFormat.DENSE)
        packed = footprint_bytes(n, args.m, StorageFormat.PACKED)
        tiled = footprint_bytes(n, args.m, StorageFormat.TILED)
        print(f"{n:>3} | {human(dense):>12} | {human(packed):>12} | {human(tiled):>12} | {tiled / dense:.4f}")


if __name__ == "__main__":
    main()
