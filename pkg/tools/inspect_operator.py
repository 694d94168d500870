#!/usr/bin/env python3
"""
Inspect an operator file: header, footprint, trace and hermiticity
"""

import argparse
import sys
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from hermitian import (  # noqa: E402
    HermitianError,
    StorageFormat,
    footprint_bytes,
    frobenius_norm,
    hermiticity_residual,
    load,
    trace,
)


def main():
    parser = argparse.ArgumentParser(description="Inspect a hermitian operator file")
    parser.add_argument("--input", type=str, required=True, help="Operator file")
    parser.add_argument("--show", type=int, default=0, help="Print the top-left k x k corner")
    parser.add_argument("--tolerance", type=float, default=1e-10, help="Hermiticity residual threshold")
    args = parser.parse_args()

    try:
        h = load(args.input)
    except (HermitianError, OSError) as e:
        print(f"❌ {e}", file=sys.stderr)
        sys.exit(1)

    print(f"📂 Loaded: {args.input}")
    print(f"  Format: {h.format.label} (tag {int(h.format)})")
    print(f"  Qubits: {h.n} (N = {h.dim})")
    if h.format is StorageFormat.TILED:
        print(f"  Tiles:  M = {h.M}, {h.n_tiles} stored of {h.tiles_per_side}x{h.tiles_per_side}")
    stored = footprint_bytes(h.n, h.m, h.format)
    dense = footprint_bytes(h.n, 0, StorageFormat.DENSE)
    print(f"  Footprint: {stored:,} bytes ({stored / dense:.3f} of dense)")

    print("\n🔍 Checks:")
    residual = hermiticity_residual(h)
    print(f"  trace          = {trace(h):.12g}")
    print(f"  frobenius norm = {frobenius_norm(h):.12g}")
    print(f"  mirror residual= {residual:.3e}")

    if args.show:
        k = min(args.show, h.dim)
        with np.printoptions(precision=4, suppress=True, linewidth=140):
            print(f"\n📊 Top-left {k}x{k}:")
            print(h.to_matrix()[:k, :k])

    if residual > args.tolerance:
        print(f"\n❌ Operator is not hermitian within {args.tolerance}")
        sys.exit(1)
    print("\n✅ Operator is hermitian")


if __name__ == "__main__":
    main()
