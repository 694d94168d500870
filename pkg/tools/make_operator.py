#!/usr/bin/env python3
"""
Write a seeded random operator to the binary operator file format
"""

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from hermitian import (  # noqa: E402
    HermitianError,
    StorageFormat,
    footprint_bytes,
    random_density_matrix,
    random_hermitian,
    save,
)


def main():
    parser = argparse.ArgumentParser(description="Create a random hermitian operator file")
    parser.add_argument("--output", type=str, required=True, help="Output file path")
    parser.add_argument("--n", type=int, default=4, help="Number of qubits")
    parser.add_argument("--format", type=str, default="tiled", choices=["dense", "packed", "tiled"],
                        help="Storage format")
    parser.add_argument("--m", type=int, default=5, help="Tile exponent (tiled only)")
    parser.add_argument("--seed", type=int, default=0, help="Random seed")
    parser.add_argument("--density", action="store_true",
                        help="Positive unit-trace density matrix instead of a generic hermitian operator")
    args = parser.parse_args()

    make = random_density_matrix if args.density else random_hermitian
    try:
        h = make(args.n, args.seed, args.format, args.m)
        Path(args.output).parent.mkdir(parents=True, exist_ok=True)
        save(h, args.output)
    except (HermitianError, OSError) as e:
        print(f"❌ {e}", file=sys.stderr)
        sys.exit(1)

    kind = "density matrix" if args.density else "hermitian operator"
    print(f"✅ Created {kind}: n={h.n}, format={h.format.label}, m={h.m}")
    print(f"📊 Payload: {footprint_bytes(h.n, h.m, StorageFormat.parse(args.format)):,} bytes")
    print(f"💾 Saved to: {args.output}")


if __name__ == "__main__":
    main()
