#!/usr/bin/env python3
"""
Oracle-equivalence sweep: every library channel, every storage format and
every ordered target position or pair, compared against the dense Kraus-sum
oracle. Native gates run their native path; native and generic paths agree
bit for bit, which the permutation and phase tests check directly.
"""

import argparse
import itertools
import sys
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from tqdm import tqdm

from channels import LIBRARY_OPS, ChannelSpec, channel_from_name, random_kraus_channel
from hermitian import HermitianError, StorageFormat, random_hermitian, set_default_workers
from hermitian.formats import max_tile_exp
from kernels import apply
from reference_oracle import oracle_apply, relative_error


@dataclass
class CaseResult:
    channel: str
    format: str
    cases: int = 0
    max_error: float = 0.0
    tolerance: float = 1e-12

    @property
    def passed(self) -> bool:
        return self.cases > 0 and self.max_error <= self.tolerance


class OracleVerifier:
    """Runs the kernels against the oracle and keeps the worst error per (channel, format)"""

    def __init__(self, max_qubits: int = 8, seeds: int = 3, tile_exps: Sequence[int] = (0, 2, 5),
                 tolerance: float = 1e-12, min_qubits: int = 1):
        self.min_qubits = min_qubits
        self.max_qubits = max_qubits
        self.seeds = seeds
        self.tile_exps = tuple(tile_exps)
        self.tolerance = tolerance
        self.results: Dict[Tuple[str, str], CaseResult] = {}

    def formats(self, n: int) -> List[Tuple[str, StorageFormat, int]]:
        layouts = [("dense", StorageFormat.DENSE, 0), ("packed", StorageFormat.PACKED, 0)]
        for m in self.tile_exps:
            if m <= max_tile_exp(n):
                layouts.append((f"tiled(m={m})", StorageFormat.TILED, m))
        return layouts

    @staticmethod
    def channels(seed: int) -> List[ChannelSpec]:
        library = [channel_from_name(op) for op in LIBRARY_OPS]
        return library + [random_kraus_channel(2, 4, seed), random_kraus_channel(3, 2, seed)]

    def _record(self, name: str, layout: str, error: float):
        key = (name, layout)
        if key not in self.results:
            self.results[key] = CaseResult(name, layout, tolerance=self.tolerance)
        result = self.results[key]
        result.cases += 1
        result.max_error = max(result.max_error, error)

    @staticmethod
    def target_tuples(n: int, k: int) -> List[Tuple[int, ...]]:
        """Every ordered position or pair; one rotation per qubit set for k = 3"""
        if k <= 2:
            return list(itertools.permutations(range(n), k))
        sets = itertools.combinations(range(n), k)
        return [q[i % k:] + q[:i % k] for i, q in enumerate(sets)]

    def check(self, n: int, seed: int):
        start = random_hermitian(n, seed)
        layouts = self.formats(n)
        stored = {label: random_hermitian(n, seed, fmt, m) for label, fmt, m in layouts}
        for channel in self.channels(seed):
            variants = [""]
            if channel.unitary is not None and channel.k <= 2:
                variants.append("/direct")

            for qubits in self.target_tuples(n, channel.k):
                expected = oracle_apply(start, channel, qubits)
                for label in stored:
                    for suffix in variants:
                        h = stored[label].copy()
                        apply(h, channel, qubits, native=not suffix, direct_unitary=bool(suffix))
                        self._record(channel.name + suffix, label, relative_error(h, expected))

    def run(self, progress: bool = True) -> List[CaseResult]:
        grid = [(n, seed) for n in range(self.min_qubits, self.max_qubits + 1) for seed in range(self.seeds)]
        for n, seed in tqdm(grid, desc="verify", disable=not progress):
            self.check(n, seed)
        return list(self.results.values())


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = argparse.ArgumentParser(description="Verify every kernel path against the dense oracle")
    parser.add_argument("--max-qubits", dest="max_qubits", type=int, required=True, help="Largest qubit count")
    parser.add_argument("--seeds", type=int, default=3, help="Random operators per qubit count")
    parser.add_argument("--tile-exps", dest="tile_exps", type=str, default="0,2,5", help="Tile exponents to check")
    parser.add_argument("--threads", type=int, default=None, help="Worker threads")
    parser.add_argument("--tolerance", type=float, default=1e-12, help="Relative Frobenius tolerance")
    args = parser.parse_args(argv)

    print("🔍 Oracle Equivalence Sweep")
    print("=" * 60)
    try:
        tile_exps = [int(m) for m in args.tile_exps.split(",") if m.strip()]
        set_default_workers(args.threads)
        verifier = OracleVerifier(args.max_qubits, args.seeds, tile_exps, args.tolerance)
        results = verifier.run()
    except (HermitianError, ValueError) as e:
        print(f"❌ {e}", file=sys.stderr)
        return 1

    failures = 0
    for r in sorted(results, key=lambda r: (r.channel, r.format)):
        status = "PASS" if r.passed else "FAIL"
        failures += not r.passed
        print(f"{status}  {r.channel:22s} {r.format:12s} cases={r.cases:5d} max_rel_err={r.max_error:.3e}")

    print("=" * 60)
    if failures:
        print(f"❌ {failures} of {len(results)} cases failed", file=sys.stderr)
        return 1
    print(f"✅ All {len(results)} cases passed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
