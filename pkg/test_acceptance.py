"""End-to-end sweeps: oracle equivalence, preservation, duality, exactness, determinism, benchmark"""

import itertools
import time

import numpy as np
import pytest

import bench
import verify
from bench_timing import read_csv
from channels import LIBRARY_OPS, channel_from_name, native_gate, random_kraus_channel
from hermitian import (
    expectation,
    footprint_bytes,
    hermiticity_residual,
    max_workers,
    random_density_matrix,
    random_hermitian,
    trace,
)
from kernels import KernelPath, apply

FORMATS = [("dense", 0), ("packed", 0), ("tiled", 0), ("tiled", 2), ("tiled", 5)]


class TestOracleSweep:

    def test_small_sweep(self):
        verifier = verify.OracleVerifier(max_qubits=3, seeds=1)
        results = verifier.run(progress=False)
        assert results
        failed = [r for r in results if not r.passed]
        assert not failed, failed

    def test_cli(self, capsys):
        assert verify.main(["--max-qubits", "2", "--seeds", "1", "--tile-exps", "0,5"]) == 0
        out = capsys.readouterr().out
        assert "PASS" in out and "FAIL" not in out

    def test_cli_reports_failure(self, capsys):
        assert verify.main(["--max-qubits", "2", "--seeds", "1", "--tolerance", "-1"]) == 1
        assert "FAIL" in capsys.readouterr().out

    def test_case_grid(self):
        verifier = verify.OracleVerifier(max_qubits=3, seeds=1, tile_exps=(0, 2, 5))
        assert [label for label, _, _ in verifier.formats(3)] == ["dense", "packed", "tiled(m=0)", "tiled(m=2)",
                                                                   "tiled(m=5)"]
        names = [c.name for c in verifier.channels(0)]
        assert len(names) == len(LIBRARY_OPS) + 2

    def test_target_tuples(self):
        assert verify.OracleVerifier.target_tuples(4, 1) == [(0,), (1,), (2,), (3,)]
        assert verify.OracleVerifier.target_tuples(4, 2) == list(itertools.permutations(range(4), 2))
        triples = verify.OracleVerifier.target_tuples(4, 3)
        assert triples == [(0, 1, 2), (1, 3, 0), (3, 0, 2), (1, 2, 3)]
        assert sorted(tuple(sorted(t)) for t in triples) == list(itertools.combinations(range(4), 3))

    @pytest.mark.slow
    def test_full_sweep(self):
        started = time.perf_counter()
        results = verify.OracleVerifier(max_qubits=8, seeds=3, tile_exps=(0, 2, 5)).run(progress=False)
        assert time.perf_counter() - started <= 600
        failed = [r for r in results if not r.passed]
        assert not failed, failed


class TestFootprintTable:

    def test_rows(self):
        rows = {n: footprint_bytes(n, 5, "tiled") for n in (1, 2, 5, 10, 15)}
        assert rows == {1: 16384, 2: 16384, 5: 16384, 10: 8_650_752, 15: 8_598_323_200}


class TestSustainedEvolution:

    def test_hundred_random_channels(self):
        rng = np.random.default_rng(2024)
        rho = random_density_matrix(6, 0, "tiled", 2)
        for step in range(100):
            k = int(rng.integers(1, 4))
            rank = int(rng.integers(1, 5))
            channel = random_kraus_channel(k, rank, seed=step)
            qubits = tuple(int(q) for q in rng.permutation(6)[:k])
            apply(rho, channel, qubits)
        assert hermiticity_residual(rho) <= 1e-10
        assert abs(trace(rho) - 1.0) <= 1e-9

    def test_library_layers(self):
        h = random_hermitian(6, 1, "tiled", 2)
        start_trace = trace(h)
        for op in LIBRARY_OPS:
            channel = channel_from_name(op)
            for q in range(6):
                apply(h, channel, tuple((q + j) % 6 for j in range(channel.k)))
        assert hermiticity_residual(h) <= 1e-10
        assert abs(trace(h) - start_trace) <= 1e-9 * max(1.0, abs(start_trace))


class TestSubcaseExercise:

    def test_counters_in_n7_m2_sweep(self):
        totals = {"cross_tile": 0, "cross_tile_adj": 0, "cross_tile_diag": 0}
        for a in range(7):
            h = random_hermitian(7, a, "tiled", 2)
            plan = apply(h, channel_from_name("depolarising"), a)
            if a < 2:
                assert plan.path is KernelPath.TILED_INTRA
                continue
            assert plan.path is KernelPath.TILED_CROSS
            assert plan.case_counts["cross_tile_diag"] == 16
            for name in totals:
                totals[name] += plan.case_counts[name]
        assert all(count > 0 for count in totals.values())


@pytest.mark.slow
class TestFullSweeps:

    def test_duality(self):
        for n in range(1, 7):
            for op in LIBRARY_OPS:
                channel = channel_from_name(op)
                if channel.k > n:
                    continue
                for fmt, m in [("dense", 0), ("packed", 0), ("tiled", 2)]:
                    for qubits in itertools.permutations(range(n), channel.k):
                        rho = random_density_matrix(n, n, fmt, m)
                        obs = random_hermitian(n, n + 1, fmt, m)
                        evolved_rho, evolved_obs = rho.copy(), obs.copy()
                        apply(evolved_rho, channel, qubits)
                        apply(evolved_obs, channel.dual(), qubits)
                        assert abs(expectation(evolved_rho, obs) - expectation(rho, evolved_obs)) <= 1e-11

    def test_permutation_exactness(self):
        for name in ("x", "cnot", "swap", "toffoli"):
            gate = native_gate(name)
            for n in range(gate.k, 7):
                for fmt, m in FORMATS:
                    start = random_hermitian(n, n, fmt, m)
                    for qubits in itertools.permutations(range(n), gate.k):
                        native, generic = start.copy(), start.copy()
                        apply(native, gate, qubits)
                        apply(generic, gate, qubits, native=False)
                        np.testing.assert_array_equal(native.data, generic.data)

    def test_thread_determinism(self):
        workers = max(2, max_workers())
        channels = [channel_from_name(op) for op in LIBRARY_OPS]
        channels += [random_kraus_channel(2, 4, seed=0), random_kraus_channel(3, 2, seed=0)]
        for n in range(1, 7):
            for fmt, m in FORMATS:
                start = random_hermitian(n, n, fmt, m)
                for channel in channels:
                    for qubits in itertools.permutations(range(n), channel.k):
                        single, many = start.copy(), start.copy()
                        apply(single, channel, qubits, workers=1)
                        apply(many, channel, qubits, workers=workers)
                        np.testing.assert_array_equal(many.data, single.data)

    def test_benchmark_direction(self, tmp_path):
        out = tmp_path / "bench.csv"
        code = bench.main(["--op", "depolarising", "--min-qubits", "3", "--max-qubits", "10",
                           "--formats", "tiled,packed,dense", "--reps", "3", "--out", str(out)])
        assert code == 0
        records = read_csv(out)
        assert len(records) == 8 * 3
        at_ten = {r.format: r.mean_seconds for r in records if r.n == 10}
        assert at_ten["dense"] > at_ten["tiled"]
