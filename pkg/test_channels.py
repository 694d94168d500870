"""Tests for Kraus sets, transfer matrices and the gate/channel library"""

import math

import numpy as np
import pytest

from channels import (
    LIBRARY_OPS,
    ChannelKind,
    KrausSet,
    Physicality,
    TransferMatrix,
    align,
    amplitude_damping,
    channel_from_name,
    dephasing,
    depolarising,
    dual_channel,
    kraus_remix,
    native_gate,
    random_kraus_channel,
    transfer_from_kraus,
    unvec,
    validate_cptni,
    vec,
)
from channels.library import PAULI_X
from hermitian import ChannelError, TargetError, UnknownGateError


def _random_unitary(rng, d):
    q, r = np.linalg.qr(rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d)))
    return q * (np.diag(r) / np.abs(np.diag(r)))


class TestVectorization:

    def test_column_stacking(self):
        block = np.arange(4).reshape(2, 2)
        np.testing.assert_array_equal(vec(block), [0, 2, 1, 3])
        np.testing.assert_array_equal(unvec(vec(block)), block)


class TestTransferMatrix:

    def test_identity(self):
        S = transfer_from_kraus(KrausSet.of(np.eye(2)))
        np.testing.assert_array_equal(S.entries, np.eye(4))

    def test_pauli_x(self):
        S = transfer_from_kraus(KrausSet.of(PAULI_X)).entries
        expected = np.zeros((4, 4))
        expected[[3, 2, 1, 0], [0, 1, 2, 3]] = 1
        np.testing.assert_array_equal(S, expected)

    def test_shape_check(self):
        with pytest.raises(ChannelError):
            TransferMatrix(1, np.eye(8))

    def test_read_only(self):
        S = depolarising(0.1).transfer
        with pytest.raises(ValueError):
            S.entries[0, 0] = 2.0

    @pytest.mark.parametrize("op", LIBRARY_OPS)
    def test_matches_kraus_sum(self, op, random_block):
        channel = channel_from_name(op)
        for _ in range(20):
            B = random_block(channel.kraus.dim)
            np.testing.assert_allclose(channel.transfer.apply_local(B), channel.kraus.apply_local(B),
                                       rtol=0, atol=1e-13)

    @pytest.mark.parametrize("k, rank", [(1, 3), (2, 4), (2, 16), (3, 2)])
    def test_random_channels_match_kraus_sum(self, k, rank, random_block):
        channel = random_kraus_channel(k, rank, seed=k * 10 + rank)
        for _ in range(10):
            B = random_block(1 << k)
            np.testing.assert_allclose(channel.transfer.apply_local(B), channel.kraus.apply_local(B),
                                       rtol=0, atol=1e-12)

    def test_representation_independence(self, rng):
        ks = random_kraus_channel(2, 4, seed=5).kraus
        remixed = kraus_remix(ks, _random_unitary(rng, 4))
        np.testing.assert_allclose(transfer_from_kraus(remixed).entries, transfer_from_kraus(ks).entries,
                                   rtol=0, atol=1e-13)

    def test_remix_shape(self):
        with pytest.raises(ChannelError):
            kraus_remix(depolarising(0.1).kraus, np.eye(3))


class TestKrausSet:

    def test_rank_bound(self):
        with pytest.raises(ChannelError):
            KrausSet(tuple(np.eye(2) for _ in range(5)))

    def test_mixed_shapes(self):
        with pytest.raises(ChannelError):
            KrausSet.of(np.eye(2), np.eye(4))

    @pytest.mark.parametrize("dim", [3, 16])
    def test_bad_dimension(self, dim):
        with pytest.raises(ChannelError):
            KrausSet.of(np.eye(dim))

    def test_empty(self):
        with pytest.raises(ChannelError):
            KrausSet(())

    def test_operators_are_copies(self):
        op = np.eye(2, dtype=np.complex128)
        ks = KrausSet.of(op)
        op[0, 0] = 5
        assert ks.operators[0][0, 0] == 1
        assert (ks.k, ks.dim, ks.rank) == (1, 2, 1)


class TestLibrary:

    def test_depolarising_on_ground_state(self):
        rho = np.diag([1.0, 0.0]).astype(np.complex128)
        out = depolarising(0.1).kraus.apply_local(rho)
        np.testing.assert_allclose(out, np.diag([14 / 15, 1 / 15]), rtol=0, atol=1e-15)

    def test_depolarising_zero_is_identity(self):
        np.testing.assert_allclose(depolarising(0.0).transfer.entries, np.eye(4), rtol=0, atol=0)

    @pytest.mark.parametrize("p", [-0.1, 1.5, math.nan])
    def test_probability_range(self, p):
        with pytest.raises(ChannelError):
            depolarising(p)
        with pytest.raises(ChannelError):
            amplitude_damping(p)

    @pytest.mark.parametrize("name, kind, k", [
        ("x", ChannelKind.PAULI_X, 1),
        ("y", ChannelKind.PAULI_Y, 1),
        ("z", ChannelKind.DIAGONAL_PHASE, 1),
        ("s", ChannelKind.DIAGONAL_PHASE, 1),
        ("t", ChannelKind.DIAGONAL_PHASE, 1),
        ("rz", ChannelKind.DIAGONAL_PHASE, 1),
        ("h", ChannelKind.HADAMARD, 1),
        ("cnot", ChannelKind.PERMUTATION, 2),
        ("swap", ChannelKind.PERMUTATION, 2),
        ("toffoli", ChannelKind.PERMUTATION, 3),
        ("ccx", ChannelKind.PERMUTATION, 3),
    ])
    def test_native_kinds(self, name, kind, k):
        gate = native_gate(name, 0.3)
        assert gate.kind is kind and gate.k == k
        U = gate.unitary
        np.testing.assert_allclose(U.conj().T @ U, np.eye(1 << k), rtol=0, atol=1e-15)

    def test_cnot_table(self):
        gate = native_gate("cnot")
        assert gate.permutation == (0, 1, 3, 2)
        U = gate.unitary
        assert U[3, 2] == 1 and U[2, 3] == 1

    def test_toffoli_table(self):
        assert native_gate("toffoli").permutation == (0, 1, 2, 3, 4, 5, 7, 6)

    def test_rz_zero_is_identity(self):
        np.testing.assert_allclose(native_gate("rz", 0.0).transfer.entries, np.eye(4), rtol=0, atol=0)

    def test_rz_phases(self):
        phases = native_gate("rz", 0.8).phases
        np.testing.assert_allclose(phases, [np.exp(-0.4j), np.exp(0.4j)], rtol=0, atol=1e-15)

    def test_unknown_gate(self):
        with pytest.raises(UnknownGateError):
            native_gate("fredkin")
        with pytest.raises(UnknownGateError):
            channel_from_name("bogus")

    def test_channel_from_name(self):
        assert channel_from_name("depolarizing").name == "depolarising"
        assert channel_from_name("amplitude_damping", p=0.3).name == "amplitude-damping"
        damped = channel_from_name("amplitude-damping", p=0.3, gamma=0.5)
        assert damped.kraus.operators[1][0, 1] == pytest.approx(math.sqrt(0.5))

    def test_dephasing_kills_coherence(self):
        out = dephasing(0.5).kraus.apply_local(np.ones((2, 2), dtype=np.complex128))
        np.testing.assert_allclose(out, np.eye(2), rtol=0, atol=1e-15)

    def test_amplitude_damping_to_ground(self):
        out = amplitude_damping(1.0).kraus.apply_local(np.diag([0.0, 1.0]).astype(np.complex128))
        np.testing.assert_allclose(out, np.diag([1.0, 0.0]), rtol=0, atol=0)

    def test_random_channel_rank(self):
        with pytest.raises(ChannelError):
            random_kraus_channel(1, 5, seed=0)
        assert random_kraus_channel(2, 3, seed=0).kraus.rank == 3


class TestValidation:

    @pytest.mark.parametrize("op", LIBRARY_OPS)
    def test_library_is_trace_preserving(self, op):
        report = validate_cptni(channel_from_name(op).kraus)
        assert report.classification is Physicality.TRACE_PRESERVING
        assert report.is_physical and report.trace_preserving

    def test_random_channel_is_trace_preserving(self):
        for k in (1, 2, 3):
            report = validate_cptni(random_kraus_channel(k, 2, seed=k).kraus)
            assert report.trace_preserving

    def test_trace_non_increasing(self):
        report = validate_cptni(KrausSet.of(0.5 * np.eye(2)))
        assert report.classification is Physicality.TRACE_NON_INCREASING

    def test_invalid(self):
        report = validate_cptni(KrausSet.of(2.0 * np.eye(2)))
        assert report.classification is Physicality.INVALID
        assert not report.is_physical

    def test_sum_of_products(self):
        ks = depolarising(0.3).kraus
        total = sum(op.conj().T @ op for op in ks)
        np.testing.assert_allclose(total, np.eye(2), rtol=0, atol=1e-15)


class TestDual:

    def test_involution(self):
        ks = random_kraus_channel(2, 3, seed=1).kraus
        twice = dual_channel(dual_channel(ks))
        for a, b in zip(twice, ks):
            np.testing.assert_array_equal(a, b)

    def test_unitary_dual_is_adjoint(self):
        U = native_gate("t").unitary
        np.testing.assert_array_equal(dual_channel(KrausSet.of(U)).operators[0], U.conj().T)

    def test_depolarising_is_self_dual(self):
        ks = depolarising(0.2).kraus
        for a, b in zip(dual_channel(ks), ks):
            np.testing.assert_array_equal(a, b)

    def test_native_kinds_survive(self):
        dual = native_gate("s").dual()
        assert dual.kind is ChannelKind.DIAGONAL_PHASE
        assert dual.phases == (1, -1j)
        toffoli = native_gate("toffoli").dual()
        assert toffoli.permutation == (0, 1, 2, 3, 4, 5, 7, 6)

    def test_trace_duality_on_blocks(self, random_block):
        channel = random_kraus_channel(1, 3, seed=9)
        rho, obs = random_block(2), random_block(2)
        lhs = np.trace(channel.kraus.apply_local(rho) @ obs)
        rhs = np.trace(rho @ dual_channel(channel.kraus).apply_local(obs))
        assert abs(lhs - rhs) <= 1e-13


class TestAlign:

    def test_ascending_order_unchanged(self):
        gate = native_gate("cnot")
        aligned, targets = align(gate, (3, 1))
        assert aligned is gate
        assert targets.positions == (1, 3)

    def test_swapped_order(self):
        aligned, targets = align(native_gate("cnot"), (1, 3))
        assert targets.positions == (1, 3)
        assert aligned.permutation == (0, 3, 2, 1)

    def test_toffoli_reorder(self):
        # control on qubits 0 and 2, X-target on qubit 1: local bit 1 flips when bits 0 and 2 are set
        aligned, _ = align(native_gate("toffoli"), (0, 2, 1))
        table = aligned.permutation
        assert table[0b101] == 0b111 and table[0b111] == 0b101
        assert all(table[x] == x for x in range(8) if x not in (0b101, 0b111))

    def test_arity_mismatch(self):
        with pytest.raises(TargetError):
            align(native_gate("cnot"), (1,))
        with pytest.raises(TargetError):
            align(native_gate("swap"), (2, 2))

    def test_unitary_follows_table(self):
        aligned, _ = align(native_gate("cnot"), (0, 1))
        U = aligned.unitary
        for x, y in enumerate(aligned.permutation):
            assert U[y, x] == 1
