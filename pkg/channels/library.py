"""
Gate and channel library

Every constructor returns a ChannelSpec whose operators are written in gate
order: the first listed qubit is the most significant local bit, so for
CNOT(control, target) the control is bit 1. `align` re-expresses a spec in
the ascending-qubit order the kernels use (bit l of a local index belongs to
the l-th smallest target).
"""

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Optional, Tuple, Union

import numpy as np

from hermitian.common import ActiveQubits
from hermitian.errors import ChannelError, TargetError, UnknownGateError

from .kraus import (
    KrausSet,
    TransferMatrix,
    dual_channel,
    permute_local_bits,
    permute_table,
    transfer_from_kraus,
)

PHASE_TOLERANCE = 1e-15

I2 = np.eye(2, dtype=np.complex128)
PAULI_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)
HADAMARD = np.array([[1, 1], [1, -1]], dtype=np.complex128) / math.sqrt(2)


class ChannelKind(str, Enum):
    GENERIC_KRAUS = "generic-kraus"
    PAULI_X = "pauli-x"
    PAULI_Y = "pauli-y"
    DIAGONAL_PHASE = "diagonal-phase"
    HADAMARD = "hadamard"
    PERMUTATION = "permutation"


SINGLE_QUBIT_KINDS = (ChannelKind.PAULI_X, ChannelKind.PAULI_Y, ChannelKind.DIAGONAL_PHASE, ChannelKind.HADAMARD)


@dataclass(frozen=True, eq=False)
class ChannelSpec:
    """A k-local operation plus what its specialised kernels need"""

    name: str
    kind: ChannelKind
    kraus: KrausSet
    phases: Optional[Tuple[complex, complex]] = None
    permutation: Optional[Tuple[int, ...]] = None
    transfer: TransferMatrix = field(init=False)

    def __post_init__(self):
        kind = ChannelKind(self.kind)
        object.__setattr__(self, "kind", kind)
        k = self.kraus.k

        if kind in SINGLE_QUBIT_KINDS and k != 1:
            raise ChannelError(f"{kind.value} channels act on one qubit, got k={k}")
        if kind is ChannelKind.DIAGONAL_PHASE:
            if self.phases is None or len(self.phases) != 2:
                raise ChannelError("a diagonal-phase channel needs two phases")
            phases = tuple(complex(p) for p in self.phases)
            if any(abs(abs(p) - 1.0) > PHASE_TOLERANCE for p in phases):
                raise ChannelError(f"phases must have unit modulus, got {phases}")
            object.__setattr__(self, "phases", phases)
        if kind is ChannelKind.PERMUTATION:
            table = tuple(int(v) for v in (self.permutation or ()))
            if sorted(table) != list(range(1 << k)):
                raise ChannelError(f"permutation table {table} is not a bijection on [0, {1 << k})")
            object.__setattr__(self, "permutation", table)

        object.__setattr__(self, "transfer", transfer_from_kraus(self.kraus))

    @property
    def k(self) -> int:
        return self.kraus.k

    @property
    def unitary(self) -> Optional[np.ndarray]:
        """The single Kraus operator of a rank-1 channel"""
        return self.kraus.operators[0] if self.kraus.rank == 1 else None

    def dual(self) -> "ChannelSpec":
        """Adjoint map; native kinds stay native"""
        kraus = dual_channel(self.kraus)
        if self.kind is ChannelKind.DIAGONAL_PHASE:
            phases = tuple(p.conjugate() for p in self.phases)
            return ChannelSpec(f"{self.name}-dual", self.kind, kraus, phases=phases)
        if self.kind is ChannelKind.PERMUTATION:
            inverse = tuple(int(v) for v in np.argsort(self.permutation))
            return ChannelSpec(f"{self.name}-dual", self.kind, kraus, permutation=inverse)
        return ChannelSpec(f"{self.name}-dual", self.kind, kraus)

    def __repr__(self) -> str:
        return f"ChannelSpec(name={self.name!r}, kind={self.kind.value}, k={self.k}, rank={self.kraus.rank})"


def _check_probability(name: str, value: float) -> float:
    value = float(value)
    if not 0.0 <= value <= 1.0:
        raise ChannelError(f"{name} must be in [0, 1], got {value}")
    return value


def depolarising(p: float) -> ChannelSpec:
    p = _check_probability("p", p)
    weight = math.sqrt(p / 3)
    kraus = KrausSet.of(math.sqrt(1 - p) * I2, weight * PAULI_X, weight * PAULI_Y, weight * PAULI_Z)
    return ChannelSpec("depolarising", ChannelKind.GENERIC_KRAUS, kraus)


def amplitude_damping(gamma: float) -> ChannelSpec:
    gamma = _check_probability("gamma", gamma)
    k0 = np.array([[1, 0], [0, math.sqrt(1 - gamma)]], dtype=np.complex128)
    k1 = np.array([[0, math.sqrt(gamma)], [0, 0]], dtype=np.complex128)
    return ChannelSpec("amplitude-damping", ChannelKind.GENERIC_KRAUS, KrausSet.of(k0, k1))


def dephasing(p: float) -> ChannelSpec:
    p = _check_probability("p", p)
    kraus = KrausSet.of(math.sqrt(1 - p) * I2, math.sqrt(p) * PAULI_Z)
    return ChannelSpec("dephasing", ChannelKind.GENERIC_KRAUS, kraus)


def random_kraus_channel(k: int, rank: int, seed: int) -> ChannelSpec:
    """Trace-preserving k-local channel cut from a random isometry"""
    d = 1 << k
    if not 1 <= rank <= d * d:
        raise ChannelError(f"Kraus rank must be in [1, {d * d}], got {rank}")
    rng = np.random.default_rng(seed)
    G = np.empty((rank * d, d), dtype=np.complex128)
    G.real = rng.standard_normal(G.shape)
    G.imag = rng.standard_normal(G.shape)
    Q, _ = np.linalg.qr(G)
    return ChannelSpec(f"random-k{k}-r{rank}", ChannelKind.GENERIC_KRAUS, KrausSet(tuple(Q.reshape(rank, d, d))))


def _permutation_matrix(table: Tuple[int, ...]) -> np.ndarray:
    U = np.zeros((len(table), len(table)), dtype=np.complex128)
    U[list(table), range(len(table))] = 1
    return U


def _phase_gate(name: str, phases: Tuple[complex, complex]) -> ChannelSpec:
    return ChannelSpec(name, ChannelKind.DIAGONAL_PHASE, KrausSet.of(np.diag(phases)), phases=phases)


def _permutation_gate(name: str, table: Tuple[int, ...]) -> ChannelSpec:
    return ChannelSpec(name, ChannelKind.PERMUTATION, KrausSet.of(_permutation_matrix(table)), permutation=table)


PERMUTATION_TABLES = {
    "cnot": (0, 1, 3, 2),
    "swap": (0, 2, 1, 3),
    "toffoli": (0, 1, 2, 3, 4, 5, 7, 6),
}

GATE_ALIASES = {"cx": "cnot", "ccx": "toffoli", "ccnot": "toffoli"}

NATIVE_GATES = ("x", "y", "z", "s", "t", "rz", "h", "cnot", "swap", "toffoli")


def native_gate(name: str, theta: Optional[float] = None) -> ChannelSpec:
    key = name.strip().lower()
    key = GATE_ALIASES.get(key, key)

    if key == "x":
        return ChannelSpec("x", ChannelKind.PAULI_X, KrausSet.of(PAULI_X))
    if key == "y":
        return ChannelSpec("y", ChannelKind.PAULI_Y, KrausSet.of(PAULI_Y))
    if key == "h":
        return ChannelSpec("h", ChannelKind.HADAMARD, KrausSet.of(HADAMARD))
    if key == "z":
        return _phase_gate("z", (1, -1))
    if key == "s":
        return _phase_gate("s", (1, 1j))
    if key == "t":
        return _phase_gate("t", (1, complex(math.cos(math.pi / 4), math.sin(math.pi / 4))))
    if key == "rz":
        theta = 0.0 if theta is None else float(theta)
        if not math.isfinite(theta):
            raise ChannelError(f"rotation angle must be finite, got {theta}")
        half = theta / 2
        return _phase_gate("rz", (complex(math.cos(half), -math.sin(half)), complex(math.cos(half), math.sin(half))))
    if key in PERMUTATION_TABLES:
        return _permutation_gate(key, PERMUTATION_TABLES[key])
    raise UnknownGateError(f"unknown gate '{name}'")


CHANNEL_OPS = ("depolarising", "amplitude-damping", "dephasing")
LIBRARY_OPS = NATIVE_GATES + CHANNEL_OPS


def channel_from_name(op: str, p: float = 0.1, theta: float = 0.7, gamma: Optional[float] = None) -> ChannelSpec:
    """Look up a library operation by its command-line name"""
    key = op.strip().lower().replace("_", "-")
    if key in ("depolarising", "depolarizing"):
        return depolarising(p)
    if key == "amplitude-damping":
        return amplitude_damping(p if gamma is None else gamma)
    if key == "dephasing":
        return dephasing(p)
    return native_gate(key, theta)


def align(channel: ChannelSpec, qubits: Union[int, Iterable[int]]) -> Tuple[ChannelSpec, ActiveQubits]:
    """
    Re-express a gate-ordered channel on `qubits` in ascending-qubit local order.

    Example:
    CNOT on (3, 1) already has its control as the high bit; CNOT on (1, 3)
    gets its control moved to bit 0 and its table becomes 0, 3, 2, 1.
    """
    if isinstance(qubits, (int, np.integer)):
        qubits = (int(qubits),)
    qubits = tuple(int(q) for q in qubits)
    targets = ActiveQubits.of(qubits)
    if targets.k != channel.k:
        raise TargetError(f"{channel.name} acts on {channel.k} qubit(s), got targets {qubits}")

    k = channel.k
    bit_map = [targets.positions.index(qubits[k - 1 - g]) for g in range(k)]
    if bit_map == list(range(k)):
        return channel, targets

    kraus = KrausSet(tuple(permute_local_bits(op, bit_map) for op in channel.kraus.operators))
    permutation = None
    if channel.permutation is not None:
        permutation = permute_table(channel.permutation, bit_map)
    aligned = ChannelSpec(channel.name, channel.kind, kraus, phases=channel.phases, permutation=permutation)
    return aligned, targets
