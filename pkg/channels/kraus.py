"""
k-local quantum operations as Kraus sets and transfer matrices

Blocks are vectorized by stacking columns: vec(B)[mu + d * nu] = B[mu, nu]
with d = 2^k, so the transfer matrix S = sum_a conj(L_a) (x) L_a satisfies
S @ vec(B) == vec(sum_a L_a B L_a^H).
"""

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence, Tuple

import numpy as np

from hermitian.common import MAX_LOCALITY
from hermitian.errors import ChannelError

DEFAULT_TOLERANCE = 1e-10


def _readonly(array: np.ndarray) -> np.ndarray:
    array = np.array(array, dtype=np.complex128, copy=True)
    array.setflags(write=False)
    return array


def _locality(dim: int) -> int:
    k = dim.bit_length() - 1
    if dim < 2 or dim != 1 << k or k > MAX_LOCALITY:
        raise ChannelError(f"operator dimension {dim} is not 2^k with 1 <= k <= {MAX_LOCALITY}")
    return k


def vec(block: np.ndarray) -> np.ndarray:
    return np.asarray(block).reshape(-1, order="F")


def unvec(v: np.ndarray) -> np.ndarray:
    d = int(round(np.sqrt(v.size)))
    return np.asarray(v).reshape(d, d, order="F")


@dataclass(frozen=True, eq=False)
class KrausSet:
    """Local Kraus factors L_a, each a 2^k x 2^k complex matrix"""

    operators: Tuple[np.ndarray, ...]

    def __post_init__(self):
        operators = tuple(_readonly(op) for op in self.operators)
        if not operators:
            raise ChannelError("a Kraus set needs at least one operator")

        shape = operators[0].shape
        if len(shape) != 2 or shape[0] != shape[1]:
            raise ChannelError(f"Kraus operators must be square, got shape {shape}")
        k = _locality(shape[0])
        for op in operators[1:]:
            if op.shape != shape:
                raise ChannelError(f"Kraus operators differ in shape: {shape} vs {op.shape}")
        if len(operators) > 1 << (2 * k):
            raise ChannelError(f"Kraus rank {len(operators)} exceeds 4^k = {1 << (2 * k)}")

        object.__setattr__(self, "operators", operators)

    @classmethod
    def of(cls, *operators: np.ndarray) -> "KrausSet":
        return cls(tuple(operators))

    @property
    def k(self) -> int:
        return _locality(self.dim)

    @property
    def dim(self) -> int:
        return self.operators[0].shape[0]

    @property
    def rank(self) -> int:
        return len(self.operators)

    def stacked(self) -> np.ndarray:
        return np.stack(self.operators)

    def apply_local(self, block: np.ndarray) -> np.ndarray:
        """Explicit Kraus sum on one local block"""
        block = np.asarray(block, dtype=np.complex128)
        return sum(op @ block @ op.conj().T for op in self.operators)

    def __len__(self) -> int:
        return len(self.operators)

    def __iter__(self):
        return iter(self.operators)


@dataclass(frozen=True, eq=False)
class TransferMatrix:
    """Liouville representation: 4^k x 4^k matrix acting on vec(block)"""

    k: int
    entries: np.ndarray

    def __post_init__(self):
        entries = _readonly(self.entries)
        size = 1 << (2 * self.k)
        if entries.shape != (size, size):
            raise ChannelError(f"transfer matrix for k={self.k} must be {size}x{size}, got {entries.shape}")
        object.__setattr__(self, "entries", entries)

    @classmethod
    def identity(cls, k: int) -> "TransferMatrix":
        return cls(k, np.eye(1 << (2 * k), dtype=np.complex128))

    @property
    def size(self) -> int:
        return self.entries.shape[0]

    def apply_local(self, block: np.ndarray) -> np.ndarray:
        return unvec(self.entries @ vec(block))


def transfer_from_kraus(ks: KrausSet) -> TransferMatrix:
    S = np.zeros((ks.dim ** 2, ks.dim ** 2), dtype=np.complex128)
    for op in ks.operators:
        S += np.kron(op.conj(), op)
    return TransferMatrix(ks.k, S)


class Physicality(str, Enum):
    TRACE_PRESERVING = "trace-preserving"
    TRACE_NON_INCREASING = "trace-non-increasing"
    INVALID = "invalid"


@dataclass(frozen=True)
class ValidationReport:
    classification: Physicality
    deviation: float
    min_eigenvalue: float
    tolerance: float

    @property
    def is_physical(self) -> bool:
        return self.classification is not Physicality.INVALID

    @property
    def trace_preserving(self) -> bool:
        return self.classification is Physicality.TRACE_PRESERVING


def validate_cptni(ks: KrausSet, tol: float = DEFAULT_TOLERANCE) -> ValidationReport:
    """
    Classify a Kraus set through D = I - sum_a L_a^H L_a.
    Completely positive by construction; only the trace condition is checked.
    """
    D = np.eye(ks.dim, dtype=np.complex128)
    for op in ks.operators:
        D -= op.conj().T @ op
    deviation = float(np.abs(D).max())
    min_eig = float(np.linalg.eigvalsh((D + D.conj().T) / 2).min())

    if deviation <= tol:
        classification = Physicality.TRACE_PRESERVING
    elif min_eig >= -tol:
        classification = Physicality.TRACE_NON_INCREASING
    else:
        classification = Physicality.INVALID
    return ValidationReport(classification, deviation, min_eig, tol)


def dual_channel(ks: KrausSet) -> KrausSet:
    """Kraus set {L_a^H} of the adjoint (Heisenberg-picture) map"""
    return KrausSet(tuple(op.conj().T for op in ks.operators))


def kraus_remix(ks: KrausSet, u: np.ndarray) -> KrausSet:
    """L'_b = sum_a u[b, a] L_a; a unitary u leaves the transfer matrix unchanged"""
    u = np.asarray(u, dtype=np.complex128)
    if u.shape != (ks.rank, ks.rank):
        raise ChannelError(f"remixing matrix must be {ks.rank}x{ks.rank}, got {u.shape}")
    mixed = np.einsum("ba,aij->bij", u, ks.stacked())
    return KrausSet(tuple(mixed))


def local_index_map(bit_map: Sequence[int]) -> np.ndarray:
    """P[x] = local index whose bit bit_map[g] equals bit g of x"""
    x = np.arange(1 << len(bit_map), dtype=np.int64)
    P = np.zeros_like(x)
    for g, target in enumerate(bit_map):
        P |= ((x >> g) & 1) << target
    return P


def permute_local_bits(operator: np.ndarray, bit_map: Sequence[int]) -> np.ndarray:
    """Relabel the local basis of `operator` so that bit g moves to bit bit_map[g]"""
    inverse = np.argsort(local_index_map(bit_map))
    return np.asarray(operator)[np.ix_(inverse, inverse)]


def permute_table(table: Iterable[int], bit_map: Sequence[int]) -> Tuple[int, ...]:
    """Same relabeling for a basis permutation x -> table[x]"""
    P = local_index_map(bit_map)
    inverse = np.argsort(P)
    table = np.asarray(tuple(table), dtype=np.int64)
    return tuple(int(v) for v in P[table[inverse]])
