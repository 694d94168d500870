"""
Common index arithmetic for the hermitian storage formats
Bit insertion/extraction for k-local blocks and tile-grid offsets
"""

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence, Tuple, TypeVar, Union

import numpy as np

from .errors import ResourceError, TargetError

MAX_LOCALITY = 3
ALIGNMENT = 64

IndexLike = TypeVar("IndexLike", int, np.ndarray)


@dataclass(frozen=True)
class ActiveQubits:
    """
    Sorted set of qubit positions a_0 < a_1 < ... < a_{k-1} acted on by a
    k-local operation. Bit l of a local block index belongs to positions[l].
    """

    positions: Tuple[int, ...]

    def __post_init__(self):
        positions = tuple(int(p) for p in self.positions)
        object.__setattr__(self, "positions", positions)

        if not 1 <= len(positions) <= MAX_LOCALITY:
            raise TargetError(f"locality must be in [1, {MAX_LOCALITY}], got {len(positions)}")
        if positions[0] < 0:
            raise TargetError(f"negative qubit position {positions[0]}")
        for lower, upper in zip(positions, positions[1:]):
            if upper <= lower:
                raise TargetError(f"qubit positions must be strictly increasing: {positions}")

    @classmethod
    def of(cls, qubits: Union[int, Iterable[int]]) -> "ActiveQubits":
        """Build from qubits in any order; duplicates are rejected"""
        if isinstance(qubits, (int, np.integer)):
            qubits = (int(qubits),)
        qubits = tuple(int(q) for q in qubits)
        if len(set(qubits)) != len(qubits):
            raise TargetError(f"duplicate target qubits: {qubits}")
        return cls(tuple(sorted(qubits)))

    @property
    def k(self) -> int:
        return len(self.positions)

    def check_range(self, n: int) -> "ActiveQubits":
        if self.positions[-1] >= n:
            raise TargetError(f"qubit {self.positions[-1]} out of range for n={n}")
        return self

    def __iter__(self) -> Iterator[int]:
        return iter(self.positions)

    def __len__(self) -> int:
        return len(self.positions)

    def __getitem__(self, index: int) -> int:
        return self.positions[index]


def insert_bits(s: IndexLike, a: IndexLike, positions: Sequence[int]) -> IndexLike:
    """
    Splice the bits of local index `a` into subspace label `s` at the
    ascending `positions`. Works elementwise on integer numpy arrays.

    Example:
    insert_bits(5, 1, [1]) turns 0b101 into 0b1011 (11)
    """
    glob = s
    for ell, pos in enumerate(positions):
        right = ((1 << pos) - 1) & glob
        left = (glob >> pos) << 1
        left = left | ((a >> ell) & 1)
        left = left << pos
        glob = left | right
    return glob


def extract_bits(g: IndexLike, positions: Sequence[int]) -> Tuple[IndexLike, IndexLike]:
    """Inverse of insert_bits: split a global index into (subspace label, local index)"""
    s = g
    a = g & 0
    for ell in reversed(range(len(positions))):
        pos = positions[ell]
        a = a | (((s >> pos) & 1) << ell)
        s = ((s >> (pos + 1)) << pos) | (s & ((1 << pos) - 1))
    return s, a


def tile_index(t_i: IndexLike, t_j: IndexLike) -> IndexLike:
    """Position of tile (t_i, t_j), t_i >= t_j, in the row-major lower tile grid"""
    return t_i * (t_i + 1) // 2 + t_j


def tile_offset(t_i: IndexLike, t_j: IndexLike, M: int) -> IndexLike:
    """Element offset of the first entry of tile (t_i, t_j)"""
    return tile_index(t_i, t_j) * M * M


def packed_index(i: IndexLike, j: IndexLike, N: int) -> IndexLike:
    """Offset of element (i, j), i >= j, in the column-major packed lower triangle"""
    return j * N - j * (j - 1) // 2 + (i - j)


def block_rows(n: int, positions: Sequence[int]) -> np.ndarray:
    """Table R[s, a] = insert_bits(s, a, positions) over all labels and local indices"""
    k = len(positions)
    s = np.arange(1 << (n - k), dtype=np.int64)[:, None]
    a = np.arange(1 << k, dtype=np.int64)[None, :]
    return insert_bits(s, a, positions)


def aligned_zeros(count: int, dtype=np.complex128, alignment: int = ALIGNMENT) -> np.ndarray:
    """Zero-filled 1-D array whose first element sits on an `alignment`-byte boundary"""
    dtype = np.dtype(dtype)
    nbytes = count * dtype.itemsize
    try:
        raw = np.zeros(nbytes + alignment, dtype=np.uint8)
    except MemoryError as e:
        raise ResourceError(f"cannot allocate {nbytes} bytes") from e
    shift = (-raw.ctypes.data) % alignment
    return raw[shift:shift + nbytes].view(dtype)
