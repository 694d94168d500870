"""
Top-level dispatcher: pick the kernel path for a channel on a stored operator
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Iterable, Optional, Union

from channels.library import ChannelKind, ChannelSpec, align
from hermitian.common import ActiveQubits
from hermitian.formats import MatrixHandle, StorageFormat, convert

from .drivers import run_transform
from .transforms import generic_transform, native_transform


class KernelPath(str, Enum):
    DENSE_GENERIC = "dense-generic"
    PACKED_GENERIC = "packed-generic"
    TILED_INTRA = "tiled-intra"
    TILED_CROSS = "tiled-cross"
    TILED_MIXED = "tiled-mixed"
    DENSE_FALLBACK = "dense-fallback"
    NATIVE_PAULI_X = "native-pauli-x"
    NATIVE_PAULI_Y = "native-pauli-y"
    NATIVE_DIAGONAL_PHASE = "native-diagonal-phase"
    NATIVE_HADAMARD = "native-hadamard"
    NATIVE_PERMUTATION = "native-permutation"


NATIVE_PATHS = {
    ChannelKind.PAULI_X: KernelPath.NATIVE_PAULI_X,
    ChannelKind.PAULI_Y: KernelPath.NATIVE_PAULI_Y,
    ChannelKind.DIAGONAL_PHASE: KernelPath.NATIVE_DIAGONAL_PHASE,
    ChannelKind.HADAMARD: KernelPath.NATIVE_HADAMARD,
    ChannelKind.PERMUTATION: KernelPath.NATIVE_PERMUTATION,
}

GENERIC_MAX_LOCALITY = 2


@dataclass
class ApplyPlan:
    channel: ChannelSpec
    targets: ActiveQubits
    path: KernelPath
    case_counts: Dict[str, int] = field(default_factory=dict)


def apply(h: MatrixHandle, channel: ChannelSpec, qubits: Union[int, Iterable[int]], *,
          native: bool = True, direct_unitary: bool = False, workers: Optional[int] = None) -> ApplyPlan:
    """
    Apply `channel` to the listed qubits of `h` in place.

    Qubits are given in gate order (first listed = most significant local
    bit, e.g. control before target). With native=False every channel takes
    its format's generic transfer-matrix path; direct_unitary=True updates
    rank-1 channels as U B U^H instead of through the transfer matrix.
    """
    aligned, targets = align(channel, qubits)
    targets.check_range(h.n)

    if native and aligned.kind is not ChannelKind.GENERIC_KRAUS:
        _, counts = run_transform(h, native_transform(aligned), targets, workers)
        return ApplyPlan(aligned, targets, NATIVE_PATHS[aligned.kind], counts)

    transform = generic_transform(aligned, direct_unitary)
    if targets.k > GENERIC_MAX_LOCALITY and h.format is not StorageFormat.DENSE:
        dense = convert(h, StorageFormat.DENSE)
        _, counts = run_transform(dense, transform, targets, workers)
        h.data[:] = convert(dense, h.format, h.m).data
        return ApplyPlan(aligned, targets, KernelPath.DENSE_FALLBACK, counts)

    path, counts = run_transform(h, transform, targets, workers)
    return ApplyPlan(aligned, targets, KernelPath(path), counts)
