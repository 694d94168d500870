from .dense import apply_dense
from .dispatch import ApplyPlan, KernelPath, apply
from .native import (
    PermutationGate,
    apply_diagonal_phase,
    apply_hadamard,
    apply_pauli_x,
    apply_pauli_y,
    apply_permutation,
)
from .packed import apply_packed
from .tiled import apply_tiled_cross, apply_tiled_intra, apply_tiled_twoqubit
from .transforms import (
    BlockTransform,
    DirectUnitaryTransform,
    HadamardTransform,
    PermutationTransform,
    PhaseTransform,
    TransferTransform,
)

__all__ = [
    "apply_dense",
    "ApplyPlan",
    "KernelPath",
    "apply",
    "PermutationGate",
    "apply_diagonal_phase",
    "apply_hadamard",
    "apply_pauli_x",
    "apply_pauli_y",
    "apply_permutation",
    "apply_packed",
    "apply_tiled_cross",
    "apply_tiled_intra",
    "apply_tiled_twoqubit",
    "BlockTransform",
    "DirectUnitaryTransform",
    "HadamardTransform",
    "PermutationTransform",
    "PhaseTransform",
    "TransferTransform",
]
