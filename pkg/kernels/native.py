"""
Specialised paths for native gates

Pauli-X and the permutation gates only move values (Y also negates);
diagonal phases leave equal-bit elements untouched; Hadamard is a real
butterfly. All of them reuse the format drivers, so the tiled adjoint and
diagonal subcases are handled exactly as for generic channels.
"""

from dataclasses import dataclass
from typing import Dict, Optional, Sequence, Tuple

from hermitian.common import ActiveQubits
from hermitian.errors import ChannelError, TargetError
from hermitian.formats import MatrixHandle

from .drivers import run_transform
from .transforms import PAULI_Y_SIGNS, HadamardTransform, PermutationTransform, PhaseTransform


@dataclass(frozen=True)
class PermutationGate:
    """U|x> = |table[x]>, optionally with +-1 signs per block position x + y * 2^k"""

    k: int
    table: Tuple[int, ...]
    signs: Optional[Tuple[int, ...]] = None

    def __post_init__(self):
        table = tuple(int(t) for t in self.table)
        if len(table) != 1 << self.k or sorted(table) != list(range(1 << self.k)):
            raise ChannelError(f"table {table} is not a bijection on [0, {1 << self.k})")
        object.__setattr__(self, "table", table)

    def transform(self) -> PermutationTransform:
        return PermutationTransform(self.table, self.signs)


def _single(h: MatrixHandle, a: int) -> ActiveQubits:
    return ActiveQubits.of(a).check_range(h.n)


def apply_pauli_x(h: MatrixHandle, a: int, workers: Optional[int] = None) -> Dict[str, int]:
    """h_ij <-> h_{i^2^a, j^2^a}"""
    _, counts = run_transform(h, PermutationTransform((1, 0)), _single(h, a), workers)
    return counts


def apply_pauli_y(h: MatrixHandle, a: int, workers: Optional[int] = None) -> Dict[str, int]:
    _, counts = run_transform(h, PermutationTransform((1, 0), PAULI_Y_SIGNS), _single(h, a), workers)
    return counts


def apply_diagonal_phase(h: MatrixHandle, a: int, phases: Sequence[complex],
                         workers: Optional[int] = None) -> Dict[str, int]:
    _, counts = run_transform(h, PhaseTransform(phases), _single(h, a), workers)
    return counts


def apply_hadamard(h: MatrixHandle, a: int, workers: Optional[int] = None) -> Dict[str, int]:
    _, counts = run_transform(h, HadamardTransform(), _single(h, a), workers)
    return counts


def apply_permutation(h: MatrixHandle, gate: PermutationGate, targets,
                      workers: Optional[int] = None) -> Dict[str, int]:
    """Targets are ascending; table bit l belongs to the l-th smallest target"""
    targets = targets if isinstance(targets, ActiveQubits) else ActiveQubits.of(targets)
    if targets.k != gate.k:
        raise TargetError(f"{gate.k}-qubit permutation got {targets.k} target(s)")
    _, counts = run_transform(h, gate.transform(), targets.check_range(h.n), workers)
    return counts
