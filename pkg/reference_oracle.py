"""
Reference oracle for the conjugation kernels
Builds the full extended Kraus matrices and evaluates sum_a K_a H K_a^H densely
"""

from typing import Iterable, List, Union

import numpy as np

from channels import ChannelSpec, KrausSet, align
from hermitian import ActiveQubits, DenseHermitian, DimensionError, MatrixHandle, extract_bits


def _targets(targets) -> ActiveQubits:
    return targets if isinstance(targets, ActiveQubits) else ActiveQubits.of(targets)


def embed_kraus(L: np.ndarray, targets, n: int) -> np.ndarray:
    """
    Extended operator K = 1 (x) ... (x) L (x) ... (x) 1 on n qubits.
    Bit l of L's local index belongs to the l-th smallest target; targets need
    not be adjacent.
    """
    L = np.asarray(L, dtype=np.complex128)
    targets = _targets(targets).check_range(n)
    if L.shape != (1 << targets.k, 1 << targets.k):
        raise DimensionError(f"local operator of shape {L.shape} does not act on {targets.k} qubit(s)")

    g = np.arange(1 << n, dtype=np.int64)
    s, a = extract_bits(g, targets.positions)
    return np.where(s[:, None] == s[None, :], L[a[:, None], a[None, :]], 0)


def embed_channel(ks: KrausSet, targets, n: int) -> List[np.ndarray]:
    return [embed_kraus(op, targets, n) for op in ks.operators]


def apply_embedded(h: DenseHermitian, extended: List[np.ndarray]):
    """In-place H <- sum K H K^H with prebuilt extended Kraus matrices"""
    mat = h.matrix
    result = np.zeros_like(mat)
    for K in extended:
        result += K @ mat @ K.conj().T
    mat[:] = result


def dense_kraus_apply(h: MatrixHandle, ks: KrausSet, targets) -> DenseHermitian:
    """New dense operator sum_a K_a H K_a^H; `ks` is in ascending target order"""
    targets = _targets(targets)
    if ks.k != targets.k:
        raise DimensionError(f"Kraus set acts on {ks.k} qubit(s), got {targets.k} target(s)")
    result = DenseHermitian(h.n, h.to_matrix())
    apply_embedded(result, embed_channel(ks, targets, h.n))
    return result


def dense_unitary_apply(h: MatrixHandle, U: np.ndarray, targets) -> DenseHermitian:
    return dense_kraus_apply(h, KrausSet.of(U), targets)


def oracle_apply(h: MatrixHandle, channel: ChannelSpec, qubits: Union[int, Iterable[int]]) -> DenseHermitian:
    """Same qubit convention as kernels.apply (gate order)"""
    aligned, targets = align(channel, qubits)
    return dense_kraus_apply(h, aligned.kraus, targets)


def relative_error(result: MatrixHandle, expected: MatrixHandle) -> float:
    """||result - expected||_F / max(||expected||_F, tiny)"""
    a, b = result.to_matrix(), expected.to_matrix()
    scale = max(np.linalg.norm(b), np.finfo(np.float64).tiny)
    return float(np.linalg.norm(a - b) / scale)
