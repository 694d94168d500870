"""
Block transforms: the "transform" step of gather-transform-scatter

A transform receives the 4^k gathered coupled values of a batch of blocks as
a list v (v[a + a' * 2^k] holds block element (a, a'), each entry an array
over the batch) and returns the list w of updated values in the same layout.
Drivers hand over private copies; transforms may return input arrays as-is.

Complex products are formed from separate real ufunc calls in a fixed term
order, so every element is computed by the same sequence of roundings no
matter how the batch is chunked across workers.
"""

from typing import List, Optional, Sequence, Tuple

import numpy as np

from channels.kraus import TransferMatrix
from channels.library import PHASE_TOLERANCE, ChannelKind, ChannelSpec
from hermitian.errors import ChannelError

Batch = Sequence[np.ndarray]


def _scaled(c: complex, v: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    cr, ci = float(c.real), float(c.imag)
    vr, vi = v.real, v.imag
    if ci == 0.0:
        if cr == 1.0:
            return vr, vi
        if cr == -1.0:
            return -vr, -vi
        return cr * vr, cr * vi
    if cr == 0.0:
        return -(ci * vi), ci * vr
    return cr * vr - ci * vi, cr * vi + ci * vr


def combine(coeffs: Sequence[complex], terms: Batch, shape) -> np.ndarray:
    """sum_q coeffs[q] * terms[q], zero coefficients skipped, q ascending"""
    re = im = None
    for c, v in zip(coeffs, terms):
        if c == 0:
            continue
        tr, ti = _scaled(c, v)
        if re is None:
            re, im = tr, ti
        else:
            re = re + tr
            im = im + ti
    out = np.zeros(shape, dtype=np.complex128)
    if re is not None:
        out.real = re
        out.imag = im
    return out


class BlockTransform:
    """Maps the 4^k coupled values of each block in a batch"""

    k: int = 1
    arithmetic_free: bool = False

    @property
    def dim(self) -> int:
        return 1 << self.k

    def __call__(self, v: Batch) -> List[np.ndarray]:
        raise NotImplementedError


class TransferTransform(BlockTransform):
    """
    w = S v with the 4^k x 4^k transfer matrix.

    Each output row forms its nonzero terms in one batched product over the
    stacked inputs and sums them with add.accumulate, which adds strictly in
    ascending term order like `combine`.
    """

    def __init__(self, transfer: TransferMatrix):
        self.k = transfer.k
        self.entries = transfer.entries
        self.rows = []
        for row in transfer.entries:
            nz = np.flatnonzero(row)
            self.rows.append((nz, row[nz].real.copy(), row[nz].imag.copy()))

    def __call__(self, v: Batch) -> List[np.ndarray]:
        shape = v[0].shape
        vr = np.stack([x.real for x in v])
        vi = np.stack([x.imag for x in v])
        expand = (slice(None),) + (None,) * len(shape)
        return [self._row(nz, cr[expand], ci[expand], vr, vi, shape) for nz, cr, ci in self.rows]

    @staticmethod
    def _row(nz, cr, ci, vr, vi, shape) -> np.ndarray:
        out = np.zeros(shape, dtype=np.complex128)
        if nz.size == 0:
            return out
        r, i = vr[nz], vi[nz]
        re = r * cr
        re -= i * ci
        im = i * cr
        im += r * ci
        del r, i
        out.real = np.add.accumulate(re, axis=0)[-1]
        out.imag = np.add.accumulate(im, axis=0)[-1]
        return out


class DirectUnitaryTransform(BlockTransform):
    """w = vec(U B U^H) computed as two small products instead of through S"""

    def __init__(self, unitary: np.ndarray):
        unitary = np.asarray(unitary, dtype=np.complex128)
        self.k = unitary.shape[0].bit_length() - 1
        self.unitary = unitary
        self.adjoint = unitary.conj()

    def __call__(self, v: Batch) -> List[np.ndarray]:
        d, shape = self.dim, v[0].shape
        # T[a, a'] = sum_b U[a, b] B[b, a']
        T = [combine(self.unitary[a], [v[b + ap * d] for b in range(d)], shape)
             for ap in range(d) for a in range(d)]
        # W[a, a'] = sum_b T[a, b] conj(U[a', b])
        return [combine(self.adjoint[ap], [T[a + b * d] for b in range(d)], shape)
                for ap in range(d) for a in range(d)]


class PermutationTransform(BlockTransform):
    """
    U|x> = s_x |table[x]>: block element (x, y) moves to (table[x], table[y]),
    negated where `signs[x + y * d]` is -1. No multiplications.
    """

    arithmetic_free = True

    def __init__(self, table: Sequence[int], signs: Optional[Sequence[int]] = None):
        table = tuple(int(t) for t in table)
        self.k = len(table).bit_length() - 1
        d = self.dim
        if len(table) != d or sorted(table) != list(range(d)):
            raise ChannelError(f"permutation table {table} is not a bijection on [0, {d})")
        signs = tuple(int(s) for s in signs) if signs is not None else (1,) * (d * d)
        if len(signs) != d * d or any(s not in (1, -1) for s in signs):
            raise ChannelError("permutation signs must be d*d values in {1, -1}")
        self.table = table
        self.signs = signs
        self.targets = [table[q % d] + table[q // d] * d for q in range(d * d)]

    def __call__(self, v: Batch) -> List[np.ndarray]:
        w = [None] * len(v)
        for q, p in enumerate(self.targets):
            w[p] = v[q] if self.signs[q] > 0 else -v[q]
        return w


PAULI_Y_SIGNS = (1, -1, -1, 1)


class PhaseTransform(BlockTransform):
    """diag(phi_0, phi_1): element (x, y) times phi_x conj(phi_y); x == y untouched"""

    def __init__(self, phases: Sequence[complex]):
        phases = tuple(complex(p) for p in phases)
        if len(phases) != 2 or any(abs(abs(p) - 1.0) > PHASE_TOLERANCE for p in phases):
            raise ChannelError(f"diagonal phases must be two unit-modulus values, got {phases}")
        self.k = 1
        self.phases = phases
        # vec positions 1 = (1, 0) and 2 = (0, 1)
        self.factors = (phases[1] * phases[0].conjugate(), phases[0] * phases[1].conjugate())

    def __call__(self, v: Batch) -> List[np.ndarray]:
        shape = v[0].shape
        return [v[0], combine((self.factors[0],), (v[1],), shape),
                combine((self.factors[1],), (v[2],), shape), v[3]]


class HadamardTransform(BlockTransform):
    """Real butterfly for H B H"""

    def __call__(self, v: Batch) -> List[np.ndarray]:
        s, d = v[0] + v[1], v[0] - v[1]
        s2, d2 = v[2] + v[3], v[2] - v[3]
        return [(s + s2) * 0.5, (d + d2) * 0.5, (s - s2) * 0.5, (d - d2) * 0.5]


def native_transform(channel: ChannelSpec) -> BlockTransform:
    kind = channel.kind
    if kind is ChannelKind.PAULI_X:
        return PermutationTransform((1, 0))
    if kind is ChannelKind.PAULI_Y:
        return PermutationTransform((1, 0), PAULI_Y_SIGNS)
    if kind is ChannelKind.DIAGONAL_PHASE:
        return PhaseTransform(channel.phases)
    if kind is ChannelKind.HADAMARD:
        return HadamardTransform()
    if kind is ChannelKind.PERMUTATION:
        return PermutationTransform(channel.permutation)
    raise ChannelError(f"{channel.name} has no native transform")


def generic_transform(channel: ChannelSpec, direct_unitary: bool = False) -> BlockTransform:
    if direct_unitary and channel.unitary is not None:
        return DirectUnitaryTransform(channel.unitary)
    return TransferTransform(channel.transfer)
