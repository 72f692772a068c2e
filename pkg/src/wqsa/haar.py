"""Haar wavelet transform on ``2**n`` amplitudes.

The transform is the product ``W = W_n ... W_1``.  Level ``l`` applies the
one-level average/detail operator of size ``M = 2**(n-l+1)`` to the leading
``M`` entries and leaves the rest alone, so ``W_1`` touches the whole vector
and ``W_n`` only the first two entries.  Row ``k`` of ``W`` (equivalently the
state ``W^T e_k``) is the Haar function at scale ``lam = floor(log2 k) + 1``
and shift ``j = k - 2**(lam-1) + 1``, supported on a block of
``n1 = 2**(n-lam+1)`` consecutive indices: ``+1/sqrt(n1)`` on the first half,
``-1/sqrt(n1)`` on the second.

Array kernels (``*_array``) operate in place on the last axis, so a batch of
states can be transformed at once.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DomainError, ResourceError
from .state import StateVector, _check_n, basis_state, check_index

SQRT1_2 = 1.0 / np.sqrt(2.0)
DENSE_MAX_QUBITS = 12


def _log2_len(x: np.ndarray) -> int:
    size = x.shape[-1]
    if size < 2 or size & (size - 1):
        raise DomainError(f"last axis must have power-of-two length >= 2, got {size}")
    return size.bit_length() - 1


def _check_level(n: int, level: int) -> None:
    if not 1 <= level <= n:
        raise DomainError(f"level must be in [1, {n}], got {level}")


def _level_forward(x: np.ndarray, m: int) -> None:
    even = x[..., 0:m:2]
    odd = x[..., 1:m:2]
    avg = (even + odd) * SQRT1_2
    det = (even - odd) * SQRT1_2
    x[..., : m // 2] = avg
    x[..., m // 2 : m] = det


def _level_inverse(x: np.ndarray, m: int) -> None:
    avg = x[..., : m // 2]
    det = x[..., m // 2 : m]
    even = (avg + det) * SQRT1_2
    odd = (avg - det) * SQRT1_2
    x[..., 0:m:2] = even
    x[..., 1:m:2] = odd


def haar_level_array(x: np.ndarray, level: int) -> np.ndarray:
    n = _log2_len(x)
    _check_level(n, level)
    _level_forward(x, x.shape[-1] >> (level - 1))
    return x


def haar_forward_array(x: np.ndarray, counter: Counter | None = None) -> np.ndarray:
    """Apply ``W`` in place: level 1 first, level ``n`` last."""
    m = x.shape[-1]
    _log2_len(x)
    while m >= 2:
        _level_forward(x, m)
        if counter is not None:
            counter["butterflies"] += m // 2
            counter["levels"] += 1
        m //= 2
    return x


def haar_inverse_array(x: np.ndarray, counter: Counter | None = None) -> np.ndarray:
    """Apply ``W^T`` in place: adjoint levels from ``n`` down to 1."""
    size = x.shape[-1]
    _log2_len(x)
    m = 2
    while m <= size:
        _level_inverse(x, m)
        if counter is not None:
            counter["butterflies"] += m // 2
            counter["levels"] += 1
        m *= 2
    return x


def haar_level(state: StateVector, level: int) -> StateVector:
    _check_level(state.n, level)
    return StateVector(state.n, haar_level_array(state.copy_array(), level))


def haar_forward(state: StateVector, counter: Counter | None = None) -> StateVector:
    return StateVector(state.n, haar_forward_array(state.copy_array(), counter))


def haar_inverse(state: StateVector, counter: Counter | None = None) -> StateVector:
    return StateVector(state.n, haar_inverse_array(state.copy_array(), counter))


def one_level_matrix(size: int) -> np.ndarray:
    """Dense one-level operator: pairwise sums in the top half, differences below."""
    if size < 2 or size & (size - 1):
        raise DomainError(f"size must be a power of two >= 2, got {size}")
    half = size // 2
    h = np.zeros((size, size))
    rows = np.arange(half)
    h[rows, 2 * rows] = 1.0
    h[rows, 2 * rows + 1] = 1.0
    h[half + rows, 2 * rows] = 1.0
    h[half + rows, 2 * rows + 1] = -1.0
    return h * SQRT1_2


def level_matrix(n: int, level: int) -> np.ndarray:
    """Dense ``W_level``: one-level block on the leading range, identity elsewhere."""
    n = _check_n(n)
    _check_level(n, level)
    size = 1 << n
    m = size >> (level - 1)
    return np.block(
        [
            [one_level_matrix(m), np.zeros((m, size - m))],
            [np.zeros((size - m, m)), np.eye(size - m)],
        ]
    )


@lru_cache(maxsize=None)
def _haar_matrix_cached(n: int) -> np.ndarray:
    size = 1 << n
    w = np.eye(size)
    for level in range(1, n + 1):
        m = size >> (level - 1)
        # W_level @ w only changes the leading m rows
        w[:m] = one_level_matrix(m) @ w[:m]
    w.flags.writeable = False
    return w


def haar_matrix(n: int) -> np.ndarray:
    """Dense ``W = W_n ... W_1`` built from the block definition (reference only)."""
    n = _check_n(n)
    if n > DENSE_MAX_QUBITS:
        raise ResourceError(f"dense Haar matrix limited to n <= {DENSE_MAX_QUBITS}, got {n}")
    return _haar_matrix_cached(n)


@dataclass(frozen=True)
class WaveletIndex:
    """A Haar basis index ``k`` with its scale, shift, and support block.

    ``lam`` and ``j`` are ``None`` for ``k = 0`` (the constant function).
    """

    n: int
    k: int
    lam: int | None
    j: int | None
    support_lo: int
    support_hi: int
    n1: int

    @property
    def L(self) -> int:
        return (1 << self.n) // self.n1

    def contains(self, z: int) -> bool:
        return self.support_lo <= z <= self.support_hi

    def sign_at(self, z: int) -> int:
        """Sign of ``W^T e_k`` at index ``z``; 0 outside the support."""
        if not self.contains(z):
            return 0
        if self.k == 0:
            return 1
        return 1 if z - self.support_lo < self.n1 // 2 else -1


def index_to_scale(n: int, k: int) -> WaveletIndex:
    n = _check_n(n)
    k = check_index(n, k, "k")
    size = 1 << n
    if k == 0:
        return WaveletIndex(n, 0, None, None, 0, size - 1, size)
    lam = k.bit_length()
    j = k - (1 << (lam - 1)) + 1
    n1 = 1 << (n - lam + 1)
    lo = (j - 1) * n1
    return WaveletIndex(n, k, lam, j, lo, lo + n1 - 1, n1)


def scale_to_index(lam: int, j: int) -> int:
    if lam < 2:
        raise DomainError(f"scale must be >= 2 for a localized index, got {lam}")
    if not 1 <= j <= 1 << (lam - 1):
        raise DomainError(f"shift j={j} out of range [1, {1 << (lam - 1)}] for scale {lam}")
    return (1 << (lam - 1)) + j - 1


def wavelet_initial_state(n: int, k: int) -> StateVector:
    """``W^T e_k``: uniform magnitude on its support block, +/- half split."""
    return haar_inverse(basis_state(n, k))
