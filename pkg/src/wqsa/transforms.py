"""Forward/inverse transform pairs used to build reflections.

Two pairs ship: the Haar wavelet pair and the normalized Walsh-Hadamard
pair, whose image of ``e_0`` is the uniform superposition used by the plain
Grover baseline.  The Walsh-Hadamard matrix is symmetric and involutory, so
both directions share one kernel.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from . import haar

ArrayKernel = Callable[[np.ndarray], np.ndarray]

_WH_CHUNK = 4


def walsh_hadamard_array(x: np.ndarray) -> np.ndarray:
    """In-place normalized Walsh-Hadamard transform along the last axis.

    ``H^{(x)n}`` factors over groups of index bits; each group of up to
    ``_WH_CHUNK`` bits is applied as one small dense matmul.
    """
    size = x.shape[-1]
    n = haar._log2_len(x)
    work = np.ascontiguousarray(x)
    lead = work.shape[:-1]
    lo = 0
    while lo < n:
        b = min(_WH_CHUNK, n - lo)
        v = work.reshape(*lead, size >> (lo + b), 1 << b, 1 << lo)
        v[...] = np.matmul(_wh_block(b), v)
        lo += b
    if work is not x:
        x[...] = work
    return x


def walsh_hadamard_matrix(n: int) -> np.ndarray:
    signs = np.ones((1, 1))
    for _ in range(n):
        signs = np.kron(signs, [[1.0, 1.0], [1.0, -1.0]])
    # single scaling keeps entries exact for even n
    return signs * 2.0 ** (-n / 2)


@lru_cache(maxsize=None)
def _wh_block(bits: int) -> np.ndarray:
    return walsh_hadamard_matrix(bits).astype(np.complex128)


@dataclass(frozen=True)
class TransformPair:
    """In-place array kernels for a unitary and its adjoint."""

    name: str
    forward: ArrayKernel
    inverse: ArrayKernel


HAAR = TransformPair("haar", haar.haar_forward_array, haar.haar_inverse_array)
WALSH_HADAMARD = TransformPair("walsh-hadamard", walsh_hadamard_array, walsh_hadamard_array)
