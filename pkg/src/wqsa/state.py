"""Dense statevector register and the elementary operations on it.

Basis indices follow natural integer order ``0 .. N-1``.  Amplitudes are
stored as ``complex128`` and the array held by a :class:`StateVector` is
marked read-only, so values can be shared freely.  Kernels that need to
mutate work on private copies.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError

MAX_QUBITS = 24
NORM_ATOL = 1e-12
MEASURE_ATOL = 1e-9


def _check_n(n: int) -> int:
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool):
        raise DomainError(f"qubit count must be an integer, got {n!r}")
    if n < 1 or n > MAX_QUBITS:
        raise DomainError(f"qubit count must be in [1, {MAX_QUBITS}], got {n}")
    return int(n)


def check_index(n: int, index: int, name: str = "index") -> int:
    if not isinstance(index, (int, np.integer)) or isinstance(index, bool):
        raise DomainError(f"{name} must be an integer, got {index!r}")
    if not 0 <= index < (1 << n):
        raise DomainError(f"{name}={index} out of range [0, {(1 << n) - 1}] for n={n}")
    return int(index)


@dataclass(frozen=True, eq=False)
class StateVector:
    """``2**n`` complex amplitudes of an ``n``-qubit register."""

    n: int
    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        n = _check_n(self.n)
        amps = np.array(self.amplitudes, dtype=np.complex128).reshape(-1)
        if amps.shape[0] != 1 << n:
            raise DomainError(f"expected {1 << n} amplitudes for n={n}, got {amps.shape[0]}")
        amps.flags.writeable = False
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def from_amplitudes(cls, amplitudes) -> "StateVector":
        amps = np.asarray(amplitudes, dtype=np.complex128).reshape(-1)
        size = amps.shape[0]
        if size < 2 or size & (size - 1):
            raise DomainError(f"amplitude count must be a power of two >= 2, got {size}")
        return cls(size.bit_length() - 1, amps)

    @property
    def dim(self) -> int:
        return 1 << self.n

    def norm_squared(self) -> float:
        a = self.amplitudes
        return float(np.vdot(a, a).real)

    def copy_array(self) -> np.ndarray:
        """Writable copy of the amplitudes."""
        return self.amplitudes.copy()

    def __neg__(self) -> "StateVector":
        return StateVector(self.n, -self.amplitudes)

    def __repr__(self) -> str:
        return f"StateVector(n={self.n}, amplitudes={np.array2string(self.amplitudes, precision=4)})"


def basis_state(n: int, index: int) -> StateVector:
    n = _check_n(n)
    index = check_index(n, index)
    amps = np.zeros(1 << n, dtype=np.complex128)
    amps[index] = 1.0
    return StateVector(n, amps)


def uniform_state(n: int) -> StateVector:
    n = _check_n(n)
    return StateVector(n, np.full(1 << n, (1 << n) ** -0.5, dtype=np.complex128))


def inner_product(a: StateVector, b: StateVector) -> complex:
    """``<a|b>``, conjugate-linear in the first argument."""
    if a.n != b.n:
        raise DomainError(f"dimension mismatch: n={a.n} vs n={b.n}")
    return complex(np.vdot(a.amplitudes, b.amplitudes))


def probability(state: StateVector, index: int) -> float:
    index = check_index(state.n, index)
    amp = state.amplitudes[index]
    return float(amp.real * amp.real + amp.imag * amp.imag)


def probabilities(state: StateVector) -> np.ndarray:
    return np.abs(state.amplitudes) ** 2


def sample(state: StateVector, seed: int = 0, size: int | None = None):
    """Simulated computational-basis measurement.

    Returns a single basis index, or an array of ``size`` indices.  The
    outcome depends only on ``state`` and ``seed``.
    """
    p = probabilities(state)
    total = float(p.sum())
    if abs(total - 1.0) > MEASURE_ATOL:
        raise DomainError(f"cannot sample from unnormalized state (norm^2 = {total!r})")
    rng = np.random.default_rng(seed)
    out = rng.choice(p.shape[0], size=size, p=p / total)
    return int(out) if size is None else out
