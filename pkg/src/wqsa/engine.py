"""Search dynamics: oracle, reflection about the initial state, iteration.

One iteration is ``-T^dag I_k T O_w`` where ``O_w`` flips the sign of the
target amplitude, ``I_k`` flips the sign of coordinate ``k``, and ``T`` is
either the Haar transform (wavelet search, initial state ``W^T e_k``) or the
Walsh-Hadamard transform with ``k = 0`` (plain Grover from the uniform
state).  Each iteration makes exactly one oracle call.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .errors import DomainError
from .haar import index_to_scale
from .state import StateVector, check_index, inner_product
from .transforms import HAAR, WALSH_HADAMARD, TransformPair

PEAK_TOL = 1e-12


class Variant(str, enum.Enum):
    GROVER = "grover"
    WQSA = "wqsa"


@dataclass(frozen=True)
class SearchConfig:
    n: int
    target: int
    variant: Variant = Variant.WQSA
    k: int = 0
    max_iterations: int | None = None
    record_trace: bool = True

    def __post_init__(self) -> None:
        object.__setattr__(self, "variant", Variant(self.variant))
        check_index(self.n, self.target, "target")
        if self.variant is Variant.WQSA:
            check_index(self.n, self.k, "k")
        if self.max_iterations is not None and self.max_iterations < 0:
            raise DomainError(f"max_iterations must be >= 0, got {self.max_iterations}")

    @property
    def transform(self) -> TransformPair:
        return HAAR if self.variant is Variant.WQSA else WALSH_HADAMARD

    @property
    def reflect_index(self) -> int:
        return self.k if self.variant is Variant.WQSA else 0

    @property
    def support_size(self) -> int:
        if self.variant is Variant.GROVER:
            return 1 << self.n
        return index_to_scale(self.n, self.k).n1

    @property
    def iterations(self) -> int:
        if self.max_iterations is not None:
            return self.max_iterations
        return math.ceil(math.pi * math.sqrt(self.support_size))


@dataclass(frozen=True)
class TraceStep:
    m: int
    p_target: float
    oracle_calls: int


@dataclass(frozen=True)
class SearchTrace:
    config: SearchConfig
    steps: tuple[TraceStep, ...]
    final_state: StateVector
    m_star: int
    p_star: float
    oracle_calls: int

    @property
    def p_targets(self) -> np.ndarray:
        return np.array([s.p_target for s in self.steps])


# -- array-level kernels (in place, last axis, batch-friendly) ---------------

def _oracle(x: np.ndarray, w) -> None:
    if np.ndim(w) == 0:
        x[..., w] *= -1
    else:
        rows = np.arange(x.shape[0])
        x[rows, w] *= -1


def _reflect(x: np.ndarray, k: int, pair: TransformPair) -> None:
    pair.forward(x)
    x[..., k] *= -1
    pair.inverse(x)


def _iterate(x: np.ndarray, w, k: int, pair: TransformPair) -> None:
    _oracle(x, w)
    _reflect(x, k, pair)
    np.negative(x, out=x)


def _initial_array(n: int, variant: Variant, k: int) -> np.ndarray:
    x = np.zeros(1 << n, dtype=np.complex128)
    if variant is Variant.WQSA:
        x[k] = 1.0
        HAAR.inverse(x)
    else:
        x[0] = 1.0
        WALSH_HADAMARD.inverse(x)
    return x


# -- public operations --------------------------------------------------------

def oracle_reflect(state: StateVector, w: int) -> StateVector:
    w = check_index(state.n, w, "w")
    x = state.copy_array()
    _oracle(x, w)
    return StateVector(state.n, x)


def reflect_about_initial(
    state: StateVector, k: int, transform: TransformPair = HAAR
) -> StateVector:
    """``(1 - 2|psi><psi|) state`` with ``psi = T^dag e_k``, by conjugation."""
    k = check_index(state.n, k, "k")
    x = state.copy_array()
    _reflect(x, k, transform)
    return StateVector(state.n, x)


def reflect_rank_one(state: StateVector, axis: StateVector) -> StateVector:
    """``(1 - 2|axis><axis|) state`` evaluated directly."""
    overlap = inner_product(axis, state)
    return StateVector(state.n, state.amplitudes - 2.0 * overlap * axis.amplitudes)


def initial_state(config: SearchConfig) -> StateVector:
    return StateVector(config.n, _initial_array(config.n, config.variant, config.k))


def wqsa_iterate(state: StateVector, config: SearchConfig) -> StateVector:
    if config.variant is not Variant.WQSA:
        raise DomainError("wqsa_iterate needs a WQSA config")
    x = state.copy_array()
    _iterate(x, config.target, config.k, HAAR)
    return StateVector(state.n, x)


def grover_iterate(state: StateVector, config: SearchConfig) -> StateVector:
    if config.variant is not Variant.GROVER:
        raise DomainError("grover_iterate needs a Grover config")
    x = state.copy_array()
    _iterate(x, config.target, 0, WALSH_HADAMARD)
    return StateVector(state.n, x)


def iterate(state: StateVector, config: SearchConfig) -> StateVector:
    if config.variant is Variant.WQSA:
        return wqsa_iterate(state, config)
    return grover_iterate(state, config)


def iter_states(config: SearchConfig) -> Iterator[tuple[int, StateVector]]:
    """Yield ``(m, state after m iterations)`` for ``m = 0 .. iterations``."""
    x = _initial_array(config.n, config.variant, config.k)
    yield 0, StateVector(config.n, x)
    for m in range(1, config.iterations + 1):
        _iterate(x, config.target, config.reflect_index, config.transform)
        yield m, StateVector(config.n, x)


def first_peak(p: Sequence[float], tol: float = PEAK_TOL) -> int:
    """Index of the first local maximum of ``p`` among ``m >= 1``.

    The curve rises from ``m = 0`` to a peak and then falls; the first ``m``
    after which it drops by more than ``tol`` is returned.  Flat curves fall
    back to the earliest maximum among ``m >= 1``.
    """
    p = np.asarray(p, dtype=float)
    if p.shape[0] <= 1:
        return 0
    for m in range(1, p.shape[0] - 1):
        if p[m + 1] < p[m] - tol:
            return m
    tail = p[1:]
    return 1 + int(np.argmax(tail >= tail.max() - tol))


def run_search(config: SearchConfig) -> SearchTrace:
    n, w = config.n, config.target
    pair, k = config.transform, config.reflect_index
    x = _initial_array(n, config.variant, config.k)
    p = [float(abs(x[w]) ** 2)]
    for _ in range(config.iterations):
        _iterate(x, w, k, pair)
        p.append(float(abs(x[w]) ** 2))
    m_star = first_peak(p)
    steps: tuple[TraceStep, ...] = ()
    if config.record_trace:
        steps = tuple(TraceStep(m, pm, m) for m, pm in enumerate(p))
    return SearchTrace(
        config=config,
        steps=steps,
        final_state=StateVector(n, x),
        m_star=m_star,
        p_star=p[m_star],
        oracle_calls=len(p) - 1,
    )


def run_batch(
    n: int,
    targets: Sequence[int],
    iterations: int,
    variant: Variant | str = Variant.WQSA,
    k: int = 0,
    transform: TransformPair | None = None,
) -> np.ndarray:
    """Target probabilities for many single-target searches sharing ``(n, k)``.

    Returns an array of shape ``(iterations + 1, len(targets))``; column ``t``
    equals ``run_search(...).p_targets`` for ``targets[t]``.  ``transform``
    replaces the variant's transform pair for both preparation and
    reflection (used to exercise the verifiers with a faulty kernel).
    """
    variant = Variant(variant)
    targets = np.asarray([check_index(n, t, "target") for t in targets], dtype=np.intp)
    if variant is Variant.WQSA:
        check_index(n, k, "k")
        pair, kk = HAAR, k
    else:
        pair, kk = WALSH_HADAMARD, 0
    if transform is not None:
        pair = transform
        x0 = np.zeros(1 << n, dtype=np.complex128)
        x0[kk] = 1.0
        pair.inverse(x0)
    else:
        x0 = _initial_array(n, variant, k)
    x = np.tile(x0, (targets.shape[0], 1))
    rows = np.arange(targets.shape[0])
    out = np.empty((iterations + 1, targets.shape[0]))
    out[0] = np.abs(x[rows, targets]) ** 2
    for m in range(1, iterations + 1):
        _iterate(x, targets, kk, pair)
        out[m] = np.abs(x[rows, targets]) ** 2
    return out
