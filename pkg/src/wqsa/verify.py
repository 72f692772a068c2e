"""Invariant suites run by ``wqsa verify`` and by the acceptance tests.

Each suite returns a :class:`SuiteResult` with the worst deviation it saw.
The transform under test is injectable so a deliberately broken kernel can
be used as a negative control.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import haar
from .analysis import (
    optimal_iterations,
    predicted_probability,
    rotation_angles,
    unnormalized_angles,
)
from .engine import Variant, run_batch
from .transforms import HAAR, TransformPair

UNITARY_TOL = 1e-12
SUPPORT_TOL = 1e-12
RESIDUAL_TOL = 1e-10


@dataclass(frozen=True)
class SuiteResult:
    name: str
    passed: bool
    worst: float
    tol: float
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        text = f"{status} {self.name} worst={self.worst:.3e} tol={self.tol:.0e}"
        return f"{text} {self.detail}" if self.detail else text


def unitarity(max_n: int = 10) -> SuiteResult:
    worst = 0.0
    for n in range(1, max_n + 1):
        w = haar.haar_matrix(n)
        worst = max(worst, float(np.max(np.abs(w @ w.T - np.eye(1 << n)))))
    return SuiteResult("unitarity", worst <= UNITARY_TOL, worst, UNITARY_TOL, f"n<={max_n}")


def kernel_agreement(
    max_n: int = 10, samples: int = 200, seed: int = 0, transform: TransformPair = HAAR
) -> SuiteResult:
    """Fast kernels against the dense matrix (forward) and its transpose (inverse)."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for n in range(1, max_n + 1):
        size = 1 << n
        w = haar.haar_matrix(n)
        x = rng.normal(size=(samples, size)) + 1j * rng.normal(size=(samples, size))
        x /= np.linalg.norm(x, axis=1, keepdims=True)
        fwd = transform.forward(x.copy())
        inv = transform.inverse(x.copy())
        worst = max(
            worst,
            float(np.max(np.abs(fwd - x @ w.T))),
            float(np.max(np.abs(inv - x @ w))),
        )
    return SuiteResult(
        "kernel_agreement", worst <= UNITARY_TOL, worst, UNITARY_TOL,
        f"n<={max_n} samples={samples}",
    )


def expected_initial_states(n: int) -> np.ndarray:
    """Row ``k``: the +/- block pattern predicted from the index bookkeeping."""
    size = 1 << n
    out = np.zeros((size, size))
    for k in range(size):
        idx = haar.index_to_scale(n, k)
        amp = idx.n1 ** -0.5
        if k == 0:
            out[k, :] = amp
            continue
        half = idx.support_lo + idx.n1 // 2
        out[k, idx.support_lo : half] = amp
        out[k, half : idx.support_hi + 1] = -amp
    return out


def support_law(max_n: int = 10, transform: TransformPair = HAAR) -> SuiteResult:
    """Every ``T^dag e_k`` (k >= 2) against its predicted block pattern."""
    worst = 0.0
    for n in range(1, max_n + 1):
        size = 1 << n
        if size <= 2:
            continue
        states = transform.inverse(np.eye(size, dtype=np.complex128))
        expected = expected_initial_states(n)
        worst = max(worst, float(np.max(np.abs(states[2:] - expected[2:]))))
    return SuiteResult("support_law", worst <= SUPPORT_TOL, worst, SUPPORT_TOL, f"n<={max_n}")


def residual_grid(min_n: int, max_n: int, seed: int = 0):
    """``(n, lam, j, targets)`` cases: random shift, targets in both sign halves."""
    rng = np.random.default_rng(seed)
    for n in range(min_n, max_n + 1):
        for lam in range(2, n + 1):
            j = int(rng.integers(1, (1 << (lam - 1)) + 1))
            n1 = 1 << (n - lam + 1)
            lo = (j - 1) * n1
            half = n1 // 2
            targets = sorted(
                {lo, lo + half, lo + int(rng.integers(0, half)), lo + half + int(rng.integers(0, half))}
            )
            yield n, lam, j, targets


def theory_residuals(
    max_n: int = 14, seed: int = 0, transform: TransformPair = HAAR, min_n: int = 2
) -> tuple[SuiteResult, float]:
    """Simulated ``P_m`` against ``cos(m theta - phi)**2`` for ``m <= 4 m*``.

    Also returns the smallest residual seen with the unnormalized offset angle,
    which is expected to be far above the tolerance.
    """
    worst = 0.0
    unnormalized_best = math.inf
    cases = 0
    for n, lam, j, targets in residual_grid(min_n, max_n, seed):
        n1 = 1 << (n - lam + 1)
        k = haar.scale_to_index(lam, j)
        lo = (j - 1) * n1
        m_star = optimal_iterations(rotation_angles(n1))
        iters = 4 * m_star
        p = run_batch(n, targets, iters, Variant.WQSA, k, transform=transform)
        m = np.arange(iters + 1)
        for col, w in enumerate(targets):
            eps_w = 1 if w - lo < n1 // 2 else -1
            pred = predicted_probability(m, rotation_angles(n1, eps_w))
            worst = max(worst, float(np.max(np.abs(p[:, col] - pred))))
            bad = predicted_probability(m, unnormalized_angles(n1, eps_w))
            unnormalized_best = min(unnormalized_best, float(np.max(np.abs(p[:, col] - bad))))
            cases += 1
    result = SuiteResult(
        "theory_residual", worst <= RESIDUAL_TOL, worst, RESIDUAL_TOL,
        f"n<={max_n} cases={cases}",
    )
    return result, unnormalized_best


def stationarity(max_n: int = 8, transform: TransformPair = HAAR) -> SuiteResult:
    """Targets outside the support of ``T^dag e_k`` must never gain probability."""
    worst = 0.0
    cases = 0
    for n in range(2, max_n + 1):
        size = 1 << n
        for k in range(2, size):
            idx = haar.index_to_scale(n, k)
            outside = [z for z in range(size) if not idx.contains(z)]
            iters = math.ceil(math.pi * math.sqrt(idx.n1))
            p = run_batch(n, outside, iters, Variant.WQSA, k, transform=transform)
            worst = max(worst, float(np.max(p)))
            cases += len(outside)
    return SuiteResult("stationarity", worst == 0.0, worst, 0.0, f"n<={max_n} cases={cases}")


def run_all(
    max_dense_n: int = 10,
    max_residual_n: int = 14,
    max_stationary_n: int = 8,
    samples: int = 200,
    seed: int = 0,
    transform: TransformPair = HAAR,
) -> list[SuiteResult]:
    residual, _ = theory_residuals(max_residual_n, seed, transform)
    return [
        unitarity(max_dense_n),
        kernel_agreement(max_dense_n, samples, seed, transform),
        support_law(max_dense_n, transform),
        residual,
        stationarity(max_stationary_n, transform),
    ]
