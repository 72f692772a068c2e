"""Closed-form rotation picture of the search and its comparison with simulation.

Inside the plane spanned by the target ``|w>`` and the normalized remainder
``|r>`` of the initial state, one iteration is a rotation.  With initial
state ``(eps_w/sqrt(n1)) |w> + eps_r sqrt((n1-1)/n1) |r>``::

    theta = asin(eps_w * eps_r * 2 * sqrt(n1 - 1) / n1)
    phi   = eps_r * acos(eps_w / sqrt(n1))
    P_m   = cos(m * theta - phi) ** 2

Branch choice: folding ``eps_r`` into ``phi`` as well as into ``theta`` is
what makes the formula agree with the simulated dynamics for all four sign
combinations (``cos(phi)`` is unaffected).  ``eps_r`` is a representation
choice for ``|r>``; the physics does not depend on it.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .engine import SearchConfig, SearchTrace, Variant, initial_state, run_search
from .errors import DomainError
from .haar import index_to_scale, scale_to_index

# ties (only at n1 = 2, where P_m is flat) resolve upward: at least one query
_ROUND_EPS = 1e-9


@dataclass(frozen=True)
class AngleParams:
    n1: int
    eps_w: int
    eps_r: int
    theta: float
    phi: float


def _check_n1(n1: int) -> None:
    if n1 < 2 or n1 & (n1 - 1):
        raise DomainError(f"n1 must be a power of two >= 2, got {n1}")


def _check_sign(name: str, value: int) -> None:
    if value not in (1, -1):
        raise DomainError(f"{name} must be +1 or -1, got {value}")


def rotation_angles(n1: int, eps_w: int = 1, eps_r: int = 1) -> AngleParams:
    _check_n1(n1)
    _check_sign("eps_w", eps_w)
    _check_sign("eps_r", eps_r)
    theta = math.asin(eps_w * eps_r * 2.0 * math.sqrt(n1 - 1) / n1)
    phi = eps_r * math.acos(eps_w / math.sqrt(n1))
    return AngleParams(n1, eps_w, eps_r, theta, phi)


def unnormalized_angles(n1: int, eps_w: int = 1, eps_r: int = 1) -> AngleParams:
    """Same as :func:`rotation_angles` but with ``phi`` taken from ``eps_w / n1``.

    That is the offset one gets by forgetting the ``1/sqrt(n1)`` normalization
    of the initial state.  Kept only to demonstrate the mismatch with
    simulation; ``cos(phi)**2`` no longer equals the initial overlap.
    """
    a = rotation_angles(n1, eps_w, eps_r)
    return AngleParams(n1, eps_w, eps_r, a.theta, eps_r * math.acos(eps_w / n1))


def predicted_probability(m, angles: AngleParams):
    """``cos(m*theta - phi)**2``; ``m`` may be an int or an array."""
    value = np.cos(np.asarray(m, dtype=float) * angles.theta - angles.phi) ** 2
    return float(value) if np.ndim(value) == 0 else value


def optimal_iterations(angles: AngleParams) -> int:
    """Iteration count of the first peak of the predicted curve.

    The first ``m >= 0`` with ``m*theta - phi`` a multiple of ``pi`` is
    ``(phi/theta) mod (pi/|theta|)``; for ``eps_w = +1`` this is simply
    ``|phi| / |theta|``.  Rounded to the nearest integer.
    """
    period = math.pi / abs(angles.theta)
    x = math.fmod(angles.phi / angles.theta, period)
    if x < 0:
        x += period
    return int(math.floor(x + 0.5 + _ROUND_EPS))


def target_sign(n: int, k: int, target: int) -> int:
    """Sign of the target amplitude in ``W^T e_k``, read off the built state."""
    amp = initial_state(SearchConfig(n, target, Variant.WQSA, k)).amplitudes[target].real
    if amp == 0:
        raise DomainError(f"target {target} lies outside the support of k={k}")
    return 1 if amp > 0 else -1


def angles_for(config: SearchConfig, eps_r: int = 1) -> AngleParams:
    """Rotation angles for a search whose target lies inside the initial support."""
    if config.variant is Variant.GROVER:
        return rotation_angles(1 << config.n, 1, eps_r)
    idx = index_to_scale(config.n, config.k)
    return rotation_angles(idx.n1, target_sign(config.n, config.k, config.target), eps_r)


def theory_residual(trace: SearchTrace, angles: AngleParams) -> float:
    p = trace.p_targets
    if p.shape[0] == 0:
        raise DomainError("trace has no recorded steps")
    m = np.array([s.m for s in trace.steps])
    return float(np.max(np.abs(p - predicted_probability(m, angles))))


@dataclass(frozen=True)
class SpeedupRow:
    n: int
    lam: int
    L: int
    n1: int
    m_wqsa: int
    m_grover: int
    ratio: float
    sqrtL: float
    m_wqsa_theory: int
    m_grover_theory: int
    p_wqsa: float
    p_grover: float


def _k_for(lam: int, j: int) -> int:
    # scale 1 has no localized index; k = 1 is its full-support representative
    return 1 if lam == 1 else scale_to_index(lam, j)


def speedup_table(
    n: int, lambdas: Iterable[int], j: int = 1, simulate: bool = True
) -> list[SpeedupRow]:
    """One row per scale comparing wavelet-search and Grover iteration counts.

    Targets are the first index of each block.  With ``simulate`` the
    ``m_*`` columns come from full simulated traces, otherwise they repeat
    the closed-form values.
    """
    lams = sorted(set(int(x) for x in lambdas))
    for lam in lams:
        if not 1 <= lam <= n:
            raise DomainError(f"scale {lam} out of range [1, {n}]")
        if lam > 1 and not 1 <= j <= 1 << (lam - 1):
            raise DomainError(f"shift j={j} out of range for scale {lam}")

    size = 1 << n
    g_theory = optimal_iterations(rotation_angles(size))
    if simulate:
        g = run_search(SearchConfig(n, 0, Variant.GROVER, record_trace=False))
        m_grover, p_grover = g.m_star, g.p_star
    else:
        m_grover, p_grover = g_theory, predicted_probability(g_theory, rotation_angles(size))

    rows = []
    for lam in lams:
        k = _k_for(lam, j)
        idx = index_to_scale(n, k)
        cfg = SearchConfig(n, idx.support_lo, Variant.WQSA, k, record_trace=False)
        angles = angles_for(cfg)
        w_theory = optimal_iterations(angles)
        if simulate:
            t = run_search(cfg)
            m_wqsa, p_wqsa = t.m_star, t.p_star
        else:
            m_wqsa, p_wqsa = w_theory, predicted_probability(w_theory, angles)
        L = 1 << (lam - 1)
        rows.append(
            SpeedupRow(
                n=n, lam=lam, L=L, n1=idx.n1,
                m_wqsa=m_wqsa, m_grover=m_grover,
                ratio=m_grover / m_wqsa, sqrtL=math.sqrt(L),
                m_wqsa_theory=w_theory, m_grover_theory=g_theory,
                p_wqsa=p_wqsa, p_grover=p_grover,
            )
        )
    return rows


def scaling_slope(m_values: Sequence[int], n1_values: Sequence[int]) -> float:
    """Least-squares slope of ``log m`` against ``log sqrt(n1)``."""
    x = 0.5 * np.log(np.asarray(n1_values, dtype=float))
    y = np.log(np.asarray(m_values, dtype=float))
    return float(np.polyfit(x, y, 1)[0])
