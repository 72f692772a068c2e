"""Hierarchical item codes and the block constraints they induce.

Item ``z`` of ``2**n`` gets digits ``c_1 .. c_n`` with
``c_lam = floor(z / 2**(n-lam+1)) + 1``.  Digit ``lam`` therefore ranges
over ``[1, 2**(lam-1)]`` and refines the digit before it
(``c_lam = floor((c_{lam+1} - 1) / 2) + 1``).  Knowing one digit confines
the item to a block of ``2**(n-lam+1)`` consecutive indices, which is
exactly the support of a Haar basis function.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import DomainError
from .haar import scale_to_index
from .state import _check_n, check_index


@dataclass(frozen=True)
class CodeLabel:
    n: int
    digits: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "digits", tuple(int(d) for d in self.digits))
        if len(self.digits) != self.n:
            raise DomainError(f"expected {self.n} digits, got {len(self.digits)}")

    def digit(self, lam: int) -> int:
        """Digit at 1-based scale ``lam``."""
        return self.digits[lam - 1]


@dataclass(frozen=True)
class Block:
    lo: int
    hi: int
    lam: int
    j: int

    @property
    def size(self) -> int:
        return self.hi - self.lo + 1

    def __contains__(self, z: int) -> bool:
        return self.lo <= z <= self.hi


@dataclass(frozen=True)
class Verdict:
    ok: bool
    lam: int | None = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


def _check_digit(n: int, lam: int, j: int) -> None:
    if not 1 <= lam <= n:
        raise DomainError(f"scale {lam} out of range [1, {n}]")
    if not 1 <= j <= 1 << (lam - 1):
        raise DomainError(f"digit {j} out of range [1, {1 << (lam - 1)}] at scale {lam}")


def encode(n: int, z: int) -> CodeLabel:
    n = _check_n(n)
    z = check_index(n, z, "z")
    return CodeLabel(n, tuple((z >> (n - lam + 1)) + 1 for lam in range(1, n + 1)))


def decode_digit(n: int, lam: int, j: int) -> Block:
    n = _check_n(n)
    _check_digit(n, lam, j)
    size = 1 << (n - lam + 1)
    return Block((j - 1) * size, j * size - 1, lam, j)


def choose_k(n: int, lam: int, j: int) -> int:
    """Haar index whose initial state covers exactly the block of digit ``j`` at ``lam``."""
    n = _check_n(n)
    if lam == 1:
        raise DomainError(
            "the first digit is always 1 and carries no information; "
            "no speedup over plain Grover search is available"
        )
    _check_digit(n, lam, j)
    return scale_to_index(lam, j)


def validate(label: CodeLabel | Sequence[int], n: int | None = None) -> Verdict:
    """Check digit ranges and nesting; report the first offending scale."""
    digits = tuple(label.digits) if isinstance(label, CodeLabel) else tuple(label)
    if n is not None and len(digits) != n:
        return Verdict(False, None, f"expected {n} digits, got {len(digits)}")
    for lam, c in enumerate(digits, start=1):
        top = 1 << (lam - 1)
        if not 1 <= c <= top:
            return Verdict(False, lam, f"digit {c} at scale {lam} outside [1, {top}]")
        if lam > 1 and (c - 1) // 2 + 1 != digits[lam - 2]:
            parent = digits[lam - 2]
            return Verdict(
                False, lam,
                f"digit {c} at scale {lam} does not refine {parent} (needs {2 * parent - 1} or {2 * parent})",
            )
    return Verdict(True)
