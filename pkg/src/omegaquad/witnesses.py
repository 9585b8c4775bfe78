"""Explicit solutions to the small Diophantine equations used to pin down
class groups: p + x^2 = 2y^2, d +/- x^2 = 2*ell^2, and ell | d + x^2."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .arith import is_prime, is_square, is_squarefree
from .classgroup import Splitting, splitting_type
from .errors import DomainError, InvariantViolation


def solve_p_x2_2y2(p: int, all_solutions: bool = False):
    """Smallest (x, y) in [0, sqrt p)^2 with p + x^2 = 2y^2, p = +/-1 mod 8 prime.

    With ``all_solutions`` the full list is returned instead.
    """
    if not is_prime(p) or p % 8 not in (1, 7):
        raise DomainError(f"need a prime p = +/-1 mod 8, got {p}")
    found = []
    x = 0
    while x * x < p:
        two_y2 = p + x * x
        if two_y2 % 2 == 0 and is_square(two_y2 // 2):
            y = math.isqrt(two_y2 // 2)
            if y * y < p:
                if not all_solutions:
                    return x, y
                found.append((x, y))
        x += 1
    if not found:
        raise InvariantViolation(f"no solution of {p} + x^2 = 2y^2 below sqrt({p})")
    return found


@dataclass(frozen=True)
class TwoEllSquareWitness:
    """Outcome of the search for d + sign*x^2 = 2*ell^2.

    ``kind`` is ``"2l^2"`` for a direct hit, ``"degenerate"`` for the branch
    d = ell^2 + 1, x = ell - 1 (d - x^2 = 2*ell), and ``None`` when absent.
    """

    d: int
    ell: int
    sign: int
    x: int | None
    kind: str | None

    @property
    def found(self) -> bool:
        return self.kind is not None


def find_2l2_witness(d: int, ell: int, sign: int) -> TwoEllSquareWitness:
    if sign not in (1, -1):
        raise DomainError(f"sign must be +1 or -1, got {sign}")
    if d < 1 or d % 4 != 2 or not is_squarefree(d):
        raise DomainError(f"need squarefree d = 2 mod 4, got {d}")
    if ell % 2 == 0 or not is_prime(ell):
        raise DomainError(f"need an odd prime ell, got {ell}")
    if ell * ell > d:
        raise DomainError(f"need ell <= sqrt(d), got ell={ell}, d={d}")
    D = -4 * d if sign == 1 else 4 * d
    if splitting_type(D, ell) is not Splitting.SPLIT:
        raise DomainError(f"{ell} does not split for discriminant {D}")
    x2 = sign * (2 * ell * ell - d)
    if is_square(x2):
        return TwoEllSquareWitness(d, ell, sign, math.isqrt(x2), "2l^2")
    if sign == -1 and d == ell * ell + 1:
        return TwoEllSquareWitness(d, ell, sign, ell - 1, "degenerate")
    return TwoEllSquareWitness(d, ell, sign, None, None)


def not_inert_witness(d: int, ell: int, parity: str) -> int:
    """x in [0, ell] of the requested parity with ell | d + x^2."""
    if ell < 3 or not is_prime(ell):
        raise DomainError(f"need an odd prime, got {ell}")
    want = {"even": 0, "odd": 1}[parity]
    for x in range(ell + 1):
        if (d + x * x) % ell == 0:
            if x % 2 == want:
                return x
            if (ell - x) % 2 == want:
                return ell - x
    raise DomainError(f"{ell} is inert in Q(sqrt(-{d}))")
