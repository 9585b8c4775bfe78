"""Fundamental units of real quadratic orders via continued fractions."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

from .arith import is_square
from .errors import DomainError


@dataclass(frozen=True)
class PellSolution:
    """A unit (t + u*sqrt(d)) / 2 if ``half`` else t + u*sqrt(d).

    ``t^2 - d*u^2`` equals ``norm_sign`` (times 4 when ``half``).
    """

    d: int
    t: int
    u: int
    norm_sign: int
    half: bool = False

    def __post_init__(self):
        k = 4 if self.half else 1
        if self.t * self.t - self.d * self.u * self.u != k * self.norm_sign:
            raise ValueError(f"{self} does not solve the norm equation")

    @property
    def value(self) -> float:
        v = self.t + self.u * math.sqrt(self.d)
        return v / 2 if self.half else v

    def __str__(self):
        unit = f"{self.t} + {self.u}*sqrt({self.d})"
        return f"({unit})/2" if self.half else unit


def quadratic_cf(d: int, P: int, Q: int) -> Iterator[int]:
    """Partial quotients of (P + sqrt(d)) / Q, with Q | d - P^2 and Q > 0."""
    if (d - P * P) % Q:
        raise DomainError(f"{Q} does not divide {d} - {P}^2")
    s = math.isqrt(d)
    while True:
        if Q <= 0:
            raise AssertionError("continued fraction left the positive-denominator regime")
        a = (P + s) // Q
        yield a
        P = a * Q - P
        Q = (d - P * P) // Q


def _convergents(partials: Iterator[int]) -> Iterator[tuple[int, int]]:
    p0, p1 = 0, 1
    q0, q1 = 1, 0
    for a in partials:
        p0, p1 = p1, a * p1 + p0
        q0, q1 = q1, a * q1 + q0
        yield p1, q1


def fundamental_unit(d: int, max_terms: int = 10**6) -> PellSolution:
    """Smallest unit > 1 of Z[sqrt(d)] (d = 2, 3 mod 4) or Z[(1+sqrt(d))/2] (d = 1 mod 4)."""
    if d < 2 or is_square(d):
        raise DomainError(f"d must be a nonsquare integer >= 2, got {d}")
    if d % 4 == 1:
        # omega = (1 + sqrt d)/2; the unit is p - q*conj(omega) = (2p - q + q sqrt d)/2
        for k, (p, q) in enumerate(_convergents(quadratic_cf(d, 1, 2))):
            n = p * p - p * q + q * q * (1 - d) // 4
            if n in (1, -1):
                t, u = 2 * p - q, q
                if t % 2 == 0 and u % 2 == 0:
                    return PellSolution(d, t // 2, u // 2, n)
                return PellSolution(d, t, u, n, half=True)
            if k > max_terms:
                break
    else:
        for k, (p, q) in enumerate(_convergents(quadratic_cf(d, 0, 1))):
            n = p * p - d * q * q
            if n in (1, -1):
                return PellSolution(d, p, q, n)
            if k > max_terms:
                break
    raise AssertionError(f"no unit found for d={d} within {max_terms} terms")


def unit_norm(D: int) -> int:
    """Norm of the fundamental unit of the order of discriminant D > 0 (fundamental)."""
    d = D if D % 4 == 1 else D // 4
    return fundamental_unit(d).norm_sign
