"""Maximal prime-divisor counts of d + x^2 and d - x^2 over parity-restricted ranges,
and the three Frobenius-Rabinowitsch primality criteria."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .arith import Factorization, SpfTable, factor, is_prime
from .errors import DomainError


class Parity(str, Enum):
    ODD = "odd"
    EVEN = "even"
    ALL = "all"


class FRVariant(str, Enum):
    IMAG_ODD = "imag_odd"
    IMAG_EVEN = "imag_even"
    REAL = "real"


@dataclass(frozen=True)
class OmegaQuery:
    d: int
    sign: int = 1
    parity: Parity = Parity.ODD
    x_min: int = 1

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise DomainError(f"sign must be +1 or -1, got {self.sign}")
        if self.x_min < 0:
            raise DomainError(f"x_min must be nonnegative, got {self.x_min}")
        object.__setattr__(self, "parity", Parity(self.parity))

    def xs(self) -> range:
        """The x range, in increasing order."""
        return x_range(self.d, self.parity, self.x_min)


@dataclass(frozen=True)
class OmegaReport:
    max_omega: int
    witness_x: int | None
    witness_factorization: Factorization | None
    evaluated_count: int


def x_range(d: int, parity: Parity | str, x_min: int) -> range:
    parity = Parity(parity)
    top = math.isqrt(d)
    start = x_min
    if parity is Parity.ODD and start % 2 == 0:
        start += 1
    elif parity is Parity.EVEN and start % 2 == 1:
        start += 1
    step = 1 if parity is Parity.ALL else 2
    return range(start, top + 1, step)


def omega_profile(query: OmegaQuery, table: SpfTable | None = None) -> OmegaReport:
    d = query.d
    if d < 1:
        raise DomainError(f"d must be positive, got {d}")
    best = -1
    best_x = None
    best_f = None
    count = 0
    for x in query.xs():
        value = d + query.sign * x * x
        if value == 0:
            continue
        count += 1
        f = factor(value, table)
        if len(f) > best:
            best, best_x, best_f = len(f), x, f
    if count == 0:
        return OmegaReport(0, None, None, 0)
    return OmegaReport(best, best_x, best_f, count)


def m_odd(d: int, table: SpfTable | None = None) -> OmegaReport:
    return omega_profile(OmegaQuery(d, 1, Parity.ODD, 1), table)


def m_even(d: int, table: SpfTable | None = None) -> OmegaReport:
    return omega_profile(OmegaQuery(d, 1, Parity.EVEN, 2), table)


def m_even_real(d: int, table: SpfTable | None = None) -> OmegaReport:
    return omega_profile(OmegaQuery(d, -1, Parity.EVEN, 2), table)


def m_all_from_zero(d: int, table: SpfTable | None = None) -> OmegaReport:
    return omega_profile(OmegaQuery(d, 1, Parity.ALL, 0), table)


# variant -> (modulus, residue, sign, divisor, parity, x_min)
FR_RULES = {
    FRVariant.IMAG_ODD: (4, 3, 1, 4, Parity.ODD, 1),
    FRVariant.IMAG_EVEN: (4, 2, 1, 2, Parity.EVEN, 0),
    FRVariant.REAL: (8, 5, -1, 4, Parity.ODD, 3),
}


def fr_quotients(d: int, variant: FRVariant | str):
    """Yield ``(x, (d +/- x^2) / k)`` over the criterion's x range."""
    variant = FRVariant(variant)
    modulus, residue, sign, k, parity, x_min = FR_RULES[variant]
    if d < 1:
        raise DomainError(f"d must be positive, got {d}")
    if d % modulus != residue:
        raise DomainError(f"{variant.value} criterion needs d = {residue} mod {modulus}, got d = {d}")
    for x in x_range(d, parity, x_min):
        yield x, (d + sign * x * x) // k


def fr_check(d: int, variant: FRVariant | str, table: SpfTable | None = None) -> bool:
    for _, q in fr_quotients(d, variant):
        if q == 1:
            continue
        if table is not None and q <= table.limit:
            if not table.is_prime_mask[q]:
                return False
        elif not is_prime(q):
            return False
    return True
