"""Exact integer primitives.

Everything here works on Python ints; the smallest-prime-factor table is a
numpy array so that range scans can look values up in bulk.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import DomainError, ResourceError

# Largest sieve the library agrees to build (entries, not bytes).
MAX_SIEVE_LIMIT = 200_000_000

# Miller-Rabin with the first twelve prime bases is exact below 3.3e24,
# which covers every 64-bit input.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


@dataclass(frozen=True)
class Factorization:
    n: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        prod = 1
        last = 1
        for p, e in self.factors:
            if p <= last or e < 1:
                raise ValueError(f"malformed factorization of {self.n}: {self.factors}")
            last = p
            prod *= p**e
        if prod != self.n:
            raise ValueError(f"factors {self.factors} do not multiply to {self.n}")

    @property
    def primes(self) -> list[int]:
        return [p for p, _ in self.factors]

    def __len__(self):
        return len(self.factors)

    def __str__(self):
        if not self.factors:
            return "1"
        return " * ".join(f"{p}^{e}" if e > 1 else str(p) for p, e in self.factors)


class SpfTable:
    """Smallest prime factor of every integer in ``[2, limit]``.

    The table is immutable once built and can be shared between threads.
    ``omega`` and ``bigomega`` are derived lazily (distinct prime count and
    prime count with multiplicity for every entry).
    """

    def __init__(self, limit: int, spf: np.ndarray):
        self.limit = limit
        self.spf = spf
        self.spf.setflags(write=False)

    def __repr__(self):
        return f"SpfTable(limit={self.limit})"

    def __getitem__(self, k: int) -> int:
        if not 2 <= k <= self.limit:
            raise IndexError(k)
        return int(self.spf[k])

    def __contains__(self, k: int) -> bool:
        return 2 <= k <= self.limit

    @cached_property
    def primes(self) -> np.ndarray:
        idx = np.arange(self.limit + 1, dtype=self.spf.dtype)
        mask = self.spf == idx
        mask[:2] = False
        return np.flatnonzero(mask)

    @cached_property
    def omega(self) -> np.ndarray:
        out = np.zeros(self.limit + 1, dtype=np.int8)
        for p in self.primes:
            out[p::p] += 1
        out.setflags(write=False)
        return out

    @cached_property
    def bigomega(self) -> np.ndarray:
        out = np.zeros(self.limit + 1, dtype=np.int8)
        for p in self.primes:
            q = int(p)
            while q <= self.limit:
                out[q::q] += 1
                q *= int(p)
        out.setflags(write=False)
        return out

    @cached_property
    def is_prime_mask(self) -> np.ndarray:
        mask = np.zeros(self.limit + 1, dtype=bool)
        mask[self.primes] = True
        mask.setflags(write=False)
        return mask


def build_spf(limit: int, max_limit: int | None = None) -> SpfTable:
    if limit < 2:
        raise DomainError(f"sieve limit must be at least 2, got {limit}")
    cap = MAX_SIEVE_LIMIT if max_limit is None else max_limit
    if limit > cap:
        raise ResourceError(f"sieve limit {limit} exceeds the cap {cap}")
    dtype = np.int32 if limit < 2**31 - 1 else np.int64
    spf = np.zeros(limit + 1, dtype=dtype)
    for p in range(2, math.isqrt(limit) + 1):
        if spf[p] == 0:
            block = spf[p * p :: p]
            block[block == 0] = p
    unset = spf == 0
    spf[unset] = np.flatnonzero(unset).astype(dtype)
    spf[0] = 0
    spf[1] = 1
    return SpfTable(limit, spf)


def _trial_factor(n: int) -> list[tuple[int, int]]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 1 if p == 2 else 2
    if n > 1:
        out.append((n, 1))
    return out


def factor(n: int, table: SpfTable | None = None) -> Factorization:
    if n < 1:
        raise DomainError(f"cannot factor {n}")
    if table is None or n > table.limit:
        return Factorization(n, tuple(_trial_factor(n)))
    spf = table.spf
    out = []
    m = n
    while m > 1:
        p = int(spf[m])
        e = 0
        while m % p == 0:
            m //= p
            e += 1
        out.append((p, e))
    return Factorization(n, tuple(out))


def omega(n: int, table: SpfTable | None = None) -> int:
    if table is not None and 1 <= n <= table.limit:
        return int(table.omega[n])
    return len(factor(n, table))


def omega_at_most(n: int, k: int, table: SpfTable | None = None) -> bool:
    """True iff ``n`` has at most ``k`` distinct prime divisors.

    Stops dividing as soon as the ``k+1``-th prime shows up.
    """
    if n < 1:
        raise DomainError(f"omega undefined for {n}")
    found = 0
    if table is not None and n <= table.limit:
        spf = table.spf
        while n > 1:
            p = int(spf[n])
            found += 1
            if found > k:
                return False
            while n % p == 0:
                n //= p
        return True
    p = 2
    while p * p <= n:
        if n % p == 0:
            found += 1
            if found > k:
                return False
            while n % p == 0:
                n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        found += 1
    return found <= k


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def is_squarefree(n: int, table: SpfTable | None = None) -> bool:
    return all(e == 1 for _, e in factor(n, table).factors)


def is_square(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a/n); agrees with Legendre for odd prime n."""
    if n == 0:
        raise DomainError("Kronecker symbol (a/0) is not supported")
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -result
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    if v:
        if a % 2 == 0:
            return 0
        if v % 2 and a % 8 in (3, 5):
            result = -result
    # Jacobi symbol for odd n > 0
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0
