from __future__ import annotations

import math

import pytest

from omegaquad.arith import build_spf


@pytest.fixture(scope="session")
def table():
    return build_spf(2_100_000)


def naive_factor(n: int) -> list[tuple[int, int]]:
    """Plain trial division by every integer; the reference for sieve results."""
    out = []
    k = 2
    while k * k <= n:
        e = 0
        while n % k == 0:
            n //= k
            e += 1
        if e:
            out.append((k, e))
        k += 1
    if n > 1:
        out.append((n, 1))
    return out


def naive_omega(n: int) -> int:
    return len(naive_factor(n))


def naive_is_prime(n: int) -> bool:
    return n >= 2 and all(n % k for k in range(2, math.isqrt(n) + 1))


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(RESULTS):
        ok, detail = RESULTS[n]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {n}: {detail}")
