"""Vectorised range kernels: filters on d and the early-exit profile sweep.

The sweep walks x upward once for a whole block of d values, dropping a d as
soon as some x pushes its count above the threshold.  Only survivors are
carried forward, so the cost is dominated by the first few x.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .arith import SpfTable, factor, is_prime, is_square
from .errors import ConfigurationError
from .profile import FR_RULES, FRVariant, Parity, x_range


@dataclass(frozen=True)
class Profile:
    """What is maximised over x: ``measure((d + sign*x^2) / divisor)``.

    ``measure`` is ``"omega"`` (distinct primes) or ``"bigomega"`` (with
    multiplicity); the Frobenius-Rabinowitsch profiles use ``bigomega`` with
    threshold 1, i.e. every quotient is 1 or prime.
    """

    name: str
    sign: int
    parity: Parity
    x_min: int
    divisor: int = 1
    measure: str = "omega"
    residue: tuple[int, int] | None = None

    def table_limit(self, hi: int) -> int:
        return max(2, 2 * hi if self.sign > 0 else hi)


PROFILES = {
    "m_odd": Profile("m_odd", 1, Parity.ODD, 1),
    "m_even": Profile("m_even", 1, Parity.EVEN, 2),
    "m_even_real": Profile("m_even_real", -1, Parity.EVEN, 2),
    "m_all_from_zero": Profile("m_all_from_zero", 1, Parity.ALL, 0),
}
for _v in FRVariant:
    _mod, _res, _sign, _k, _par, _xmin = FR_RULES[_v]
    PROFILES[f"fr_{_v.value}"] = Profile(f"fr_{_v.value}", _sign, _par, _xmin, _k, "bigomega", (_mod, _res))


def get_profile(name: str | Profile) -> Profile:
    if isinstance(name, Profile):
        return name
    key = name.replace("-", "_")
    if key not in PROFILES:
        raise ConfigurationError(f"unknown profile {name!r}; choose from {sorted(PROFILES)}")
    return PROFILES[key]


def custom_profile(sign: int, parity: str, x_min: int) -> Profile:
    return Profile(f"custom({sign:+d},{parity},{x_min})", sign, Parity(parity), x_min)


# -- d filters ----------------------------------------------------------------

SHAPES = (
    "any",
    "prime",
    "pq",
    "prime-or-pq",
    "composite-non-pq",
    "squarefree",
    "non-squarefree",
    "near-square",
)


@dataclass(frozen=True)
class DFilter:
    """Conditions on d: congruences, factorisation shapes, lower bound.

    ``residues`` is a tuple of ``(modulus, allowed residues)``; ``shapes``
    must all hold.  ``near-square`` means d = m^2 +/- 4 or 4m^2 + 1.
    """

    residues: tuple[tuple[int, tuple[int, ...]], ...] = ()
    shapes: tuple[str, ...] = ()
    min_d: int = 1

    def __post_init__(self):
        for s in self.shapes:
            if s not in SHAPES:
                raise ConfigurationError(f"unknown shape {s!r}")

    def describe(self) -> str:
        parts = []
        for m, rs in self.residues:
            parts.append(f"d mod {m} in {{{','.join(map(str, rs))}}}")
        parts.extend(s for s in self.shapes if s != "any")
        if self.min_d > 1:
            parts.append(f"d >= {self.min_d}")
        return "; ".join(parts) or "any"

    def matches(self, d: int) -> bool:
        """Scalar check by trial division; independent of any sieve."""
        if d < self.min_d:
            return False
        for m, rs in self.residues:
            if d % m not in rs:
                return False
        if not self.shapes:
            return True
        f = factor(d)
        w = len(f)
        big = sum(e for _, e in f.factors)
        for s in self.shapes:
            if not _scalar_shape(s, d, w, big):
                return False
        return True

    def mask(self, ds: np.ndarray, table: SpfTable) -> np.ndarray:
        keep = ds >= self.min_d
        for m, rs in self.residues:
            keep &= np.isin(ds % m, rs)
        for s in self.shapes:
            keep &= _vector_shape(s, ds, table)
        return keep


def _near_square(d: int) -> bool:
    return (d >= 4 and is_square(d - 4)) or is_square(d + 4) or (d % 4 == 1 and is_square((d - 1) // 4))


def _scalar_shape(s: str, d: int, w: int, big: int) -> bool:
    prime = d >= 2 and is_prime(d)
    pq = w == 2 and big == 2
    if s == "any":
        return True
    if s == "prime":
        return prime
    if s == "pq":
        return pq
    if s == "prime-or-pq":
        return prime or pq
    if s == "composite-non-pq":
        return not (prime or pq)
    if s == "squarefree":
        return w == big
    if s == "non-squarefree":
        return w != big
    if s == "near-square":
        return _near_square(d)
    raise ConfigurationError(s)


def _is_square_vec(n: np.ndarray) -> np.ndarray:
    n = np.asarray(n, dtype=np.int64)
    ok = n >= 0
    r = np.sqrt(np.where(ok, n, 0).astype(np.float64)).astype(np.int64)
    r = np.where(r * r > n, r - 1, r)
    r = np.where((r + 1) * (r + 1) <= n, r + 1, r)
    return ok & (r * r == n)


def isqrt_vec(n: np.ndarray) -> np.ndarray:
    n = np.asarray(n, dtype=np.int64)
    r = np.sqrt(n.astype(np.float64)).astype(np.int64)
    r = np.where(r * r > n, r - 1, r)
    r = np.where((r + 1) * (r + 1) <= n, r + 1, r)
    return r


def _vector_shape(s: str, ds: np.ndarray, table: SpfTable) -> np.ndarray:
    if s == "any":
        return np.ones(len(ds), dtype=bool)
    if s == "near-square":
        q = (ds - 1) // 4
        return _is_square_vec(ds - 4) | _is_square_vec(ds + 4) | ((ds % 4 == 1) & _is_square_vec(q))
    if ds.size and ds.max() > table.limit:
        raise ConfigurationError(f"sieve limit {table.limit} too small for d up to {ds.max()}")
    w = table.omega[ds]
    big = table.bigomega[ds]
    prime = table.is_prime_mask[ds]
    pq = (w == 2) & (big == 2)
    if s == "prime":
        return prime
    if s == "pq":
        return pq
    if s == "prime-or-pq":
        return prime | pq
    if s == "composite-non-pq":
        return ~(prime | pq)
    if s == "squarefree":
        return w == big
    if s == "non-squarefree":
        return w != big
    raise ConfigurationError(s)


# -- the sweep ------------------------------------------------------------------


@dataclass
class SweepResult:
    d: np.ndarray
    max_value: np.ndarray
    witness_x: np.ndarray  # -1 where the x range is empty


def sweep(ds: np.ndarray, profile: Profile, threshold: int, table: SpfTable) -> SweepResult:
    """Keep the d in ``ds`` (ascending) whose profile maximum is <= threshold."""
    ds = np.asarray(ds, dtype=np.int64)
    if ds.size == 0:
        empty = np.zeros(0, dtype=np.int64)
        return SweepResult(empty, empty.copy(), empty.copy())
    if np.any(np.diff(ds) <= 0):
        raise ConfigurationError("sweep needs strictly increasing d values")
    need = int(ds[-1]) * 2 if profile.sign > 0 else int(ds[-1])
    if need > table.limit:
        raise ConfigurationError(f"sieve limit {table.limit} below required {need}")
    if profile.residue is not None:
        m, r = profile.residue
        if np.any(ds % m != r):
            raise ConfigurationError(f"profile {profile.name} needs d = {r} mod {m}")
    measure = table.omega if profile.measure == "omega" else table.bigomega

    top = isqrt_vec(ds)
    best = np.zeros(ds.size, dtype=np.int64)
    wit = np.full(ds.size, -1, dtype=np.int64)
    alive = np.arange(ds.size)
    x = profile.x_min
    if profile.parity is Parity.ODD and x % 2 == 0:
        x += 1
    elif profile.parity is Parity.EVEN and x % 2 == 1:
        x += 1
    step = 1 if profile.parity is Parity.ALL else 2
    xmax = int(top[-1]) if ds.size else -1
    while x <= xmax and alive.size:
        start = int(np.searchsorted(top[alive], x, side="left"))
        sub = alive[start:]
        if sub.size == 0:
            break
        vals = ds[sub] + profile.sign * x * x
        nz = vals != 0
        if not nz.all():
            sub, vals = sub[nz], vals[nz]
        if profile.divisor != 1:
            vals //= profile.divisor
        m = measure[vals].astype(np.int64)
        up = m > best[sub]
        if up.any():
            best[sub[up]] = m[up]
            wit[sub[up]] = x
        bad = m > threshold
        if bad.any():
            dead = np.zeros(ds.size, dtype=bool)
            dead[sub[bad]] = True
            alive = alive[~dead[alive]]
        x += step
    # a d whose only evaluated value had count 0 still has a witness
    touched = _evaluated_any(ds[alive], top[alive], profile)
    fix = (wit[alive] == -1) & touched
    if fix.any():
        wit[alive[fix]] = _first_x(ds[alive[fix]], profile)
    return SweepResult(ds[alive], best[alive], wit[alive])


def _first_x_scalar(d: int, profile: Profile) -> int | None:
    for x in x_range(d, profile.parity, profile.x_min):
        if d + profile.sign * x * x != 0:
            return x
    return None


def _evaluated_any(ds: np.ndarray, top: np.ndarray, profile: Profile) -> np.ndarray:
    x0 = profile.x_min
    if profile.parity is Parity.ODD and x0 % 2 == 0:
        x0 += 1
    elif profile.parity is Parity.EVEN and x0 % 2 == 1:
        x0 += 1
    out = top >= x0
    if profile.sign < 0 and out.any():
        # a range whose every value is zero is a single x with x^2 = d
        idx = np.flatnonzero(out)
        for i in idx:
            out[i] = _first_x_scalar(int(ds[i]), profile) is not None
    return out


def _first_x(ds: np.ndarray, profile: Profile) -> np.ndarray:
    return np.array([_first_x_scalar(int(d), profile) for d in ds], dtype=np.int64)


def required_sieve_limit(hi: int, profile: Profile) -> int:
    return profile.table_limit(hi)


