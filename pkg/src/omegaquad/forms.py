"""Binary quadratic forms ax^2 + bxy + cy^2: discriminants, reduction, composition.

Forms stand in for primitive ideals of the quadratic order of the same
discriminant; a reduced form is the canonical representative of its class.
Definite forms are always positive definite here (a > 0).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

from .arith import factor, is_square, is_squarefree
from .errors import DomainError


class BinaryQuadraticForm(NamedTuple):
    a: int
    b: int
    c: int

    @property
    def discriminant(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def is_primitive(self) -> bool:
        return math.gcd(self.a, self.b, self.c) == 1

    def is_reduced(self) -> bool:
        D = self.discriminant
        return is_reduced_definite(self) if D < 0 else is_reduced_indefinite(self)

    def opposite(self) -> BinaryQuadraticForm:
        """(a, -b, c): the inverse class."""
        return BinaryQuadraticForm(self.a, -self.b, self.c)

    def evaluate(self, x: int, y: int) -> int:
        return self.a * x * x + self.b * x * y + self.c * y * y

    def __str__(self):
        return f"({self.a}, {self.b}, {self.c})"


Form = BinaryQuadraticForm


@dataclass(frozen=True)
class QuadDiscriminant:
    D: int

    def __post_init__(self):
        D = self.D
        if D == 0 or D % 4 not in (0, 1):
            raise DomainError(f"{D} is not a discriminant (need D = 0 or 1 mod 4, D != 0)")
        if D > 0 and is_square(D):
            raise DomainError(f"{D} is a perfect square")

    @property
    def kind(self) -> str:
        return "imaginary" if self.D < 0 else "real"

    @property
    def is_fundamental(self) -> bool:
        return is_fundamental(self.D)

    def __int__(self):
        return self.D

    def __str__(self):
        return str(self.D)


def is_fundamental(D: int) -> bool:
    if D in (0, 1) or D % 4 not in (0, 1):
        return False
    if D % 4 == 1:
        return is_squarefree(abs(D))
    m = D // 4
    return m % 4 in (2, 3) and is_squarefree(abs(m))


def as_discriminant(D) -> QuadDiscriminant:
    return D if isinstance(D, QuadDiscriminant) else QuadDiscriminant(int(D))


def require_fundamental(D) -> QuadDiscriminant:
    disc = as_discriminant(D)
    if not is_fundamental(disc.D):
        raise DomainError(f"{disc.D} is not a fundamental discriminant")
    return disc


def discriminant_of(d: int, kind: str) -> QuadDiscriminant:
    """Field discriminant of Q(sqrt(-d)) (imaginary) or Q(sqrt(d)) (real), d squarefree."""
    if d < 1 or not is_squarefree(d):
        raise DomainError(f"d must be a positive squarefree integer, got {d}")
    if kind == "imaginary":
        return QuadDiscriminant(-d if d % 4 == 3 else -4 * d)
    if kind == "real":
        if d < 2:
            raise DomainError("real quadratic fields need d >= 2")
        return QuadDiscriminant(d if d % 4 == 1 else 4 * d)
    raise DomainError(f"unknown kind {kind!r}")


def principal_form(D: int) -> Form:
    D = int(D)
    b = D % 2
    return Form(1, b, (b * b - D) // 4)


def from_ab(a: int, b: int, D: int) -> Form:
    num = b * b - D
    if num % (4 * a):
        raise DomainError(f"4*{a} does not divide {b}^2 - ({D})")
    return Form(a, b, num // (4 * a))


# -- definite forms ---------------------------------------------------------


def is_reduced_definite(f: Form) -> bool:
    a, b, c = f
    if not (a > 0 and abs(b) <= a <= c):
        return False
    if (abs(b) == a or a == c) and b < 0:
        return False
    return True


def reduce_definite(f: Form) -> Form:
    a, b, c = f
    if b * b - 4 * a * c >= 0 or a <= 0:
        raise DomainError(f"{f} is not positive definite")
    while True:
        if not -a < b <= a:
            r = (a - b) // (2 * a)
            b, c = b + 2 * r * a, a * r * r + b * r + c
        if a > c:
            a, b, c = c, -b, a
            continue
        if a == c and b < 0:
            b = -b
        return Form(a, b, c)


def reduced_forms_imaginary(D) -> list[Form]:
    """All primitive reduced forms of negative discriminant D, sorted by (a, b)."""
    D = as_discriminant(D).D
    if D >= 0:
        raise DomainError(f"{D} is not negative")
    out = []
    amax = math.isqrt(-D // 3)
    for a in range(1, amax + 1):
        for b in range(-a + 1, a + 1):
            if (b - D) % 2:
                continue
            num = b * b - D
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a or (b < 0 and a == c):
                continue
            if math.gcd(a, b, c) != 1:
                continue
            out.append(Form(a, b, c))
    return out


# -- indefinite forms -------------------------------------------------------


def is_reduced_indefinite(f: Form) -> bool:
    a, b, c = f
    D = b * b - 4 * a * c
    s = math.isqrt(D)
    # 0 < b < sqrt(D) and sqrt(D) - b < 2|a| < sqrt(D) + b, with sqrt(D) irrational
    return 0 < b <= s and 2 * abs(a) + b > s and 2 * abs(a) - b <= s


def _r_indefinite(b: int, a: int, D: int, s: int) -> int:
    """Representative r = b mod 2a in the window used by the rho step."""
    m = 2 * abs(a)
    if a * a > D:
        r = b % m
        if r > abs(a):
            r -= m
        return r
    # sqrt(D) - 2|a| < r < sqrt(D)
    return s - ((s - b) % m)


def rho(f: Form) -> Form:
    """One reduction step for an indefinite form (a, b, c) -> (c, r, ...)."""
    a, b, c = f
    D = b * b - 4 * a * c
    s = math.isqrt(D)
    r = _r_indefinite(-b, c, D, s)
    return Form(c, r, (r * r - D) // (4 * c))


def reduce_indefinite(f: Form, max_steps: int = 100_000) -> Form:
    D = f.discriminant
    if D <= 0 or is_square(D):
        raise DomainError(f"{f} is not indefinite with nonsquare discriminant")
    g = f
    for _ in range(max_steps):
        if is_reduced_indefinite(g):
            return g
        g = rho(g)
    raise DomainError(f"reduction of {f} did not terminate")


def cycle(f: Form) -> list[Form]:
    """The rho-cycle of a reduced indefinite form, starting at f."""
    if not is_reduced_indefinite(f):
        raise DomainError(f"{f} is not reduced")
    out = [f]
    g = rho(f)
    while g != f:
        out.append(g)
        g = rho(g)
    return out


def reduced_forms_real(D) -> list[Form]:
    """All primitive reduced indefinite forms of discriminant D > 0, sorted."""
    D = as_discriminant(D).D
    if D <= 0:
        raise DomainError(f"{D} is not positive")
    s = math.isqrt(D)
    out = []
    for b in range(1, s + 1):
        if (b - D) % 2:
            continue
        n = (b * b - D) // 4  # = a*c, negative
        lo = (s - b) // 2 + 1  # 2|a| + b > s
        hi = (s + b) // 2  # 2|a| - b <= s
        for a in range(max(lo, 1), hi + 1):
            if n % a:
                continue
            for sa in (a, -a):
                f = Form(sa, b, n // sa)
                if math.gcd(f.a, f.b, f.c) == 1:
                    out.append(f)
    out.sort()
    return out


def canonical_indefinite(f: Form) -> Form:
    return min(cycle(reduce_indefinite(f)))


# -- composition ------------------------------------------------------------


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, x, y) with a*x + b*y = g = gcd(a, b) >= 0."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def compose_raw(f: Form, g: Form) -> Form:
    """Dirichlet composition without final reduction (a1, a2 > 0 required for D < 0)."""
    D = f.discriminant
    if g.discriminant != D:
        raise DomainError(f"discriminant mismatch: {f} has {D}, {g} has {g.discriminant}")
    if abs(f.a) > abs(g.a):
        f, g = g, f
    a1, b1, _ = f
    a2, b2, c2 = g
    s = (b1 + b2) // 2
    n = b2 - s
    if a2 % a1 == 0:
        y1, d = 0, abs(a1)
    else:
        d, y1, _ = _xgcd(a2, a1)
    if s % d == 0:
        y2, x2, d1 = -1, 0, d
    else:
        d1, x2, y2 = _xgcd(s, d)
        y2 = -y2
    v1 = a1 // d1
    v2 = a2 // d1
    r = (y1 * y2 * n - x2 * c2) % v1
    b3 = b2 + 2 * v2 * r
    a3 = v1 * v2
    return Form(a3, b3, (b3 * b3 - D) // (4 * a3))


def compose(f: Form, g: Form) -> Form:
    """Reduced representative of the product class."""
    h = compose_raw(f, g)
    if h.discriminant < 0:
        return reduce_definite(h)
    return canonical_indefinite(h)


def form_power(f: Form, n: int) -> Form:
    D = f.discriminant
    result = principal_form(D)
    base = f
    if n < 0:
        base, n = base.opposite(), -n
    while n:
        if n & 1:
            result = compose(result, base)
        base = compose(base, base)
        n >>= 1
    return reduce_definite(result) if D < 0 else canonical_indefinite(result)


def prime_form(D, ell: int) -> Form:
    """The form (ell, b, c) of smallest b >= 0 with b^2 = D mod 4*ell."""
    D = as_discriminant(D).D
    for b in range(D % 2, 2 * ell + 1, 2):
        if (b * b - D) % (4 * ell) == 0:
            return Form(ell, b, (b * b - D) // (4 * ell))
    raise DomainError(f"{ell} is inert for discriminant {D}")


def odd_prime_divisors(D: int) -> list[int]:
    return [p for p in factor(abs(D)).primes if p != 2]
