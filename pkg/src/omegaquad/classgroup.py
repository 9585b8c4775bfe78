"""Class groups of quadratic fields computed by enumerating reduced forms."""

from __future__ import annotations

import math
from collections.abc import Callable
from dataclasses import dataclass, field
from enum import Enum

from .arith import factor, is_prime, kronecker
from .errors import DomainError, ResourceError
from .forms import (
    Form,
    QuadDiscriminant,
    as_discriminant,
    canonical_indefinite,
    compose,
    cycle,
    prime_form,
    principal_form,
    reduce_definite,
    reduced_forms_imaginary,
    reduced_forms_real,
    require_fundamental,
)

MAX_ABS_DISCRIMINANT = 10**7


class Splitting(str, Enum):
    SPLIT = "split"
    RAMIFIED = "ramified"
    INERT = "inert"


@dataclass(frozen=True)
class ClassGroupStructure:
    D: QuadDiscriminant
    h: int
    elementary_divisors: tuple[int, ...] | None
    generators: tuple[Form, ...] = ()
    forms: tuple[Form, ...] = field(default=(), repr=False)

    @property
    def is_cyclic(self) -> bool:
        if self.elementary_divisors is None:
            raise DomainError("group structure not computed for real discriminants")
        return len(self.elementary_divisors) <= 1


def _check_size(D: int, cap: int | None):
    cap = MAX_ABS_DISCRIMINANT if cap is None else cap
    if abs(D) > cap:
        raise ResourceError(f"|D| = {abs(D)} exceeds the enumeration cap {cap}")


def class_number_imaginary(D, cap: int | None = None) -> int:
    D = as_discriminant(D).D
    _check_size(D, cap)
    return len(reduced_forms_imaginary(D))


def form_order(f: Form) -> int:
    D = f.discriminant
    one = principal_form(D)
    g = reduce_definite(f) if D < 0 else f
    k = 1
    x = g
    while x != one:
        x = compose(x, g)
        k += 1
    return k


def _prime_power_counts(orders: list[int], p: int) -> list[int]:
    """Exponents of the cyclic factors of the p-Sylow subgroup, decreasing."""
    # n_k = #{x : x^(p^k) = 1}; rank of elements of order >= p^k is log_p(n_k / n_{k-1})
    ranks = []
    prev = 1
    k = 1
    while True:
        pk = p**k
        n_k = sum(1 for o in orders if pk % o == 0)
        step = n_k // prev
        if step == 1:
            break
        ranks.append(round(math.log(step, p)))
        prev = n_k
        k += 1
    # ranks[k-1] = number of factors with exponent >= k
    exps = []
    for k in range(len(ranks), 0, -1):
        have = len(exps)
        exps.extend([k] * (ranks[k - 1] - have))
    return exps


def elementary_divisors_from_orders(orders: list[int]) -> tuple[int, ...]:
    h = len(orders)
    primes = factor(h).primes
    sylow = {p: _prime_power_counts(orders, p) for p in primes}
    width = max((len(v) for v in sylow.values()), default=0)
    divs = []
    for i in range(width):
        d = 1
        for p, exps in sylow.items():
            if i < len(exps):
                d *= p ** exps[i]
        divs.append(d)
    return tuple(sorted(divs))


def _subgroup(gens: list[Form], D: int) -> set[Form]:
    elems = {principal_form(D)}
    frontier = list(elems)
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = compose(x, g)
                if y not in elems:
                    elems.add(y)
                    nxt.append(y)
        frontier = nxt
    return elems


def generated_subgroup(gens: list[Form]) -> set[Form]:
    if not gens:
        raise DomainError("need at least one generator to know the discriminant")
    return _subgroup(list(gens), gens[0].discriminant)


def _basis(forms: list[Form], orders: dict[Form, int], divisors: tuple[int, ...]) -> tuple[Form, ...]:
    """Forms g_i of order d_i such that the g_i generate a group of order prod(d_i)."""
    D = forms[0].discriminant
    targets = sorted(divisors, reverse=True)

    def search(chosen: list[Form], size: int):
        if len(chosen) == len(targets):
            return chosen
        want = targets[len(chosen)]
        for f in forms:
            if orders[f] != want:
                continue
            sub = _subgroup(chosen + [f], D)
            if len(sub) == size * want:
                found = search(chosen + [f], size * want)
                if found is not None:
                    return found
        return None

    basis = search([], 1)
    if basis is None:
        raise AssertionError(f"no basis found for discriminant {D}")
    return tuple(reversed(basis))


def class_group_structure(D, cap: int | None = None, with_generators: bool = True) -> ClassGroupStructure:
    disc = as_discriminant(D)
    _check_size(disc.D, cap)
    if disc.D > 0:
        return ClassGroupStructure(disc, class_number_real(disc), None)
    forms = reduced_forms_imaginary(disc.D)
    orders = {f: form_order(f) for f in forms}
    divisors = tuple(d for d in elementary_divisors_from_orders(list(orders.values())) if d > 1)
    gens = _basis(forms, orders, divisors) if with_generators and divisors else ()
    return ClassGroupStructure(disc, len(forms), divisors, gens, tuple(forms))


def splitting_type(D, ell: int) -> Splitting:
    k = kronecker(as_discriminant(D).D, ell)
    if k == 1:
        return Splitting.SPLIT
    if k == 0:
        return Splitting.RAMIFIED
    return Splitting.INERT


def order_of_prime_form(D, ell: int) -> int:
    disc = as_discriminant(D)
    if splitting_type(disc, ell) is Splitting.INERT:
        raise DomainError(f"{ell} is inert for discriminant {disc.D}")
    f = prime_form(disc, ell)
    if disc.D < 0:
        return form_order(f)
    return form_order_real(f)


def form_order_real(f: Form) -> int:
    one = canonical_indefinite(principal_form(f.discriminant))
    g = canonical_indefinite(f)
    x, k = g, 1
    while x != one:
        x = compose(x, g)
        k += 1
    return k


# -- genus theory -----------------------------------------------------------


def _value_coprime_to(f: Form, p: int) -> int:
    a, b, c = f
    for v in (a, c, a + b + c, a - b + c):
        if v % p:
            return v
    raise AssertionError(f"primitive form {f} represents only multiples of {p}")


def is_square_class(f: Form) -> bool:
    """Whether the class of f lies in the principal genus (= squares, for D < 0)."""
    D = f.discriminant
    for p in factor(abs(D)).primes:
        if p == 2:
            continue
        if kronecker(_value_coprime_to(f, p), p) != 1:
            return False
    return True


@dataclass(frozen=True)
class GenusData:
    two_rank: int
    square_class_test: Callable[[int], bool]


def genus_data(D) -> GenusData:
    disc = require_fundamental(D)
    if disc.D >= 0:
        raise DomainError("genus data is provided for imaginary discriminants only")
    two_rank = len(factor(-disc.D)) - 1

    def square_class_test(ell: int) -> bool:
        if splitting_type(disc, ell) is Splitting.INERT:
            raise DomainError(f"{ell} is inert for discriminant {disc.D}")
        return is_square_class(prime_form(disc, ell))

    return GenusData(two_rank, square_class_test)


def two_torsion_count(structure: ClassGroupStructure) -> int:
    return sum(1 for f in structure.forms if compose(f, f) == principal_form(structure.D.D))


# -- real discriminants -----------------------------------------------------


def narrow_cycles(D) -> list[list[Form]]:
    """Cycles of reduced indefinite forms; one per narrow class."""
    remaining = set(reduced_forms_real(D))
    cycles = []
    for f in sorted(remaining):
        if f not in remaining:
            continue
        c = cycle(f)
        remaining.difference_update(c)
        cycles.append(c)
    return cycles


def class_number_real(D, cap: int | None = None) -> int:
    """Wide class number: cycles, with (a, b, c) and (-a, b, -c) identified."""
    disc = require_fundamental(D)
    if disc.D <= 0:
        raise DomainError(f"{disc.D} is not a real discriminant")
    _check_size(disc.D, cap)
    cycles = narrow_cycles(disc.D)
    where = {f: i for i, c in enumerate(cycles) for f in c}
    seen = set()
    h = 0
    for i, c in enumerate(cycles):
        if i in seen:
            continue
        a, b, cc = c[0]
        seen.update((i, where[Form(-a, b, -cc)]))
        h += 1
    return h


def narrow_class_number(D) -> int:
    return len(narrow_cycles(require_fundamental(D).D))


def prime_forms_up_to(D, bound: int, odd_only: bool = False) -> list[Form]:
    """Prime forms above every non-inert prime ell <= bound."""
    disc = as_discriminant(D)
    out = []
    for ell in range(2, bound + 1):
        if odd_only and ell == 2:
            continue
        if not is_prime(ell):
            continue
        if splitting_type(disc, ell) is not Splitting.INERT:
            out.append(prime_form(disc, ell))
    return out


__all__ = [
    "ClassGroupStructure",
    "GenusData",
    "Splitting",
    "class_group_structure",
    "class_number_imaginary",
    "class_number_real",
    "elementary_divisors_from_orders",
    "form_order",
    "generated_subgroup",
    "genus_data",
    "is_square_class",
    "narrow_class_number",
    "narrow_cycles",
    "order_of_prime_form",
    "prime_forms_up_to",
    "splitting_type",
    "two_torsion_count",
]
