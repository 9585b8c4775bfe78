from __future__ import annotations

import math

import pytest

from omegaquad.arith import factor, is_squarefree
from omegaquad.classgroup import (
    Splitting,
    class_group_structure,
    class_number_imaginary,
    class_number_real,
    elementary_divisors_from_orders,
    form_order,
    generated_subgroup,
    genus_data,
    is_square_class,
    narrow_class_number,
    order_of_prime_form,
    prime_forms_up_to,
    splitting_type,
    two_torsion_count,
)
from omegaquad.errors import DomainError, ResourceError
from omegaquad.forms import compose, is_fundamental, prime_form, reduced_forms_imaginary

FUNDAMENTAL_NEG_3000 = [D for D in range(-3, -3001, -1) if is_fundamental(D)]


def test_class_numbers():
    assert class_number_imaginary(-163) == 1
    assert class_number_imaginary(-232) == 2
    s = class_group_structure(-68)
    assert (s.h, s.elementary_divisors) == (4, (4,))
    s = class_group_structure(-120)
    assert (s.h, s.elementary_divisors) == (4, (2, 2))
    s = class_group_structure(-103)
    assert (s.h, s.elementary_divisors) == (5, (5,))
    assert class_group_structure(-4).elementary_divisors == ()


def test_known_class_number_one_list():
    # Heegner: the nine imaginary fields of class number one
    ones = [D for D in FUNDAMENTAL_NEG_3000 if class_number_imaginary(D) == 1]
    assert ones == [-3, -4, -7, -8, -11, -19, -43, -67, -163]


def test_cap():
    with pytest.raises(ResourceError):
        class_group_structure(-10**8 - 3)
    with pytest.raises(ResourceError):
        class_number_imaginary(-1003, cap=1000)


def test_divisors_chain_and_product():
    for D in FUNDAMENTAL_NEG_3000:
        s = class_group_structure(D, with_generators=False)
        divs = s.elementary_divisors
        assert math.prod(divs) == s.h == len(reduced_forms_imaginary(D))
        assert all(d > 1 for d in divs)
        assert all(b % a == 0 for a, b in zip(divs, divs[1:]))
        assert (divs == ()) == (s.h == 1)


def test_generators_span_with_right_orders():
    for D in (-120, -420, -1155, -3315, -2379, -5460, -9240):
        if not is_fundamental(D):
            continue
        s = class_group_structure(D)
        assert [form_order(g) for g in s.generators] == list(s.elementary_divisors)
        assert len(generated_subgroup(list(s.generators))) == s.h


def test_elementary_divisors_from_orders_examples():
    # Z/2 x Z/4: orders 1, 2, 2, 2, 4, 4, 4, 4
    assert elementary_divisors_from_orders([1, 2, 2, 2, 4, 4, 4, 4]) == (2, 4)
    # Z/6 = Z/2 x Z/3
    assert elementary_divisors_from_orders([1, 2, 3, 3, 6, 6]) == (6,)
    assert elementary_divisors_from_orders([1]) == ()


@pytest.mark.parametrize("D, ell, kind", [(-103, 2, Splitting.SPLIT), (-232, 2, Splitting.RAMIFIED), (-232, 3, Splitting.INERT), (-15, 2, Splitting.SPLIT), (-20, 5, Splitting.RAMIFIED)])
def test_splitting(D, ell, kind):
    assert splitting_type(D, ell) is kind


def test_splitting_matches_root_count():
    for D in (-103, -232, -455, -4 * 67, 40, 229):
        for ell in (3, 5, 7, 11, 13, 17, 19, 23):
            roots = sum(1 for b in range(2 * ell) if (b * b - D) % (4 * ell) == 0)
            kind = splitting_type(D, ell)
            assert (kind is Splitting.INERT) == (roots == 0)


@pytest.mark.parametrize("D, ell, order", [(-103, 2, 5), (-68, 2, 2), (-15, 2, 2), (-163, 41, 1)])
def test_order_of_prime_form(D, ell, order):
    assert order_of_prime_form(D, ell) == order


def test_order_of_inert_prime():
    with pytest.raises(DomainError):
        order_of_prime_form(-232, 3)


def test_conjugate_prime_forms_share_order():
    for D in (-103, -455, -1507):
        for ell in (2, 3, 5, 7, 11, 13):
            if splitting_type(D, ell) is Splitting.SPLIT:
                f = prime_form(D, ell)
                assert form_order(f) == form_order(f.opposite())


# -- genus theory ----------------------------------------------------------------------


@pytest.mark.parametrize("D, rank", [(-68, 1), (-120, 2), (-3, 0)])
def test_two_rank(D, rank):
    assert genus_data(D).two_rank == rank


def test_genus_rejects_non_fundamental():
    with pytest.raises(DomainError):
        genus_data(-12 * 4)


def test_genus_count_up_to_3000():
    for D in FUNDAMENTAL_NEG_3000:
        s = class_group_structure(D, with_generators=False)
        assert two_torsion_count(s) == 2 ** genus_data(D).two_rank, D


def test_principal_genus_is_the_squares():
    for D in FUNDAMENTAL_NEG_3000[::7]:
        forms = reduced_forms_imaginary(D)
        squares = {compose(f, f) for f in forms}
        assert {f for f in forms if is_square_class(f)} == squares, D


def test_square_class_test_legendre_for_unramified():
    # for ell not dividing D the test is the product of Legendre symbols (ell / p)
    from omegaquad.arith import kronecker

    for D in (-68, -120, -455, -1155):
        g = genus_data(D)
        odd = [p for p in factor(-D).primes if p != 2]
        for ell in (3, 5, 7, 11, 13, 17, 19, 23, 29, 31):
            if -D % ell and splitting_type(D, ell) is not Splitting.INERT:
                assert g.square_class_test(ell) == all(kronecker(ell, p) == 1 for p in odd)


def test_square_class_test_for_ramified_prime():
    # 5 | -20 and the prime above 5 is principal: (5, 0, 1) ~ (1, 0, 5)
    assert genus_data(-20).square_class_test(5)


# -- generation lemmas -------------------------------------------------------------------


def test_generation_by_small_primes():
    for D in FUNDAMENTAL_NEG_3000:
        bound = math.isqrt(-D // 3)
        gens = prime_forms_up_to(D, bound)
        group = reduced_forms_imaginary(D)
        if len(group) == 1:
            continue
        assert gens, D
        assert generated_subgroup(gens) == set(group), D


def test_generation_by_norm_two_and_odd_primes_below_sqrt_d():
    for d in range(1, 1501):
        if d % 4 not in (1, 2) or not is_squarefree(d):
            continue
        D = -4 * d
        gens = [prime_form(D, 2)] + prime_forms_up_to(D, math.isqrt(d), odd_only=True)
        assert generated_subgroup(gens) == set(reduced_forms_imaginary(D)), d


# -- real quadratic fields -----------------------------------------------------------------


@pytest.mark.parametrize("D, h", [(13, 1), (40, 2), (8, 1), (5, 1), (12, 1), (21, 1), (229, 3), (79 * 4, 3), (4 * 82, 4)])
def test_real_class_numbers(D, h):
    assert class_number_real(D) == h


def test_real_list_class_number_one():
    for d in (13, 21, 29, 37, 53, 77, 101, 173, 197, 293, 437, 677):
        assert class_number_real(d) == 1


def test_narrow_vs_wide():
    assert narrow_class_number(12) == 2 and class_number_real(12) == 1
    assert narrow_class_number(40) == 2 and class_number_real(40) == 2
    assert narrow_class_number(5) == 1


def test_real_class_number_against_table():
    # class numbers of Q(sqrt d) for squarefree d < 100, from standard tables
    table = {10: 2, 15: 2, 26: 2, 30: 2, 34: 2, 35: 2, 39: 2, 42: 2, 51: 2, 55: 2, 58: 2, 65: 2,
             66: 2, 70: 2, 74: 2, 78: 2, 79: 3, 82: 4, 85: 2, 87: 2, 91: 2, 95: 2}
    for d in range(2, 100):
        if not is_squarefree(d):
            continue
        D = d if d % 4 == 1 else 4 * d
        assert class_number_real(D) == table.get(d, 1), d


def test_real_rejects_non_fundamental():
    with pytest.raises(DomainError):
        class_number_real(4 * 9 * 2)
    with pytest.raises(DomainError):
        class_number_real(-20)


def test_real_structure_has_h_only():
    s = class_group_structure(40)
    assert s.h == 2 and s.elementary_divisors is None
    with pytest.raises(DomainError):
        s.is_cyclic


def test_real_prime_form_order():
    assert order_of_prime_form(40, 2) == 2
    assert order_of_prime_form(229, 3) in (1, 3)
