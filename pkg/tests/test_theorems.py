from __future__ import annotations

import pytest

from omegaquad.errors import ConfigurationError, DomainError
from omegaquad.kernel import get_profile
from omegaquad.profile import FRVariant, OmegaQuery, fr_check, omega_profile
from omegaquad.theorems import (
    CHECKSUMS,
    THREE_CASE_CAVEAT,
    TheoremSpec,
    builtin_theorems,
    check_class_implications,
    list_checksum,
    lookup,
    verify,
)

IDS = ["T1.1", "T1.2", "T1.3", "T1.4", "T1.5", "T1.6", "T1.8", "C1", "C2", "C3", "FR1", "FR2", "FR-real"]


def test_ids_and_sizes():
    specs = builtin_theorems()
    assert [s.id for s in specs] == IDS
    sizes = {s.id: len(s.expected) for s in specs}
    assert sizes == {k: v[0] for k, v in CHECKSUMS.items()}
    assert lookup("T1.6").expected == (18,)
    assert len(lookup("T1.3").expected) == 19
    assert len(lookup("C1").expected) == 202
    assert lookup("c2").id == "C2"


def test_unknown_id():
    with pytest.raises(DomainError):
        lookup("T9.9")
    with pytest.raises(DomainError):
        check_class_implications("T1.1")


def test_checksum_catches_edit():
    s = lookup("T1.2")
    assert s.checksum == CHECKSUMS["T1.2"][1]
    assert list_checksum(s.expected[:-1]) != s.checksum


def test_spec_invariants():
    with pytest.raises(ValueError):
        TheoremSpec("X", "", lookup("T1.1").d_filter, "m_odd", 2, (3, 1), 10)
    with pytest.raises(ValueError):
        TheoremSpec("X", "", lookup("T1.1").d_filter, "m_odd", 2, (1, 30), 10)


def _member_holds(spec, d):
    p = get_profile(spec.profile)
    if p.measure == "bigomega":
        return fr_check(d, FRVariant(spec.profile[3:]))
    return omega_profile(OmegaQuery(d, p.sign, p.parity, p.x_min)).max_omega <= spec.threshold


@pytest.mark.parametrize("theorem_id", IDS)
def test_members_are_individually_sound(theorem_id):
    spec = lookup(theorem_id)
    for d in spec.expected:
        assert spec.d_filter.matches(d), d
        assert _member_holds(spec, d), d


@pytest.mark.parametrize("theorem_id", ["T1.6", "T1.8", "C3", "FR1", "FR2", "FR-real"])
def test_verify_small_defaults(theorem_id, table):
    r = verify(theorem_id, table=table)
    assert r.matched and r.missing == () and r.spurious == ()
    assert r.computed == lookup(theorem_id).expected


def test_verify_t16_at_1e5(table):
    assert verify("T1.6", 10**5, table=table).computed == (18,)


def test_verify_t13_caveat(table):
    r = verify("T1.3", 10**5, table=table)
    assert r.matched and r.caveat == THREE_CASE_CAVEAT
    assert "at most one possible exception" in r.caveat


def test_verify_bound_too_small():
    with pytest.raises(ConfigurationError):
        verify("T1.1", 342)


def test_report_invariant(table):
    r = verify("C2", 48_778, table=table)
    assert r.matched == (not r.missing and not r.spurious)
    assert r.summary() == {"id": "C2", "bound": 48_778, "matched": True, "computed": 44, "missing": 0, "spurious": 0}


def test_verify_deterministic(table):
    a = verify("C3", table=table)
    b = verify("C3", workers=2, chunk_size=777, table=table)
    assert (a.computed, a.missing, a.spurious, a.matched) == (b.computed, b.missing, b.spurious, b.matched)


@pytest.mark.parametrize("theorem_id", ["T1.2", "T1.3", "T1.4", "T1.5", "T1.7", "C3", "FR1", "FR-real"])
def test_implications_hold(theorem_id):
    results = check_class_implications(theorem_id)
    assert results and all(i.holds for i in results), [i for i in results if not i.holds]


def test_implication_examples():
    t13 = {(i.d, i.property): i for i in check_class_implications("T1.3")}
    assert t13[(15, "h <= log(2d)/log 2")].holds
    assert t13[(15, "cyclic, generated by a prime above 2")].detail == "order of norm-2 class = 2"
    assert t13[(1423, "h <= log(2d)/log 2")].holds
    t12 = {i.d: i for i in check_class_implications("T1.2")}
    assert t12[17].detail == "h(Q(sqrt(-17))) = 4"


def test_fr2_implication_fails_only_at_2():
    failures = [i.d for i in check_class_implications("FR2") if not i.holds]
    assert failures == [2]


def test_sharper_pq_bound_fails_for_every_listed_pq():
    res = check_class_implications("T1.3-sharp")
    bound = {i.d: i.holds for i in res if i.property == "h <= log|d_K|/log 2 - 2"}
    assert bound == {15: False, 39: False, 55: False, 247: False, 583: False}
    divides = {i.d: i.holds for i in res if i.property == "p + q = 2^a and h | 2a - 4"}
    assert divides == {15: True, 39: True, 55: True, 247: True, 583: True}
    prime_bound = [i.holds for i in res if i.property == "h <= log|d_K|/log 2 + 1"]
    assert len(prime_bound) == 14 and all(prime_bound)


@pytest.mark.slow
@pytest.mark.parametrize("theorem_id", ["T1.1", "T1.2", "T1.3", "T1.4", "T1.5", "C1", "C2"])
def test_verify_large_defaults(theorem_id, table):
    r = verify(theorem_id, table=table)
    assert r.bound_used == 10**6 and r.matched
