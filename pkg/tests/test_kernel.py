from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from omegaquad.errors import ConfigurationError
from omegaquad.kernel import PROFILES, SHAPES, DFilter, custom_profile, get_profile, isqrt_vec, sweep
from omegaquad.profile import FRVariant, OmegaQuery, fr_check, omega_profile


def scalar_max(d: int, name: str):
    p = PROFILES[name]
    if p.measure == "omega":
        r = omega_profile(OmegaQuery(d, p.sign, p.parity, p.x_min))
        return r.max_omega, r.witness_x
    raise AssertionError(name)


@pytest.mark.parametrize("name", ["m_odd", "m_even", "m_even_real", "m_all_from_zero"])
@pytest.mark.parametrize("threshold", [1, 2, 3])
def test_sweep_matches_scalar(name, threshold, table):
    ds = np.arange(1, 2001)
    res = sweep(ds, PROFILES[name], threshold, table)
    expected = [(d, *scalar_max(d, name)) for d in range(1, 2001)]
    expected = [(d, m, -1 if w is None else w) for d, m, w in expected if m <= threshold]
    got = list(zip(res.d.tolist(), res.max_value.tolist(), res.witness_x.tolist()))
    assert got == expected


@pytest.mark.parametrize("variant", list(FRVariant))
def test_fr_sweep_matches_fr_check(variant, table):
    p = get_profile(f"fr_{variant.value}")
    m, r = p.residue
    ds = np.arange(r if r else m, 5000, m)
    res = sweep(ds, p, 1, table)
    assert res.d.tolist() == [int(d) for d in ds if fr_check(int(d), variant)]


def test_sweep_rejects_wrong_residue(table):
    with pytest.raises(ConfigurationError):
        sweep(np.array([5, 7]), get_profile("fr_imag_odd"), 1, table)


def test_sweep_requires_sorted(table):
    with pytest.raises(ConfigurationError):
        sweep(np.array([5, 3]), get_profile("m_odd"), 2, table)


def test_sweep_sieve_too_small():
    from omegaquad.arith import build_spf

    with pytest.raises(ConfigurationError):
        sweep(np.array([100]), get_profile("m_odd"), 2, build_spf(150))


def test_sweep_empty(table):
    r = sweep(np.array([], dtype=np.int64), get_profile("m_odd"), 2, table)
    assert r.d.size == 0


def test_profiles_and_errors():
    assert get_profile("m-odd") is PROFILES["m_odd"]
    with pytest.raises(ConfigurationError):
        get_profile("m_weird")
    p = custom_profile(-1, "odd", 3)
    assert (p.sign, p.parity.value, p.x_min) == (-1, "odd", 3)
    assert PROFILES["m_odd"].table_limit(1000) == 2000
    assert PROFILES["m_even_real"].table_limit(1000) == 1000


def test_isqrt_vec_exact():
    n = np.array([0, 1, 2, 3, 4, 15, 16, 17, 10**14 - 1, 10**14, (2**31 - 1) ** 2, (2**31 - 1) ** 2 - 1], dtype=np.int64)
    import math

    assert isqrt_vec(n).tolist() == [math.isqrt(int(v)) for v in n]


@settings(max_examples=30, deadline=None)
@given(
    st.lists(st.tuples(st.sampled_from([2, 3, 4, 8]), st.integers(0, 7)), max_size=2),
    st.lists(st.sampled_from(SHAPES), max_size=2),
    st.integers(1, 50),
)
def test_filter_mask_matches_scalar(residues, shapes, min_d):
    from omegaquad.arith import build_spf

    table = build_spf(3000)
    flt = DFilter(tuple((m, (r % m,)) for m, r in residues), tuple(shapes), min_d)
    ds = np.arange(1, 3001)
    assert ds[flt.mask(ds, table)].tolist() == [d for d in range(1, 3001) if flt.matches(d)]


def test_near_square_shape():
    flt = DFilter(shapes=("near-square",))
    near = [d for d in range(1, 60) if flt.matches(d)]
    by_definition = {m * m + 4 for m in range(8)} | {m * m - 4 for m in range(2, 8)} | {4 * m * m + 1 for m in range(4)}
    assert near == sorted(v for v in by_definition if 1 <= v < 60)


def test_filter_rejects_unknown_shape():
    with pytest.raises(ConfigurationError):
        DFilter(shapes=("round",))
    assert DFilter().describe() == "any"
    assert DFilter(((4, (2,)),), ("squarefree",), 9).describe() == "d mod 4 in {2}; squarefree; d >= 9"
