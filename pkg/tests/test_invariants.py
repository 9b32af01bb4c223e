import itertools
from math import gcd

import pytest
from hypothesis import given
from hypothesis import strategies as st

from wplimits.errors import NotSemiStable, PreconditionError
from wplimits.invariants import (
    GenusProfile,
    complete_delta_coefficient,
    component_count_delta2,
    compute_profile,
    expected_h0_twisted_dualizing,
    is_V_irreducible,
    limit_degree_parts,
    plucker_ram_degree,
    total_limit_degree,
    vpi_delta_coefficient,
    wnu_delta_coefficient,
)


def valid_profiles(gmax=8, dmax=8):
    for g1, g2, d in itertools.product(range(gmax + 1), range(gmax + 1), range(1, dmax + 1)):
        if d > 1 or g1 * g2 > 0:
            yield GenusProfile(g1, g2, d)


profiles = st.builds(
    lambda g1, g2, d: (g1, g2, d),
    st.integers(0, 8), st.integers(0, 8), st.integers(1, 8),
).filter(lambda t: t[2] > 1 or t[0] * t[1] > 0)


@pytest.mark.parametrize(
    "triple, g, ell, m, lam",
    [
        ((2, 3, 2), 6, (2, 1), (1, 0), (2, 1)),
        ((0, 0, 3), 2, (0, 0), (0, 0), None),
        ((2, 2, 2), 5, (1, 1), (0, 0), (1, 1)),
    ],
)
def test_compute_profile_examples(triple, g, ell, m, lam):
    profile, twist, _ = compute_profile(*triple)
    assert (profile.g, twist.ell, twist.m, twist.lam) == (g, ell, m, lam)


def test_non_semistable_rejected():
    with pytest.raises(NotSemiStable):
        GenusProfile(0, 0, 1)
    with pytest.raises(PreconditionError):
        GenusProfile(-1, 2, 2)


def test_expected_h0_examples():
    pr = GenusProfile(2, 3, 2)
    assert expected_h0_twisted_dualizing(pr, 1, 1) == 1
    assert expected_h0_twisted_dualizing(pr, 1, 2) == 0
    assert expected_h0_twisted_dualizing(pr, 2, 0) == 2


@pytest.mark.parametrize("triple, vpi, wnu", [((2, 3, 2), 12, 0), ((0, 0, 3), 2, 2), ((2, 2, 2), 10, 0), ((1, 1, 1), -2, -2)])
def test_delta_coefficients(triple, vpi, wnu):
    pr = GenusProfile(*triple)
    assert vpi_delta_coefficient(pr) == vpi
    assert wnu_delta_coefficient(pr) == wnu


@pytest.mark.parametrize("triple, coeff", [((2, 2, 2), 10), ((0, 0, 3), 2), ((1, 1, 1), -2)])
def test_complete_delta_coefficient(triple, coeff):
    assert complete_delta_coefficient(GenusProfile(*triple)) == coeff


def test_complete_delta_coefficient_needs_divisibility():
    with pytest.raises(PreconditionError):
        complete_delta_coefficient(GenusProfile(2, 3, 2))


def test_plucker_examples():
    assert plucker_ram_degree(2, 2, 2) == 6
    assert plucker_ram_degree(2, 1, 0) == 0
    assert plucker_ram_degree(6, 10, 2) == 90


def test_total_degree_examples():
    assert total_limit_degree(GenusProfile(2, 3, 2)) == 210
    assert limit_degree_parts(GenusProfile(2, 3, 2)) == (90, 120, 0)
    assert total_limit_degree(GenusProfile(0, 0, 3)) == 6
    assert limit_degree_parts(GenusProfile(0, 0, 3)) == (0, 0, 6)
    assert total_limit_degree(GenusProfile(0, 0, 2)) == 0


@pytest.mark.parametrize("triple, count", [((1, 1, 2), 1), ((2, 3, 2), 5), ((1, 3, 2), 3)])
def test_component_count(triple, count):
    assert component_count_delta2(GenusProfile(*triple)) == count


def test_irreducibility_examples():
    assert is_V_irreducible(GenusProfile(1, 1, 2))
    assert not is_V_irreducible(GenusProfile(2, 3, 2))
    assert is_V_irreducible(GenusProfile(1, 1, 5))


def test_twist_grid_properties():
    for pr in valid_profiles():
        _, twist, table = compute_profile(*pr.as_tuple())
        for i in (1, 2):
            assert 0 <= twist.m[i - 1] < pr.delta
            assert (twist.ell[i - 1] == 0) == (pr.genus(3 - i) == 0)
            deg = table.deg_L[i - 1][i - 1]
            assert deg > 2 * pr.genus(i) - 2
            assert table.h0_L[i - 1][i - 1] == deg - pr.genus(i) + 1 == pr.g + pr.m(i)
        if twist.lam is not None:
            l1, l2 = twist.lam
            assert gcd(l1, l2) == 1 and l1 * twist.ell[1] == l2 * twist.ell[0]
        assert total_limit_degree(pr) == pr.g ** 3 - pr.g
        if pr.delta == 2 and pr.g1 * pr.g2 > 0:
            assert (component_count_delta2(pr) == 1) == is_V_irreducible(pr)


def test_count_and_irreducibility_disagree_only_with_a_rational_component():
    bad = [
        pr.as_tuple()
        for pr in valid_profiles()
        if pr.delta == 2 and (component_count_delta2(pr) == 1) != is_V_irreducible(pr)
    ]
    assert bad == [(0, 1, 2), (1, 0, 2)]


@given(profiles, st.integers(1, 2))
def test_expected_h0_monotone_and_vanishes_at_ell(triple, i):
    pr = GenusProfile(*triple)
    vals = [expected_h0_twisted_dualizing(pr, i, n) for n in range(pr.ell(i) + 3)]
    assert all(a >= b for a, b in zip(vals, vals[1:]))
    assert vals[pr.ell(i)] == 0
    assert vals[0] == pr.genus(3 - i)


@given(profiles)
def test_degree_table_formula(triple):
    pr = GenusProfile(*triple)
    _, _, table = compute_profile(*triple)
    for i, j in itertools.product((1, 2), repeat=2):
        sign = 1 if i == j else -1
        assert table.deg_L[i - 1][j - 1] == 2 * pr.genus(j) - 2 + (1 + sign * pr.ell(i)) * pr.delta
