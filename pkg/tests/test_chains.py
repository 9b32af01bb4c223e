import itertools
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from wplimits.chains import (
    build_chain,
    feasible_lambda_search,
    normalize_mu,
    twist_degrees,
    validate_lambda_constraints,
)
from wplimits.errors import PreconditionError
from wplimits.invariants import GenusProfile, compute_profile

PR = GenusProfile(2, 3, 2)


def test_trivial_mu_is_the_curve_itself():
    chain = build_chain(PR, (1, 1))
    assert chain.vertices == ("C1", "C2")
    assert chain.meetings("C1", "C2") == 2


def test_one_inserted_vertex():
    chain = build_chain(PR, (2, 1))
    assert chain.vertices == ("C1", "C2", "E_1_1")
    assert chain.genus_of("E_1_1") == 0 and chain.valence("E_1_1") == 2
    assert chain.arithmetic_genus() == 6


def test_three_three_chain():
    chain = build_chain(PR, (3, 3))
    assert len(chain.vertices) == 6 and chain.arithmetic_genus() == 6


def test_bad_mu_rejected():
    with pytest.raises(PreconditionError):
        build_chain(PR, (1, 0))
    with pytest.raises(PreconditionError):
        build_chain(PR, (1,))


def test_twist_degree_examples():
    chain = build_chain(PR, (1, 1))
    zero = {"C1": 0, "C2": 0}
    assert twist_degrees(chain, zero) == {"C1": 4, "C2": 6}
    assert twist_degrees(chain, {"C1": 1, "C2": 0}) == {"C1": 2, "C2": 8}
    with pytest.raises(PreconditionError):
        twist_degrees(chain, {"C1": 0})


def test_validate_examples():
    chain = build_chain(PR, (2, 1))
    zero = {v: 0 for v in chain.vertices}
    assert validate_lambda_constraints(chain, PR, 1, zero)
    res = validate_lambda_constraints(chain, PR, 1, {**zero, "C1": 1})
    assert not res and "lambda_{1,C1}=0" in res.violations
    res = validate_lambda_constraints(chain, PR, 1, {**zero, "E_1_1": PR.g2 + 1})
    assert not res and "lambda_{1,E_1_1}<=g_2" in res.violations
    res = validate_lambda_constraints(chain, PR, 1, {**zero, "E_1_1": -1})
    assert not res and "lambda_{1,E_1_1}>=0" in res.violations


@pytest.mark.parametrize("mu, want", [((2, 4), (1, 2)), ((Fraction(1, 2), Fraction(1, 3)), (3, 2)), ((5, 5, 5), (1, 1, 1))])
def test_normalize_examples(mu, want):
    assert normalize_mu(mu) == want
    assert normalize_mu(want) == want


def test_normalize_rejects_nonpositive():
    with pytest.raises(PreconditionError):
        normalize_mu((1, 0))


@pytest.mark.parametrize("triple", [(2, 3, 2), (1, 2, 3), (3, 3, 2), (0, 2, 3)])
@pytest.mark.parametrize("i", [1, 2])
def test_trivial_mu_filter_matches_reference_sheaf(triple, i):
    pr = GenusProfile(*triple)
    _, _, table = compute_profile(*triple)
    chain = build_chain(pr, (1,) * pr.delta)
    found = feasible_lambda_search(chain, pr, i)
    other = f"C{3 - i}"
    expected = tuple(sorted({f"C{i}": 0, other: pr.ell(i)}.items()))
    assert expected in found.candidates
    assert twist_degrees(chain, dict(expected))[f"C{i}"] == table.deg_L[i - 1][i - 1]
    assert all(dict(c)[f"C{i}"] == 0 for c in found.candidates)


def test_search_on_split_node():
    chain = build_chain(PR, (2, 1))
    found = feasible_lambda_search(chain, PR, 1)
    assert found.candidates and not found.exhausted
    assert feasible_lambda_search(chain, PR, 1, budget=3).exhausted


mus = st.integers(1, 3).flatmap(lambda d: st.lists(st.integers(1, 3), min_size=d, max_size=d))


@given(mus, st.integers(0, 4), st.integers(0, 4), st.data())
def test_genus_and_degree_conservation(mu, g1, g2, data):
    d = len(mu)
    if d == 1 and g1 * g2 == 0:
        return
    pr = GenusProfile(g1, g2, d)
    chain = build_chain(pr, mu)
    assert chain.arithmetic_genus() == pr.g
    lam = {v: data.draw(st.integers(-4, 4)) for v in chain.vertices}
    degs = twist_degrees(chain, lam)
    assert sum(degs.values()) == 2 * pr.g - 2
    assert twist_degrees(chain, {v: w + 3 for v, w in lam.items()}) == degs


@given(st.lists(st.fractions(min_value=Fraction(1, 6), max_value=9, max_denominator=6), min_size=1, max_size=4),
       st.sampled_from([2, 3, 7]))
def test_normalize_scale_invariance(mu, t):
    base = normalize_mu(mu)
    assert normalize_mu([t * m for m in mu]) == base
    assert normalize_mu(base) == base


def test_full_small_grid():
    for d in (1, 2, 3):
        for mu in itertools.product((1, 2, 3), repeat=d):
            for g1, g2 in itertools.product(range(4), repeat=2):
                if d == 1 and g1 * g2 == 0:
                    continue
                pr = GenusProfile(g1, g2, d)
                chain = build_chain(pr, mu)
                assert len(chain.vertices) == 2 + sum(m - 1 for m in mu)
                assert sum(twist_degrees(chain, {v: 0 for v in chain.vertices}).values()) == 2 * pr.g - 2
